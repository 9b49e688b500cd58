//! From a coloring of `G^{m/n}` to one of `G^{m/(n+m+1)}` with the same
//! palette.
//!
//! Each superedge gains `m + 1` vertices right after position `m + 1`,
//! colored with a copy of the colors on positions `1..=m+1` in the same
//! order. The new coloring is `new[i] = old[i]` for `i <= m + 1` and
//! `new[i] = old[i - m - 1]` beyond, so every pair at distance at most `m`
//! either keeps its old distance or maps to an old pair at distance
//! `m + 1 - d`, which is again at most `m`.

use super::Colored;
use crate::color::VertexColoring;
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, FPVertex};
use crate::oracle::verify_coloring;

/// The coloring of `G^{m/(n+m+1)}` obtained by inserting one period on every
/// superedge; verified before it is returned.
pub fn extend_coloring(c: &Colored) -> Result<Colored> {
    let (m, n) = (c.fp.m(), c.fp.n());
    if n <= m {
        return Err(Error::InvalidParameter(format!("extension needs n > m, got m={m}, n={n}")));
    }
    let fp = frac_power(c.fp.base(), m, n + m + 1)?;
    let colors = (0..fp.order())
        .map(|x| match fp.vertex(x) {
            FPVertex::Branch(u) => *c.coloring.get(u),
            FPVertex::Internal { u, v, i } => {
                let src = if i <= m + 1 { i } else { i - m - 1 };
                *c.coloring.get(c.fp.at(u, v, src))
            }
        })
        .collect();
    let coloring = VertexColoring::new(colors);
    if let Some(bad) = verify_coloring(&fp, &coloring)? {
        return Err(Error::Improper(bad));
    }
    let mut report = c.report.clone();
    report.note(format!("extended from n={n} to n={}", n + m + 1));
    Ok(Colored { fp, coloring, report })
}

/// Repeated extension up to `n`; `n - c.n` must be a multiple of `m + 1`.
pub fn extend_to(c: Colored, n: usize) -> Result<Colored> {
    let (m, n0) = (c.fp.m(), c.fp.n());
    if n < n0 || !(n - n0).is_multiple_of(m + 1) {
        return Err(Error::InvalidParameter(format!("cannot reach n={n} from n={n0} in steps of {}", m + 1)));
    }
    let mut cur = c;
    while cur.fp.n() < n {
        cur = extend_coloring(&cur)?;
    }
    Ok(cur)
}
