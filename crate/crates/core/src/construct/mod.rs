//! Explicit colorings of fractional powers.
//!
//! Every construction finishes through [`finish`], which runs the checker and
//! refuses to return an improper coloring.

mod complete;
mod even;
mod extend;
mod odd;
mod prism;
mod repair;

pub use complete::{color_complete, complete_base_coloring, HallTrace};
pub use even::{color_even, color_even_cubic, color_even_highdeg};
pub use extend::{extend_coloring, extend_to};
pub use odd::{color_odd, color_odd_compatible, color_odd_plus2, color_odd_second_range, RepairSets};
pub use prism::{prove_prism_counterexample, ChainStep, PrismRefutation};
pub use repair::repair;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::color::{Color, VertexColoring};
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, FracPowGraph};
use crate::graph::Graph;
use crate::oracle::{decide_omega_odd_fp, ensure_proper, exact_chromatic, omega_of, Decision};
use crate::search::{ColoringProblem, SearchResult};

/// Node budget for each local repair search.
pub const REPAIR_BUDGET: u64 = 5_000_000;

/// Node budget for whole-instance exact search when a rule-based
/// construction does not apply.
pub const FALLBACK_BUDGET: u64 = 50_000_000;

/// What a construction did beyond the plain rules.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub method: String,
    /// Vertices recolored by local exact repair.
    pub repaired: usize,
    /// Middle parts whose rule-based colors clashed and were recolored by an
    /// exact search over that middle part alone.
    pub middles_searched: usize,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(method: &str) -> Self {
        Self { method: method.into(), ..Self::default() }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// A verified coloring of `fp`.
#[derive(Clone, Debug)]
pub struct Colored {
    pub fp: FracPowGraph,
    pub coloring: VertexColoring,
    pub report: Report,
}

impl Colored {
    pub fn num_colors(&self) -> usize {
        self.coloring.num_colors()
    }
}

/// Partial coloring under construction.
pub(crate) struct Partial<'a> {
    pub fp: &'a FracPowGraph,
    pub colors: Vec<Option<Color>>,
}

impl<'a> Partial<'a> {
    pub fn new(fp: &'a FracPowGraph) -> Self {
        Self { fp, colors: vec![None; fp.order()] }
    }

    pub fn set(&mut self, x: usize, c: Color) {
        self.colors[x] = Some(c);
    }

    /// Colors `vertices[i]` with `colors[i]`; the shorter length wins.
    pub fn set_seq(&mut self, vertices: &[usize], colors: &[Color]) {
        for (&x, &c) in vertices.iter().zip(colors) {
            self.colors[x] = Some(c);
        }
    }

    pub fn get(&self, x: usize) -> Option<Color> {
        self.colors[x]
    }
}

/// Repairs any uncolored or conflicting vertices inside `palette`, then
/// verifies. The report counts the repaired vertices.
pub(crate) fn finish(p: Partial<'_>, palette: &[Color], mut report: Report) -> Result<Colored> {
    let fp = p.fp;
    let mut colors = p.colors;
    let solved = solve_middles(fp, &mut colors, palette)?;
    if solved > 0 {
        report.middles_searched += solved;
        report.note(format!("{solved} middle parts colored by exact search on their superedge"));
    }
    let fixed = repair(fp, &mut colors, palette, REPAIR_BUDGET)?;
    if fixed > 0 {
        log::info!("{}: local repair recolored {fixed} vertices", report.method);
        report.repaired += fixed;
    }
    let coloring = VertexColoring::from_partial(colors)?;
    ensure_proper(fp, &coloring)?;
    Ok(Colored { fp: fp.clone(), coloring, report })
}

/// Middle parts of distinct superedges are more than `m` apart, so each
/// one whose vertices are uncolored or clash can be recolored on its own,
/// with everything outside it fixed. Middles without a solution are left
/// uncolored for the general repair.
fn solve_middles(fp: &FracPowGraph, colors: &mut [Option<Color>], palette: &[Color]) -> Result<usize> {
    let index: HashMap<Color, usize> = palette.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    if palette.len() > crate::search::MAX_COLORS || colors.iter().flatten().any(|c| !index.contains_key(c)) {
        return Ok(0);
    }
    let len = fp.middle_len();
    let (k, l) = (len.div_ceil(2), len / 2);
    let mut solved = 0;
    for &(u, v) in fp.base_edges() {
        let mut mid: Vec<usize> = fp.middle(u, v)[..k].to_vec();
        mid.extend_from_slice(&fp.middle(v, u)[..l]);
        let bad = mid.iter().any(|&x| match colors[x] {
            None => true,
            Some(c) => fp.neighbors(x).iter().any(|&y| colors[y] == Some(c)),
        });
        if !bad {
            continue;
        }
        let local: HashMap<usize, usize> = mid.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let adj: Vec<Vec<usize>> =
            mid.iter().map(|&x| fp.neighbors(x).iter().filter_map(|y| local.get(y).copied()).collect()).collect();
        let mut problem = ColoringProblem::new(&adj, palette.len());
        for (i, &x) in mid.iter().enumerate() {
            let mask = fp
                .neighbors(x)
                .iter()
                .filter(|y| !local.contains_key(y))
                .filter_map(|&y| colors[y])
                .fold(0u64, |m, c| m | 1 << index[&c]);
            problem.forbid(i, mask);
        }
        match problem.solve(REPAIR_BUDGET).result {
            SearchResult::Found(sol) => {
                for (i, &x) in mid.iter().enumerate() {
                    colors[x] = Some(palette[sol[i] as usize]);
                }
                solved += 1;
            }
            _ => {
                for &x in &mid {
                    colors[x] = None;
                }
            }
        }
    }
    Ok(solved)
}

/// Colors `G^{m/n}` with the construction that applies: the even or odd
/// dispatcher for Δ >= 3, exact search for the smallest `k >= ω` otherwise.
pub fn color(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Colored> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("need 0 < m < n, got m={m}, n={n}")));
    }
    if g.max_degree() < 3 {
        return smallest_exact(g, m, n, budget);
    }
    if m.is_multiple_of(2) {
        color_even(g, m, n, budget)
    } else {
        color_odd(g, m, n, budget)
    }
}

/// The least `k >= ω` with a `k`-coloring, by exact search.
fn smallest_exact(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Colored> {
    let fp = frac_power(g, m, n)?;
    let omega = omega_of(&fp)?.max(1);
    for k in omega..=fp.order().max(1) {
        match exact_chromatic(&fp, k, budget)? {
            Decision::Yes(coloring) => {
                ensure_proper(&fp, &coloring)?;
                let report = Report::new(&format!("exact search, smallest k = {k}"));
                return Ok(Colored { fp, coloring, report });
            }
            Decision::No(_) => continue,
            Decision::Timeout(s) => return Err(Error::Budget(s.nodes)),
        }
    }
    Err(Error::Construction("no coloring found".into()))
}

/// Copies a coloring of `G'^{m/n}` onto `G^{m/n}` for `g` an induced
/// subgraph of `g'` on the vertices `0..g.order()` (as produced by
/// [`crate::graph::regular_embed`]).
pub(crate) fn restrict(big: &Colored, g: &Graph) -> Result<Colored> {
    let fp = frac_power(g, big.fp.m(), big.fp.n())?;
    let mut colors = Vec::with_capacity(fp.order());
    for x in 0..fp.order() {
        let y = match fp.vertex(x) {
            crate::fracpow::FPVertex::Branch(u) => u,
            crate::fracpow::FPVertex::Internal { u, v, i } => big.fp.at(u, v, i),
        };
        colors.push(*big.coloring.get(y));
    }
    let coloring = VertexColoring::new(colors);
    ensure_proper(&fp, &coloring)?;
    let mut report = big.report.clone();
    if big.fp.base().order() != g.order() {
        report.note(format!("colored a {}-regular supergraph on {} vertices", g.max_degree(), big.fp.base().order()));
    }
    Ok(Colored { fp, coloring, report })
}

pub(crate) fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Hypothesis(msg.into()))
    }
}

/// `n0` in `m+1..=2m+1` with `n = n0 + t (m + 1)`.
pub fn reduce_n(m: usize, n: usize) -> usize {
    let mut n0 = n;
    while n0 > 2 * m + 1 {
        n0 -= m + 1;
    }
    n0
}

/// A coloring with `k = ω` colors found by exact search (crust-pruned for
/// odd `m`).
pub fn exact_omega(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Colored> {
    let fp = frac_power(g, m, n)?;
    let k = omega_of(&fp)?;
    let decision = if m % 2 == 1 { decide_omega_odd_fp(&fp, budget, &[])? } else { exact_chromatic(&fp, k, budget)? };
    match decision {
        Decision::Yes(coloring) => {
            ensure_proper(&fp, &coloring)?;
            Ok(Colored { fp, coloring, report: Report::new("exact search with k = ω") })
        }
        Decision::No(s) => Err(Error::Construction(format!(
            "exhaustive search ({} nodes) found no {k}-coloring of the m={m}, n={n} power: χ > ω",
            s.nodes
        ))),
        Decision::Timeout(s) => Err(Error::Budget(s.nodes)),
    }
}
