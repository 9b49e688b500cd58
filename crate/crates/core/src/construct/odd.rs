//! Odd `m`: the `ω + 2` bound for Δ ≥ 4, the `ω` coloring from a compatible
//! pair (Δ ≥ 5), and the second range `(3m+5)/2 <= n <= 2m + 1`.

use std::collections::VecDeque;

use serde::Serialize;

use super::{exact_omega, extend_to, finish, reduce_n, require, restrict, Colored, Partial, Report, FALLBACK_BUDGET};
use crate::color::{tuple_colors, Color, VertexColoring};
use crate::construct::color_complete;
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, tuple::rev, FPVertex, FracPowGraph};
use crate::graph::{regular_embed, Graph};
use crate::halfedge::{
    dynamic_compatible, find_dynamic_coloring, half_edge_coloring, two_incompatible, DynamicSearch, HalfEdgeColoring,
};
use crate::oracle::ensure_proper;
use crate::search::{k_color, SearchResult};

/// The recolorings applied on top of the auxiliary coloring.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RepairSets {
    pub heart_to_zero: Vec<FPVertex>,
    pub zero_to_heart: Vec<FPVertex>,
    pub diamond1: Vec<FPVertex>,
    pub diamond2: Vec<FPVertex>,
    /// The ♦-vertices induce paths and even cycles.
    pub diamond_paths_and_even_cycles: bool,
}

fn check_odd(g: &Graph, m: usize, n: usize) -> Result<()> {
    require(m >= 3 && m % 2 == 1, format!("m must be odd and at least 3, got {m}"))?;
    require(n > m, format!("need n > m, got m={m}, n={n}"))?;
    require(g.order() > 0 && g.is_connected(), "graph must be connected")
}

/// A proper vertex coloring with colors `1..=Δ`.
pub(crate) fn delta_coloring(g: &Graph) -> Result<Vec<u32>> {
    let adj: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect();
    let out = k_color(&adj, g.max_degree(), FALLBACK_BUDGET);
    match out.result {
        SearchResult::Found(c) => Ok(c.into_iter().map(|c| c + 1).collect()),
        SearchResult::Exhausted => Err(Error::Hypothesis("graph is not Δ-colorable".into())),
        SearchResult::Timeout => Err(Error::Budget(out.nodes)),
    }
}

fn odd_palette(delta: usize, t: usize, extra: &[Color]) -> Vec<Color> {
    let mut p = vec![Color::Zero, Color::Heart];
    p.extend_from_slice(extra);
    for a in 1..=delta as u32 {
        p.extend(tuple_colors(a, t));
    }
    p
}

/// `reverse(x)[i:j]` for the tuple `x` of length `t`, 1-based.
fn rev_part(x: u32, t: usize, i: usize, j: usize) -> Vec<Color> {
    let r = rev(&tuple_colors(x, t));
    if j < i || i == 0 {
        return Vec::new();
    }
    r[i - 1..j.min(t)].to_vec()
}

fn first_outside(delta: usize, avoid: &[u32]) -> u32 {
    (1..=delta as u32).find(|c| !avoid.contains(c)).expect("enough tuple colors")
}

/// Shared data of the odd constructions on one graph.
struct OddSetup<'a> {
    g: &'a Graph,
    f: &'a [u32],
    h: &'a HalfEdgeColoring,
    t: usize,
}

impl OddSetup<'_> {
    fn heart(&self, u: usize, v: usize) -> bool {
        self.h.get(u, v) == self.f[u]
    }

    fn diamond(&self, u: usize, v: usize) -> bool {
        self.h.get(u, v) == self.f[v]
    }
}

/// ♥→0 / 0→♥: on superedges whose two ♥-vertices are within distance `m`,
/// the one at the smaller endpoint becomes 0 and that endpoint ♥.
fn heart_swaps(fp: &FracPowGraph, s: &OddSetup<'_>, p: &mut Partial<'_>, sets: &mut RepairSets) {
    for &(u, v) in fp.base_edges() {
        if s.heart(u, v) && s.heart(v, u) && fp.n() - 2 <= fp.m() {
            let x = fp.at(u, v, 1);
            p.set(x, Color::Zero);
            p.set(u, Color::Heart);
            sets.heart_to_zero.push(fp.vertex(x));
            sets.zero_to_heart.push(FPVertex::Branch(u));
        }
    }
    let _ = s.g;
}

/// Colors the ♦-vertices with ♦1/♦2 along paths and even cycles; a vertex
/// closing an odd cycle or of degree above 2 is left for repair.
fn color_diamonds(fp: &FracPowGraph, diamonds: &[usize], p: &mut Partial<'_>, sets: &mut RepairSets) {
    let member: std::collections::HashSet<usize> = diamonds.iter().copied().collect();
    let nb = |x: usize| -> Vec<usize> { fp.neighbors(x).iter().copied().filter(|y| member.contains(y)).collect() };
    let mut side: std::collections::HashMap<usize, u8> = std::collections::HashMap::new();
    let mut good = diamonds.iter().all(|&x| nb(x).len() <= 2);
    for &s in diamonds {
        if side.contains_key(&s) {
            continue;
        }
        side.insert(s, 1);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in nb(x) {
                match side.get(&y) {
                    None => {
                        side.insert(y, 3 - side[&x]);
                        queue.push_back(y);
                    }
                    Some(&c) if c == side[&x] => good = false,
                    _ => {}
                }
            }
        }
    }
    sets.diamond_paths_and_even_cycles = good;
    for &x in diamonds {
        let c = side[&x];
        p.set(x, Color::Diamond(c));
        if c == 1 {
            sets.diamond1.push(fp.vertex(x));
        } else {
            sets.diamond2.push(fp.vertex(x));
        }
    }
}

/// Bubbles, crusts and branch vertices of the `ω + 2` construction; returns
/// the ♦-vertices.
fn outer_parts(fp: &FracPowGraph, s: &OddSetup<'_>, p: &mut Partial<'_>) -> Result<Vec<usize>> {
    let t = s.t;
    let mut diamonds = Vec::new();
    for u in 0..s.g.order() {
        p.set(u, Color::Zero);
        for &x in &fp.crust(u)? {
            p.set(x, Color::tuple(s.f[u], t as u32));
        }
    }
    for &(a, b) in fp.base_edges() {
        for (u, v) in [(a, b), (b, a)] {
            let hv = s.h.get(u, v);
            let bubble = fp.bubble(u, v);
            let mut cs = tuple_colors(hv, t);
            if s.heart(u, v) {
                cs.pop();
                cs.insert(0, Color::Heart);
            } else if s.diamond(u, v) {
                cs.pop();
                diamonds.push(bubble[t - 1]);
            }
            p.set_seq(&bubble, &cs);
        }
    }
    Ok(diamonds)
}

/// Middle parts by cases (a)-(c). With `spare_fifth` the `♦1` of case (c)
/// is replaced by a fifth tuple.
fn odd_middles(fp: &FracPowGraph, s: &OddSetup<'_>, p: &mut Partial<'_>, spare_fifth: bool, report: &mut Report) {
    let t = s.t;
    let delta = s.g.max_degree();
    let len = fp.middle_len();
    let (k, l) = (len.div_ceil(2), len / 2);
    if len == 0 {
        return;
    }
    let mut derived = 0;
    for &(u0, v0) in fp.base_edges() {
        let (fu, fv) = (s.f[u0], s.f[v0]);
        let (a0, b0) = (s.h.get(u0, v0), s.h.get(v0, u0));
        let in_u = fu == a0 || fu == b0;
        let in_v = fv == a0 || fv == b0;
        // orient so that the crust color outside {a, b} (if exactly one) is at u
        let (u, v) = if !in_u || in_v { (u0, v0) } else { (v0, u0) };
        let (a, b) = (s.h.get(u, v), s.h.get(v, u));
        let (x, y) = (s.f[u], s.f[v]);
        let (mu, mv) = (fp.middle(u, v), fp.middle(v, u));
        let (first, second): (Vec<Color>, Vec<Color>) = if in_u && in_v {
            let c = first_outside(delta, &[a, b]);
            let d = first_outside(delta, &[a, b, c]);
            (rev_part(c, t, 1, k), rev_part(d, t, 1, l))
        } else if in_u != in_v {
            // x = c is outside {a, b}, y is inside
            let c = x;
            let d = first_outside(delta, &[a, b, c]);
            if y == b && s.heart(v, u) && (spare_fifth || delta >= 5 || l == 0) {
                // the ♥ at (vu)_1 is within distance m of M_uv[k]
                derived += 1;
                let second = if l == 0 { Vec::new() } else { rev_part(first_outside(delta, &[a, b, c, d]), t, 1, l) };
                (rev_part(d, t, 1, k), second)
            } else {
                let mut first = rev_part(c, t, 2, k);
                first.push(Color::Heart);
                (first, rev_part(d, t, 1, l))
            }
        } else {
            let (c, d) = (x, y);
            let mut first = rev_part(c, t, 2, k);
            first.push(Color::Heart);
            let second = if l == 0 {
                Vec::new()
            } else if spare_fifth {
                let e = first_outside(delta, &[a, b, c, d]);
                rev_part(e, t, 1, l)
            } else {
                let mut second = rev_part(d, t, 2, l);
                second.push(Color::Diamond(1));
                second
            };
            (first, second)
        };
        p.set_seq(&mu[..k], &first);
        p.set_seq(&mv[..l], &second);
    }
    if derived > 0 {
        report.note(format!(
            "{derived} middles with f(v) = h(e_vu) used two spare tuples instead of the ♥ end (the ♥ at (vu)_1 is in reach)"
        ));
    }
}

/// `χ <= ω + 2` for connected non-complete `g` with Δ ≥ 4 and odd `m`,
/// `m + 2 <= n <= 2m + 1`.
pub fn color_odd_plus2(g: &Graph, m: usize, n: usize) -> Result<(Colored, RepairSets)> {
    check_odd(g, m, n)?;
    let delta = g.max_degree();
    require(delta >= 4, format!("needs Δ >= 4, got {delta}"))?;
    require(!g.is_complete(), "graph must not be complete")?;
    require((m + 2..=2 * m + 1).contains(&n), format!("needs m+2 <= n <= 2m+1, got m={m}, n={n}"))?;
    let f = delta_coloring(g)?;
    let h = two_incompatible(g, &f)?;
    let fp = frac_power(g, m, n)?;
    let s = OddSetup { g, f: &f, h: &h, t: (m - 1) / 2 };
    let mut p = Partial::new(&fp);
    let mut sets = RepairSets::default();
    let mut report = Report::new("odd m, ω + 2");
    let diamonds = outer_parts(&fp, &s, &mut p)?;
    heart_swaps(&fp, &s, &mut p, &mut sets);
    color_diamonds(&fp, &diamonds, &mut p, &mut sets);
    if !sets.diamond_paths_and_even_cycles {
        report.note("♦-vertices do not induce paths and even cycles; clashes left to local repair");
    }
    odd_middles(&fp, &s, &mut p, false, &mut report);
    let palette = odd_palette(delta, s.t, &[Color::Diamond(1), Color::Diamond(2)]);
    Ok((finish(p, &palette, report)?, sets))
}

/// `χ = ω` from a compatible pair `(f, h)` (Δ ≥ 5, non-complete). Without a
/// pair, a 4-dynamic Δ-coloring is searched within `budget` and turned into
/// a compatible pair.
pub fn color_odd_compatible(
    g: &Graph,
    m: usize,
    n: usize,
    pair: Option<(Vec<u32>, HalfEdgeColoring)>,
    budget: u64,
) -> Result<Colored> {
    check_odd(g, m, n)?;
    let delta = g.max_degree();
    require(delta >= 5, format!("needs Δ >= 5, got {delta}"))?;
    require(!g.is_complete(), "graph must not be complete")?;
    require((m + 2..=2 * m + 1).contains(&n), format!("needs m+2 <= n <= 2m+1, got m={m}, n={n}"))?;
    let (f, h) = match pair {
        Some(p) => p,
        None => match find_dynamic_coloring(g, 4, delta, budget)? {
            DynamicSearch::Found(f) => {
                let h = dynamic_compatible(g, &f)?;
                (f, h)
            }
            DynamicSearch::Exhausted => {
                return Err(Error::NotEstablished(format!("no 4-dynamic {delta}-coloring exists")))
            }
            DynamicSearch::Timeout => {
                return Err(Error::NotEstablished(format!("no 4-dynamic {delta}-coloring found within {budget} nodes")))
            }
        },
    };
    let bad: usize = h.incompatible_counts(g, &f).iter().sum();
    if bad > 0 {
        return Err(Error::NotEstablished(format!("the supplied pair has {bad} incompatible half-edges")));
    }
    let fp = frac_power(g, m, n)?;
    let s = OddSetup { g, f: &f, h: &h, t: (m - 1) / 2 };
    let mut p = Partial::new(&fp);
    let mut sets = RepairSets::default();
    let mut report = Report::new("odd m, compatible pair");
    let diamonds = outer_parts(&fp, &s, &mut p)?;
    debug_assert!(diamonds.is_empty());
    heart_swaps(&fp, &s, &mut p, &mut sets);
    odd_middles(&fp, &s, &mut p, true, &mut report);
    finish(p, &odd_palette(delta, s.t, &[]), report)
}

/// `χ = ω` for `(3m+5)/2 <= n <= 2m`, and `χ <= ω + 1` for `n = 2m + 1`
/// (one vertex per superedge gets a new color). `g` non-complete, Δ ≥ 3.
pub fn color_odd_second_range(g: &Graph, m: usize, n: usize) -> Result<Colored> {
    check_odd(g, m, n)?;
    require(g.max_degree() >= 3, format!("needs Δ >= 3, got {}", g.max_degree()))?;
    require(!g.is_complete(), "graph must not be complete")?;
    // n = 2m+1 is built from n = 2m, which must itself lie in the range
    require(
        (3 * m + 5) / 2 <= n.min(2 * m) && n <= 2 * m + 1,
        format!("needs (3m+5)/2 <= n <= 2m+1 with (3m+5)/2 <= 2m, got m={m}, n={n}"),
    )?;
    let big = if g.is_regular() { g.clone() } else { regular_embed(g)? };
    let base = match second_range_regular(&big, m, n.min(2 * m)) {
        Err(Error::Construction(why)) => {
            log::info!("second range rules failed ({why}); falling back to exact search");
            let mut c = exact_omega(&big, m, n.min(2 * m), FALLBACK_BUDGET)?;
            c.report.note(format!("rule-based coloring failed ({why}); colored by exact search"));
            c
        }
        r => r?,
    };
    let c = restrict(&base, g)?;
    if n == 2 * m + 1 {
        insert_fresh(&c)
    } else {
        Ok(c)
    }
}

fn second_range_regular(g: &Graph, m: usize, n: usize) -> Result<Colored> {
    let delta = g.max_degree();
    let f = delta_coloring(g)?;
    let h = half_edge_coloring(g)?;
    let t = (m - 1) / 2;
    let fp = frac_power(g, m, n)?;
    let s = OddSetup { g, f: &f, h: &h, t };
    let mut p = Partial::new(&fp);
    let mut sets = RepairSets::default();
    for u in 0..g.order() {
        p.set(u, Color::Zero);
        for &x in &fp.crust(u)? {
            p.set(x, Color::tuple(f[u], 1));
        }
    }
    for &(a, b) in fp.base_edges() {
        for (u, v) in [(a, b), (b, a)] {
            let bubble = fp.bubble(u, v);
            p.set_seq(&bubble, &tuple_colors(h.get(u, v), t));
            if s.heart(u, v) {
                p.set(bubble[0], Color::Heart);
            }
        }
    }
    heart_swaps(&fp, &s, &mut p, &mut sets);
    let len = fp.middle_len();
    let (k, l) = (len.div_ceil(2), len / 2);
    for &(u, v) in fp.base_edges() {
        let four = [h.get(u, v), h.get(v, u), f[u], f[v]];
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| four[i] != four[j]));
        let first = if k == t && distinct {
            let mut x = rev_part(f[v], t, 1, k - 1);
            x.push(Color::Heart);
            x
        } else {
            rev_part(f[v], t, 1, k)
        };
        p.set_seq(&fp.middle(u, v)[..k], &first);
        p.set_seq(&fp.middle(v, u)[..l], &rev_part(f[u], t, 1, l));
    }
    finish(p, &odd_palette(delta, t, &[]), Report::new("odd m, second range"))
}

/// `G^{m/(2m+1)}` from `G^{m/2m}`: a vertex with a new color between
/// `M_uv[k]` and `M_vu[l]` on every superedge.
fn insert_fresh(c: &Colored) -> Result<Colored> {
    let (m, n) = (c.fp.m(), c.fp.n());
    let fp = frac_power(c.fp.base(), m, n + 1)?;
    let k = c.fp.middle_len().div_ceil(2);
    let cut = m.div_ceil(2) + k;
    let colors = (0..fp.order())
        .map(|x| match fp.vertex(x) {
            FPVertex::Branch(u) => *c.coloring.get(u),
            FPVertex::Internal { u, v, i } => {
                if i <= cut {
                    *c.coloring.get(c.fp.at(u, v, i))
                } else if i == cut + 1 {
                    Color::Fresh
                } else {
                    *c.coloring.get(c.fp.at(u, v, i - 1))
                }
            }
        })
        .collect();
    let coloring = VertexColoring::new(colors);
    ensure_proper(&fp, &coloring)?;
    let mut report = c.report.clone();
    report.note("n = 2m+1: one new color inserted on every superedge");
    Ok(Colored { fp, coloring, report })
}

/// Dispatcher over the odd-`m` results for any `n > m`: complete graphs,
/// the second range, the compatible pair (Δ ≥ 5), the `ω + 2` bound (Δ ≥ 4)
/// and exact search otherwise; larger `n` by extension.
pub fn color_odd(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Colored> {
    check_odd(g, m, n)?;
    let delta = g.max_degree();
    require(delta >= 3, format!("unsupported: needs Δ >= 3, got {delta}"))?;
    if g.is_complete() {
        return color_complete(g.order(), m, n);
    }
    let n0 = reduce_n(m, n);
    let base = if n0 == m + 1 {
        let mut c = exact_omega(g, m, n0, budget)?;
        c.report.note("n = m+1 colored by exact search with k = ω");
        c
    } else if (3 * m + 5) / 2 <= n0.min(2 * m) {
        color_odd_second_range(g, m, n0)?
    } else if delta >= 4 {
        let compatible =
            if delta >= 5 { color_odd_compatible(g, m, n0, None, budget.min(FALLBACK_BUDGET)).ok() } else { None };
        match compatible {
            Some(c) => c,
            None => color_odd_plus2(g, m, n0)?.0,
        }
    } else {
        exact_or_plus_one(g, m, n0, budget)?
    };
    extend_to(base, n)
}

/// Exact search with `k = ω`, then `k = ω + 1`.
fn exact_or_plus_one(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Colored> {
    match exact_omega(g, m, n, budget) {
        Ok(c) => Ok(c),
        Err(Error::Construction(why)) => {
            let fp = frac_power(g, m, n)?;
            let k = crate::oracle::omega_of(&fp)? + 1;
            match crate::oracle::exact_chromatic(&fp, k, budget)? {
                crate::oracle::Decision::Yes(coloring) => {
                    let mut report = Report::new("exact search with k = ω + 1");
                    report.note(why);
                    Ok(Colored { fp, coloring, report })
                }
                crate::oracle::Decision::No(s) => {
                    Err(Error::Construction(format!("no {k}-coloring either ({} nodes)", s.nodes)))
                }
                crate::oracle::Decision::Timeout(s) => Err(Error::Budget(s.nodes)),
            }
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::oracle::omega_formula;

    fn omega(g: &Graph, m: usize) -> usize {
        omega_formula(g.max_degree() as i64, m as i64).unwrap()
    }

    #[test]
    fn plus2_on_k5_minus_edge() {
        let g = named::complete_minus_edge(5);
        for n in 5..=7 {
            let (c, sets) = color_odd_plus2(&g, 3, n).unwrap();
            assert!(c.num_colors() <= omega(&g, 3) + 2);
            assert!(sets.diamond_paths_and_even_cycles);
        }
    }

    #[test]
    fn plus2_preconditions() {
        assert!(color_odd_plus2(&named::prism(), 3, 5).is_err());
        assert!(color_odd_plus2(&named::complete(5), 3, 5).is_err());
        assert!(color_odd_plus2(&named::complete_minus_edge(5), 3, 4).is_err());
    }

    #[test]
    fn second_range_petersen() {
        let g = named::petersen();
        let c = color_odd_second_range(&g, 5, 10).unwrap();
        assert_eq!(c.num_colors(), 8);
        // all crust vertices of a branch vertex share one color
        for u in 0..g.order() {
            let cr = c.fp.crust(u).unwrap();
            assert!(cr.iter().all(|&x| c.coloring.get(x) == c.coloring.get(cr[0])));
        }
        let c = color_odd_second_range(&g, 5, 11).unwrap();
        assert!(c.num_colors() <= 9);
        assert!(color_odd_second_range(&g, 3, 7).is_err());
    }

    #[test]
    fn compatible_pair_needed() {
        let g = named::circulant(12, &[1, 5, 6]);
        let c = color_odd_compatible(&g, 3, 5, None, 10_000_000).unwrap();
        assert_eq!(c.num_colors(), omega(&g, 3));
        assert!(color_odd_compatible(&named::complete(6), 3, 5, None, 1000).is_err());
        let stuck = color_odd_compatible(&named::circulant(12, &[1, 2, 6]), 3, 5, None, 10);
        assert!(matches!(stuck, Err(Error::NotEstablished(_))));
    }
}
