//! Incompatibility control between a vertex coloring `f` of `G` and a
//! half-edge coloring `h`, and r-dynamic colorings.

use std::collections::HashSet;

use super::{half_edge_coloring, HalfEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{hall_violator, max_matching};

fn check_vertex_coloring(g: &Graph, f: &[u32], max_color: u32) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::PartialColoring { got: f.len(), expected: g.order() });
    }
    if let Some(v) = (0..g.order()).find(|&v| f[v] == 0 || f[v] > max_color) {
        return Err(Error::Hypothesis(format!("f({v}) = {} is outside 1..={max_color}", f[v])));
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| f[u] == f[v]) {
        return Err(Error::Hypothesis(format!("f is not proper on edge ({u},{v})")));
    }
    Ok(())
}

/// Cheapest recoloring of the half-edges at `u`, counting incompatible
/// half-edges; `None` if no proper recoloring exists.
fn best_assignment(g: &Graph, f: &[u32], h: &HalfEdgeColoring, u: usize) -> Option<(usize, Vec<u32>)> {
    let nb = g.neighbors(u);
    let delta = h.delta();
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut cur = Vec::with_capacity(nb.len());
    fn go(
        i: usize,
        cost: usize,
        used: u64,
        nb: &[usize],
        ctx: (&[u32], &HalfEdgeColoring, usize, u32),
        cur: &mut Vec<u32>,
        best: &mut Option<(usize, Vec<u32>)>,
    ) {
        let (f, h, u, delta) = ctx;
        if best.as_ref().is_some_and(|b| cost >= b.0) {
            return;
        }
        if i == nb.len() {
            *best = Some((cost, cur.clone()));
            return;
        }
        let v = nb[i];
        let back = h.get(v, u);
        // compatible colors first so the bound bites early
        let mut order: Vec<u32> = (1..=delta).filter(|&c| c != f[v]).collect();
        order.push(f[v]);
        for c in order {
            if used & (1 << c) != 0 || c == back {
                continue;
            }
            cur.push(c);
            go(i + 1, cost + usize::from(c == f[v]), used | (1 << c), nb, ctx, cur, best);
            cur.pop();
        }
    }
    go(0, 0, 0, nb, (f, h, u, delta), &mut cur, &mut best);
    best
}

/// A half-edge coloring that is 2-incompatible with `f`.
pub fn two_incompatible(g: &Graph, f: &[u32]) -> Result<HalfEdgeColoring> {
    if g.is_complete() {
        return Err(Error::Hypothesis("graph must not be complete".into()));
    }
    two_incompatible_from(g, f, half_edge_coloring(g)?)
}

/// Local search from `h`: every vertex with three or more incompatible
/// half-edges gets its half-edges recolored optimally. Each step lowers the
/// total count, so the loop terminates; a coloring that is already
/// 2-incompatible is returned unchanged.
pub fn two_incompatible_from(g: &Graph, f: &[u32], mut h: HalfEdgeColoring) -> Result<HalfEdgeColoring> {
    if g.is_complete() {
        return Err(Error::Hypothesis("graph must not be complete".into()));
    }
    if !g.is_connected() {
        return Err(Error::Hypothesis("graph must be connected".into()));
    }
    check_vertex_coloring(g, f, g.max_degree() as u32)?;
    h.check_proper(g)?;
    let cap = h.num_arcs() + 1;
    for _ in 0..cap {
        let counts = h.incompatible_counts(g, f);
        let Some(u) = (0..g.order()).find(|&u| counts[u] >= 3) else {
            return Ok(h);
        };
        match best_assignment(g, f, &h, u) {
            Some((cost, colors)) if cost < counts[u] => {
                for (&v, c) in g.neighbors(u).iter().zip(colors) {
                    h.set(u, v, c);
                }
                debug_assert!(h.is_proper(g));
            }
            _ => {
                return Err(Error::Construction(format!(
                    "vertex {u} keeps {} incompatible half-edges after optimal local recoloring",
                    counts[u]
                )))
            }
        }
    }
    Err(Error::Construction("local search exceeded its iteration cap".into()))
}

/// True if `f` is proper and every vertex `v` sees at least
/// `min(r, deg v)` colors on its neighborhood.
pub fn is_r_dynamic(g: &Graph, f: &[u32], r: usize) -> bool {
    if f.len() != g.order() || g.edges().into_iter().any(|(u, v)| f[u] == f[v]) {
        return false;
    }
    (0..g.order()).all(|v| {
        let seen: HashSet<u32> = g.neighbors(v).iter().map(|&w| f[w]).collect();
        seen.len() >= r.min(g.degree(v))
    })
}

/// Result of [`find_dynamic_coloring`]; colors are `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynamicSearch {
    Found(Vec<u32>),
    Exhausted,
    Timeout,
}

struct DynState<'a> {
    g: &'a Graph,
    r: usize,
    k: u32,
    color: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl DynState<'_> {
    /// Whether `w` can still see `min(r, deg w)` colors.
    fn feasible_at(&self, w: usize) -> bool {
        let mut seen = 0u64;
        let mut open = 0;
        for &x in self.g.neighbors(w) {
            if self.color[x] == 0 {
                open += 1;
            } else {
                seen |= 1 << self.color[x];
            }
        }
        seen.count_ones() as usize + open >= self.r.min(self.g.degree(w))
    }

    fn available(&self, v: usize) -> u64 {
        let mut avail: u64 = ((1u64 << (self.k + 1)) - 1) & !1;
        for &w in self.g.neighbors(v) {
            avail &= !(1 << self.color[w]);
        }
        avail
    }

    fn search(&mut self, max_used: u32) -> Option<bool> {
        let n = self.g.order();
        let next = (0..n).filter(|&v| self.color[v] == 0).min_by_key(|&v| {
            let colored = self.g.neighbors(v).iter().filter(|&&w| self.color[w] != 0).count();
            (self.available(v).count_ones(), std::cmp::Reverse(colored), v)
        });
        let Some(v) = next else {
            return Some(true);
        };
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let mut options = self.available(v);
        let limit = (max_used + 1).min(self.k);
        options &= (1u64 << (limit + 1)) - 1;
        while options != 0 {
            let c = options.trailing_zeros();
            options &= options - 1;
            self.color[v] = c;
            let ok = std::iter::once(v).chain(self.g.neighbors(v).iter().copied()).all(|w| self.feasible_at(w));
            if ok {
                match self.search(max_used.max(c)) {
                    Some(false) => {}
                    other => {
                        if other.is_none() {
                            self.color[v] = 0;
                        }
                        return other;
                    }
                }
            }
            self.color[v] = 0;
        }
        Some(false)
    }
}

/// Searches for a proper `r`-dynamic coloring with colors `1..=k`.
pub fn find_dynamic_coloring(g: &Graph, r: usize, k: usize, budget: u64) -> Result<DynamicSearch> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidParameter("r and k must be >= 1".into()));
    }
    if k > 62 {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds the search limit")));
    }
    let mut st = DynState { g, r, k: k as u32, color: vec![0; g.order()], nodes: 0, budget };
    Ok(match st.search(0) {
        Some(true) => {
            debug_assert!(is_r_dynamic(g, &st.color, r));
            DynamicSearch::Found(st.color)
        }
        Some(false) => DynamicSearch::Exhausted,
        None => DynamicSearch::Timeout,
    })
}

/// A half-edge coloring compatible with a 4-dynamic proper Δ-coloring `f`,
/// built vertex by vertex from bipartite matchings between the half-edges at
/// `u` and the colors `[Δ]`. When a color is blocked at every half-edge, the
/// colors are switched along a path `u x_1 x_2 ... x_k` and the matching is
/// retried.
pub fn dynamic_compatible(g: &Graph, f: &[u32]) -> Result<HalfEdgeColoring> {
    let delta = g.max_degree();
    if delta < 4 {
        return Err(Error::Hypothesis(format!("need Δ >= 4, got {delta}")));
    }
    check_vertex_coloring(g, f, delta as u32)?;
    if !is_r_dynamic(g, f, 4) {
        return Err(Error::Hypothesis("f is not 4-dynamic".into()));
    }
    let mut h = HalfEdgeColoring::blank(g);
    for u in 0..g.order() {
        let nb = g.neighbors(u).to_vec();
        let mut switches = 0;
        loop {
            let allowed: Vec<Vec<usize>> = nb
                .iter()
                .map(|&v| {
                    let back = h.get(v, u);
                    (1..=delta as u32).filter(|&b| b != f[v] && b != back).map(|b| b as usize - 1).collect()
                })
                .collect();
            let m = max_matching(&allowed, delta);
            if m.iter().all(Option::is_some) {
                for (&v, b) in nb.iter().zip(m) {
                    h.set(u, v, b.unwrap() as u32 + 1);
                }
                break;
            }
            if switches > g.order() * delta {
                return Err(Error::Construction(format!("switching at vertex {u} does not terminate")));
            }
            let s = hall_violator(&allowed, delta).expect("matching is not perfect");
            let b = (1..=delta as u32)
                .find(|&b| s.iter().all(|&i| !allowed[i].contains(&(b as usize - 1))) && s.len() == nb.len())
                .ok_or_else(|| {
                    Error::Construction(format!("Hall violation at vertex {u} is not caused by a single blocked color"))
                })?;
            switch_path(g, f, &mut h, u, b)?;
            switches += 1;
        }
    }
    h.check_proper(g)?;
    if h.incompatible_counts(g, f).iter().any(|&c| c > 0) {
        return Err(Error::Construction("result has incompatible half-edges".into()));
    }
    Ok(h)
}

/// Switches colors along `u x_1 ... x_k` so that color `b` is no longer
/// blocked at `e_{u x_1}`.
fn switch_path(g: &Graph, f: &[u32], h: &mut HalfEdgeColoring, u: usize, b: u32) -> Result<()> {
    let x1 = g
        .neighbors(u)
        .iter()
        .copied()
        .find(|&x| f[x] != b)
        .ok_or_else(|| Error::Construction(format!("every neighbor of {u} has color {b}")))?;
    debug_assert_eq!(h.get(x1, u), b);
    let mut path = vec![u, x1];
    let mut visited = HashSet::new();
    visited.insert((u, x1));
    loop {
        let (prev, cur) = (path[path.len() - 2], path[path.len() - 1]);
        let mut cands: Vec<usize> =
            g.neighbors(cur).iter().copied().filter(|&x| x != prev && f[x] != b && h.get(cur, x) != f[prev]).collect();
        cands.sort_by_key(|&x| (x == u, x));
        let next =
            *cands.first().ok_or_else(|| Error::Construction(format!("switching path from {u} is stuck at {cur}")))?;
        if !visited.insert((cur, next)) {
            return Err(Error::Construction(format!("switching path from {u} revisits ({cur},{next})")));
        }
        path.push(next);
        if h.get(next, cur) != b {
            break;
        }
    }
    for i in 1..path.len() - 1 {
        h.swap(path[i], path[i - 1], path[i + 1]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn dynamic_definition_examples() {
        let c5 = named::cycle(5);
        assert!(!is_r_dynamic(&c5, &[1, 2, 1, 2, 3], 2));
        assert!(is_r_dynamic(&c5, &[1, 2, 1, 2, 3], 1));
        assert!(is_r_dynamic(&named::complete(4), &[1, 2, 3, 4], 3));
    }

    /// Every assignment of `1..=k` to the vertices, checked by definition.
    fn brute_force_dynamic_exists(g: &Graph, r: usize, k: u32) -> bool {
        let n = g.order() as u32;
        (0..k.pow(n)).any(|mut code| {
            let f: Vec<u32> = (0..n)
                .map(|_| {
                    let c = code % k + 1;
                    code /= k;
                    c
                })
                .collect();
            is_r_dynamic(g, &f, r)
        })
    }

    #[test]
    fn dynamic_search_agrees_with_brute_force() {
        let c5 = named::cycle(5);
        // neighbors of neighbors on C5 form K5, so two colors per
        // neighborhood force five colors overall
        for k in 2..=5u32 {
            let found = matches!(find_dynamic_coloring(&c5, 2, k as usize, 100_000).unwrap(), DynamicSearch::Found(_));
            assert_eq!(found, brute_force_dynamic_exists(&c5, 2, k), "k = {k}");
        }
        match find_dynamic_coloring(&c5, 2, 5, 10_000).unwrap() {
            DynamicSearch::Found(f) => assert!(is_r_dynamic(&c5, &f, 2)),
            r => panic!("{r:?}"),
        }
        assert_eq!(
            find_dynamic_coloring(&named::complete(4), 3, 4, 100).unwrap(),
            DynamicSearch::Found(vec![1, 2, 3, 4])
        );
    }

    #[test]
    fn no_four_dynamic_coloring_with_four_colors_at_degree_four() {
        let g = named::circulant(9, &[1, 2]);
        assert_eq!(find_dynamic_coloring(&g, 4, 4, 1_000_000).unwrap(), DynamicSearch::Exhausted);
    }

    #[test]
    fn prism_two_incompatible() {
        let g = named::prism();
        let f = [1, 2, 3, 2, 3, 1];
        let h = two_incompatible(&g, &f).unwrap();
        assert!(h.is_proper(&g));
        assert!(h.incompatible_counts(&g, &f).iter().all(|&c| c <= 2));
    }

    #[test]
    fn cube_two_incompatible() {
        let g = named::hypercube(3);
        let f: Vec<u32> = (0..8u32).map(|v| 1 + (v.count_ones() % 2)).collect();
        let h = two_incompatible(&g, &f).unwrap();
        assert!(h.incompatible_counts(&g, &f).iter().all(|&c| c <= 2));
    }

    #[test]
    fn compatible_input_is_unchanged() {
        let g = named::prism();
        let f = [1, 2, 3, 2, 3, 1];
        let h = two_incompatible(&g, &f).unwrap();
        assert_eq!(two_incompatible_from(&g, &f, h.clone()).unwrap(), h);
    }

    #[test]
    fn complete_graph_rejected() {
        assert!(two_incompatible(&named::complete(4), &[1, 2, 3, 1]).is_err());
    }

    #[test]
    fn dynamic_compatible_on_circulant() {
        let g = named::circulant(12, &[1, 5, 6]);
        let DynamicSearch::Found(f) = find_dynamic_coloring(&g, 4, 5, 1_000_000).unwrap() else {
            panic!("no 4-dynamic coloring");
        };
        let h = dynamic_compatible(&g, &f).unwrap();
        assert!(h.is_proper(&g));
        assert!(h.incompatible_counts(&g, &f).iter().all(|&c| c == 0));
    }

    #[test]
    fn dynamic_compatible_checks_hypotheses() {
        let g = named::prism();
        assert!(dynamic_compatible(&g, &[1, 2, 3, 2, 3, 1]).is_err());
    }
}
