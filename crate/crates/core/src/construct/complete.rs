//! Complete graphs, odd `m`: `χ(K_r^{m/n}) = ω`.
//!
//! Base case `m = 3, n = 5` by a Hall matching per branch vertex, induction
//! on `m` for `n = m + 2`, middle parts filled from the position classes.

use std::collections::HashSet;

use serde::Serialize;

use super::{exact_omega, extend_to, finish, reduce_n, require, Colored, Partial, Report, FALLBACK_BUDGET};
use crate::color::{Color, VertexColoring};
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, FracPowGraph};
use crate::graph::Graph;
use crate::halfedge::half_edge_coloring;
use crate::matching::max_matching;
use crate::named;
use crate::oracle::{ensure_proper, omega_of};
use crate::search::{ColoringProblem, SearchResult};

/// Color switches made while matching the bubbles of `K_r^{3/5}`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HallTrace {
    /// `(i, p, x, y)`: before matching at `v_i`, the colors of `(v_p v_x)_1`
    /// and `(v_p v_y)_1` were exchanged.
    pub switches: Vec<(usize, usize, usize, usize)>,
    /// Largest number of switches needed at one branch vertex.
    pub max_switches_per_vertex: usize,
    /// `K_4` has no matching argument; its base coloring is searched.
    pub searched: bool,
}

/// Exact search for an ω-coloring in which color 0 is used on exactly the
/// branch vertices.
fn search_zero_on_branches(fp: &FracPowGraph) -> Result<VertexColoring> {
    let k = omega_of(fp)?;
    let mut problem = ColoringProblem::new(fp.adjacency(), k);
    for x in 0..fp.order() {
        if fp.is_branch(x) {
            problem.fix(x, 0);
        } else {
            problem.forbid(x, 1);
        }
    }
    let out = problem.solve(FALLBACK_BUDGET);
    match out.result {
        SearchResult::Found(c) => {
            Ok(VertexColoring::new(c.into_iter().map(|c| if c == 0 { Color::Zero } else { Color::Index(c) }).collect()))
        }
        SearchResult::Exhausted => Err(Error::Construction(format!("no {k}-coloring with 0 on branch vertices"))),
        SearchResult::Timeout => Err(Error::Budget(out.nodes)),
    }
}

/// `K_r^{3/5}` with `r + 1` colors: 0 on branch vertices, `i` on the crust
/// of `v_i` (colors `1..=r`), bubbles by Hall matching.
pub fn complete_base_coloring(r: usize) -> Result<(Colored, HallTrace)> {
    require(r >= 4, format!("needs r >= 4, got {r}"))?;
    let g = named::complete(r);
    let fp = frac_power(&g, 3, 5)?;
    let mut trace = HallTrace::default();
    if r == 4 {
        trace.searched = true;
        let coloring = search_zero_on_branches(&fp)?;
        ensure_proper(&fp, &coloring)?;
        return Ok((Colored { fp, coloring, report: Report::new("exact search, K4 base case") }, trace));
    }
    // bub[i][j]: color (1..=r, 0-based crust index + 1) of (v_i v_j)_1
    let mut bub = vec![vec![0u32; r]; r];
    let crust = |j: usize| j as u32 + 1;
    for i in 0..r {
        let mut switches = 0;
        loop {
            if let Some(assign) = match_at(&bub, i, r) {
                for (j, c) in assign {
                    bub[i][j] = c;
                }
                break;
            }
            let Some((p, x, y)) = find_switch(&bub, i, r) else {
                return Err(Error::Construction(format!("no switch makes Hall's condition hold at v_{}", i + 1)));
            };
            let (cx, cy) = (bub[p][x], bub[p][y]);
            bub[p][x] = cy;
            bub[p][y] = cx;
            trace.switches.push((i + 1, p + 1, x + 1, y + 1));
            switches += 1;
        }
        trace.max_switches_per_vertex = trace.max_switches_per_vertex.max(switches);
    }
    if trace.max_switches_per_vertex > 1 {
        log::warn!("K_{r}^(3/5): a branch vertex needed {} switches", trace.max_switches_per_vertex);
    }
    let mut colors = vec![Color::Zero; fp.order()];
    for u in 0..r {
        for v in 0..r {
            if u != v {
                colors[fp.at(u, v, 1)] = Color::Index(bub[u][v]);
                colors[fp.at(u, v, 2)] = Color::Index(crust(u));
            }
        }
    }
    let coloring = VertexColoring::new(colors);
    ensure_proper(&fp, &coloring)?;
    let mut report = Report::new("Hall matching per branch vertex");
    if !trace.switches.is_empty() {
        report.note(format!("{} color switches", trace.switches.len()));
    }
    Ok((Colored { fp, coloring, report }, trace))
}

/// Forbidden colors of `(v_i v_j)_1`: the crust color `j + 1` and, if
/// already colored, the color of `(v_j v_i)_1`.
fn allowed(bub: &[Vec<u32>], i: usize, j: usize, r: usize) -> Vec<usize> {
    (1..=r as u32)
        .filter(|&c| c != i as u32 + 1 && c != j as u32 + 1 && c != bub[j][i])
        .map(|c| c as usize - 1)
        .collect()
}

fn match_at(bub: &[Vec<u32>], i: usize, r: usize) -> Option<Vec<(usize, u32)>> {
    let js: Vec<usize> = (0..r).filter(|&j| j != i).collect();
    let left: Vec<Vec<usize>> = js.iter().map(|&j| allowed(bub, i, j, r)).collect();
    let m = max_matching(&left, r);
    m.iter().zip(&js).map(|(c, &j)| c.map(|c| (j, c as u32 + 1))).collect()
}

/// A switch of two bubble colors at an earlier vertex `p` (trying `v_1`
/// first) that keeps the bubbles of `p` proper and lets `v_i` match.
fn find_switch(bub: &[Vec<u32>], i: usize, r: usize) -> Option<(usize, usize, usize)> {
    for p in 0..i {
        for x in 0..r {
            for y in x + 1..r {
                if x == p || y == p {
                    continue;
                }
                let mut b = bub.to_vec();
                let (cx, cy) = (b[p][x], b[p][y]);
                b[p][x] = cy;
                b[p][y] = cx;
                let ok = |q: usize, c: u32| c != q as u32 + 1 && c != b[q][p];
                if ok(x, cy) && ok(y, cx) && match_at(&b, i, r).is_some() {
                    return Some((p, x, y));
                }
            }
        }
    }
    None
}

/// `K_r^{m/(m+2)}` with ω colors and 0 exactly on branch vertices.
fn near_coloring(r: usize, m: usize) -> Result<(Colored, HallTrace)> {
    if m == 3 {
        return complete_base_coloring(r);
    }
    let (prev, trace) = near_coloring(r, m - 2)?;
    let g = named::complete(r);
    let delta = (r - 1) as u32;
    let offset = ((m as u32 - 3) / 2) * delta + 1;
    let h = half_edge_coloring(&g)?;
    let fp = frac_power(&g, m, m + 2)?;
    let mut colors = vec![Color::Zero; fp.order()];
    for u in 0..r {
        for v in 0..r {
            if u == v {
                continue;
            }
            colors[fp.at(u, v, 1)] = Color::Index(offset + h.get(u, v));
            for i in 2..=m {
                colors[fp.at(u, v, i)] = *prev.coloring.get(prev.fp.at(u, v, i - 1));
            }
        }
    }
    let coloring = VertexColoring::new(colors);
    ensure_proper(&fp, &coloring)?;
    let mut report = prev.report.clone();
    report.method = "induction on m from the K_r base case".into();
    Ok((Colored { fp, coloring, report }, trace))
}

/// Colors used on position `q` of every superedge (from either end).
fn position_class(c: &Colored, q: usize) -> HashSet<Color> {
    let g = c.fp.base();
    let mut s = HashSet::new();
    for (u, v) in g.edges() {
        s.insert(*c.coloring.get(c.fp.at(u, v, q)));
        s.insert(*c.coloring.get(c.fp.at(v, u, q)));
    }
    s
}

/// `K_r^{m/n}` with ω colors for `r >= 4`, odd `m >= 3`, `n > m`.
pub fn color_complete(r: usize, m: usize, n: usize) -> Result<Colored> {
    require(r >= 4, format!("needs r >= 4, got {r}"))?;
    require(m >= 3 && m % 2 == 1, format!("m must be odd and at least 3, got {m}"))?;
    require(n > m, format!("need n > m, got m={m}, n={n}"))?;
    let g = named::complete(r);
    let n0 = reduce_n(m, n);
    let base = if n0 == m + 1 {
        exact_omega(&g, m, n0, FALLBACK_BUDGET)?
    } else {
        let (near, _) = near_coloring(r, m)?;
        if n0 == m + 2 {
            near
        } else {
            fill_middles(&g, &near, n0)?
        }
    };
    extend_to(base, n)
}

/// Bubbles and crusts from the `n = m + 2` coloring; `M_uv[i]` and
/// `M_vu[i]` take colors of position class `t + 1 - i` unused on the
/// superedge.
fn fill_middles(g: &Graph, near: &Colored, n: usize) -> Result<Colored> {
    let m = near.fp.m();
    let t = (m - 1) / 2;
    let classes: Vec<HashSet<Color>> = (0..=t + 1).map(|q| position_class(near, q.max(1))).collect();
    for q in 1..=t {
        for p in q + 1..=t {
            if !classes[q].is_disjoint(&classes[p]) {
                return Err(Error::Construction(format!("position classes {q} and {p} share a color")));
            }
        }
    }
    let fp = frac_power(g, m, n)?;
    let mut p = Partial::new(&fp);
    for u in 0..g.order() {
        p.set(u, Color::Zero);
    }
    for (a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            for i in 1..=t + 1 {
                p.set(fp.at(u, v, i), *near.coloring.get(near.fp.at(u, v, i)));
            }
        }
    }
    let len = fp.middle_len();
    let (k, l) = (len.div_ceil(2), len / 2);
    let mut unfilled = 0;
    for (a, b) in g.edges() {
        let mut used: HashSet<Color> = fp.superedge(a, b).iter().filter_map(|&x| p.get(x)).collect();
        for i in 1..=k {
            let mut class: Vec<Color> = classes[t + 1 - i].iter().copied().collect();
            class.sort();
            for (u, v, len) in [(a, b, k), (b, a, l)] {
                if i > len {
                    continue;
                }
                let x = fp.middle(u, v)[i - 1];
                let pick = class
                    .iter()
                    .copied()
                    .find(|c| !used.contains(c) && fp.neighbors(x).iter().all(|&y| p.get(y) != Some(*c)));
                match pick {
                    Some(c) => {
                        p.set(x, c);
                        used.insert(c);
                    }
                    None => unfilled += 1,
                }
            }
        }
    }
    let palette: Vec<Color> = {
        let mut s: Vec<Color> = near.coloring.palette();
        s.sort();
        s
    };
    let mut report = near.report.clone();
    if unfilled > 0 {
        report.note(format!("{unfilled} middle vertices had no free color in their class; filled by local repair"));
    }
    finish(p, &palette, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::omega_formula;

    fn crusts_uniform(c: &Colored) -> bool {
        (0..c.fp.base().order()).all(|u| {
            let cr = c.fp.crust(u).unwrap();
            cr.iter().all(|&x| c.coloring.get(x) == c.coloring.get(cr[0]))
        })
    }

    #[test]
    fn base_case_uses_r_plus_one_colors() {
        for r in 4..=8 {
            let (c, trace) = complete_base_coloring(r).unwrap();
            assert_eq!(c.num_colors(), r + 1, "K_{r}");
            assert!(trace.max_switches_per_vertex <= 1, "K_{r}: {trace:?}");
            assert!(crusts_uniform(&c));
        }
    }

    #[test]
    fn induction_and_middles() {
        for (r, m, n) in [(4, 5, 7), (5, 5, 7), (4, 5, 9), (5, 5, 10), (4, 7, 12), (6, 3, 6), (5, 3, 7)] {
            let c = color_complete(r, m, n).unwrap();
            let w = omega_formula(r as i64 - 1, m as i64).unwrap();
            assert_eq!(c.num_colors(), w, "K_{r}, m={m}, n={n}");
            assert!(crusts_uniform(&c));
        }
    }

    #[test]
    fn rejects_small_or_even() {
        assert!(color_complete(3, 3, 5).is_err());
        assert!(color_complete(5, 4, 5).is_err());
    }
}
