//! Bad cycles, good half-edge colorings of cubic graphs, and the orientation
//! of half-edges that separates same-colored flanking pairs.

use std::collections::HashMap;

use super::{half_edge_coloring, HalfEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A cycle whose half-edges use only the two colors `colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadCycle {
    pub colors: (u32, u32),
    /// Vertices in cyclic order, starting at the smallest.
    pub vertices: Vec<usize>,
}

/// Inward/outward direction of every half-edge `e_uv`, keyed by `(u, v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    inward: HashMap<(usize, usize), bool>,
}

impl Orientation {
    pub fn is_inward(&self, u: usize, v: usize) -> bool {
        self.inward.get(&(u, v)).copied().unwrap_or(false)
    }

    pub fn set(&mut self, u: usize, v: usize, inward: bool) {
        self.inward.insert((u, v), inward);
    }
}

/// Output of [`good_half_edge_coloring_traced`].
#[derive(Clone, Debug)]
pub struct GoodTrace {
    pub coloring: HalfEdgeColoring,
    /// Number of bad cycles before the first switch and after each switch.
    pub bad_cycle_counts: Vec<usize>,
}

fn require_cubic(g: &Graph) -> Result<()> {
    if g.order() == 0 || !g.is_regular() || g.max_degree() != 3 {
        return Err(Error::Hypothesis("graph must be cubic".into()));
    }
    Ok(())
}

/// Components of the subgraph of `ab`-edges. Paths start at their smaller
/// endpoint; the flag marks cycles.
pub(crate) fn two_colored_components(g: &Graph, h: &HalfEdgeColoring, a: u32, b: u32) -> Vec<(Vec<usize>, bool)> {
    let mut adj = vec![Vec::new(); g.order()];
    for (u, v) in g.edges() {
        let pair = (h.get(u, v), h.get(v, u));
        if pair == (a, b) || pair == (b, a) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    // paths first from their endpoints, then whatever remains is a cycle
    for pass in 0..2 {
        for s in 0..g.order() {
            if seen[s] || adj[s].is_empty() || (pass == 0 && adj[s].len() != 1) {
                continue;
            }
            let mut walk = vec![s];
            seen[s] = true;
            let mut prev = usize::MAX;
            let mut cur = s;
            loop {
                let next = adj[cur].iter().copied().find(|&x| x != prev && !seen[x]);
                match next {
                    Some(x) => {
                        seen[x] = true;
                        walk.push(x);
                        prev = cur;
                        cur = x;
                    }
                    None => break,
                }
            }
            out.push((walk, pass == 1));
        }
    }
    out
}

/// All bad cycles of a cubic graph under `h`.
pub fn find_bad_cycles(g: &Graph, h: &HalfEdgeColoring) -> Result<Vec<BadCycle>> {
    require_cubic(g)?;
    let mut out = Vec::new();
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        for (vertices, cycle) in two_colored_components(g, h, a, b) {
            if cycle {
                out.push(BadCycle { colors: (a, b), vertices });
            }
        }
    }
    Ok(out)
}

/// A good half-edge coloring of a connected cubic graph.
pub fn good_half_edge_coloring(g: &Graph) -> Result<HalfEdgeColoring> {
    good_half_edge_coloring_traced(g).map(|t| t.coloring)
}

/// As [`good_half_edge_coloring`], recording the bad-cycle count after each
/// switch. Every switch is required to lower the count.
pub fn good_half_edge_coloring_traced(g: &Graph) -> Result<GoodTrace> {
    require_cubic(g)?;
    good_half_edge_coloring_from(g, half_edge_coloring(g)?)
}

/// Runs the bad-cycle switching loop from a given proper coloring `h`.
pub fn good_half_edge_coloring_from(g: &Graph, mut h: HalfEdgeColoring) -> Result<GoodTrace> {
    require_cubic(g)?;
    h.check_proper(g)?;
    let mut counts = vec![find_bad_cycles(g, &h)?.len()];
    loop {
        let cycles = find_bad_cycles(g, &h)?;
        if cycles.is_empty() {
            break;
        }
        let current = cycles.len();
        let cycle = &cycles[0];
        let len = cycle.vertices.len();
        let on_cycle = |x: usize| cycle.vertices.contains(&x);
        let mut candidates = Vec::new();
        for (i, &u) in cycle.vertices.iter().enumerate() {
            let (prev, next) = (cycle.vertices[(i + len - 1) % len], cycle.vertices[(i + 1) % len]);
            let v = g.neighbors(u).iter().copied().find(|&x| x != prev && x != next).expect("cubic");
            candidates.push((on_cycle(v), u, v, prev, next));
        }
        candidates.sort_by_key(|c| c.0);
        let mut done = false;
        for (_, u, v, prev, next) in candidates {
            let w = if h.get(u, prev) != h.get(v, u) { prev } else { next };
            h.swap(u, v, w);
            let after = find_bad_cycles(g, &h)?.len();
            if after < current && h.is_proper(g) {
                counts.push(after);
                done = true;
                break;
            }
            h.swap(u, v, w);
        }
        if !done {
            return Err(Error::Construction(format!(
                "no switch on bad cycle {:?} lowers the bad-cycle count",
                cycle.vertices
            )));
        }
    }
    h.check_proper(g)?;
    Ok(GoodTrace { coloring: h, bad_cycle_counts: counts })
}

/// Orients the half-edges of a cubic graph under a good coloring `h` so that
/// same-colored flanking half-edges point in opposite directions.
pub fn orient_good(g: &Graph, h: &HalfEdgeColoring) -> Result<Orientation> {
    require_cubic(g)?;
    let mut o = Orientation::default();
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        let c = 6 - a - b;
        for (path, cycle) in two_colored_components(g, h, a, b) {
            if cycle {
                return Err(Error::Hypothesis(format!("bad cycle {path:?} present")));
            }
            for (i, &x) in path.iter().enumerate() {
                let y = g.neighbors(x).iter().copied().find(|&y| h.get(x, y) == c).expect("proper cubic coloring");
                o.set(x, y, i % 2 == 0);
            }
        }
    }
    for (u, v) in g.edges() {
        for (x, y) in [(u, v), (v, u)] {
            if !o.inward.contains_key(&(x, y)) {
                o.set(x, y, false);
            }
        }
    }
    Ok(o)
}

/// Checks that for every edge `uv` and flanking half-edges `e_uu'`, `e_vv'`
/// of equal color, exactly one is oriented inwards.
pub fn check_flanking(g: &Graph, h: &HalfEdgeColoring, o: &Orientation) -> Result<()> {
    for (u, v) in g.edges() {
        for &up in g.neighbors(u).iter().filter(|&&x| x != v) {
            for &vp in g.neighbors(v).iter().filter(|&&x| x != u) {
                if h.get(u, up) == h.get(v, vp) && o.is_inward(u, up) == o.is_inward(v, vp) {
                    return Err(Error::Construction(format!(
                        "half-edges ({u},{up}) and ({v},{vp}) flank ({u},{v}) with equal color and direction"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    /// The prism with both triangles bad: 0-1-2 on colors 1, 2 and 3-4-5 on
    /// colors 2, 3.
    fn prism_with_bad_triangles() -> (Graph, HalfEdgeColoring) {
        let g = named::prism();
        let mut h = HalfEdgeColoring::blank(&g);
        let arcs = [
            (0, 1, 1),
            (1, 0, 2),
            (1, 2, 1),
            (2, 1, 2),
            (2, 0, 1),
            (0, 2, 2),
            (0, 3, 3),
            (1, 4, 3),
            (2, 5, 3),
            (3, 0, 1),
            (4, 1, 1),
            (5, 2, 1),
            (3, 4, 2),
            (4, 3, 3),
            (4, 5, 2),
            (5, 4, 3),
            (5, 3, 2),
            (3, 5, 3),
        ];
        for (u, v, c) in arcs {
            h.set(u, v, c);
        }
        (g, h)
    }

    #[test]
    fn detects_handmade_bad_triangles() {
        let (g, h) = prism_with_bad_triangles();
        assert!(h.is_proper(&g));
        let bad = find_bad_cycles(&g, &h).unwrap();
        assert_eq!(
            bad,
            vec![
                BadCycle { colors: (1, 2), vertices: vec![0, 1, 2] },
                BadCycle { colors: (2, 3), vertices: vec![3, 4, 5] },
            ]
        );
        assert!(orient_good(&g, &h).is_err());
        let t = good_half_edge_coloring_from(&g, h).unwrap();
        assert_eq!(t.bad_cycle_counts.first(), Some(&2));
        assert_eq!(t.bad_cycle_counts.last(), Some(&0));
        assert!(t.bad_cycle_counts.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn k4_has_no_bad_cycle_under_any_coloring() {
        // a bad triangle forces all three arcs into the fourth vertex to one
        // color, and a bad 4-cycle forces both halves of a chord to match
        let g = named::complete(4);
        let h = half_edge_coloring(&g).unwrap();
        assert!(find_bad_cycles(&g, &h).unwrap().is_empty());
    }

    #[test]
    fn good_colorings_of_small_cubic_graphs() {
        for g in [named::complete(4), named::prism(), named::petersen(), named::complete_bipartite(3, 3)] {
            let t = good_half_edge_coloring_traced(&g).unwrap();
            assert!(find_bad_cycles(&g, &t.coloring).unwrap().is_empty());
            assert!(t.bad_cycle_counts.windows(2).all(|w| w[1] < w[0]));
            let o = orient_good(&g, &t.coloring).unwrap();
            check_flanking(&g, &t.coloring, &o).unwrap();
        }
    }

    #[test]
    fn bad_cycles_are_edge_disjoint() {
        let g = named::complete_bipartite(3, 3);
        let h = half_edge_coloring(&g).unwrap();
        let mut used = std::collections::HashSet::new();
        for c in find_bad_cycles(&g, &h).unwrap() {
            let k = c.vertices.len();
            for i in 0..k {
                let (a, b) = (c.vertices[i], c.vertices[(i + 1) % k]);
                assert!(used.insert((a.min(b), a.max(b))));
            }
        }
    }

    #[test]
    fn path_alternation() {
        let (g, h) = prism_with_bad_triangles();
        let h = good_half_edge_coloring_from(&g, h).unwrap().coloring;
        h.check_proper(&g).unwrap();
        let o = orient_good(&g, &h).unwrap();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            let c = 6 - a - b;
            for (path, _) in two_colored_components(&g, &h, a, b) {
                for (i, &x) in path.iter().enumerate() {
                    let y = g.neighbors(x).iter().copied().find(|&y| h.get(x, y) == c).unwrap();
                    assert_eq!(o.is_inward(x, y), i % 2 == 0);
                }
            }
        }
    }

    #[test]
    fn non_cubic_rejected() {
        let g = named::complete(5);
        let h = HalfEdgeColoring::blank(&g);
        assert!(find_bad_cycles(&g, &h).is_err());
    }
}
