//! Half-edge colorings: proper edge colorings of `G^{1/2}` with Δ colors.
//!
//! The half-edge `e_uv` of edge `uv` is the half adjacent to `u`. With the
//! edges of a graph numbered in [`Graph::edges`] order, `e = (a, b)` and
//! `a < b`, arc `2e` is `e_ab` and arc `2e + 1` is `e_ba`. Colors are `1..=Δ`.

mod compat;
mod good;
mod star;

use std::collections::HashMap;

pub use compat::{
    dynamic_compatible, find_dynamic_coloring, is_r_dynamic, two_incompatible, two_incompatible_from, DynamicSearch,
};
pub use good::{
    check_flanking, find_bad_cycles, good_half_edge_coloring, good_half_edge_coloring_from,
    good_half_edge_coloring_traced, orient_good, BadCycle, GoodTrace, Orientation,
};
pub use star::{star_edge_coloring, StarEdgeColoring, STAR};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{ColoringProblem, SearchResult};

/// Default node budget for the searches run inside this module.
pub const HALF_EDGE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeColoring {
    delta: u32,
    edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    colors: Vec<u32>,
}

/// JSON form: one `{"u","v","color"}` object per half-edge `e_uv`.
impl serde::Serialize for HalfEdgeColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.colors.len()))?;
        for (arc, &color) in self.colors.iter().enumerate() {
            let (u, v) = self.arc_ends(arc);
            seq.serialize_element(&serde_json::json!({ "u": u, "v": v, "color": color }))?;
        }
        seq.end()
    }
}

impl HalfEdgeColoring {
    /// All arcs uncolored (color 0).
    pub fn blank(g: &Graph) -> Self {
        let edges = g.edges();
        let index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let colors = vec![0; 2 * edges.len()];
        Self { delta: g.max_degree() as u32, edges, index, colors }
    }

    /// Builds from per-arc colors in arc order.
    pub fn from_arcs(g: &Graph, colors: Vec<u32>) -> Result<Self> {
        let mut h = Self::blank(g);
        if colors.len() != h.colors.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} half-edge colors, got {}",
                h.colors.len(),
                colors.len()
            )));
        }
        h.colors = colors;
        Ok(h)
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn num_arcs(&self) -> usize {
        self.colors.len()
    }

    /// Arc number of `e_uv`.
    ///
    /// # Panics
    /// If `uv` is not an edge.
    pub fn arc(&self, u: usize, v: usize) -> usize {
        let e = self.index[&(u.min(v), u.max(v))];
        if u < v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// `(u, v)` of the arc `e_uv`.
    pub fn arc_ends(&self, arc: usize) -> (usize, usize) {
        let (a, b) = self.edges[arc / 2];
        if arc.is_multiple_of(2) {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.colors[self.arc(u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, c: u32) {
        let a = self.arc(u, v);
        self.colors[a] = c;
    }

    pub fn arc_colors(&self) -> &[u32] {
        &self.colors
    }

    /// Swaps the colors of `e_uv` and `e_uw`.
    pub fn swap(&mut self, u: usize, v: usize, w: usize) {
        let (a, b) = (self.arc(u, v), self.arc(u, w));
        self.colors.swap(a, b);
    }

    /// `Ok(())` if every arc has a color in `1..=Δ`, the colors at each vertex
    /// are distinct, and the two halves of each edge differ.
    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        for (arc, &c) in self.colors.iter().enumerate() {
            if c == 0 || c > self.delta {
                let (u, v) = self.arc_ends(arc);
                return Err(Error::Construction(format!(
                    "half-edge ({u},{v}) has color {c} outside 1..={}",
                    self.delta
                )));
            }
        }
        for (a, b) in g.edges() {
            if self.get(a, b) == self.get(b, a) {
                return Err(Error::Construction(format!(
                    "both halves of edge ({a},{b}) have color {}",
                    self.get(a, b)
                )));
            }
        }
        for u in 0..g.order() {
            let mut seen = 0u64;
            for &v in g.neighbors(u) {
                let bit = 1u64 << self.get(u, v);
                if seen & bit != 0 {
                    return Err(Error::Construction(format!("color {} repeats at vertex {u}", self.get(u, v))));
                }
                seen |= bit;
            }
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.check_proper(g).is_ok()
    }

    /// Number of incompatible half-edges `e_uv` (`h(e_uv) = f(v)`) at each
    /// vertex `u`.
    pub fn incompatible_counts(&self, g: &Graph, f: &[u32]) -> Vec<usize> {
        (0..g.order()).map(|u| g.neighbors(u).iter().filter(|&&v| self.get(u, v) == f[v]).count()).collect()
    }
}

/// Conflict graph on arcs: `e_uv` clashes with every other arc at `u` and
/// with `e_vu`.
pub(crate) fn arc_conflicts(h: &HalfEdgeColoring, g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); h.num_arcs()];
    for (arc, nb) in adj.iter_mut().enumerate() {
        let (u, v) = h.arc_ends(arc);
        nb.push(h.arc(v, u));
        for &w in g.neighbors(u) {
            if w != v {
                nb.push(h.arc(u, w));
            }
        }
        nb.sort_unstable();
    }
    adj
}

fn require_connected_delta3(g: &Graph) -> Result<()> {
    if g.max_degree() < 3 {
        return Err(Error::Hypothesis(format!("half-edge colorings need Δ >= 3, got {}", g.max_degree())));
    }
    if !g.is_connected() {
        return Err(Error::Hypothesis("graph must be connected".into()));
    }
    Ok(())
}

/// A proper half-edge coloring with exactly Δ colors, found by exact search
/// on the arc conflict graph.
pub fn half_edge_coloring(g: &Graph) -> Result<HalfEdgeColoring> {
    require_connected_delta3(g)?;
    let mut h = HalfEdgeColoring::blank(g);
    let adj = arc_conflicts(&h, g);
    let out = ColoringProblem::new(&adj, h.delta as usize).solve(HALF_EDGE_BUDGET);
    match out.result {
        SearchResult::Found(c) => {
            h.colors = c.into_iter().map(|c| c + 1).collect();
            h.check_proper(g)?;
            Ok(h)
        }
        SearchResult::Exhausted => Err(Error::Construction("no half-edge coloring with Δ colors".into())),
        SearchResult::Timeout => Err(Error::Budget(out.nodes)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::regular_embed;
    use crate::named;

    #[test]
    fn k4_half_edge_coloring() {
        let g = named::complete(4);
        let h = half_edge_coloring(&g).unwrap();
        assert_eq!(h.num_arcs(), 12);
        for u in 0..4 {
            let mut cs: Vec<u32> = g.neighbors(u).iter().map(|&v| h.get(u, v)).collect();
            cs.sort_unstable();
            assert_eq!(cs, vec![1, 2, 3]);
        }
    }

    #[test]
    fn prism_and_embedded_star() {
        assert!(half_edge_coloring(&named::prism()).unwrap().is_proper(&named::prism()));
        let g = regular_embed(&named::star(3)).unwrap();
        let h = half_edge_coloring(&g).unwrap();
        assert!(h.is_proper(&g));
        assert_eq!(h.delta(), 3);
    }

    #[test]
    fn small_degree_rejected() {
        assert!(half_edge_coloring(&named::cycle(5)).is_err());
    }

    #[test]
    fn properness_checker_catches_clash() {
        let g = named::complete(4);
        let mut h = half_edge_coloring(&g).unwrap();
        let c = h.get(0, 1);
        h.set(0, 2, c);
        assert!(!h.is_proper(&g));
    }
}
