//! Subdivisions, powers and fractional powers `G^{m/n}`, together with the
//! superedge anatomy (bubbles, crusts, middle parts).
//!
//! Vertex indices: branch vertex `u` of the base graph is index `u`; the
//! internal vertex at distance `p` (`1 <= p < n`) from the smaller endpoint
//! `a` of base edge number `e = (a, b)` is `|V| + e (n - 1) + p - 1`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Structured identity of a vertex of `G^{m/n}`, in canonical form: for
/// internal vertices `u < v` (by base vertex index) and `(uv)_i` lies at
/// subdivision distance `i` from `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "VertexRepr", try_from = "VertexRepr")]
pub enum FPVertex {
    Branch(usize),
    Internal { u: usize, v: usize, i: usize },
}

/// JSON form: `{"kind":"branch","u":..}` or `{"kind":"internal","u":..,"v":..,"i":..}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum VertexRepr {
    Branch { u: usize },
    Internal { u: usize, v: usize, i: usize },
}

impl From<FPVertex> for VertexRepr {
    fn from(x: FPVertex) -> Self {
        match x {
            FPVertex::Branch(u) => VertexRepr::Branch { u },
            FPVertex::Internal { u, v, i } => VertexRepr::Internal { u, v, i },
        }
    }
}

impl TryFrom<VertexRepr> for FPVertex {
    type Error = String;

    fn try_from(r: VertexRepr) -> std::result::Result<Self, String> {
        match r {
            VertexRepr::Branch { u } => Ok(FPVertex::Branch(u)),
            VertexRepr::Internal { u, v, i } if u < v && i > 0 => Ok(FPVertex::Internal { u, v, i }),
            VertexRepr::Internal { u, v, i } => Err(format!("internal vertex ({u},{v},{i}) is not canonical")),
        }
    }
}

impl FPVertex {
    /// Canonical form of `(uv)_i` with `0 < i < n`.
    pub fn internal(u: usize, v: usize, i: usize, n: usize) -> FPVertex {
        if u < v {
            FPVertex::Internal { u, v, i }
        } else {
            FPVertex::Internal { u: v, v: u, i: n - i }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FracPowGraph {
    base: Graph,
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    edge_id: HashMap<(usize, usize), usize>,
    base_dist: Vec<Vec<u32>>,
    adj: Vec<Vec<usize>>,
    power_edges: usize,
}

/// `G^{1/n}`: every edge replaced by a path of length `n`.
pub fn subdivide(g: &Graph, n: usize) -> Result<FracPowGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("subdivision length n must be >= 1".into()));
    }
    Ok(FracPowGraph::build(g.clone(), 1, n))
}

/// `fp^m`; `fp` must be a plain subdivision (`m = 1`).
pub fn power(fp: &FracPowGraph, m: usize) -> Result<FracPowGraph> {
    if m == 0 {
        return Err(Error::InvalidParameter("power m must be >= 1".into()));
    }
    if fp.m != 1 {
        return Err(Error::InvalidParameter("power expects a subdivision (m = 1)".into()));
    }
    Ok(FracPowGraph::build(fp.base.clone(), m, fp.n))
}

/// `G^{m/n} = (G^{1/n})^m` for `1 <= m < n`.
pub fn frac_power(g: &Graph, m: usize, n: usize) -> Result<FracPowGraph> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    power(&subdivide(g, n)?, m)
}

impl FracPowGraph {
    fn build(base: Graph, m: usize, n: usize) -> Self {
        let edges = base.edges();
        let edge_id = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let base_dist = base.all_distances();
        let mut fp = FracPowGraph { base, m, n, edges, edge_id, base_dist, adj: Vec::new(), power_edges: 0 };
        let total = fp.order();
        let mut adj = Vec::with_capacity(total);
        for x in 0..total {
            let mut nb: Vec<usize> = fp.ball(x, m).into_iter().map(|(y, _)| y).filter(|&y| y != x).collect();
            nb.sort_unstable();
            adj.push(nb);
        }
        fp.power_edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        fp.adj = adj;
        fp
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Same base graph and `n`, different power.
    pub fn with_power(&self, m: usize) -> Result<FracPowGraph> {
        if m == 0 {
            return Err(Error::InvalidParameter("power m must be >= 1".into()));
        }
        Ok(FracPowGraph::build(self.base.clone(), m, self.n))
    }

    pub fn order(&self) -> usize {
        self.base.order() + self.edges.len() * (self.n - 1)
    }

    /// Number of edges of the power graph.
    pub fn size(&self) -> usize {
        self.power_edges
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }

    pub fn base_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_id.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_branch(&self, x: usize) -> bool {
        x < self.base.order()
    }

    /// `(edge id, distance from the smaller endpoint)` of an internal vertex.
    fn locate(&self, x: usize) -> (usize, usize) {
        let k = x - self.base.order();
        (k / (self.n - 1), k % (self.n - 1) + 1)
    }

    pub fn vertex(&self, x: usize) -> FPVertex {
        if self.is_branch(x) {
            FPVertex::Branch(x)
        } else {
            let (e, i) = self.locate(x);
            let (u, v) = self.edges[e];
            FPVertex::Internal { u, v, i }
        }
    }

    pub fn index(&self, fv: FPVertex) -> Option<usize> {
        match fv {
            FPVertex::Branch(u) => (u < self.base.order()).then_some(u),
            FPVertex::Internal { u, v, i } => {
                if i == 0 || i >= self.n {
                    return None;
                }
                self.edge_id(u, v)?;
                Some(self.at(u, v, i))
            }
        }
    }

    /// The vertex `(uv)_i` for a base edge `uv` and `0 <= i <= n`.
    ///
    /// # Panics
    /// If `uv` is not an edge or `i > n`.
    pub fn at(&self, u: usize, v: usize, i: usize) -> usize {
        assert!(i <= self.n, "position {i} beyond superedge length {}", self.n);
        if i == 0 {
            return u;
        }
        if i == self.n {
            return v;
        }
        let e = self.edge_id(u, v).unwrap_or_else(|| panic!("{u}{v} is not a base edge"));
        let p = if u < v { i } else { self.n - i };
        self.base.order() + e * (self.n - 1) + p - 1
    }

    /// Vertices `(uv)_0, ..., (uv)_n` of the superedge `P_uv`.
    pub fn superedge(&self, u: usize, v: usize) -> Vec<usize> {
        (0..=self.n).map(|i| self.at(u, v, i)).collect()
    }

    /// Internal vertices of superedge number `e`, from its smaller endpoint.
    pub fn internal_of_edge(&self, e: usize) -> Vec<usize> {
        let start = self.base.order() + e * (self.n - 1);
        (start..start + self.n - 1).collect()
    }

    /// Base edge id carrying internal vertex `x`.
    pub fn edge_of(&self, x: usize) -> Option<usize> {
        (!self.is_branch(x)).then(|| self.locate(x).0)
    }

    /// Neighbors of `x` in the subdivision `G^{1/n}`.
    pub fn sub_neighbors(&self, x: usize) -> Vec<usize> {
        if self.is_branch(x) {
            return self.base.neighbors(x).iter().map(|&w| self.at(x, w, 1)).collect();
        }
        let (e, p) = self.locate(x);
        let (a, b) = self.edges[e];
        vec![self.at(a, b, p - 1), self.at(a, b, p + 1)]
    }

    /// All vertices within subdivision distance `r` of `x`, with distances.
    pub fn ball(&self, x: usize, r: usize) -> Vec<(usize, u32)> {
        let mut seen = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(x, 0u32);
        queue.push_back(x);
        let mut out = vec![(x, 0)];
        while let Some(y) = queue.pop_front() {
            let d = seen[&y];
            if d as usize == r {
                continue;
            }
            for z in self.sub_neighbors(y) {
                if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(z) {
                    slot.insert(d + 1);
                    out.push((z, d + 1));
                    queue.push_back(z);
                }
            }
        }
        out
    }

    /// `(base vertex, distance to it)` anchors of a vertex.
    fn anchors(&self, x: usize) -> [(usize, u64); 2] {
        if self.is_branch(x) {
            [(x, 0), (x, 0)]
        } else {
            let (e, p) = self.locate(x);
            let (a, b) = self.edges[e];
            [(a, p as u64), (b, (self.n - p) as u64)]
        }
    }

    /// Distance in `G^{1/n}`, from base-graph distances routed through
    /// superedge endpoints. `u64::MAX` if disconnected.
    pub fn distance(&self, x: usize, y: usize) -> u64 {
        if x == y {
            return 0;
        }
        let mut best = u64::MAX;
        if !self.is_branch(x) && !self.is_branch(y) {
            let (ex, px) = self.locate(x);
            let (ey, py) = self.locate(y);
            if ex == ey {
                return px.abs_diff(py) as u64;
            }
        }
        for (p, dp) in self.anchors(x) {
            for (q, dq) in self.anchors(y) {
                let d = self.base_dist[p][q];
                if d != u32::MAX {
                    best = best.min(dp + self.n as u64 * d as u64 + dq);
                }
            }
        }
        best
    }

    /// Vertices at which Δ(G) is attained.
    pub fn max_degree_vertices(&self) -> Vec<usize> {
        let d = self.base.max_degree();
        (0..self.base.order()).filter(|&u| self.base.degree(u) == d).collect()
    }

    /// `B_uv = ((uv)_1, ..., (uv)_{floor(m/2)})`.
    pub fn bubble(&self, u: usize, v: usize) -> Vec<usize> {
        (1..=self.m / 2).map(|i| self.at(u, v, i)).collect()
    }

    /// `C_u = {(uv)_{(m+1)/2}}` for odd `m`.
    pub fn crust(&self, u: usize) -> Result<Vec<usize>> {
        if self.m.is_multiple_of(2) {
            return Err(Error::InvalidParameter("crusts exist only for odd m".into()));
        }
        Ok(self.base.neighbors(u).iter().map(|&v| self.at(u, v, self.m.div_ceil(2))).collect())
    }

    /// `M_uv = ((uv)_{ceil(m/2)+1}, ..., (uv)_{n-ceil(m/2)-1})`, possibly empty.
    pub fn middle(&self, u: usize, v: usize) -> Vec<usize> {
        let c = self.m.div_ceil(2);
        if self.n < 2 * c + 2 {
            return Vec::new();
        }
        ((c + 1)..=(self.n - c - 1)).map(|i| self.at(u, v, i)).collect()
    }

    /// Length of every middle part, `n - 2 ceil(m/2) - 1` clamped at 0.
    pub fn middle_len(&self) -> usize {
        (self.n + 1).saturating_sub(2 * self.m.div_ceil(2) + 2)
    }

    pub fn anatomy(&self) -> Result<Anatomy> {
        if self.m >= self.n {
            return Err(Error::InvalidParameter("anatomy requires m < n".into()));
        }
        let mut bubbles = HashMap::new();
        let mut middles = HashMap::new();
        for &(u, v) in &self.edges {
            for (a, b) in [(u, v), (v, u)] {
                bubbles.insert((a, b), self.bubble(a, b));
                middles.insert((a, b), self.middle(a, b));
            }
        }
        let crusts = if self.m % 2 == 1 {
            Some((0..self.base.order()).map(|u| self.crust(u)).collect::<Result<Vec<_>>>()?)
        } else {
            None
        };
        Ok(Anatomy { m: self.m, n: self.n, bubbles, crusts, middles })
    }
}

/// Bubbles, crusts and middle parts of every superedge.
#[derive(Clone, Debug)]
pub struct Anatomy {
    pub m: usize,
    pub n: usize,
    bubbles: HashMap<(usize, usize), Vec<usize>>,
    crusts: Option<Vec<Vec<usize>>>,
    middles: HashMap<(usize, usize), Vec<usize>>,
}

impl Anatomy {
    pub fn bubble(&self, u: usize, v: usize) -> &[usize] {
        &self.bubbles[&(u, v)]
    }

    pub fn middle(&self, u: usize, v: usize) -> &[usize] {
        &self.middles[&(u, v)]
    }

    pub fn crust(&self, u: usize) -> Result<&[usize]> {
        self.crusts
            .as_ref()
            .map(|c| c[u].as_slice())
            .ok_or_else(|| Error::InvalidParameter("crusts exist only for odd m".into()))
    }

    /// How many anatomy parts each vertex belongs to (branch vertices count
    /// once). Middles are counted once per superedge.
    pub fn classification_counts(&self, fp: &FracPowGraph) -> Vec<usize> {
        let mut count = vec![0usize; fp.order()];
        for c in count.iter_mut().take(fp.base().order()) {
            *c += 1;
        }
        for b in self.bubbles.values() {
            for &x in b {
                count[x] += 1;
            }
        }
        if let Some(crusts) = &self.crusts {
            for c in crusts {
                for &x in c {
                    count[x] += 1;
                }
            }
        }
        for (&(u, v), mid) in &self.middles {
            if u < v {
                for &x in mid {
                    count[x] += 1;
                }
            }
        }
        count
    }
}

/// 1-based tuple helpers mirroring `A[i:j]`, `reverse(A)` and `A * B`.
pub mod tuple {
    /// `A[i:j]`, empty when `j < i`.
    pub fn slice<T: Clone>(a: &[T], i: usize, j: usize) -> Vec<T> {
        if j < i || i == 0 {
            return Vec::new();
        }
        a[i - 1..j].to_vec()
    }

    pub fn rev<T: Clone>(a: &[T]) -> Vec<T> {
        a.iter().rev().cloned().collect()
    }

    pub fn merge<T: Clone>(a: &[T], b: &[T]) -> Vec<T> {
        a.iter().chain(b).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn vertex_json_form() {
        let b = serde_json::to_string(&FPVertex::Branch(3)).unwrap();
        assert_eq!(b, r#"{"kind":"branch","u":3}"#);
        let x = FPVertex::internal(4, 1, 2, 5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"kind":"internal","u":1,"v":4,"i":3}"#);
        assert_eq!(serde_json::from_str::<FPVertex>(&s).unwrap(), x);
        assert!(serde_json::from_str::<FPVertex>(r#"{"kind":"internal","u":4,"v":1,"i":3}"#).is_err());
    }

    #[test]
    fn subdivision_counts() {
        let s = subdivide(&named::complete(4), 3).unwrap();
        assert_eq!((s.order(), s.size()), (16, 18));
        let s = subdivide(&named::prism(), 5).unwrap();
        assert_eq!((s.order(), s.size()), (42, 45));
        assert!(subdivide(&named::prism(), 0).is_err());
    }

    #[test]
    fn subdivision_with_n_one_is_the_graph() {
        let g = named::petersen();
        let s = subdivide(&g, 1).unwrap();
        assert_eq!(s.order(), g.order());
        for (u, v) in g.edges() {
            assert!(s.has_edge(u, v));
        }
        assert_eq!(s.size(), g.size());
    }

    #[test]
    fn power_of_path() {
        // P4 as the 3-subdivision of K2
        let s = subdivide(&named::complete(2), 3).unwrap();
        assert_eq!(power(&s, 2).unwrap().size(), 5);
        assert_eq!(power(&s, 1).unwrap().size(), s.size());
        assert_eq!(power(&s, 3).unwrap().size(), 6);
        assert!(power(&s, 0).is_err());
    }

    #[test]
    fn frac_power_requires_m_below_n() {
        assert!(frac_power(&named::complete(3), 3, 3).is_err());
        assert!(frac_power(&named::complete(3), 2, 3).is_ok());
    }

    #[test]
    fn canonical_internal_vertex() {
        let fp = frac_power(&named::complete(3), 2, 5).unwrap();
        let x = fp.at(2, 0, 1);
        assert_eq!(fp.vertex(x), FPVertex::Internal { u: 0, v: 2, i: 4 });
        assert_eq!(FPVertex::internal(2, 0, 1, 5), fp.vertex(x));
        assert_eq!(fp.index(fp.vertex(x)), Some(x));
    }

    #[test]
    fn anatomy_examples() {
        let g = named::complete(2);
        let fp = frac_power(&g, 3, 5).unwrap();
        assert_eq!(fp.bubble(0, 1), vec![fp.at(0, 1, 1)]);
        assert!(fp.crust(0).unwrap().contains(&fp.at(0, 1, 2)));
        assert!(fp.middle(0, 1).is_empty());

        let fp = frac_power(&g, 2, 4).unwrap();
        assert_eq!(fp.bubble(0, 1), vec![fp.at(0, 1, 1)]);
        assert_eq!(fp.middle(0, 1), vec![fp.at(0, 1, 2)]);
        assert_eq!(fp.bubble(1, 0), vec![fp.at(0, 1, 3)]);
        assert!(fp.crust(0).is_err());

        let fp = frac_power(&g, 4, 7).unwrap();
        assert_eq!(fp.bubble(0, 1).len(), 2);
        assert_eq!(fp.middle(0, 1), vec![fp.at(0, 1, 3), fp.at(0, 1, 4)]);
    }

    #[test]
    fn tuple_helpers() {
        let a = [1, 2, 3, 4];
        assert_eq!(tuple::slice(&a, 2, 3), vec![2, 3]);
        assert_eq!(tuple::slice(&a, 1, 0), Vec::<i32>::new());
        assert_eq!(tuple::slice(&tuple::rev(&a), 1, 2), vec![4, 3]);
        assert_eq!(tuple::merge(&[1], &[2, 3]), vec![1, 2, 3]);
    }
}
