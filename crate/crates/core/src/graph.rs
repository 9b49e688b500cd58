//! Simple undirected graphs with stable vertex labels.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex label. Integer labels order numerically and before names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Int(u64),
    Name(String),
    /// Copy `copy` (>= 1) of a vertex, introduced by [`regular_embed`].
    Copy(Box<Label>, u32),
}

impl Label {
    pub fn parse(s: &str) -> Label {
        match s.parse::<u64>() {
            Ok(i) => Label::Int(i),
            Err(_) => Label::Name(s.to_string()),
        }
    }

    /// Copy index; 0 for an original vertex.
    pub fn copy_index(&self) -> u32 {
        match self {
            Label::Copy(_, c) => *c,
            _ => 0,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => write!(f, "{s}"),
            Label::Copy(l, c) => write!(f, "{l}~{c}"),
        }
    }
}

impl From<u64> for Label {
    fn from(v: u64) -> Self {
        Label::Int(v)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::parse(s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Int(i) => s.serialize_u64(*i),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Int(i) => Label::Int(i),
            Raw::Str(s) => Label::Name(s),
        })
    }
}

/// Finite simple undirected graph. Vertices are addressed by index in
/// insertion order; adjacency lists are kept sorted.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` labelled by their integer index.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(Label::Int(i as u64));
        }
        g
    }

    /// Build from integer-indexed edges on `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds a vertex (or returns the existing index for that label).
    pub fn add_vertex(&mut self, label: Label) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.adj.push(Vec::new());
        i
    }

    /// Adds the edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::Loop(self.labels[u].to_string()));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                Ok(true)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        let d = self.max_degree();
        self.adj.iter().all(|a| a.len() == d)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// BFS distances from `s`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.order()];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn all_distances(&self) -> Vec<Vec<u32>> {
        (0..self.order()).map(|s| self.bfs(s)).collect()
    }

    /// Subgraph induced by `vertices`, keeping labels and the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new();
        let mut map = HashMap::new();
        for &v in vertices {
            map.insert(v, g.add_vertex(self.labels[v].clone()));
        }
        for &v in vertices {
            for &w in &self.adj[v] {
                if let (Some(&a), Some(&b)) = (map.get(&v), map.get(&w)) {
                    if a < b {
                        g.add_edge(a, b).expect("induced subgraph of a simple graph");
                    }
                }
            }
        }
        g
    }

    /// Whether `self` restricted to the labels of `sub` reproduces `sub` exactly.
    pub fn contains_induced(&self, sub: &Graph) -> bool {
        let Some(map) = sub.labels.iter().map(|l| self.index_of(l)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        for a in 0..sub.order() {
            for b in (a + 1)..sub.order() {
                if sub.has_edge(a, b) != self.has_edge(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A `Δ(g)`-regular supergraph containing `g` as an induced subgraph.
///
/// Repeatedly takes two disjoint copies and joins corresponding vertices of
/// degree below `Δ`. The original vertices keep their indices and labels
/// (copy index 0); every further copy gets a [`Label::Copy`] label.
pub fn regular_embed(g: &Graph) -> Result<Graph> {
    if g.is_empty() {
        return Err(Error::InvalidParameter("cannot embed the empty graph".into()));
    }
    let delta = g.max_degree();
    // (original vertex, copy index) for every current vertex
    let mut origin: Vec<(usize, u32)> = (0..g.order()).map(|v| (v, 0)).collect();
    let mut cur = g.clone();
    while !cur.is_regular() {
        let n = cur.order();
        let copies = origin.iter().map(|&(_, c)| c).max().unwrap_or(0) + 1;
        let mut next = cur.clone();
        let mut next_origin = origin.clone();
        for v in 0..n {
            let (o, c) = origin[v];
            let c2 = c + copies;
            next.add_vertex(Label::Copy(Box::new(g.label(o).clone()), c2));
            next_origin.push((o, c2));
        }
        for (u, v) in cur.edges() {
            next.add_edge(u + n, v + n)?;
        }
        for v in 0..n {
            if cur.degree(v) < delta {
                next.add_edge(v, v + n)?;
            }
        }
        cur = next;
        origin = next_origin;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn edges_are_collapsed_and_loops_rejected() {
        let mut g = Graph::with_vertices(2);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.size(), 1);
        assert!(matches!(g.add_edge(1, 1), Err(Error::Loop(_))));
    }

    #[test]
    fn regular_embed_keeps_regular_input() {
        let k4 = crate::named::complete(4);
        assert_eq!(regular_embed(&k4).unwrap(), k4);
    }

    #[test]
    fn regular_embed_path_and_star() {
        for g in [path3(), crate::named::star(3)] {
            let h = regular_embed(&g).unwrap();
            assert!(h.is_regular());
            assert_eq!(h.max_degree(), g.max_degree());
            assert!(h.contains_induced(&g));
            for v in 0..g.order() {
                assert_eq!(h.label(v), g.label(v));
            }
        }
        assert!(regular_embed(&path3()).unwrap().order() >= 4);
    }

    #[test]
    fn copy_labels_carry_index() {
        let h = regular_embed(&path3()).unwrap();
        assert_eq!(h.label(0).copy_index(), 0);
        assert_eq!(h.label(3).copy_index(), 1);
        assert_eq!(h.label(3).to_string(), "0~1");
    }
}
