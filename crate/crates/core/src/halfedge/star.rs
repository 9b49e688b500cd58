//! `{1,2,3,*}` edge colorings of cubic graphs in which every `*`-edge sees
//! all of 1, 2, 3, with the orientation of the subgraphs `G_a`.

use super::HALF_EDGE_BUDGET;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{k_color, SearchResult};

/// The color `*`.
pub const STAR: u8 = 4;

/// Edge colors in [`Graph::edges`] order, together with a direction
/// `(tail, head)` for every edge that lies in some `G_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarEdgeColoring {
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<u8>,
    pub directions: Vec<Option<(usize, usize)>>,
}

/// JSON form: one `{"u","v","color"}` object per edge, `*`-edges with the
/// literal color `"*"` and their direction as `"from"`.
impl serde::Serialize for StarEdgeColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.edges.len()))?;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let item = match (self.colors[i], self.directions[i]) {
                (STAR, Some((from, _))) => serde_json::json!({ "u": u, "v": v, "color": "*", "from": from }),
                (STAR, None) => serde_json::json!({ "u": u, "v": v, "color": "*" }),
                (c, _) => serde_json::json!({ "u": u, "v": v, "color": c }),
            };
            seq.serialize_element(&item)?;
        }
        seq.end()
    }
}

impl StarEdgeColoring {
    pub fn edge_index(&self, u: usize, v: usize) -> usize {
        self.edges.binary_search(&(u.min(v), u.max(v))).expect("edge")
    }

    pub fn color(&self, u: usize, v: usize) -> u8 {
        self.colors[self.edge_index(u, v)]
    }

    /// True if `uv` is oriented from `u` to `v`.
    pub fn points_from(&self, u: usize, v: usize) -> bool {
        self.directions[self.edge_index(u, v)] == Some((u, v))
    }

    pub fn star_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().zip(&self.colors).filter(|(_, &c)| c == STAR).map(|(&e, _)| e).collect()
    }

    /// Colors of `1, 2, 3` not present at `u` among edges other than `uv`.
    pub fn missing(&self, g: &Graph, u: usize, skip: usize) -> Vec<u8> {
        let present: Vec<u8> = g.neighbors(u).iter().filter(|&&w| w != skip).map(|&w| self.color(u, w)).collect();
        (1..=3).filter(|c| !present.contains(c)).collect()
    }

    /// The edges of `G_a`: all `a`-edges and the `*`-edges both of whose ends
    /// meet an `a`-edge.
    pub fn g_a(&self, g: &Graph, a: u8) -> Vec<usize> {
        let meets = |x: usize| g.neighbors(x).iter().any(|&w| self.color(x, w) == a);
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                self.colors[e] == a || (self.colors[e] == STAR && meets(u) && meets(v))
            })
            .collect()
    }
}

/// Orients every component of a graph of maximum degree 2 (given by edge
/// ids and endpoints) so that in- and out-degrees are at most 1.
pub(crate) fn orient_paths_and_cycles(n: usize, edges: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize)> {
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &(_, u, v)) in edges.iter().enumerate() {
        inc[u].push((k, v));
        inc[v].push((k, u));
    }
    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();
    for pass in 0..2 {
        for s in 0..n {
            if pass == 0 && inc[s].len() != 1 {
                continue;
            }
            let mut cur = s;
            while let Some(&(k, w)) = inc[cur].iter().find(|(k, _)| !used[*k]) {
                used[k] = true;
                out.push((edges[k].0, cur, w));
                cur = w;
            }
        }
    }
    out
}

fn initial_coloring(g: &Graph, edges: &[(usize, usize)]) -> Result<Vec<u8>> {
    let mut line = vec![Vec::new(); edges.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate() {
            if i != j && (a == c || a == d || b == c || b == d) {
                line[i].push(j);
            }
        }
    }
    if let SearchResult::Found(c) = k_color(&line, 3, 1_000_000).result {
        return Ok(c.into_iter().map(|c| c as u8 + 1).collect());
    }
    match k_color(&line, 4, HALF_EDGE_BUDGET).result {
        SearchResult::Found(c) => {
            let mut sizes = [0usize; 4];
            for &x in &c {
                sizes[x as usize] += 1;
            }
            let star = (0..4).min_by_key(|&x| (sizes[x], std::cmp::Reverse(x))).unwrap() as u32;
            let mut rest = (0..4u32).filter(|&x| x != star);
            let map: Vec<(u32, u8)> =
                vec![(rest.next().unwrap(), 1), (rest.next().unwrap(), 2), (rest.next().unwrap(), 3), (star, STAR)];
            Ok(c.into_iter().map(|x| map.iter().find(|m| m.0 == x).unwrap().1).collect())
        }
        _ => Err(Error::Construction(format!("no 4-edge-coloring found for a graph on {} vertices", g.order()))),
    }
}

/// Alternating `(first, second)` path from `start` beginning with its
/// `first`-colored edge; edge ids in order.
fn kempe_path(g: &Graph, s: &StarEdgeColoring, start: usize, first: u8, second: u8) -> (Vec<usize>, Vec<usize>) {
    let mut vertices = vec![start];
    let mut ids = Vec::new();
    let mut cur = start;
    let mut want = first;
    loop {
        let next =
            g.neighbors(cur).iter().copied().find(|&w| s.color(cur, w) == want && !ids.contains(&s.edge_index(cur, w)));
        match next {
            Some(w) => {
                ids.push(s.edge_index(cur, w));
                vertices.push(w);
                cur = w;
                want = if want == first { second } else { first };
            }
            None => return (vertices, ids),
        }
    }
}

/// Tries to remove the `*` from edge `uv`; true on success.
fn improve_edge(g: &Graph, s: &mut StarEdgeColoring, e: usize) -> bool {
    let (u, v) = s.edges[e];
    let (mu, mv) = (s.missing(g, u, v), s.missing(g, v, u));
    if let Some(&c) = mu.iter().find(|c| mv.contains(c)) {
        s.colors[e] = c;
        return true;
    }
    for (x, y, mx, my) in [(u, v, &mu, &mv), (v, u, &mv, &mu)] {
        for &cx in mx {
            for &cy in my {
                // y has a cx-edge (the missing sets are disjoint); swap the
                // (cx, cy) chain from y unless it reaches x
                let (path, ids) = kempe_path(g, s, y, cx, cy);
                if path.contains(&x) {
                    continue;
                }
                for id in ids {
                    s.colors[id] = if s.colors[id] == cx { cy } else { cx };
                }
                s.colors[e] = cx;
                return true;
            }
        }
    }
    false
}

fn check_star(g: &Graph, s: &StarEdgeColoring) -> Result<()> {
    for u in 0..g.order() {
        let mut seen = [false; 5];
        for &w in g.neighbors(u) {
            let c = s.color(u, w) as usize;
            if seen[c] {
                return Err(Error::Construction(format!("edge color {c} repeats at vertex {u}")));
            }
            seen[c] = true;
        }
    }
    for (u, v) in s.star_edges() {
        let mut around: Vec<u8> = g.neighbors(u).iter().filter(|&&w| w != v).map(|&w| s.color(u, w)).collect();
        around.extend(g.neighbors(v).iter().filter(|&&w| w != u).map(|&w| s.color(v, w)));
        if !(1..=3).all(|c| around.contains(&c)) {
            return Err(Error::Construction(format!("*-edge ({u},{v}) does not see all of 1, 2, 3")));
        }
    }
    let mut owner = vec![0u8; s.edges.len()];
    for a in 1..=3 {
        for e in s.g_a(g, a) {
            if owner[e] != 0 {
                let (u, v) = s.edges[e];
                return Err(Error::Construction(format!("edge ({u},{v}) lies in G_{} and G_{a}", owner[e])));
            }
            owner[e] = a;
        }
    }
    if let Some(e) = owner.iter().position(|&o| o == 0) {
        let (u, v) = s.edges[e];
        return Err(Error::Construction(format!("edge ({u},{v}) lies in no G_a")));
    }
    Ok(())
}

/// A `{1,2,3,*}` edge coloring of a cubic graph, locally minimal in `*`, with
/// each `G_a` oriented so that in- and out-degrees are at most 1.
pub fn star_edge_coloring(g: &Graph) -> Result<StarEdgeColoring> {
    if g.order() == 0 || !g.is_regular() || g.max_degree() != 3 {
        return Err(Error::Hypothesis("graph must be cubic".into()));
    }
    let edges = g.edges();
    let colors = initial_coloring(g, &edges)?;
    let mut s = StarEdgeColoring { directions: vec![None; edges.len()], edges, colors };
    let mut changed = true;
    while changed {
        changed = false;
        for e in 0..s.edges.len() {
            if s.colors[e] == STAR && improve_edge(g, &mut s, e) {
                changed = true;
            }
        }
    }
    check_star(g, &s)?;
    for a in 1..=3 {
        let part: Vec<(usize, usize, usize)> =
            s.g_a(g, a).into_iter().map(|e| (e, s.edges[e].0, s.edges[e].1)).collect();
        for (e, tail, head) in orient_paths_and_cycles(g.order(), &part) {
            s.directions[e] = Some((tail, head));
        }
    }
    if s.directions.iter().any(Option::is_none) {
        return Err(Error::Construction("some edge was left unoriented".into()));
    }
    for a in 1..=3 {
        let mut indeg = vec![0; g.order()];
        let mut outdeg = vec![0; g.order()];
        for e in s.g_a(g, a) {
            let (t, h) = s.directions[e].unwrap();
            outdeg[t] += 1;
            indeg[h] += 1;
        }
        if indeg.iter().chain(&outdeg).any(|&d| d > 1) {
            return Err(Error::Construction(format!("orientation of G_{a} is not consistent")));
        }
    }
    Ok(s)
}
