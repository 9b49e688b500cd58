//! Ground truth: proper-coloring verification in the subdivision metric,
//! clique numbers, the closed-form clique number, and exact colorability.

mod clique;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use clique::{max_clique_adj, CliqueResult, DEFAULT_CLIQUE_CAP};

use crate::color::{Color, VertexColoring};
use crate::error::{Error, Result};
use crate::fracpow::{FPVertex, FracPowGraph};
use crate::graph::Graph;
use crate::search::{ColoringProblem, SearchResult};

/// Default node-expansion budget for exact searches.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Two vertices at subdivision distance `distance <= m` sharing a color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub x: FPVertex,
    pub y: FPVertex,
    pub distance: u64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} and {:?} share a color at distance {}", self.x, self.y, self.distance)
    }
}

/// Checks `c` against `fp`: `Ok(None)` when proper, otherwise the first
/// conflicting pair in vertex-index order.
pub fn verify_coloring(fp: &FracPowGraph, c: &VertexColoring) -> Result<Option<Violation>> {
    if c.len() != fp.order() {
        return Err(Error::PartialColoring { got: c.len(), expected: fp.order() });
    }
    for x in 0..fp.order() {
        for &y in fp.neighbors(x) {
            if y > x && c.get(x) == c.get(y) {
                return Ok(Some(Violation { x: fp.vertex(x), y: fp.vertex(y), distance: fp.distance(x, y) }));
            }
        }
    }
    Ok(None)
}

/// All conflicting pairs `(x, y)`, `x < y`, as vertex indices.
pub fn conflicts(fp: &FracPowGraph, c: &[Color]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..fp.order() {
        for &y in fp.neighbors(x) {
            if y > x && c[x] == c[y] {
                out.push((x, y));
            }
        }
    }
    out
}

/// Verifies and converts a violation into an error.
pub fn ensure_proper(fp: &FracPowGraph, c: &VertexColoring) -> Result<()> {
    match verify_coloring(fp, c)? {
        None => Ok(()),
        Some(v) => Err(Error::Improper(v)),
    }
}

/// Clique number of `G^{m/n}` from `Δ(G)` and `m` (valid for `m < n`).
pub fn omega_formula(delta: i64, m: i64) -> Result<usize> {
    if delta <= 0 {
        return Err(Error::InvalidParameter(format!("maximum degree must be >= 1, got {delta}")));
    }
    if m < 1 {
        return Err(Error::InvalidParameter(format!("m must be >= 1, got {m}")));
    }
    let w = if delta == 1 {
        m + 1
    } else if m % 2 == 0 {
        (m / 2) * delta + 1
    } else {
        ((m - 1) / 2) * delta + 2
    };
    Ok(w as usize)
}

/// `omega_formula` for the parameters of `fp`.
pub fn omega_of(fp: &FracPowGraph) -> Result<usize> {
    omega_formula(fp.base().max_degree() as i64, fp.m() as i64)
}

pub fn max_clique(fp: &FracPowGraph, cap: usize) -> CliqueResult {
    max_clique_adj(fp.adjacency(), cap)
}

/// Search statistics attached to negative answers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub completed: bool,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(VertexColoring),
    No(SearchStats),
    Timeout(SearchStats),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }
}

fn index_coloring(colors: &[u32]) -> VertexColoring {
    VertexColoring::new(colors.iter().map(|&c| Color::Index(c)).collect())
}

/// Decides whether `fp` has a proper `k`-coloring by exhaustive search.
pub fn exact_chromatic(fp: &FracPowGraph, k: usize, budget: u64) -> Result<Decision> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if let Some(w) = max_clique(fp, DEFAULT_CLIQUE_CAP).size() {
        if w > k {
            return Ok(Decision::No(SearchStats { nodes: 0, completed: true, method: format!("clique of size {w}") }));
        }
    }
    if k > crate::search::MAX_COLORS {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds the search limit")));
    }
    let out = ColoringProblem::new(fp.adjacency(), k).solve(budget);
    Ok(match out.result {
        SearchResult::Found(c) => {
            let c = index_coloring(&c);
            ensure_proper(fp, &c)?;
            Decision::Yes(c)
        }
        SearchResult::Exhausted => {
            Decision::No(SearchStats { nodes: out.nodes, completed: true, method: "dsatur".into() })
        }
        SearchResult::Timeout => {
            Decision::Timeout(SearchStats { nodes: out.nodes, completed: false, method: "dsatur".into() })
        }
    })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Vertex classes after merging each crust at a maximum-degree vertex, and
/// the quotient graph. `None` if a merged class contains an internal edge.
pub(crate) fn crust_quotient(fp: &FracPowGraph) -> Result<Option<(Vec<usize>, Vec<Vec<usize>>)>> {
    let mut parent: Vec<usize> = (0..fp.order()).collect();
    for u in fp.max_degree_vertices() {
        let crust = fp.crust(u)?;
        for w in crust.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..fp.order()).map(|x| find(&mut parent, x)).collect();
    let mut class_id = vec![usize::MAX; fp.order()];
    let mut classes = 0;
    for &r in &roots {
        if class_id[r] == usize::MAX {
            class_id[r] = classes;
            classes += 1;
        }
    }
    let class_of: Vec<usize> = roots.iter().map(|&r| class_id[r]).collect();
    let mut adj = vec![Vec::new(); classes];
    for x in 0..fp.order() {
        for &y in fp.neighbors(x) {
            let (a, b) = (class_of[x], class_of[y]);
            if a == b {
                return Ok(None);
            }
            adj[a].push(b);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    Ok(Some((class_of, adj)))
}

/// Decides whether `G^{m/n}` (odd `m`, `m < n <= 2m+1`) has a coloring with
/// exactly ω colors. Every crust at a maximum-degree vertex is merged into a
/// single vertex before searching, which is sound for ω-colorings only.
pub fn decide_omega_odd(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Decision> {
    if m.is_multiple_of(2) {
        return Err(Error::InvalidParameter("decide_omega_odd needs odd m".into()));
    }
    if !(m < n && n <= 2 * m + 1) {
        return Err(Error::InvalidParameter(format!("need m < n <= 2m+1, got m={m}, n={n}")));
    }
    let fp = crate::fracpow::frac_power(g, m, n)?;
    decide_omega_odd_fp(&fp, budget, &[])
}

/// As [`decide_omega_odd`] on a prebuilt graph, with optional pins
/// `(vertex, color index)`.
pub fn decide_omega_odd_fp(fp: &FracPowGraph, budget: u64, pins: &[(usize, u32)]) -> Result<Decision> {
    let k = omega_of(fp)?;
    let method = "dsatur with merged crusts".to_string();
    let Some((class_of, adj)) = crust_quotient(fp)? else {
        return Ok(Decision::No(SearchStats { nodes: 0, completed: true, method }));
    };
    let mut problem = ColoringProblem::new(&adj, k);
    for &(v, c) in pins {
        problem.fix(class_of[v], c);
    }
    let out = problem.solve(budget);
    Ok(match out.result {
        SearchResult::Found(cc) => {
            let colors: Vec<u32> = class_of.iter().map(|&c| cc[c]).collect();
            let c = index_coloring(&colors);
            ensure_proper(fp, &c)?;
            Decision::Yes(c)
        }
        SearchResult::Exhausted => Decision::No(SearchStats { nodes: out.nodes, completed: true, method }),
        SearchResult::Timeout => Decision::Timeout(SearchStats { nodes: out.nodes, completed: false, method }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracpow::{frac_power, subdivide};
    use crate::named;

    #[test]
    fn omega_formula_values() {
        assert_eq!(omega_formula(3, 3).unwrap(), 5);
        assert_eq!(omega_formula(1, 7).unwrap(), 8);
        assert_eq!(omega_formula(4, 4).unwrap(), 9);
        assert!(omega_formula(0, 3).is_err());
    }

    #[test]
    fn verify_k2_two_thirds() {
        let fp = frac_power(&named::complete(2), 2, 3).unwrap();
        let (a, b) = (fp.at(0, 1, 1), fp.at(0, 1, 2));
        let mut c = VertexColoring::new(vec![Color::Index(0); 4]);
        for (i, x) in [0, 1, a, b].into_iter().enumerate() {
            c.set(x, Color::Index(i as u32));
        }
        assert_eq!(verify_coloring(&fp, &c).unwrap(), None);
        c.set(0, Color::Zero);
        c.set(1, Color::Zero);
        assert_eq!(verify_coloring(&fp, &c).unwrap(), None);
        c.set(b, *c.get(a));
        let v = verify_coloring(&fp, &c).unwrap().unwrap();
        assert_eq!(v.distance, 1);
        assert!(verify_coloring(&fp, &VertexColoring::new(vec![Color::Zero])).is_err());
    }

    #[test]
    fn clique_examples() {
        let fp = frac_power(&named::complete(4), 2, 3).unwrap();
        assert_eq!(max_clique(&fp, 1000).size(), Some(4));
        let fp = subdivide(&named::complete(2), 2).unwrap();
        assert_eq!(max_clique(&fp, 1000).size(), Some(2));
        assert!(matches!(max_clique(&fp, 2), CliqueResult::TooLarge { .. }));
    }

    #[test]
    fn chromatic_of_c5() {
        let fp = subdivide(&named::cycle(5), 1).unwrap();
        assert!(exact_chromatic(&fp, 3, 1000).unwrap().is_yes());
        assert!(exact_chromatic(&fp, 2, 1000).unwrap().is_no());
    }

    #[test]
    fn k4_two_thirds_is_four_colorable() {
        let fp = frac_power(&named::complete(4), 2, 3).unwrap();
        assert!(exact_chromatic(&fp, 4, 1_000_000).unwrap().is_yes());
    }

    #[test]
    fn decide_rejects_even_m() {
        assert!(decide_omega_odd(&named::prism(), 2, 5, 10).is_err());
    }

    #[test]
    fn k4_three_fifths_has_omega_coloring() {
        match decide_omega_odd(&named::complete(4), 3, 5, 1_000_000).unwrap() {
            Decision::Yes(c) => assert_eq!(c.num_colors(), 5),
            d => panic!("{d:?}"),
        }
    }
}
