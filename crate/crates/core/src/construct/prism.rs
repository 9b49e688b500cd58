//! The triangular prism `C3 □ K2` at `m/n = 3/5` has no ω-coloring.
//!
//! Vertices are `v_1..v_6` with triangles `v_1 v_2 v_3`, `v_4 v_5 v_6` and
//! rungs `v_1 v_4`, `v_2 v_5`, `v_3 v_6`; `v_i` is vertex `i - 1` of
//! [`named::prism`].

use serde::{Deserialize, Serialize};

use super::FALLBACK_BUDGET;
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, FracPowGraph};
use crate::graph::Graph;
use crate::named;
use crate::oracle::{decide_omega_odd_fp, exact_chromatic, max_clique, omega_of, Decision};

/// One step of the forced chain: the only vertex near `v_branch` that can
/// take color 1, or none.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChainStep {
    /// 1-based branch label.
    pub branch: usize,
    /// `(branch, toward)` for the forced vertex `(v_branch v_toward)_1`,
    /// `None` when nothing near `v_branch` can take color 1.
    pub forced: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrismRefutation {
    pub omega: usize,
    pub clique_found: usize,
    /// Exhaustive crust-merged search for an ω-coloring found none.
    pub omega_colorable: bool,
    pub search_nodes: u64,
    pub six_colorable: bool,
    /// Automorphisms of the prism and the size of the orbit of the
    /// non-adjacent pair `{v_1, v_6}`.
    pub automorphisms: usize,
    pub nonedge_orbit: usize,
    pub nonedges: usize,
    /// Search with the crusts of `v_1` and `v_6` both colored 1.
    pub pinned_colorable: bool,
    pub chain: Vec<ChainStep>,
}

fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, g, &mut out);
    out
}

fn permute(p: &mut Vec<usize>, k: usize, g: &Graph, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        if g.edges().iter().all(|&(u, v)| g.has_edge(p[u], p[v])) {
            out.push(p.clone());
        }
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, g, out);
        p.swap(k, i);
    }
}

/// Vertices within distance 1 of branch `u` in the subdivision.
fn near(fp: &FracPowGraph, g: &Graph, u: usize) -> Vec<(usize, Option<usize>)> {
    let mut v = vec![(u, None)];
    v.extend(g.neighbors(u).iter().map(|&w| (fp.at(u, w, 1), Some(w))));
    v
}

/// The forced chain: color 1 is on both crusts `C_{v_1}`, `C_{v_6}`, and
/// must appear within distance 1 of every other branch vertex.
fn forced_chain(fp: &FracPowGraph, g: &Graph) -> Result<Vec<ChainStep>> {
    let mut ones: Vec<usize> = fp.crust(0)?;
    ones.extend(fp.crust(5)?);
    let mut todo: Vec<usize> = vec![2, 3, 4, 1];
    let mut chain = Vec::new();
    while !todo.is_empty() {
        let options = |u: usize, ones: &[usize]| -> Vec<(usize, Option<usize>)> {
            near(fp, g, u).into_iter().filter(|&(x, _)| ones.iter().all(|&y| !fp.has_edge(x, y))).collect()
        };
        let Some(pos) = todo.iter().position(|&u| options(u, &ones).len() <= 1) else {
            return Err(Error::Construction("no branch vertex has a forced color-1 vertex".into()));
        };
        let u = todo.remove(pos);
        let opts = options(u, &ones);
        match opts.first() {
            None => {
                chain.push(ChainStep { branch: u + 1, forced: None });
                return Ok(chain);
            }
            Some(&(x, w)) => {
                let w = w.ok_or_else(|| Error::Construction("branch vertex forced to color 1".into()))?;
                chain.push(ChainStep { branch: u + 1, forced: Some((u + 1, w + 1)) });
                ones.push(x);
            }
        }
    }
    Err(Error::Construction("forced chain ended without a contradiction".into()))
}

/// Reproduces the refutation: ω = 5, no 5-coloring (exhaustive search),
/// a 6-coloring, the symmetry reduction and the forced chain.
pub fn prove_prism_counterexample() -> Result<PrismRefutation> {
    let g = named::prism();
    let fp = frac_power(&g, 3, 5)?;
    let omega = omega_of(&fp)?;
    let clique_found = max_clique(&fp, fp.order()).size().unwrap_or(0);
    let (omega_colorable, search_nodes) = match decide_omega_odd_fp(&fp, FALLBACK_BUDGET, &[])? {
        Decision::Yes(_) => (true, 0),
        Decision::No(s) => (false, s.nodes),
        Decision::Timeout(s) => return Err(Error::Budget(s.nodes)),
    };
    let six_colorable = match exact_chromatic(&fp, omega + 1, FALLBACK_BUDGET)? {
        Decision::Yes(_) => true,
        Decision::No(_) => false,
        Decision::Timeout(s) => return Err(Error::Budget(s.nodes)),
    };
    let autos = automorphisms(&g);
    let nonedges: Vec<(usize, usize)> =
        (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    let mut orbit: Vec<(usize, usize)> = autos
        .iter()
        .map(|p| {
            let (a, b) = (p[0], p[5]);
            (a.min(b), a.max(b))
        })
        .collect();
    orbit.sort();
    orbit.dedup();
    let pins = [(fp.crust(0)?[0], 0), (fp.crust(5)?[0], 0)];
    let pinned_colorable = match decide_omega_odd_fp(&fp, FALLBACK_BUDGET, &pins)? {
        Decision::Yes(_) => true,
        Decision::No(_) => false,
        Decision::Timeout(s) => return Err(Error::Budget(s.nodes)),
    };
    Ok(PrismRefutation {
        omega,
        clique_found,
        omega_colorable,
        search_nodes,
        six_colorable,
        automorphisms: autos.len(),
        nonedge_orbit: orbit.len(),
        nonedges: nonedges.len(),
        pinned_colorable,
        chain: forced_chain(&fp, &g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refutation_matches_the_argument() {
        let r = prove_prism_counterexample().unwrap();
        assert_eq!(r.omega, 5);
        assert_eq!(r.clique_found, 5);
        assert!(!r.omega_colorable);
        assert!(r.six_colorable);
        assert_eq!(r.automorphisms, 12);
        assert_eq!((r.nonedge_orbit, r.nonedges), (6, 6));
        assert!(!r.pinned_colorable);
        let expect = vec![
            ChainStep { branch: 3, forced: Some((3, 2)) },
            ChainStep { branch: 4, forced: Some((4, 5)) },
            ChainStep { branch: 5, forced: Some((5, 2)) },
            ChainStep { branch: 2, forced: None },
        ];
        assert_eq!(r.chain, expect);
    }
}
