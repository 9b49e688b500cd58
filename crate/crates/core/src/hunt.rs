//! Evidence collection: decide ω-colorability of `G^{m/n}` for odd `m`
//! over small regular graphs and persist one JSON record per instance.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cert::Certificate;
use crate::construct::{Colored, Report};
use crate::error::{Error, Result};
use crate::fracpow::frac_power;
use crate::graph::Graph;
use crate::named;
use crate::oracle::{decide_omega_odd_fp, omega_of, Decision};

/// A base graph with a stable identifier used in file names.
#[derive(Clone, Debug)]
pub struct HuntGraph {
    pub id: String,
    pub graph: Graph,
}

/// The stored cubic corpus, the connected 4-regular circulants `C_n(a,b)`
/// with `n <= max_circulant`, and `samples` random connected cubic graphs on
/// `sample_order` vertices drawn with `seed`.
pub fn hunt_graphs(max_circulant: usize, samples: usize, sample_order: usize, seed: u64) -> Result<Vec<HuntGraph>> {
    let mut out: Vec<HuntGraph> = named::cubic_corpus()
        .into_iter()
        .enumerate()
        .map(|(i, graph)| HuntGraph { id: format!("cubic{}-{i:02}", graph.order()), graph })
        .collect();
    for n in 5..=max_circulant {
        for a in 1..=n / 2 {
            for b in a + 1..n.div_ceil(2) {
                let g = named::circulant(n, &[a, b]);
                if g.is_regular() && g.max_degree() == 4 && g.is_connected() && !g.is_complete() {
                    out.push(HuntGraph { id: format!("C{n}({a},{b})"), graph: g });
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..samples {
        let graph = random_regular(sample_order, 3, &mut rng)?;
        out.push(HuntGraph { id: format!("random{sample_order}-s{seed}-{i:03}"), graph });
    }
    Ok(out)
}

/// A uniform-ish random connected simple `d`-regular graph by the pairing
/// model with restarts.
pub fn random_regular(n: usize, d: usize, rng: &mut StdRng) -> Result<Graph> {
    if n * d % 2 == 1 || d >= n {
        return Err(Error::InvalidParameter(format!("no {d}-regular graph on {n} vertices")));
    }
    for _ in 0..10_000 {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(rng);
        let mut g = Graph::with_vertices(n);
        let simple = points.chunks(2).all(|p| p[0] != p[1] && g.add_edge(p[0], p[1]).unwrap_or(false));
        if simple && g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Construction(format!("no simple connected {d}-regular graph on {n} vertices sampled")))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    OmegaColorable,
    NotOmegaColorable,
    Timeout,
}

/// One persisted hunt result.
#[derive(Clone, Debug, Serialize)]
pub struct HuntRecord {
    pub graph_id: String,
    pub m: usize,
    pub n: usize,
    pub omega: usize,
    pub outcome: Outcome,
    pub nodes: u64,
    /// Present unless the search timed out.
    pub certificate: Option<Certificate>,
}

/// Decides ω-colorability of one instance (crust-pruned exact search).
pub fn hunt_instance(hg: &HuntGraph, m: usize, n: usize, budget: u64) -> Result<HuntRecord> {
    if m.is_multiple_of(2) {
        return Err(Error::InvalidParameter("hunt needs odd m".into()));
    }
    let fp = frac_power(&hg.graph, m, n)?;
    let omega = omega_of(&fp)?;
    let (outcome, nodes, certificate) = match decide_omega_odd_fp(&fp, budget, &[])? {
        Decision::Yes(coloring) => {
            let c = Colored { fp, coloring, report: Report::new("exact search with k = ω and merged crusts") };
            (Outcome::OmegaColorable, 0, Some(Certificate::coloring(&c)?))
        }
        Decision::No(s) => {
            let nodes = s.nodes;
            (Outcome::NotOmegaColorable, nodes, Some(Certificate::no_coloring(&hg.graph, m, n, omega, true, s)))
        }
        Decision::Timeout(s) => (Outcome::Timeout, s.nodes, None),
    };
    Ok(HuntRecord { graph_id: hg.id.clone(), m, n, omega, outcome, nodes, certificate })
}

/// File name for a record: the graph id with unsafe characters replaced.
pub fn record_path(dir: &Path, id: &str, m: usize, n: usize) -> PathBuf {
    let safe: String = id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    dir.join(format!("{safe}_m{m}_n{n}.json"))
}

/// Writes `value` as JSON through a temporary file and a rename.
pub fn write_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    let mut f = fs::File::create(&tmp)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs every `(graph, n)` for `n` in `ns` in parallel and writes one file
/// per instance into `dir`. Returns the records in input order.
pub fn hunt(graphs: &[HuntGraph], m: usize, ns: &[usize], budget: u64, dir: &Path) -> Result<Vec<HuntRecord>> {
    fs::create_dir_all(dir)?;
    let jobs: Vec<(&HuntGraph, usize)> = graphs.iter().flat_map(|g| ns.iter().map(move |&n| (g, n))).collect();
    jobs.par_iter()
        .map(|&(g, n)| {
            let r = hunt_instance(g, m, n, budget)?;
            write_atomic(&record_path(dir, &g.id, m, n), &r)?;
            log::info!("{} m={m} n={n}: {:?}", g.id, r.outcome);
            Ok(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphs_are_deterministic_and_regular() {
        let a = hunt_graphs(10, 3, 12, 7).unwrap();
        let b = hunt_graphs(10, 3, 12, 7).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.id == y.id && x.graph == y.graph));
        assert!(a.iter().all(|h| h.graph.is_regular() && h.graph.is_connected()));
        assert!(a.iter().any(|h| h.id == "C9(1,2)"));
    }

    #[test]
    fn prism_record_is_negative() {
        let dir = tempfile::tempdir().unwrap();
        let prism = HuntGraph { id: "prism".into(), graph: named::prism() };
        let k4 = HuntGraph { id: "K4".into(), graph: named::complete(4) };
        let out = hunt(&[prism, k4], 3, &[5], 50_000_000, dir.path()).unwrap();
        assert_eq!(out[0].outcome, Outcome::NotOmegaColorable);
        assert_eq!(out[1].outcome, Outcome::OmegaColorable);
        let text = fs::read_to_string(record_path(dir.path(), "prism", 3, 5)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["outcome"], "not-omega-colorable");
        assert_eq!(v["certificate"]["kind"], "no-coloring");
    }
}
