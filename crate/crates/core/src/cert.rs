//! JSON certificates: colorings, exhaustive negative answers and the prism
//! refutation, each carrying the base graph so it can be checked alone.

use serde::{Deserialize, Serialize};

use crate::color::{Color, VertexColoring};
use crate::construct::{prove_prism_counterexample, Colored, PrismRefutation, Report};
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, FPVertex, FracPowGraph};
use crate::graph::{Graph, Label};
use crate::oracle::{decide_omega_odd_fp, exact_chromatic, omega_of, verify_coloring, Decision, SearchStats};

/// A base graph as vertex labels plus edges by vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub labels: Vec<Label>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        Self { labels: g.labels().to_vec(), edges: g.edges() }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new();
        for l in &self.labels {
            g.add_vertex(l.clone());
        }
        if g.order() != self.labels.len() {
            return Err(Error::InvalidParameter("duplicate vertex labels".into()));
        }
        for &(u, v) in &self.edges {
            if u >= g.order() || v >= g.order() {
                return Err(Error::UnknownVertex(format!("{}", u.max(v))));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// One vertex of `G^{m/n}` and its color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub vertex: FPVertex,
    pub color: Color,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// A proper coloring with `num_colors` colors.
    Coloring {
        graph: GraphJson,
        m: usize,
        n: usize,
        omega: usize,
        num_colors: usize,
        report: Report,
        coloring: Vec<Assignment>,
    },
    /// Exhaustive search found no `k`-coloring.
    NoColoring {
        graph: GraphJson,
        m: usize,
        n: usize,
        k: usize,
        /// Whether crusts were merged (sound only for `k = ω`, odd `m`).
        crust_pruning: bool,
        stats: SearchStats,
    },
    /// The prism at `3/5`: no ω-coloring, with the symmetry reduction and
    /// the forced chain.
    Refutation {
        graph: GraphJson,
        m: usize,
        n: usize,
        /// Assumptions behind the forced chain.
        assumptions: Vec<String>,
        refutation: PrismRefutation,
    },
}

/// Result of checking a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The coloring is proper and uses the stated number of colors.
    ValidColoring { num_colors: usize },
    /// A fresh exhaustive search reproduced the negative answer.
    ConfirmedNegative { nodes: u64 },
}

impl Certificate {
    pub fn coloring(c: &Colored) -> Result<Self> {
        let fp = &c.fp;
        let coloring =
            (0..fp.order()).map(|x| Assignment { vertex: fp.vertex(x), color: *c.coloring.get(x) }).collect();
        Ok(Certificate::Coloring {
            graph: GraphJson::from_graph(fp.base()),
            m: fp.m(),
            n: fp.n(),
            omega: omega_of(fp)?,
            num_colors: c.num_colors(),
            report: c.report.clone(),
            coloring,
        })
    }

    pub fn no_coloring(g: &Graph, m: usize, n: usize, k: usize, crust_pruning: bool, stats: SearchStats) -> Self {
        Certificate::NoColoring { graph: GraphJson::from_graph(g), m, n, k, crust_pruning, stats }
    }

    pub fn refutation(g: &Graph, r: PrismRefutation) -> Self {
        let assumptions = vec![
            "an ω-coloring gives every crust a single color".to_string(),
            "six crusts and five colors force two crusts to share a color".to_string(),
            "every non-adjacent pair of branch vertices is equivalent to {v1, v6} under automorphisms".to_string(),
            "the shared crust color is 1 and is used within distance 1 of every branch vertex".to_string(),
        ];
        Certificate::Refutation { graph: GraphJson::from_graph(g), m: 3, n: 5, assumptions, refutation: r }
    }

    /// Checks the certificate. Colorings are checked directly; negative
    /// answers are re-derived by exhaustive search within `budget` nodes.
    pub fn verify(&self, budget: u64) -> Result<Verdict> {
        match self {
            Certificate::Coloring { graph, m, n, num_colors, coloring, .. } => {
                let fp = frac_power(&graph.to_graph()?, *m, *n)?;
                let c = assemble(&fp, coloring)?;
                if let Some(v) = verify_coloring(&fp, &c)? {
                    return Err(Error::Improper(v));
                }
                if c.num_colors() != *num_colors {
                    return Err(Error::InvalidParameter(format!(
                        "certificate claims {num_colors} colors, coloring uses {}",
                        c.num_colors()
                    )));
                }
                Ok(Verdict::ValidColoring { num_colors: c.num_colors() })
            }
            Certificate::NoColoring { graph, m, n, k, crust_pruning, .. } => {
                let fp = frac_power(&graph.to_graph()?, *m, *n)?;
                let decision = if *crust_pruning {
                    if *k != omega_of(&fp)? || m % 2 == 0 {
                        return Err(Error::InvalidParameter("crust pruning needs odd m and k = ω".into()));
                    }
                    decide_omega_odd_fp(&fp, budget, &[])?
                } else {
                    exact_chromatic(&fp, *k, budget)?
                };
                confirm_negative(decision)
            }
            Certificate::Refutation { graph, m, n, .. } => {
                let g = graph.to_graph()?;
                if (*m, *n) != (3, 5) || !is_prism(&g) {
                    return Err(Error::InvalidParameter("refutation certificates cover the prism at 3/5 only".into()));
                }
                let fp = frac_power(&g, 3, 5)?;
                confirm_negative(decide_omega_odd_fp(&fp, budget, &[])?)
            }
        }
    }
}

fn confirm_negative(d: Decision) -> Result<Verdict> {
    match d {
        Decision::No(s) => Ok(Verdict::ConfirmedNegative { nodes: s.nodes }),
        Decision::Yes(_) => Err(Error::Construction("search found a coloring the certificate rules out".into())),
        Decision::Timeout(s) => Err(Error::Budget(s.nodes)),
    }
}

fn is_prism(g: &Graph) -> bool {
    let p = crate::named::prism();
    g.order() == 6 && g.edges() == p.edges()
}

/// Places each assignment at its vertex index; every vertex exactly once.
fn assemble(fp: &FracPowGraph, coloring: &[Assignment]) -> Result<VertexColoring> {
    let mut colors: Vec<Option<Color>> = vec![None; fp.order()];
    for a in coloring {
        let x = fp.index(a.vertex).ok_or_else(|| Error::UnknownVertex(format!("{:?}", a.vertex)))?;
        if colors[x].replace(a.color).is_some() {
            return Err(Error::InvalidParameter(format!("vertex {:?} colored twice", a.vertex)));
        }
    }
    VertexColoring::from_partial(colors)
}

/// Runs the prism driver and wraps the result.
pub fn prism_certificate() -> Result<Certificate> {
    Ok(Certificate::refutation(&crate::named::prism(), prove_prism_counterexample()?))
}
