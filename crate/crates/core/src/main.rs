use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fracolor::cert::{prism_certificate, Certificate, Verdict};
use fracolor::construct::{color, Colored, Report};
use fracolor::error::{Error, Result};
use fracolor::fracpow::{frac_power, FracPowGraph};
use fracolor::graph::Graph;
use fracolor::hunt::{hunt, hunt_graphs, Outcome};
use fracolor::io::{export_fracpow_dot, parse_graph};
use fracolor::named;
use fracolor::oracle::{
    decide_omega_odd_fp, exact_chromatic, max_clique, omega_formula, omega_of, Decision, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "fracolor", version, about = "Fractional graph powers: build, color, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit G^{m/n}.
    Build(Common),
    /// The closed-form clique number, optionally checked by exact clique search.
    Omega {
        /// Maximum degree; taken from the graph when a graph is given.
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Color G^{m/n} with the applicable construction and emit a certificate.
    Color(Common),
    /// Check a certificate file.
    Verify {
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide k-colorability (or find the chromatic number) by exact search.
    Chi(Common),
    /// The prism at m/n = 3/5: no ω-coloring.
    Counterexample(Common),
    /// Decide ω-colorability over small regular graphs and store the results.
    Hunt {
        /// Random cubic graphs to add to the corpus.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        /// Order of the random cubic graphs.
        #[arg(long, default_value_t = 12)]
        sample_order: usize,
        /// Largest order of the 4-regular circulants included.
        #[arg(long, default_value_t = 11)]
        max_circulant: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in graph: K4, K5-e, prism, Petersen, K33, Q3, C9(1,2), ...
    #[arg(long, conflicts_with = "graph_file")]
    graph: Option<String>,
    /// Graph file: DIMACS, edge list or DOT.
    #[arg(long)]
    graph_file: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Number of colors for `chi`.
    #[arg(long)]
    k: Option<usize>,
    /// Node budget for exact searches.
    #[arg(long, env = "FRACOLOR_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Output file (directory for `hunt`); stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for random graph sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

/// Exit statuses: success, verified negative result, error.
enum Status {
    Ok,
    Negative,
}

impl Common {
    fn graph(&self) -> Result<Graph> {
        match (&self.graph, &self.graph_file) {
            (Some(name), None) => named::by_name(name),
            (None, Some(path)) => {
                let parsed = parse_graph(&fs::read_to_string(path)?)?;
                for d in &parsed.duplicates {
                    log::warn!("line {}: duplicate edge {} {} ignored", d.line, d.u, d.v);
                }
                Ok(parsed.graph)
            }
            _ => Err(Error::InvalidParameter("give exactly one of --graph and --graph-file".into())),
        }
    }

    fn m(&self) -> Result<usize> {
        self.m.ok_or_else(|| Error::InvalidParameter("--m is required".into()))
    }

    fn mn(&self) -> Result<(usize, usize)> {
        let m = self.m()?;
        let n = self.n.ok_or_else(|| Error::InvalidParameter("--n is required".into()))?;
        if m == 0 || m >= n {
            return Err(Error::InvalidParameter(format!("need 0 < m < n, got m={m}, n={n}")));
        }
        Ok((m, n))
    }

    fn fp(&self) -> Result<FracPowGraph> {
        let (m, n) = self.mn()?;
        frac_power(&self.graph()?, m, n)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_json(&self, v: &impl serde::Serialize) -> Result<()> {
        self.emit(&(serde_json::to_string_pretty(v)? + "\n"))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::Build(c) => build(&c),
        Command::Omega { delta, common } => omega(delta, &common),
        Command::Color(c) => color_cmd(&c),
        Command::Verify { certificate, common } => verify(&certificate, &common),
        Command::Chi(c) => chi(&c),
        Command::Counterexample(c) => counterexample(&c),
        Command::Hunt { samples, sample_order, max_circulant, common } => {
            hunt_cmd(&common, samples, sample_order, max_circulant)
        }
    }
}

fn build(c: &Common) -> Result<Status> {
    let fp = c.fp()?;
    match c.format(Format::Json) {
        Format::Json => {
            let vertices: Vec<_> = (0..fp.order()).map(|x| fp.vertex(x)).collect();
            let edges: Vec<(usize, usize)> = (0..fp.order())
                .flat_map(|x| fp.neighbors(x).iter().filter(move |&&y| y > x).map(move |&y| (x, y)))
                .collect();
            c.emit_json(&json!({ "m": fp.m(), "n": fp.n(), "order": fp.order(), "size": fp.size(), "vertices": vertices, "edges": edges }))?;
        }
        Format::Dot => c.emit(&export_fracpow_dot(&fp, None)?)?,
        Format::Text => {
            c.emit(&format!("G^({}/{}): {} vertices, {} edges\n", fp.m(), fp.n(), fp.order(), fp.size()))?
        }
    }
    Ok(Status::Ok)
}

fn omega(delta: Option<usize>, c: &Common) -> Result<Status> {
    let m = c.m()?;
    let has_graph = c.graph.is_some() || c.graph_file.is_some();
    let delta = match (delta, has_graph) {
        (Some(d), false) => d,
        (None, true) => c.graph()?.max_degree(),
        (Some(_), true) => return Err(Error::InvalidParameter("give --delta or a graph, not both".into())),
        (None, false) => return Err(Error::InvalidParameter("--delta or a graph is required".into())),
    };
    let formula = omega_formula(delta as i64, m as i64)?;
    let brute = if has_graph && c.n.is_some() {
        let fp = c.fp()?;
        Some(max_clique(&fp, fp.order()).size().ok_or_else(|| Error::Budget(fp.order() as u64))?)
    } else {
        None
    };
    match c.format(Format::Text) {
        Format::Text => c.emit(&match brute {
            Some(b) => format!("{formula} (clique search: {b})\n"),
            None => format!("{formula}\n"),
        })?,
        _ => c.emit_json(&json!({ "delta": delta, "m": m, "omega": formula, "max_clique": brute }))?,
    }
    Ok(if brute.is_some_and(|b| b != formula) { Status::Negative } else { Status::Ok })
}

fn emit_coloring(c: &Common, colored: &Colored) -> Result<()> {
    match c.format(Format::Json) {
        Format::Json => c.emit_json(&Certificate::coloring(colored)?),
        Format::Dot => c.emit(&export_fracpow_dot(&colored.fp, Some(&colored.coloring))?),
        Format::Text => c.emit(&format!(
            "G^({}/{}): {} colors, ω = {}, method: {}\n",
            colored.fp.m(),
            colored.fp.n(),
            colored.num_colors(),
            omega_of(&colored.fp)?,
            colored.report.method
        )),
    }
}

fn color_cmd(c: &Common) -> Result<Status> {
    let (m, n) = c.mn()?;
    let colored = color(&c.graph()?, m, n, c.budget)?;
    emit_coloring(c, &colored)?;
    Ok(Status::Ok)
}

fn verify(path: &PathBuf, c: &Common) -> Result<Status> {
    let cert: Certificate = serde_json::from_str(&fs::read_to_string(path)?)?;
    let (line, status) = match cert.verify(c.budget)? {
        Verdict::ValidColoring { num_colors } => {
            (format!("valid: proper coloring with {num_colors} colors"), Status::Ok)
        }
        Verdict::ConfirmedNegative { nodes } => {
            (format!("confirmed: no coloring exists (exhaustive search, {nodes} nodes)"), Status::Negative)
        }
    };
    c.emit(&(line + "\n"))?;
    Ok(status)
}

/// Exact decision for `k` colors; crust-merged when `k = ω`, `m` odd and
/// `n <= 2m+1`.
fn decide(fp: &FracPowGraph, k: usize, budget: u64) -> Result<(Decision, bool)> {
    let (m, n) = (fp.m(), fp.n());
    if m % 2 == 1 && n <= 2 * m + 1 && k == omega_of(fp)? {
        Ok((decide_omega_odd_fp(fp, budget, &[])?, true))
    } else {
        Ok((exact_chromatic(fp, k, budget)?, false))
    }
}

fn chi(c: &Common) -> Result<Status> {
    let fp = c.fp()?;
    let omega = omega_of(&fp)?;
    let ks: Vec<usize> = match c.k {
        Some(k) => vec![k],
        None => (omega.max(1)..=fp.order().max(1)).collect(),
    };
    for &k in &ks {
        let (decision, pruned) = decide(&fp, k, c.budget)?;
        match decision {
            Decision::Yes(coloring) => {
                let method =
                    if c.k.is_some() { format!("exact search, k = {k}") } else { format!("exact search, χ = {k}") };
                emit_coloring(c, &Colored { fp, coloring, report: Report::new(&method) })?;
                return Ok(Status::Ok);
            }
            Decision::No(s) if c.k.is_some() => {
                let cert = Certificate::no_coloring(fp.base(), fp.m(), fp.n(), k, pruned, s);
                match c.format(Format::Json) {
                    Format::Text => {
                        c.emit(&format!("no {k}-coloring (exhaustive search, {} nodes)\n", cert_nodes(&cert)))?
                    }
                    _ => c.emit_json(&cert)?,
                }
                return Ok(Status::Negative);
            }
            Decision::No(_) => continue,
            Decision::Timeout(s) => return Err(Error::Budget(s.nodes)),
        }
    }
    Err(Error::Construction("no coloring found".into()))
}

fn cert_nodes(c: &Certificate) -> u64 {
    match c {
        Certificate::NoColoring { stats, .. } => stats.nodes,
        Certificate::Refutation { refutation, .. } => refutation.search_nodes,
        Certificate::Coloring { .. } => 0,
    }
}

fn counterexample(c: &Common) -> Result<Status> {
    let cert = prism_certificate()?;
    let Certificate::Refutation { refutation: r, .. } = &cert else {
        unreachable!("prism driver returns a refutation")
    };
    match c.format(Format::Json) {
        Format::Text => {
            let chain: Vec<String> = r
                .chain
                .iter()
                .map(|s| match s.forced {
                    Some((a, b)) => format!("(v{a}v{b})_1"),
                    None => format!("contradiction at v{}", s.branch),
                })
                .collect();
            c.emit(&format!(
                "prism at 3/5: ω = {}, no {}-coloring (exhaustive search, {} nodes), {}-colorable: {}\nforced chain: {}\n",
                r.omega,
                r.omega,
                r.search_nodes,
                r.omega + 1,
                r.six_colorable,
                chain.join(" -> ")
            ))?
        }
        _ => c.emit_json(&cert)?,
    }
    Ok(if r.omega_colorable { Status::Ok } else { Status::Negative })
}

fn hunt_cmd(c: &Common, samples: usize, sample_order: usize, max_circulant: usize) -> Result<Status> {
    let m = c.m.unwrap_or(3);
    if m.is_multiple_of(2) {
        return Err(Error::InvalidParameter("hunt needs odd m".into()));
    }
    let ns: Vec<usize> = match c.n {
        Some(n) if n > m && n <= 2 * m + 1 => vec![n],
        Some(n) => return Err(Error::InvalidParameter(format!("hunt needs m < n <= 2m+1, got n={n}"))),
        None => (m + 1..=2 * m + 1).collect(),
    };
    let mut graphs = hunt_graphs(max_circulant, samples, sample_order, c.seed)?;
    if c.graph.is_some() || c.graph_file.is_some() {
        let g = c.graph()?;
        let id = c.graph.clone().unwrap_or_else(|| "input".into());
        graphs = vec![fracolor::hunt::HuntGraph { id, graph: g }];
    }
    let dir = c.out.clone().unwrap_or_else(|| PathBuf::from("hunt-results"));
    let records = hunt(&graphs, m, &ns, c.budget, &dir)?;
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
    let negatives: Vec<String> = records
        .iter()
        .filter(|r| r.outcome == Outcome::NotOmegaColorable)
        .map(|r| format!("{} (n={})", r.graph_id, r.n))
        .collect();
    println!(
        "{} instances: {} ω-colorable, {} not ω-colorable, {} timed out; results in {}",
        records.len(),
        count(Outcome::OmegaColorable),
        count(Outcome::NotOmegaColorable),
        count(Outcome::Timeout),
        dir.display()
    );
    if !negatives.is_empty() {
        println!("not ω-colorable: {}", negatives.join(", "));
    }
    Ok(Status::Ok)
}
