//! Graph input (DIMACS `.col`, plain edge lists, our own DOT) and DOT output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::color::VertexColoring;
use crate::error::{Error, Result};
use crate::fracpow::{FPVertex, FracPowGraph};
use crate::graph::{Graph, Label};

/// An edge listed more than once in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duplicate {
    pub line: usize,
    pub u: Label,
    pub v: Label,
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Graph,
    pub duplicates: Vec<Duplicate>,
}

/// Parses DIMACS edge format (`p edge N M` / `e u v`), a plain whitespace
/// edge list (`u v` per line), or DOT as written by [`export_dot`].
///
/// Vertices are ordered by label (integers numerically, then names). With a
/// DIMACS `p` line, vertices `1..=N` exist even when isolated.
pub fn parse_graph(text: &str) -> Result<Parsed> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'));
    if let Some(first) = first {
        if first.starts_with("graph") || first.starts_with("strict graph") {
            return parse_dot(text);
        }
    }

    let mut vertices = BTreeSet::new();
    let mut edges: Vec<(usize, Label, Label)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') || l == "c" || l.starts_with("c ") {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if toks.len() < 3 || !matches!(toks[1], "edge" | "col") {
                    return Err(Error::Parse { line, message: format!("bad problem line '{l}'") });
                }
                let n: u64 = toks[2]
                    .parse()
                    .map_err(|_| Error::Parse { line, message: format!("bad vertex count '{}'", toks[2]) })?;
                vertices.extend((1..=n).map(Label::Int));
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(Error::Parse { line, message: format!("expected 'e u v', got '{l}'") });
                }
                edges.push((line, Label::parse(toks[1]), Label::parse(toks[2])));
            }
            _ if toks.len() == 2 => {
                edges.push((line, Label::parse(toks[0]), Label::parse(toks[1])));
            }
            _ => {
                return Err(Error::Parse { line, message: format!("unrecognised line '{l}'") });
            }
        }
    }
    build(vertices, edges)
}

fn build(mut vertices: BTreeSet<Label>, edges: Vec<(usize, Label, Label)>) -> Result<Parsed> {
    for (line, u, v) in &edges {
        if u == v {
            return Err(Error::SelfLoop { line: *line, label: u.to_string() });
        }
        vertices.insert(u.clone());
        vertices.insert(v.clone());
    }
    let mut graph = Graph::new();
    for v in vertices {
        graph.add_vertex(v);
    }
    let mut duplicates = Vec::new();
    for (line, u, v) in edges {
        let a = graph.index_of(&u).expect("vertex inserted above");
        let b = graph.index_of(&v).expect("vertex inserted above");
        if !graph.add_edge(a, b)? {
            duplicates.push(Duplicate { line, u, v });
        }
    }
    Ok(Parsed { graph, duplicates })
}

fn unquote(tok: &str) -> &str {
    tok.trim().trim_end_matches(';').trim().trim_matches('"')
}

fn parse_dot(text: &str) -> Result<Parsed> {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let l = raw.trim();
        if l.is_empty()
            || l.starts_with("graph")
            || l.starts_with("strict")
            || l.starts_with('}')
            || l.starts_with("//")
            || l.starts_with("node [")
            || l.starts_with("edge [")
        {
            continue;
        }
        let body = l.split('[').next().unwrap_or(l);
        if let Some((a, b)) = body.split_once("--") {
            edges.push((line, Label::parse(unquote(a)), Label::parse(unquote(b))));
        } else {
            let name = unquote(body);
            if name.is_empty() {
                return Err(Error::Parse { line, message: format!("unrecognised DOT line '{l}'") });
            }
            vertices.insert(Label::parse(name));
        }
    }
    build(vertices, edges)
}

// Qualitative palette; colors beyond it cycle with a darker shade.
const FILLS: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd",
    "#ccebc5", "#ffed6f",
];

/// Writes `g` as an undirected DOT graph, optionally with vertex colors as
/// `fillcolor` attributes. Only branch vertices of a coloring's underlying
/// graph are rendered, so `coloring` must be indexed like `g`.
pub fn export_dot(g: &Graph, coloring: Option<&VertexColoring>) -> Result<String> {
    if let Some(c) = coloring {
        if c.len() != g.order() {
            return Err(Error::PartialColoring { got: c.len(), expected: g.order() });
        }
    }
    let palette = coloring.map(|c| c.palette());
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let name = g.label(v);
        match (coloring, &palette) {
            (Some(c), Some(p)) => {
                let color = c.get(v);
                let idx = p.iter().position(|x| x == color).unwrap_or(0);
                let _ = writeln!(
                    out,
                    "  \"{name}\" [style=filled, fillcolor=\"{}\", xlabel=\"{color}\"];",
                    FILLS[idx % FILLS.len()]
                );
            }
            _ => {
                let _ = writeln!(out, "  \"{name}\";");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", g.label(u), g.label(v));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Writes `G^{m/n}` as DOT. Branch vertices keep their base labels and
/// `(uv)_i` is named `u-v.i` in canonical orientation.
pub fn export_fracpow_dot(fp: &FracPowGraph, coloring: Option<&VertexColoring>) -> Result<String> {
    let base = fp.base();
    let mut g = Graph::new();
    for x in 0..fp.order() {
        let name = match fp.vertex(x) {
            FPVertex::Branch(u) => base.label(u).to_string(),
            FPVertex::Internal { u, v, i } => format!("{}-{}.{i}", base.label(u), base.label(v)),
        };
        g.add_vertex(Label::Name(name));
    }
    for x in 0..fp.order() {
        for &y in fp.neighbors(x) {
            if x < y {
                g.add_edge(x, y)?;
            }
        }
    }
    export_dot(&g, coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Color;
    use crate::named;

    #[test]
    fn dimacs_path() {
        let p = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(p.graph.order(), 3);
        assert_eq!(p.graph.size(), 2);
        assert!(p.duplicates.is_empty());
    }

    #[test]
    fn duplicates_collapse_and_are_reported() {
        let p = parse_graph("e 1 2\ne 2 1\n").unwrap();
        assert_eq!(p.graph.size(), 1);
        assert_eq!(p.duplicates.len(), 1);
        assert_eq!(p.duplicates[0].line, 2);
    }

    #[test]
    fn self_loop_rejected_with_line() {
        match parse_graph("c comment\ne 1 1\n") {
            Err(Error::SelfLoop { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected self-loop error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_reports_number() {
        match parse_graph("1 2\n3 4 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn plain_edge_list_with_names() {
        let p = parse_graph("a b\nb c\n10 a\n").unwrap();
        assert_eq!(p.graph.order(), 4);
        assert_eq!(p.graph.label(0), &Label::Int(10));
    }

    #[test]
    fn dot_for_triangle() {
        let k3 = named::complete(3);
        let dot = export_dot(&k3, None).unwrap();
        assert_eq!(dot.matches("--").count(), 3);
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";") && !l.contains("--")).count(), 3);

        let c = VertexColoring::new(vec![Color::Index(1), Color::Index(2), Color::Index(3)]);
        let dot = export_dot(&k3, Some(&c)).unwrap();
        let fills: BTreeSet<_> = dot
            .lines()
            .filter_map(|l| l.split("fillcolor=\"").nth(1))
            .map(|s| s.split('"').next().unwrap().to_string())
            .collect();
        assert_eq!(fills.len(), 3);
    }

    #[test]
    fn dot_for_empty_graph() {
        assert_eq!(export_dot(&Graph::new(), None).unwrap(), "graph G {\n}\n");
    }

    #[test]
    fn dot_rejects_domain_mismatch() {
        let c = VertexColoring::new(vec![Color::Zero]);
        assert!(export_dot(&named::complete(3), Some(&c)).is_err());
    }

    #[test]
    fn dot_round_trip() {
        for g in [named::petersen(), named::prism(), named::star(3)] {
            let back = parse_graph(&export_dot(&g, None).unwrap()).unwrap().graph;
            assert_eq!(back, g);
        }
    }
}
