//! Built-in named graphs. Vertices are labelled `1..=n`.

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

fn labelled(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_vertex(Label::Int(i as u64));
    }
    for (u, v) in edges {
        g.add_edge(u, v).expect("named graphs are simple");
    }
    g
}

pub fn complete(n: usize) -> Graph {
    labelled(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))
}

pub fn complete_minus_edge(n: usize) -> Graph {
    labelled(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).filter(|&e| e != (0, 1)))
}

pub fn path(n: usize) -> Graph {
    labelled(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    labelled(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_{1,k}` with the centre labelled 1.
pub fn star(k: usize) -> Graph {
    labelled(k + 1, (1..=k).map(|i| (0, i)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    labelled(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// `C3 □ K2`: triangles 1-2-3 and 4-5-6 joined by 1-4, 2-5, 3-6.
pub fn prism() -> Graph {
    labelled(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    labelled(10, outer.chain(spokes).chain(inner))
}

pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    labelled(n, (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v)))
}

/// Circulant `C_n(jumps)`: `i ~ i ± j (mod n)` for each jump `j`.
pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for &j in jumps {
            let w = (i + j) % n;
            if w != i {
                edges.push((i.min(w), i.max(w)));
            }
        }
    }
    let mut g = labelled(n, []);
    for (u, v) in edges {
        g.add_edge(u, v).expect("circulant edges are simple");
    }
    g
}

const CUBIC_CORPUS: &str = include_str!("../data/cubic_connected_le10.txt");

/// The connected cubic graphs on at most 10 vertices, one per isomorphism
/// class (1, 2, 5 and 19 graphs on 4, 6, 8 and 10 vertices).
pub fn cubic_corpus() -> Vec<Graph> {
    CUBIC_CORPUS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_corpus_line(l).expect("stored corpus is well formed"))
        .collect()
}

fn parse_corpus_line(line: &str) -> Result<Graph> {
    let bad = || Error::Parse { line: 0, message: format!("bad corpus line '{line}'") };
    let (n, rest) = line.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let edges = rest
        .split(',')
        .map(|e| {
            let mut it = e.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => Ok((u, v)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Graph::from_edges(n, &edges)
}

/// Looks up a built-in graph by name: `K4`, `K5-e`, `prism`, `Petersen`,
/// `K33`, `Q3`, `C5`, `P3`, `star3`, `C9(1,2)`, ...
pub fn by_name(name: &str) -> Result<Graph> {
    let lower = name.trim().to_ascii_lowercase();
    let bad = || Error::InvalidParameter(format!("unknown graph name '{name}'"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if lower == "prism" || lower == "c3xk2" || lower == "c3□k2" {
        return Ok(prism());
    }
    if lower == "petersen" {
        return Ok(petersen());
    }
    if let Some(rest) = lower.strip_prefix('k') {
        if let Some(base) = rest.strip_suffix("-e") {
            return Ok(complete_minus_edge(num(base)?));
        }
        if rest == "33" {
            return Ok(complete_bipartite(3, 3));
        }
        if let Some((a, b)) = rest.split_once(',') {
            return Ok(complete_bipartite(num(a)?, num(b)?));
        }
        return Ok(complete(num(rest)?));
    }
    if let Some(rest) = lower.strip_prefix('q') {
        return Ok(hypercube(num(rest)? as u32));
    }
    if let Some(rest) = lower.strip_prefix("star") {
        return Ok(star(num(rest)?));
    }
    if let Some(rest) = lower.strip_prefix('p') {
        return Ok(path(num(rest)?));
    }
    if let Some(rest) = lower.strip_prefix('c') {
        if let Some((n, jumps)) = rest.split_once('(') {
            let jumps = jumps.strip_suffix(')').ok_or_else(bad)?;
            let jumps = jumps.split(',').map(|j| num(j.trim())).collect::<Result<Vec<_>>>()?;
            return Ok(circulant(num(n)?, &jumps));
        }
        return Ok(cycle(num(rest)?));
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(5).size(), 10);
        assert_eq!(prism().size(), 9);
        assert!(petersen().is_regular() && petersen().size() == 15);
        assert_eq!(hypercube(4).max_degree(), 4);
        assert!(hypercube(4).is_regular());
        assert_eq!(circulant(9, &[1, 2]).size(), 18);
        assert_eq!(circulant(10, &[1, 2, 5]).max_degree(), 5);
        assert!(circulant(10, &[1, 2, 5]).is_regular());
        assert_eq!(complete_minus_edge(5).size(), 9);
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("K4").unwrap(), complete(4));
        assert_eq!(by_name("K33").unwrap(), complete_bipartite(3, 3));
        assert_eq!(by_name("K5-e").unwrap(), complete_minus_edge(5));
        assert_eq!(by_name("C9(1,2)").unwrap(), circulant(9, &[1, 2]));
        assert_eq!(by_name("Q3").unwrap(), hypercube(3));
        assert_eq!(by_name("prism").unwrap(), prism());
        assert!(by_name("nonsense").is_err());
    }

    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == a.order() {
                return true;
            }
            for y in 0..b.order() {
                if used[y] || (0..k).any(|x| a.has_edge(x, k) != b.has_edge(map[x], y)) {
                    continue;
                }
                map.push(y);
                used[y] = true;
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[y] = false;
            }
            false
        }
        a.order() == b.order() && a.size() == b.size() && extend(a, b, &mut Vec::new(), &mut vec![false; b.order()])
    }

    #[test]
    fn cubic_corpus_is_complete_and_distinct() {
        let c = cubic_corpus();
        let count = |n| c.iter().filter(|g| g.order() == n).count();
        assert_eq!([count(4), count(6), count(8), count(10)], [1, 2, 5, 19]);
        assert!(c.iter().all(|g| g.is_connected() && g.is_regular() && g.max_degree() == 3));
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                assert!(!isomorphic(&c[i], &c[j]), "corpus graphs {i} and {j} are isomorphic");
            }
        }
        assert!(c.iter().any(|g| isomorphic(g, &petersen())));
        assert!(c.iter().any(|g| isomorphic(g, &prism())));
    }
}
