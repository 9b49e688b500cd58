use std::collections::VecDeque;

use proptest::prelude::*;

use fracolor::cert::{Certificate, Verdict};
use fracolor::color::Color;
use fracolor::construct::{color, extend_coloring};
use fracolor::fracpow::{frac_power, FPVertex};
use fracolor::graph::{regular_embed, Graph};
use fracolor::halfedge::{half_edge_coloring, two_incompatible};
use fracolor::io::{export_dot, parse_graph};
use fracolor::oracle::{decide_omega_odd, exact_chromatic, max_clique, omega_formula, verify_coloring, Decision};

/// A connected graph on `2..=max_n` vertices: a random spanning tree plus
/// random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            (Just(n), parents, proptest::collection::vec(any::<bool>(), n * (n - 1) / 2))
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

fn m_n() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4).prop_flat_map(|m| (Just(m), m + 1..=2 * m + 1))
}

/// Distances in the explicit subdivision, built independently of the
/// library: vertex `u` for branch vertices, `|V| + e (n-1) + p - 1` for the
/// point at distance `p` from the smaller endpoint of edge `e`.
fn subdivision_distances(g: &Graph, n: usize) -> Vec<Vec<usize>> {
    let edges = g.edges();
    let order = g.order() + edges.len() * (n - 1);
    let mut adj = vec![Vec::new(); order];
    for (e, &(a, b)) in edges.iter().enumerate() {
        let path: Vec<usize> = std::iter::once(a)
            .chain((1..n).map(|p| g.order() + e * (n - 1) + p - 1))
            .chain(std::iter::once(b))
            .collect();
        for w in path.windows(2) {
            adj[w[0]].push(w[1]);
            adj[w[1]].push(w[0]);
        }
    }
    (0..order)
        .map(|s| {
            let mut d = vec![usize::MAX; order];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if d[y] == usize::MAX {
                        d[y] = d[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            d
        })
        .collect()
}

fn independent_index(g: &Graph, n: usize, x: FPVertex) -> usize {
    match x {
        FPVertex::Branch(u) => u,
        FPVertex::Internal { u, v, i } => {
            let e = g.edges().iter().position(|&p| p == (u, v)).unwrap();
            g.order() + e * (n - 1) + i - 1
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn power_matches_subdivision_distances(g in connected_graph(6), (m, n) in m_n()) {
        let fp = frac_power(&g, m, n).unwrap();
        prop_assert_eq!(fp.order(), g.order() + g.size() * (n - 1));
        let d = subdivision_distances(&g, n);
        for x in 0..fp.order() {
            let ix = independent_index(&g, n, fp.vertex(x));
            prop_assert_eq!(fp.index(fp.vertex(x)), Some(x));
            for y in 0..fp.order() {
                let iy = independent_index(&g, n, fp.vertex(y));
                prop_assert_eq!(fp.distance(x, y) as usize, d[ix][iy]);
                prop_assert_eq!(fp.has_edge(x, y), x != y && d[ix][iy] <= m);
            }
        }
    }

    #[test]
    fn anatomy_partitions_every_vertex(g in connected_graph(6), (m, n) in m_n()) {
        // for odd m and n = m + 1 the two crusts of a superedge coincide
        prop_assume!(m % 2 == 0 || n >= m + 2);
        let fp = frac_power(&g, m, n).unwrap();
        let a = fp.anatomy().unwrap();
        let counts = a.classification_counts(&fp);
        prop_assert!(counts.iter().all(|&c| c == 1), "{:?}", counts);
    }

    #[test]
    fn internal_vertex_forms_agree(u in 0usize..20, v in 0usize..20, n in 2usize..12, i in 1usize..12) {
        prop_assume!(u != v && i < n);
        prop_assert_eq!(FPVertex::internal(u, v, i, n), FPVertex::internal(v, u, n - i, n));
        let x = FPVertex::internal(u, v, i, n);
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FPVertex>(&s).unwrap(), x);
    }

    #[test]
    fn omega_formula_equals_clique_number(g in connected_graph(6), (m, n) in m_n()) {
        let fp = frac_power(&g, m, n).unwrap();
        let formula = omega_formula(g.max_degree() as i64, m as i64).unwrap();
        prop_assert_eq!(max_clique(&fp, fp.order()).size(), Some(formula));
    }

    #[test]
    fn exact_answers_are_sound(g in connected_graph(5), (m, n) in m_n()) {
        let fp = frac_power(&g, m, n).unwrap();
        prop_assume!(fp.order() <= 30);
        let omega = omega_formula(g.max_degree() as i64, m as i64).unwrap();
        if omega > 1 {
            prop_assert!(exact_chromatic(&fp, omega - 1, 1_000_000).unwrap().is_no());
        }
        if let Decision::Yes(c) = exact_chromatic(&fp, omega + 1, 1_000_000).unwrap() {
            prop_assert!(verify_coloring(&fp, &c).unwrap().is_none());
        }
    }

    #[test]
    fn crust_pruning_agrees_with_plain_search(g in connected_graph(5), n in 4usize..=7) {
        let fp = frac_power(&g, 3, n).unwrap();
        prop_assume!(fp.order() <= 30 && g.max_degree() >= 2);
        let omega = omega_formula(g.max_degree() as i64, 3).unwrap();
        let pruned = decide_omega_odd(&g, 3, n, 5_000_000).unwrap();
        let plain = exact_chromatic(&fp, omega, 5_000_000).unwrap();
        prop_assert!(!matches!(pruned, Decision::Timeout(_)) && !matches!(plain, Decision::Timeout(_)));
        prop_assert_eq!(pruned.is_yes(), plain.is_yes());
    }

    #[test]
    fn regular_embedding_restricts_to_the_input(g in connected_graph(6)) {
        prop_assume!(g.max_degree() >= 2);
        let big = regular_embed(&g).unwrap();
        prop_assert!(big.is_regular() && big.max_degree() == g.max_degree());
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(big.has_edge(u, v), g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn half_edge_colorings_are_proper(g in connected_graph(7)) {
        prop_assume!(g.max_degree() >= 3);
        let h = half_edge_coloring(&g).unwrap();
        prop_assert!(h.is_proper(&g));
        let big = regular_embed(&g).unwrap();
        prop_assert!(half_edge_coloring(&big).unwrap().is_proper(&big));
    }

    #[test]
    fn dot_round_trip(g in connected_graph(7)) {
        let back = parse_graph(&export_dot(&g, None).unwrap()).unwrap().graph;
        prop_assert_eq!(back.order(), g.order());
        for (u, v) in g.edges() {
            let (a, b) = (back.index_of(g.label(u)).unwrap(), back.index_of(g.label(v)).unwrap());
            prop_assert!(back.has_edge(a, b));
        }
        prop_assert_eq!(back.size(), g.size());
    }

    #[test]
    fn color_strings_round_trip(base in 1u32..50, slot in 1u32..50, i in 0u32..100, d in 1u8..3) {
        for c in [Color::Zero, Color::Heart, Color::Fresh, Color::Diamond(d), Color::tuple(base, slot), Color::Index(i)] {
            prop_assert_eq!(c.to_string().parse::<Color>().unwrap(), c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constructions_are_proper_and_extend(g in connected_graph(6), m in 2usize..=3, extra in 1usize..=3) {
        prop_assume!(g.max_degree() >= 3);
        let n = m + 1 + extra;
        let c = color(&g, m, n, 20_000_000).unwrap();
        prop_assert!(verify_coloring(&c.fp, &c.coloring).unwrap().is_none());
        let omega = omega_formula(g.max_degree() as i64, m as i64).unwrap();
        let bound = if m % 2 == 0 { omega } else { omega + 2 };
        prop_assert!(c.num_colors() >= omega && c.num_colors() <= bound, "{} colors, ω = {}", c.num_colors(), omega);
        let e = extend_coloring(&c).unwrap();
        prop_assert_eq!(e.num_colors(), c.num_colors());
        let cert = Certificate::coloring(&e).unwrap();
        let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert_eq!(back.verify(0).unwrap(), Verdict::ValidColoring { num_colors: e.num_colors() });
    }

    #[test]
    fn two_incompatible_bound(g in connected_graph(7)) {
        prop_assume!(g.max_degree() >= 3);
        let big = if g.is_regular() { g.clone() } else { regular_embed(&g).unwrap() };
        let adj: Vec<Vec<usize>> = (0..big.order()).map(|v| big.neighbors(v).to_vec()).collect();
        let f = match fracolor::search::k_color(&adj, big.max_degree(), 1_000_000).result {
            fracolor::search::SearchResult::Found(c) => c.into_iter().map(|c| c + 1).collect::<Vec<u32>>(),
            _ => return Ok(()),
        };
        let h = two_incompatible(&big, &f).unwrap();
        prop_assert!(h.is_proper(&big));
        prop_assert!(h.incompatible_counts(&big, &f).iter().all(|&c| c <= 2));
    }
}
