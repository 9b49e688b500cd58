//! Colorings of `G^{m/n}` with `(m/2)Δ + 1` colors for even `m`.

use super::{exact_omega, extend_to, finish, reduce_n, require, restrict, Colored, Partial, Report, FALLBACK_BUDGET};
use crate::color::{tuple_colors, Color};
use crate::error::{Error, Result};
use crate::fracpow::{frac_power, tuple::rev, FracPowGraph};
use crate::graph::{regular_embed, Graph};
use crate::halfedge::{
    good_half_edge_coloring, half_edge_coloring, orient_good, star_edge_coloring, StarEdgeColoring, STAR,
};

fn check_even(g: &Graph, m: usize, n: usize) -> Result<()> {
    require(m >= 2 && m.is_multiple_of(2), format!("m must be even and positive, got {m}"))?;
    require(n > m, format!("need n > m, got m={m}, n={n}"))?;
    require(g.order() > 0 && g.is_connected(), "graph must be connected")
}

/// `{0} ∪ {a_i : a in 1..=Δ, i in 1..=m/2}`.
fn even_palette(delta: usize, half: usize) -> Vec<Color> {
    let mut p = vec![Color::Zero];
    for a in 1..=delta as u32 {
        p.extend(tuple_colors(a, half));
    }
    p
}

/// Δ ≥ 4 and `m + 2 <= n <= 2m + 1`: bubbles carry the tuple of their
/// half-edge, middle parts carry reversed spare tuples.
pub fn color_even_highdeg(g: &Graph, m: usize, n: usize) -> Result<Colored> {
    check_even(g, m, n)?;
    let delta = g.max_degree();
    require(delta >= 4, format!("needs Δ >= 4, got {delta}"))?;
    require((m + 2..=2 * m + 1).contains(&n), format!("needs m+2 <= n <= 2m+1, got m={m}, n={n}"))?;
    let h = half_edge_coloring(g)?;
    let fp = frac_power(g, m, n)?;
    let half = m / 2;
    let mut p = Partial::new(&fp);
    for u in 0..g.order() {
        p.set(u, Color::Zero);
    }
    for &(u, v) in fp.base_edges() {
        p.set_seq(&fp.bubble(u, v), &tuple_colors(h.get(u, v), half));
        p.set_seq(&fp.bubble(v, u), &tuple_colors(h.get(v, u), half));
        let (hu, hv) = (h.get(u, v), h.get(v, u));
        let mut spare = (1..=delta as u32).filter(|&c| c != hu && c != hv);
        let (a, b) = (spare.next().unwrap(), spare.next().unwrap());
        let len = fp.middle_len();
        let (k, l) = (len.div_ceil(2), len / 2);
        p.set_seq(&fp.middle(u, v)[..k], &rev(&tuple_colors(a, half)));
        p.set_seq(&fp.middle(v, u)[..l], &rev(&tuple_colors(b, half)));
    }
    finish(p, &even_palette(delta, half), Report::new("even m, Δ >= 4"))
}

/// Cubic `g`, `m + 2 <= n <= 2m + 1`. The first range uses a good half-edge
/// coloring with its orientation, the second a `{1,2,3,*}` edge coloring,
/// and `n = 2m + 1` exact search with `k = ω`.
pub fn color_even_cubic(g: &Graph, m: usize, n: usize) -> Result<Colored> {
    check_even(g, m, n)?;
    require(g.is_regular() && g.max_degree() == 3, "graph must be cubic")?;
    require((m + 2..=2 * m + 1).contains(&n), format!("needs m+2 <= n <= 2m+1, got m={m}, n={n}"))?;
    let built = if n <= 3 * m / 2 + 1 {
        cubic_first_range(g, m, n)
    } else if n <= 2 * m {
        cubic_second_range(g, m, n)
    } else {
        Err(Error::Construction("n = 2m+1 is outside both cubic ranges".into()))
    };
    match built {
        Ok(c) => Ok(c),
        Err(Error::Construction(why)) => {
            log::warn!("cubic m={m}, n={n}: {why}; falling back to exact search");
            let mut c = exact_omega(g, m, n, FALLBACK_BUDGET)?;
            c.report.note(format!("{why}; colored by exact search with k = ω"));
            Ok(c)
        }
        Err(e) => Err(e),
    }
}

fn cubic_first_range(g: &Graph, m: usize, n: usize) -> Result<Colored> {
    let h = good_half_edge_coloring(g)?;
    let o = orient_good(g, &h)?;
    let fp = frac_power(g, m, n)?;
    let half = m / 2;
    let len = fp.middle_len();
    require((1..=half).contains(&len), format!("first-range middle length {len} outside 1..={half}"))?;
    let mut p = Partial::new(&fp);
    let mut report = Report::new("even m, cubic, first range");
    for u in 0..g.order() {
        p.set(u, Color::Zero);
    }
    // A middle vertex can only use the third tuple c. With flanking
    // c-bubbles of opposite direction the positions fit only when
    // |M| = m/2; a single middle vertex needs both in the same direction,
    // so then every bubble is forward and the middle gets c_{m/2}.
    let single = len == 1 && half > 1;
    if single {
        report.note("|M| = 1: all bubbles forward, middles c_(m/2)");
    } else if len < half {
        report.note(format!("|M| = {len} < m/2 has no tuple pattern; middles completed by local search"));
    }
    for &(u, v) in fp.base_edges() {
        for (x, y) in [(u, v), (v, u)] {
            let t = tuple_colors(h.get(x, y), half);
            let t = if o.is_inward(x, y) && !single { rev(&t) } else { t };
            p.set_seq(&fp.bubble(x, y), &t);
        }
        let c = 6 - h.get(u, v) - h.get(v, u);
        if single {
            p.set(fp.middle(u, v)[0], Color::tuple(c, half as u32));
        } else if len == half {
            let at_u = *g.neighbors(u).iter().find(|&&w| h.get(u, w) == c).expect("cubic vertex sees every color");
            let side = if o.is_inward(u, at_u) { fp.middle(u, v) } else { fp.middle(v, u) };
            p.set_seq(&side, &tuple_colors(c, len));
        }
    }
    finish(p, &even_palette(3, half), report)
}

/// The two colors of `1, 2, 3` other than `*` at `x`, excluding edge `xy`.
fn other_color(g: &Graph, s: &StarEdgeColoring, x: usize, skip: usize, not: u8) -> (usize, u8) {
    g.neighbors(x)
        .iter()
        .filter(|&&w| w != skip)
        .map(|&w| (w, s.color(x, w)))
        .find(|&(_, c)| c != not && c != STAR)
        .expect("a *-edge sees all of 1, 2, 3")
}

/// `tuple` if the edge `xw` points into `x`, its reverse otherwise.
fn by_head(s: &StarEdgeColoring, x: usize, w: usize, tuple: Vec<Color>) -> Vec<Color> {
    if s.points_from(w, x) {
        tuple
    } else {
        rev(&tuple)
    }
}

fn conflicts_with(fp: &FracPowGraph, p: &Partial<'_>, x: usize, c: Color) -> usize {
    fp.neighbors(x).iter().filter(|&&y| p.get(y) == Some(c)).count()
}

fn cubic_second_range(g: &Graph, m: usize, n: usize) -> Result<Colored> {
    let s = star_edge_coloring(g)?;
    let fp = frac_power(g, m, n)?;
    let half = m / 2;
    let len = fp.middle_len();
    let mut p = Partial::new(&fp);
    let mut report = Report::new("even m, cubic, second range");
    for u in 0..g.order() {
        p.set(u, Color::Zero);
    }
    // bubbles on 1,2,3-edges follow the edge orientation
    for e in 0..s.edges.len() {
        if s.colors[e] != STAR {
            let (tail, head) = s.directions[e].expect("oriented");
            let t = tuple_colors(s.colors[e] as u32, half);
            p.set_seq(&fp.bubble(tail, head), &t);
            p.set_seq(&fp.bubble(head, tail), &rev(&t));
        }
    }
    // *-edges: bubbles from the missing color, middles in three parts
    let mut zero_slots = 0;
    for (e, &(x, y)) in s.edges.iter().enumerate() {
        if s.colors[e] != STAR {
            continue;
        }
        let (u, v) = s.directions[e].unwrap_or((x, y));
        let a = (1..=3u8).find(|&a| s.g_a(g, a).contains(&e)).expect("every *-edge lies in some G_a");
        let (bu, b) = other_color(g, &s, u, v, a);
        let (cv, c) = other_color(g, &s, v, u, a);
        p.set_seq(&fp.bubble(u, v), &by_head(&s, v, cv, tuple_colors(c as u32, half)));
        p.set_seq(&fp.bubble(v, u), &by_head(&s, u, bu, tuple_colors(b as u32, half)));
        let odd = (len - half) % 2 == 1;
        let l = (len - half - odd as usize) / 2;
        let mid = fp.middle(u, v);
        p.set_seq(&mid[..l], &by_head(&s, u, bu, tuple_colors(b as u32, half)));
        p.set_seq(&fp.middle(v, u)[..l], &by_head(&s, v, cv, tuple_colors(c as u32, half)));
        let mut central: Vec<usize> = mid[l..l + half + odd as usize].to_vec();
        if odd {
            let special = fp.at(u, v, m + 1);
            central.retain(|&x| x != special);
            p.set(special, Color::Zero);
            zero_slots += 1;
        }
        p.set_seq(&central, &tuple_colors(a as u32, half));
    }
    // middles of 1,2,3-edges: reversed neighboring bubbles with different tuples
    let (k, l) = (len.div_ceil(2), len / 2);
    for (e, &(u, v)) in s.edges.iter().enumerate() {
        if s.colors[e] == STAR || len == 0 {
            continue;
        }
        let (mu, mv) = (fp.middle(u, v), fp.middle(v, u));
        let bubble_colors = |x: usize, w: usize| -> Vec<Color> {
            fp.bubble(x, w).iter().map(|&b| p.get(b).expect("bubble colored")).collect()
        };
        let mut best: Option<(usize, Vec<Color>, Vec<Color>)> = None;
        for &u2 in g.neighbors(u).iter().filter(|&&w| w != v) {
            for &v2 in g.neighbors(v).iter().filter(|&&w| w != u) {
                let (bu, bv) = (bubble_colors(u, u2), bubble_colors(v, v2));
                if base_of(&bu) == base_of(&bv) {
                    continue;
                }
                let (fu, fv) = (rev(&bu), rev(&bv));
                let cost: usize = mu[..k].iter().zip(&fu).map(|(&x, &c)| conflicts_with(&fp, &p, x, c)).sum::<usize>()
                    + mv[..l].iter().zip(&fv).map(|(&x, &c)| conflicts_with(&fp, &p, x, c)).sum::<usize>();
                if best.as_ref().is_none_or(|b| cost < b.0) {
                    best = Some((cost, fu, fv));
                }
            }
        }
        let (_, fu, fv) = best.expect("bubbles at u and v use different tuples");
        p.set_seq(&mu[..k], &fu);
        p.set_seq(&mv[..l], &fv);
    }
    if zero_slots > 0 {
        report.note(format!("{zero_slots} *-edges needed the (uv)_(m+1) switching step"));
    }
    finish(p, &even_palette(3, half), report)
}

fn base_of(t: &[Color]) -> Option<u32> {
    t.iter().find_map(|c| match c {
        Color::Tuple { base, .. } => Some(*base),
        _ => None,
    })
}

/// Any `g` with Δ ≥ 3 and `n > m`: embeds `g` in a regular graph, colors the
/// reduced instance `n0 <= 2m + 1` and extends to `n`.
pub fn color_even(g: &Graph, m: usize, n: usize, budget: u64) -> Result<Colored> {
    check_even(g, m, n)?;
    require(g.max_degree() >= 3, format!("unsupported: needs Δ >= 3, got {}", g.max_degree()))?;
    let n0 = reduce_n(m, n);
    let base = if n0 == m + 1 {
        let mut c = exact_omega(g, m, n0, budget)?;
        c.report.note("n = m+1 colored by exact search with k = ω");
        c
    } else {
        let big = if g.is_regular() { g.clone() } else { regular_embed(g)? };
        let c = if big.max_degree() >= 4 { color_even_highdeg(&big, m, n0)? } else { color_even_cubic(&big, m, n0)? };
        restrict(&c, g)?
    };
    extend_to(base, n)
}
