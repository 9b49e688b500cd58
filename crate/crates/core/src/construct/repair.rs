//! Local exact repair: recolor a small region around every uncolored or
//! conflicting vertex within a fixed palette.

use std::collections::{HashMap, HashSet};

use crate::color::Color;
use crate::error::{Error, Result};
use crate::fracpow::FracPowGraph;
use crate::search::{ColoringProblem, SearchResult};

/// How far (in power-graph steps) a region may grow around its seed.
const MAX_RADIUS: usize = 3;

/// Completes `colors` to a proper coloring of `fp` using only `palette`,
/// recoloring as few vertices as the radius schedule allows. Returns the
/// number of vertices that were (re)colored.
pub fn repair(fp: &FracPowGraph, colors: &mut [Option<Color>], palette: &[Color], budget: u64) -> Result<usize> {
    let mut free: Vec<bool> = colors.iter().map(Option::is_none).collect();
    for x in 0..fp.order() {
        if let Some(c) = colors[x] {
            for &y in fp.neighbors(x) {
                if y > x && colors[y] == Some(c) {
                    free[x] = true;
                    free[y] = true;
                }
            }
        }
    }
    if !free.iter().any(|&f| f) {
        return Ok(0);
    }
    let index: HashMap<Color, usize> = palette.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    if palette.len() > crate::search::MAX_COLORS {
        return Err(Error::InvalidParameter(format!("palette of {} colors is too large for repair", palette.len())));
    }
    for c in colors.iter().flatten() {
        if !index.contains_key(c) {
            return Err(Error::Construction(format!("color {c} is outside the repair palette")));
        }
    }
    for x in 0..fp.order() {
        if free[x] {
            colors[x] = None;
        }
    }
    let mut total = 0;
    for seed in components(fp, &free) {
        total += repair_component(fp, colors, &seed, &index, palette, budget)?;
    }
    Ok(total)
}

/// Connected components of the free vertices in the power graph.
fn components(fp: &FracPowGraph, free: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; fp.order()];
    let mut out = Vec::new();
    for s in 0..fp.order() {
        if !free[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            for &y in fp.neighbors(comp[k]) {
                if free[y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            k += 1;
        }
        out.push(comp);
    }
    out
}

fn repair_component(
    fp: &FracPowGraph,
    colors: &mut [Option<Color>],
    seed: &[usize],
    index: &HashMap<Color, usize>,
    palette: &[Color],
    budget: u64,
) -> Result<usize> {
    let mut region: Vec<usize> = seed.to_vec();
    let mut inside: HashSet<usize> = region.iter().copied().collect();
    for radius in 0..=MAX_RADIUS {
        if radius > 0 {
            let frontier: Vec<usize> = region.clone();
            for x in frontier {
                for &y in fp.neighbors(x) {
                    if inside.insert(y) {
                        region.push(y);
                    }
                }
            }
        }
        let local: HashMap<usize, usize> = region.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let adj: Vec<Vec<usize>> =
            region.iter().map(|&x| fp.neighbors(x).iter().filter_map(|y| local.get(y).copied()).collect()).collect();
        let mut problem = ColoringProblem::new(&adj, palette.len());
        for (i, &x) in region.iter().enumerate() {
            let mut mask = 0u64;
            for &y in fp.neighbors(x) {
                if !local.contains_key(&y) {
                    if let Some(c) = colors[y] {
                        mask |= 1 << index[&c];
                    }
                }
            }
            problem.forbid(i, mask);
        }
        let out = problem.solve(budget);
        if let SearchResult::Found(sol) = out.result {
            for (i, &x) in region.iter().enumerate() {
                colors[x] = Some(palette[sol[i] as usize]);
            }
            return Ok(region.len());
        }
        log::debug!("repair radius {radius} around {} seed vertices failed ({} nodes)", seed.len(), out.nodes);
    }
    let x = fp.vertex(seed[0]);
    Err(Error::Construction(format!(
        "local repair around {x:?} failed within radius {MAX_RADIUS} using {} colors",
        palette.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::VertexColoring;
    use crate::fracpow::frac_power;
    use crate::named;
    use crate::oracle::verify_coloring;

    #[test]
    fn fills_a_hole_and_fixes_a_clash() {
        let fp = frac_power(&named::cycle(4), 1, 2).unwrap();
        // C8 with colors alternating; punch a hole and add a clash
        let palette = [Color::Index(0), Color::Index(1)];
        let mut colors: Vec<Option<Color>> = (0..fp.order()).map(|_| None).collect();
        for u in 0..4 {
            colors[u] = Some(Color::Index(0));
        }
        for x in 4..fp.order() {
            colors[x] = Some(Color::Index(1));
        }
        colors[5] = None;
        colors[0] = Some(Color::Index(1));
        let fixed = repair(&fp, &mut colors, &palette, 1000).unwrap();
        assert!(fixed > 0);
        let c = VertexColoring::from_partial(colors).unwrap();
        assert_eq!(verify_coloring(&fp, &c).unwrap(), None);
    }

    #[test]
    fn proper_input_untouched() {
        let fp = frac_power(&named::path(2), 1, 2).unwrap();
        let mut colors = vec![Some(Color::Index(0)), Some(Color::Index(0)), Some(Color::Index(1))];
        assert_eq!(repair(&fp, &mut colors, &[Color::Index(0), Color::Index(1)], 10).unwrap(), 0);
    }

    #[test]
    fn impossible_palette_reported() {
        let fp = frac_power(&named::cycle(3), 1, 3).unwrap();
        let mut colors = vec![None; fp.order()];
        assert!(repair(&fp, &mut colors, &[Color::Index(0), Color::Index(1)], 1000).is_err());
    }
}
