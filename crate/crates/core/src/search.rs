//! Exact k-coloring search: DSATUR-ordered backtracking with forward
//! checking, optional color-symmetry breaking, and a node-expansion budget.

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    /// A proper coloring, one color index in `0..k` per vertex.
    Found(Vec<u32>),
    /// The search space was exhausted: no coloring exists.
    Exhausted,
    /// The node budget ran out before the search completed.
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes: u64,
}

/// A k-coloring instance on an adjacency-list graph.
///
/// `forbidden[v]` is a bitmask of colors `v` may not take; `fixed[v]` pins a
/// vertex to one color. Symmetry breaking (a new color may only be the
/// smallest unused one) is sound only without pins or forbidden masks and is
/// switched off automatically otherwise.
#[derive(Clone, Debug)]
pub struct ColoringProblem<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    fixed: Vec<Option<u32>>,
    forbidden: Vec<u64>,
}

pub const MAX_COLORS: usize = 64;

impl<'a> ColoringProblem<'a> {
    pub fn new(adj: &'a [Vec<usize>], k: usize) -> Self {
        assert!(k <= MAX_COLORS, "at most {MAX_COLORS} colors supported");
        let n = adj.len();
        Self { adj, k, fixed: vec![None; n], forbidden: vec![0; n] }
    }

    pub fn fix(&mut self, v: usize, c: u32) -> &mut Self {
        self.fixed[v] = Some(c);
        self
    }

    pub fn forbid(&mut self, v: usize, mask: u64) -> &mut Self {
        self.forbidden[v] |= mask;
        self
    }

    pub fn solve(&self, budget: u64) -> SearchOutcome {
        let n = self.adj.len();
        let full: u64 = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        let symmetric = self.fixed.iter().all(Option::is_none) && self.forbidden.iter().all(|&m| m == 0);
        let mut st = State {
            adj: self.adj,
            k: self.k,
            color: vec![u32::MAX; n],
            count: vec![0u16; n * self.k],
            avail: self.forbidden.iter().map(|&m| full & !m).collect(),
            allowed: self.forbidden.iter().map(|&m| full & !m).collect(),
            uncolored: n,
            nodes: 0,
            budget,
            symmetric,
        };
        for v in 0..n {
            if let Some(c) = self.fixed[v] {
                if (c as usize) >= self.k || st.avail[v] & (1 << c) == 0 || !st.assign(v, c) {
                    return SearchOutcome { result: SearchResult::Exhausted, nodes: 0 };
                }
            }
        }
        if (0..n).any(|v| st.color[v] == u32::MAX && st.avail[v] == 0) {
            return SearchOutcome { result: SearchResult::Exhausted, nodes: 0 };
        }
        let max_used = st.color.iter().filter(|&&c| c != u32::MAX).map(|&c| c as i64).max().unwrap_or(-1);
        let result = match st.search(max_used) {
            Some(true) => SearchResult::Found(st.color.clone()),
            Some(false) => SearchResult::Exhausted,
            None => SearchResult::Timeout,
        };
        SearchOutcome { result, nodes: st.nodes }
    }
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    color: Vec<u32>,
    /// count[v * k + c]: colored neighbors of v using c
    count: Vec<u16>,
    avail: Vec<u64>,
    /// colors not forbidden up front
    allowed: Vec<u64>,
    uncolored: usize,
    nodes: u64,
    budget: u64,
    symmetric: bool,
}

impl State<'_> {
    /// Colors `v` with `c`; returns false if some uncolored neighbor is left
    /// without options (the assignment stays in place either way).
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.color[v] = c;
        self.uncolored -= 1;
        let mut ok = true;
        for &w in &self.adj[v] {
            let slot = w * self.k + c as usize;
            self.count[slot] += 1;
            if self.count[slot] == 1 {
                self.avail[w] &= !(1u64 << c);
                if self.color[w] == u32::MAX && self.avail[w] == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: u32) {
        for &w in &self.adj[v] {
            let slot = w * self.k + c as usize;
            self.count[slot] -= 1;
            if self.count[slot] == 0 {
                self.avail[w] |= (1u64 << c) & self.allowed[w];
            }
        }
        self.color[v] = u32::MAX;
        self.uncolored += 1;
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_key = (u32::MAX, 0usize);
        for v in 0..self.color.len() {
            if self.color[v] != u32::MAX {
                continue;
            }
            let key = (self.avail[v].count_ones(), self.adj[v].len());
            if key.0 < best_key.0 || (key.0 == best_key.0 && key.1 > best_key.1) {
                best = v;
                best_key = key;
            }
        }
        best
    }

    /// Some(true) found, Some(false) exhausted, None budget exceeded.
    fn search(&mut self, max_used: i64) -> Option<bool> {
        if self.uncolored == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let v = self.pick();
        let mut options = self.avail[v];
        if self.symmetric {
            let limit = (max_used + 1).min(self.k as i64 - 1);
            let allowed = if limit >= 63 { u64::MAX } else { (1u64 << (limit + 1)) - 1 };
            options &= allowed;
        }
        while options != 0 {
            let c = options.trailing_zeros();
            options &= options - 1;
            let ok = self.assign(v, c);
            if ok {
                match self.search(max_used.max(c as i64)) {
                    Some(true) => return Some(true),
                    None => {
                        self.unassign(v, c);
                        return None;
                    }
                    Some(false) => {}
                }
            }
            self.unassign(v, c);
        }
        Some(false)
    }
}

/// Convenience: plain k-colorability of an adjacency-list graph.
pub fn k_color(adj: &[Vec<usize>], k: usize, budget: u64) -> SearchOutcome {
    ColoringProblem::new(adj, k).solve(budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    fn is_proper(adj: &[Vec<usize>], c: &[u32]) -> bool {
        adj.iter().enumerate().all(|(v, nb)| nb.iter().all(|&w| c[v] != c[w]))
    }

    #[test]
    fn odd_cycle() {
        let c5 = cycle(5);
        match k_color(&c5, 3, 1000).result {
            SearchResult::Found(c) => assert!(is_proper(&c5, &c)),
            r => panic!("{r:?}"),
        }
        assert_eq!(k_color(&c5, 2, 1000).result, SearchResult::Exhausted);
    }

    #[test]
    fn pins_and_forbidden() {
        let c4 = cycle(4);
        let mut p = ColoringProblem::new(&c4, 2);
        p.fix(0, 1);
        match p.solve(100).result {
            SearchResult::Found(c) => assert_eq!(c, vec![1, 0, 1, 0]),
            r => panic!("{r:?}"),
        }
        let mut p = ColoringProblem::new(&c4, 2);
        p.fix(0, 1).forbid(2, 0b10);
        assert_eq!(p.solve(100).result, SearchResult::Exhausted);
    }

    #[test]
    fn budget_timeout() {
        // K6 with 5 colors needs a real search without clique bounds
        let k6: Vec<Vec<usize>> = (0..6).map(|v| (0..6).filter(|&w| w != v).collect()).collect();
        assert_eq!(k_color(&k6, 5, 1).result, SearchResult::Timeout);
        assert_eq!(k_color(&k6, 5, 10_000).result, SearchResult::Exhausted);
    }

    #[test]
    fn forbidden_colors_survive_backtracking() {
        // exhaustive comparison on small random instances with masks
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..2000 {
            let n = 8;
            let mut adj = vec![Vec::new(); n];
            for v in 0..n {
                for w in v + 1..n {
                    if next() % 2 == 0 {
                        adj[v].push(w);
                        adj[w].push(v);
                    }
                }
            }
            let masks: Vec<u64> = (0..n).map(|_| (next() % 7) as u64).collect();
            let mut p = ColoringProblem::new(&adj, 3);
            for (v, &m) in masks.iter().enumerate() {
                p.forbid(v, m);
            }
            let brute = (0..3usize.pow(n as u32)).any(|code| {
                let c: Vec<u32> = (0..n).map(|v| (code / 3usize.pow(v as u32) % 3) as u32).collect();
                is_proper(&adj, &c) && (0..n).all(|v| masks[v] & (1 << c[v]) == 0)
            });
            match p.solve(1_000_000).result {
                SearchResult::Found(c) => {
                    assert!(brute && is_proper(&adj, &c));
                    assert!((0..n).all(|v| masks[v] & (1 << c[v]) == 0));
                }
                SearchResult::Exhausted => assert!(!brute),
                SearchResult::Timeout => panic!("tiny instance timed out"),
            }
        }
    }
}
