//! Exact maximum clique by branch and bound with greedy-coloring bounds.

/// Outcome of [`max_clique_adj`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueResult {
    /// Clique number and one maximum clique.
    Exact {
        size: usize,
        clique: Vec<usize>,
    },
    TooLarge {
        vertices: usize,
        cap: usize,
    },
}

impl CliqueResult {
    pub fn size(&self) -> Option<usize> {
        match self {
            CliqueResult::Exact { size, .. } => Some(*size),
            CliqueResult::TooLarge { .. } => None,
        }
    }
}

pub const DEFAULT_CLIQUE_CAP: usize = 5000;

type Bits = Vec<u64>;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in b.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

struct Mcq {
    nbrs: Vec<Bits>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Mcq {
    /// Greedy coloring of `cand` in `order`; returns vertices with their
    /// color class number (1-based), sorted by class.
    fn color_sort(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut remaining = cand.clone();
        let mut out = Vec::with_capacity(count(cand));
        let mut class = 0;
        while count(&remaining) > 0 {
            class += 1;
            let mut q = remaining.clone();
            while let Some(&v) = members(&q).first() {
                q[v / 64] &= !(1 << (v % 64));
                remaining[v / 64] &= !(1 << (v % 64));
                for (qw, nw) in q.iter_mut().zip(&self.nbrs[v]) {
                    *qw &= !nw;
                }
                out.push((v, class));
            }
        }
        out
    }

    fn expand(&mut self, cand: Bits) {
        let ordered = self.color_sort(&cand);
        let mut cand = cand;
        for &(v, class) in ordered.iter().rev() {
            if self.current.len() + class <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = and(&cand, &self.nbrs[v]);
            if count(&next) == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Clique number of an adjacency-list graph; refuses graphs above `cap`.
pub fn max_clique_adj(adj: &[Vec<usize>], cap: usize) -> CliqueResult {
    let n = adj.len();
    if n > cap {
        return CliqueResult::TooLarge { vertices: n, cap };
    }
    if n == 0 {
        return CliqueResult::Exact { size: 0, clique: Vec::new() };
    }
    let w = words(n);
    let nbrs: Vec<Bits> = adj
        .iter()
        .map(|a| {
            let mut b = vec![0; w];
            for &x in a {
                set(&mut b, x);
            }
            b
        })
        .collect();
    let mut all = vec![0; w];
    for v in 0..n {
        set(&mut all, v);
    }
    let mut mcq = Mcq { nbrs, best: vec![0], current: Vec::new() };
    mcq.expand(all);
    let mut clique = mcq.best;
    clique.sort_unstable();
    debug_assert!(clique.iter().all(|&a| clique.iter().all(|&b| a == b || has(&mcq.nbrs[a], b))));
    CliqueResult::Exact { size: clique.len(), clique }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let c5: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 4) % 5, (i + 1) % 5]).collect();
        assert_eq!(max_clique_adj(&c5, 100).size(), Some(2));
        let k4: Vec<Vec<usize>> = (0..4).map(|v| (0..4).filter(|&w| w != v).collect()).collect();
        assert_eq!(max_clique_adj(&k4, 100).size(), Some(4));
        assert_eq!(max_clique_adj(&k4, 3), CliqueResult::TooLarge { vertices: 4, cap: 3 });
        assert_eq!(max_clique_adj(&[vec![]], 10).size(), Some(1));
    }
}
