//! Maximum bipartite matching by augmenting paths.

/// Maximum matching of a bipartite graph given as adjacency lists from the
/// left side to right vertices `0..right`. Entry `i` is the right partner of
/// left vertex `i`. Left vertices and their lists are tried in order.
pub fn max_matching(left: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right];
    for l in 0..left.len() {
        let mut seen = vec![false; right];
        augment(left, l, &mut seen, &mut owner);
    }
    let mut out = vec![None; left.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = *o {
            out[l] = Some(r);
        }
    }
    out
}

fn augment(left: &[Vec<usize>], l: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &r in &left[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if owner[r].is_none() || augment(left, owner[r].unwrap(), seen, owner) {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}

/// A set `S` of left vertices with `|N(S)| < |S|`, if one exists.
pub fn hall_violator(left: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    let m = max_matching(left, right);
    let free = m.iter().position(Option::is_none)?;
    // left vertices reachable from a free left vertex by alternating paths
    let mut partner_of_right: Vec<Option<usize>> = vec![None; right];
    for (l, r) in m.iter().enumerate() {
        if let Some(r) = r {
            partner_of_right[*r] = Some(l);
        }
    }
    let mut in_s = vec![false; left.len()];
    let mut stack = vec![free];
    in_s[free] = true;
    while let Some(l) = stack.pop() {
        for &r in &left[l] {
            if let Some(l2) = partner_of_right[r] {
                if !in_s[l2] {
                    in_s[l2] = true;
                    stack.push(l2);
                }
            }
        }
    }
    Some((0..left.len()).filter(|&l| in_s[l]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_found() {
        let left = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = max_matching(&left, 3);
        assert_eq!(m, vec![Some(1), Some(0), Some(2)]);
        assert_eq!(hall_violator(&left, 3), None);
    }

    #[test]
    fn hall_violation_reported() {
        let left = vec![vec![0], vec![0], vec![1, 2]];
        let s = hall_violator(&left, 3).unwrap();
        assert_eq!(s, vec![0, 1]);
    }
}
