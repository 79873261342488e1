//! Maximum bipartite matching (augmenting paths) and Hall-violator
//! extraction.

/// Maximum matching of a bipartite graph with `adj[u]` the right neighbours
/// of left vertex `u`. Returns the partner of each left vertex.
pub fn maximum_matching(right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut left_of: Vec<Option<usize>> = vec![None; right];
    let mut right_of: Vec<Option<usize>> = vec![None; adj.len()];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(u, adj, &mut seen, &mut left_of);
    }
    for (w, u) in left_of.iter().enumerate() {
        if let Some(u) = *u {
            right_of[u] = Some(w);
        }
    }
    right_of
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], left_of: &mut [Option<usize>]) -> bool {
    for &w in &adj[u] {
        if seen[w] {
            continue;
        }
        seen[w] = true;
        let free = match left_of[w] {
            None => true,
            Some(other) => augment(other, adj, seen, left_of),
        };
        if free {
            left_of[w] = Some(u);
            return true;
        }
    }
    false
}

/// For a square bipartite graph on `n + n` vertices without a perfect
/// matching, a sorted set `S` of left vertices with fewer than `|S|`
/// neighbours. `None` when a perfect matching exists.
pub fn hall_violator(n: usize, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let partner = maximum_matching(n, adj);
    let start = partner.iter().position(Option::is_none)?;
    let mut left_of: Vec<Option<usize>> = vec![None; n];
    for (u, w) in partner.iter().enumerate() {
        if let Some(w) = *w {
            left_of[w] = Some(u);
        }
    }
    // left vertices reachable from the unmatched `start` by alternating
    // paths; their neighbourhood is matched into the set minus `start`
    let mut in_set = vec![false; adj.len()];
    let mut seen_right = vec![false; n];
    let mut stack = vec![start];
    in_set[start] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen_right[w] {
                seen_right[w] = true;
                let u2 = left_of[w].expect("maximum matching saturates reachable right vertices");
                if !in_set[u2] {
                    in_set[u2] = true;
                    stack.push(u2);
                }
            }
        }
    }
    Some((0..adj.len()).filter(|&u| in_set[u]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neighbourhood(adj: &[Vec<usize>], s: &[usize]) -> usize {
        let mut seen: Vec<usize> = s.iter().flat_map(|&u| adj[u].iter().copied()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    #[test]
    fn perfect_matching_found() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = maximum_matching(3, &adj);
        assert_eq!(m, vec![Some(1), Some(0), Some(2)]);
        assert_eq!(hall_violator(3, &adj), None);
    }

    #[test]
    fn violator_is_tight() {
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        let s = hall_violator(3, &adj).unwrap();
        assert_eq!(s, vec![0, 1]);
        assert!(neighbourhood(&adj, &s) < s.len());
        let isolated = vec![vec![0, 1], vec![], vec![2]];
        assert_eq!(hall_violator(3, &isolated), Some(vec![1]));
    }

    #[test]
    fn exhaustive_small_bipartite_graphs() {
        // every bipartite graph on 3 + 3 vertices: a perfect matching exists
        // iff some permutation is contained in the edge set
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for mask in 0u32..512 {
            let has = |u: usize, w: usize| (mask >> (3 * u + w)) & 1 == 1;
            let adj: Vec<Vec<usize>> = (0..3).map(|u| (0..3).filter(|&w| has(u, w)).collect()).collect();
            let perfect = perms.iter().any(|p| (0..3).all(|u| has(u, p[u])));
            match hall_violator(3, &adj) {
                None => assert!(perfect, "mask {mask}"),
                Some(s) => {
                    assert!(!perfect, "mask {mask}");
                    assert!(neighbourhood(&adj, &s) < s.len(), "mask {mask}");
                }
            }
        }
    }
}
