//! Exact minimum clique cover for small graphs (branch and bound over
//! maximal cliques), plus the lexicographically least optimal partition into
//! cliques and a greedy fallback for oversized components. Vertices are
//! bitmask-encoded; callers decompose into components first.

/// Neighbor bitmasks from a symmetric adjacency matrix.
fn masks(adj: &[Vec<bool>]) -> Vec<u64> {
    let n = adj.len();
    assert!(n <= 63, "bitmask clique solver is limited to 63 vertices");
    (0..n)
        .map(|i| {
            let mut m = 0u64;
            for j in 0..n {
                if adj[i][j] && i != j {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect()
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Greedy independent set size: a lower bound for the cover number, since
/// independent vertices need pairwise distinct cliques.
fn independent_lower_bound(adj: &[u64], mask: u64) -> usize {
    let mut rest = mask;
    let mut count = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        count += 1;
        rest &= !(adj[v] | (1 << v));
    }
    count
}

/// Maximal cliques of the induced subgraph on `mask` that contain `v`
/// (Bron-Kerbosch with pivoting).
fn maximal_cliques_containing(adj: &[u64], mask: u64, v: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn bk(adj: &[u64], r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut ext = p & !adj[pivot];
        let mut p = p;
        let mut x = x;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            bk(adj, r | (1 << w), p & adj[w], x & adj[w], out);
            p &= !(1 << w);
            x |= 1 << w;
        }
    }
    bk(adj, 1 << v, mask & adj[v], 0, &mut out);
    out
}

fn cover_number_masked(adj: &[u64], mask: u64, upper: usize) -> usize {
    fn branch(adj: &[u64], mask: u64, count: usize, best: &mut usize) {
        if mask == 0 {
            *best = (*best).min(count);
            return;
        }
        if count + independent_lower_bound(adj, mask) >= *best {
            return;
        }
        let v = mask.trailing_zeros() as usize;
        for c in maximal_cliques_containing(adj, mask, v) {
            branch(adj, mask & !c, count + 1, best);
        }
    }
    let mut best = upper;
    branch(adj, mask, 0, &mut best);
    best
}

fn greedy_cover_masked(adj: &[u64], mask: u64) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let mut clique = 1u64 << v;
        for w in bits(rest & adj[v]) {
            if clique & !adj[w] == 0 {
                clique |= 1 << w;
            }
        }
        out.push(clique);
        rest &= !clique;
    }
    out
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Exact minimum number of cliques covering all vertices.
pub fn min_cover_number(adj: &[Vec<bool>]) -> usize {
    let m = masks(adj);
    let full = if adj.is_empty() { 0 } else { (1u64 << adj.len()) - 1 };
    let upper = greedy_cover_masked(&m, full).len() + 1;
    cover_number_masked(&m, full, upper)
}

/// Lexicographically least minimum partition into cliques: pieces are
/// disjoint, each sorted, emitted in order of their smallest vertex; the
/// flattened list is minimal among all optimal partitions.
pub fn lex_min_cover(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let m = masks(adj);
    let n = adj.len();
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let optimum = {
        let upper = greedy_cover_masked(&m, full).len() + 1;
        cover_number_masked(&m, full, upper)
    };
    let mut remaining = full;
    let mut out = Vec::new();
    while remaining != 0 {
        let budget = optimum - out.len() - 1;
        let v = remaining.trailing_zeros() as usize;
        let c = lex_first_feasible(&m, remaining, 1 << v, m[v] & remaining & !((1 << (v + 1)) - 1), budget)
            .expect("a feasible clique containing the lowest vertex must exist");
        out.push(mask_to_vec(c));
        remaining &= !c;
    }
    assert_eq!(out.len(), optimum);
    out
}

/// Depth-first search over cliques in lexicographic order (prefix first,
/// then extensions by increasing vertex); returns the first clique whose
/// removal leaves a graph coverable within the budget.
fn lex_first_feasible(adj: &[u64], mask: u64, clique: u64, cand: u64, budget: usize) -> Option<u64> {
    let rest = mask & !clique;
    if cover_number_masked(adj, rest, budget + 1) <= budget {
        return Some(clique);
    }
    let mut cand = cand;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let next_cand = cand & adj[w];
        if let Some(c) = lex_first_feasible(adj, mask, clique | (1 << w), next_cand, budget) {
            return Some(c);
        }
    }
    None
}

/// Greedy cover as an upper bound for components too large for exact search.
pub fn greedy_cover(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut rest: Vec<bool> = vec![true; n];
    let mut out = Vec::new();
    while let Some(v) = rest.iter().position(|&b| b) {
        let mut clique = vec![v];
        rest[v] = false;
        for w in v + 1..n {
            if rest[w] && clique.iter().all(|&u| adj[u][w]) {
                clique.push(w);
                rest[w] = false;
            }
        }
        out.push(clique);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn adj_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    #[test]
    fn small_graphs() {
        let triangle = adj_from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(min_cover_number(&triangle), 1);
        assert_eq!(lex_min_cover(&triangle), vec![vec![0, 1, 2]]);

        let path = adj_from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(min_cover_number(&path), 2);
        assert_eq!(lex_min_cover(&path), vec![vec![0], vec![1, 2]]);

        let c5 = adj_from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(min_cover_number(&c5), 3);

        let empty = adj_from_edges(4, &[]);
        assert_eq!(min_cover_number(&empty), 4);
        assert_eq!(
            lex_min_cover(&empty),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );

        let k5 = adj_from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        );
        assert_eq!(min_cover_number(&k5), 1);
    }

    /// Exhaustive minimum over all partitions into cliques.
    fn exhaustive_partition(adj: &[u64], mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&hit) = memo.get(&mask) {
            return hit;
        }
        let v = mask.trailing_zeros() as usize;
        let mut best = usize::MAX;
        // all cliques containing v, grown by increasing vertex
        fn all_cliques(adj: &[u64], clique: u64, cand: u64, out: &mut Vec<u64>) {
            out.push(clique);
            let mut cand = cand;
            while cand != 0 {
                let w = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                all_cliques(adj, clique | (1 << w), cand & adj[w], out);
            }
        }
        let mut cliques = Vec::new();
        all_cliques(adj, 1 << v, adj[v] & mask & !((1 << (v + 1)) - 1), &mut cliques);
        for c in cliques {
            best = best.min(1 + exhaustive_partition(adj, mask & !c, memo));
        }
        memo.insert(mask, best);
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn matches_exhaustive(edges in proptest::collection::vec((0usize..8, 0usize..8), 0..=14)) {
            let clean: Vec<(usize, usize)> = edges
                .into_iter()
                .filter(|&(u, v)| u != v)
                .collect();
            let adj = adj_from_edges(8, &clean);
            let exact = min_cover_number(&adj);
            let m = masks(&adj);
            let mut memo = HashMap::new();
            prop_assert_eq!(exact, exhaustive_partition(&m, (1 << 8) - 1, &mut memo));
            let cover = lex_min_cover(&adj);
            prop_assert_eq!(cover.len(), exact);
            // partition validity: disjoint cliques covering every vertex
            let mut seen = vec![false; 8];
            for c in &cover {
                for (i, &u) in c.iter().enumerate() {
                    prop_assert!(!seen[u]);
                    seen[u] = true;
                    for &w in &c[i + 1..] {
                        prop_assert!(adj[u][w]);
                    }
                }
            }
            prop_assert!(seen.iter().all(|&b| b));
            // greedy is a valid upper bound
            prop_assert!(greedy_cover(&adj).len() >= exact);
        }
    }
}
