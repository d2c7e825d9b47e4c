//! Exact maximum matching on general graphs via blossom contraction, plus
//! the lexicographically least maximum matching for reproducible
//! certificates.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

struct Blossom {
    n: usize,
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v);
            adj[u].push(v);
            adj[v].push(u);
        }
        Blossom {
            n,
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from an unmatched root, contracting
    /// blossoms on the fly; returns the far endpoint or NONE.
    fn find_path(&mut self, root: usize) -> usize {
        self.used = vec![false; self.n];
        self.parent = vec![NONE; self.n];
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut q = VecDeque::new();
        q.push_back(root);
        while let Some(v) = q.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let curbase = self.lca(v, to);
                    self.in_blossom = vec![false; self.n];
                    self.mark_path(v, curbase, to);
                    self.mark_path(to, curbase, v);
                    for i in 0..self.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = curbase;
                            if !self.used[i] {
                                self.used[i] = true;
                                q.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    self.used[self.mate[to]] = true;
                    q.push_back(self.mate[to]);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn solve(&mut self) -> usize {
        let mut res = 0;
        for v in 0..self.n {
            if self.mate[v] == NONE {
                let end = self.find_path(v);
                if end != NONE {
                    self.augment(end);
                    res += 1;
                }
            }
        }
        res
    }
}

/// Size of a maximum matching.
pub fn matching_number(n: usize, edges: &[(usize, usize)]) -> usize {
    Blossom::new(n, edges).solve()
}

/// The lexicographically least maximum matching: edges normalized (u < v),
/// compared as a sorted list. Greedy over lex-ordered edges, keeping an edge
/// iff a maximum matching through the kept set still exists.
pub fn lex_min_max_matching(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut sorted: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    sorted.sort_unstable();
    sorted.dedup();
    let target = matching_number(n, &sorted);
    let mut blocked = vec![false; n];
    let mut chosen = Vec::new();
    for &(u, v) in &sorted {
        if chosen.len() == target {
            break;
        }
        if blocked[u] || blocked[v] {
            continue;
        }
        let rest: Vec<(usize, usize)> = sorted
            .iter()
            .copied()
            .filter(|&(a, b)| !blocked[a] && !blocked[b] && a != u && a != v && b != u && b != v)
            .collect();
        if chosen.len() + 1 + matching_number(n, &rest) == target {
            chosen.push((u, v));
            blocked[u] = true;
            blocked[v] = true;
        }
    }
    assert_eq!(chosen.len(), target, "greedy failed to reach the matching number");
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn paths_and_cycles() {
        assert_eq!(matching_number(3, &[(0, 1), (1, 2)]), 1);
        assert_eq!(matching_number(4, &[(0, 1), (1, 2), (2, 3)]), 2);
        assert_eq!(matching_number(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]), 2);
        assert_eq!(
            matching_number(9, &(0..9).map(|i| (i, (i + 1) % 9)).collect::<Vec<_>>()),
            4
        );
    }

    #[test]
    fn petersen_graph_has_perfect_matching() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(matching_number(10, &edges), 5);
    }

    #[test]
    fn lex_least_is_deterministic() {
        // triangle with a pendant: maximum matchings of size 2
        let edges = [(0, 1), (0, 2), (1, 2), (2, 3)];
        assert_eq!(lex_min_max_matching(4, &edges), vec![(0, 1), (2, 3)]);
        // single edge listed backwards
        assert_eq!(lex_min_max_matching(2, &[(1, 0)]), vec![(0, 1)]);
        assert_eq!(lex_min_max_matching(3, &[]), Vec::<(usize, usize)>::new());
    }

    fn exhaustive_nu(edges: &[(usize, usize)]) -> usize {
        fn go(edges: &[(usize, usize)]) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = go(rest);
                    let kept: Vec<(usize, usize)> = rest
                        .iter()
                        .copied()
                        .filter(|&(a, b)| a != u && a != v && b != u && b != v)
                        .collect();
                    skip.max(1 + go(&kept))
                }
            }
        }
        go(edges)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn matches_exhaustive(edges in proptest::collection::vec((0usize..8, 0usize..8), 0..=12)) {
            let clean: Vec<(usize, usize)> = edges
                .into_iter()
                .filter(|&(u, v)| u != v)
                .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
                .collect();
            let mut dedup = clean.clone();
            dedup.sort_unstable();
            dedup.dedup();
            let nu = matching_number(8, &dedup);
            prop_assert_eq!(nu, exhaustive_nu(&dedup));
            let lex = lex_min_max_matching(8, &dedup);
            prop_assert_eq!(lex.len(), nu);
            // disjointness
            let mut seen = vec![false; 8];
            for &(u, v) in &lex {
                prop_assert!(!seen[u] && !seen[v]);
                seen[u] = true;
                seen[v] = true;
                prop_assert!(dedup.contains(&(u, v)));
            }
        }
    }
}
