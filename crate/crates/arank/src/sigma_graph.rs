//! The graph on minimal non-faces: vertices are the Stanley-Reisner
//! generators, edges join generators whose cones share relative-interior
//! points. Bounds: b = |V| - ν via maximum matching, c = exact minimum
//! clique cover per component.

use rayon::prelude::*;

use crate::clique_cover;
use crate::cone::ConeModel;
use crate::error::Error;
use crate::matching;
use crate::matrix::rank_of_rows;
use crate::rat::Int;
use crate::stanley_reisner::SrGenerator;

#[derive(Clone, Debug)]
pub struct SigmaGraph {
    pub vertices: Vec<SrGenerator>,
    pub adjacency: Vec<Vec<bool>>,
    pub component_id: Vec<usize>,
}

impl SigmaGraph {
    /// Synthetic graph over plain vertices, for bound computations on graphs
    /// that do not come from a cone.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> SigmaGraph {
        let vertices = (0..n).map(|i| SrGenerator { rays: vec![i] }).collect();
        let mut adjacency = vec![vec![false; n]; n];
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n);
            adjacency[u][v] = true;
            adjacency[v][u] = true;
        }
        let component_id = label_components(&adjacency);
        SigmaGraph {
            vertices,
            adjacency,
            component_id,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges (u, v) with u < v in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacency[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn component_count(&self) -> usize {
        self.component_id.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Vertex lists per component, ordered by component id (components are
    /// numbered by first appearance, so ids follow the least vertex).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comps = vec![Vec::new(); self.component_count()];
        for (v, &c) in self.component_id.iter().enumerate() {
            comps[c].push(v);
        }
        comps
    }
}

fn label_components(adjacency: &[Vec<bool>]) -> Vec<usize> {
    let n = adjacency.len();
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        id[start] = next;
        while let Some(v) = stack.pop() {
            for (w, &adj) in adjacency[v].iter().enumerate() {
                if adj && id[w] == usize::MAX {
                    id[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    id
}

/// Pairwise relint tests behind an exact rank prefilter: if the spans of the
/// two ray sets intersect trivially, their relative interiors cannot meet.
pub fn build_graph(cone: &ConeModel, gens: &[SrGenerator]) -> SigmaGraph {
    let n = gens.len();
    let ranks: Vec<usize> = gens
        .iter()
        .map(|g| {
            let rows: Vec<Vec<Int>> = g.rays.iter().map(|&j| cone.ray(j).to_vec()).collect();
            rank_of_rows(&rows)
        })
        .collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let mut union: Vec<Vec<Int>> = gens[u]
                .rays
                .iter()
                .chain(gens[v].rays.iter())
                .map(|&j| cone.ray(j).to_vec())
                .collect();
            union.sort();
            union.dedup();
            if ranks[u] + ranks[v] > rank_of_rows(&union) {
                pairs.push((u, v));
            }
        }
    }
    let verdicts: Vec<((usize, usize), bool)> = pairs
        .par_iter()
        .map(|&(u, v)| ((u, v), cone.relint_intersect(&gens[u].rays, &gens[v].rays)))
        .collect();
    let mut adjacency = vec![vec![false; n]; n];
    for ((u, v), hit) in verdicts {
        if hit {
            adjacency[u][v] = true;
            adjacency[v][u] = true;
        }
    }
    let component_id = label_components(&adjacency);
    SigmaGraph {
        vertices: gens.to_vec(),
        adjacency,
        component_id,
    }
}

/// b = |V| - ν(G): the least number of pieces (an edge with its two vertices,
/// or a single vertex) covering all vertices. The certificate is the
/// lexicographically least maximum matching.
pub fn bound_b(g: &SigmaGraph, with_certificate: bool) -> (usize, Option<Vec<(usize, usize)>>) {
    let n = g.vertex_count();
    let edges = g.edges();
    let nu = matching::matching_number(n, &edges);
    let b = n - nu;
    if !with_certificate {
        return (b, None);
    }
    // lex-least greedy decomposes over components; work per component to
    // keep the feasibility probes small
    let mut matching_edges = Vec::new();
    for comp in g.components() {
        let comp_edges: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(u, _)| g.component_id[u] == g.component_id[comp[0]])
            .collect();
        matching_edges.extend(matching::lex_min_max_matching(n, &comp_edges));
    }
    matching_edges.sort_unstable();
    assert_eq!(matching_edges.len(), nu);
    (b, Some(matching_edges))
}

/// Exact minimum clique cover, summed over connected components. Components
/// larger than `cap` raise ComponentTooLarge carrying the interval between
/// the component-count lower bound and the greedy upper bound.
pub fn bound_c(
    g: &SigmaGraph,
    cap: usize,
    with_certificate: bool,
) -> Result<(usize, Option<Vec<Vec<usize>>>), Error> {
    let comps = g.components();
    let mut lower = 0usize;
    let mut upper = 0usize;
    let mut biggest_oversize = None;
    let mut total = 0usize;
    let mut cover: Vec<Vec<usize>> = Vec::new();
    for comp in &comps {
        let local_adj: Vec<Vec<bool>> = comp
            .iter()
            .map(|&u| comp.iter().map(|&v| g.adjacency[u][v]).collect())
            .collect();
        if comp.len() > cap {
            biggest_oversize = Some(biggest_oversize.map_or(comp.len(), |s: usize| s.max(comp.len())));
            lower += 1;
            upper += clique_cover::greedy_cover(&local_adj).len();
            continue;
        }
        let exact = clique_cover::min_cover_number(&local_adj);
        lower += exact;
        upper += exact;
        total += exact;
        if with_certificate {
            for piece in clique_cover::lex_min_cover(&local_adj) {
                cover.push(piece.into_iter().map(|i| comp[i]).collect());
            }
        }
    }
    if let Some(size) = biggest_oversize {
        return Err(Error::ComponentTooLarge {
            cap,
            size,
            lower,
            upper,
        });
    }
    if with_certificate {
        cover.sort();
        debug_assert!(cover_is_valid(g, &cover));
        Ok((total, Some(cover)))
    } else {
        Ok((total, None))
    }
}

fn cover_is_valid(g: &SigmaGraph, cover: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    for piece in cover {
        for (i, &u) in piece.iter().enumerate() {
            seen[u] = true;
            for &v in &piece[i + 1..] {
                if !g.adjacency[u][v] {
                    return false;
                }
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// DOT text: vertex ids are "M:" plus the comma-joined sorted ray indices;
/// node lines then edge lines, both sorted; byte-deterministic.
pub fn to_dot(g: &SigmaGraph) -> String {
    let ids: Vec<String> = g
        .vertices
        .iter()
        .map(|v| {
            let joined: Vec<String> = v.rays.iter().map(|r| r.to_string()).collect();
            format!("M:{}", joined.join(","))
        })
        .collect();
    let mut out = String::from("graph sigma {\n");
    let mut nodes: Vec<&String> = ids.iter().collect();
    nodes.sort();
    for id in nodes {
        out.push_str(&format!("  \"{id}\";\n"));
    }
    let mut edge_lines: Vec<String> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = if ids[u] <= ids[v] {
                (&ids[u], &ids[v])
            } else {
                (&ids[v], &ids[u])
            };
            format!("  \"{a}\" -- \"{b}\";\n")
        })
        .collect();
    edge_lines.sort();
    for line in edge_lines {
        out.push_str(&line);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::VectorConfig;
    use crate::stanley_reisner::minimal_nonfaces;
    use proptest::prelude::*;

    fn model(vs: &[Vec<i64>]) -> ConeModel {
        ConeModel::new(VectorConfig::from_i64(vs).unwrap()).unwrap()
    }

    #[test]
    fn six_ray_cone_graph() {
        let cone = model(&[
            vec![2, 1, 0],
            vec![2, 0, 1],
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![0, 1, 2],
        ]);
        let (gens, _) = minimal_nonfaces(&cone);
        let g = build_graph(&cone, &gens);
        assert_eq!(g.vertex_count(), 9);
        let expect_edges = vec![
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 6),
            (1, 7),
            (2, 3),
            (2, 4),
            (2, 6),
            (2, 8),
            (4, 6),
            (4, 7),
            (5, 6),
            (5, 8),
            (7, 8),
        ];
        assert_eq!(g.edges(), expect_edges);
        assert_eq!(g.component_count(), 1);
        let (b, matching) = bound_b(&g, true);
        assert_eq!(b, 5);
        let m = matching.unwrap();
        assert_eq!(m.len(), 4);
        let (c, cover) = bound_c(&g, 25, true).unwrap();
        assert_eq!(c, 4);
        let cover = cover.unwrap();
        assert_eq!(cover.len(), 4);
        // vertices 2, 4, 6 form the only triangle
        assert!(g.adjacency[2][4] && g.adjacency[2][6] && g.adjacency[4][6]);
    }

    #[test]
    fn square_cone_graph() {
        let cone = model(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
        let (gens, _) = minimal_nonfaces(&cone);
        let g = build_graph(&cone, &gens);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.component_count(), 1);
        assert_eq!(bound_b(&g, false).0, 1);
        assert_eq!(bound_c(&g, 25, false).unwrap().0, 1);
    }

    #[test]
    fn path_and_triangle_bounds() {
        let path = SigmaGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(bound_b(&path, true), (2, Some(vec![(0, 1)])));
        assert_eq!(bound_c(&path, 25, false).unwrap().0, 2);
        let tri = SigmaGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(bound_b(&tri, false).0, 2);
        assert_eq!(bound_c(&tri, 25, true).unwrap(), (1, Some(vec![vec![0, 1, 2]])));
    }

    #[test]
    fn oversized_component_reports_interval() {
        let edges: Vec<(usize, usize)> = (0..29).map(|i| (i, i + 1)).collect();
        let g = SigmaGraph::from_edges(30, &edges);
        match bound_c(&g, 25, false) {
            Err(Error::ComponentTooLarge { cap, size, lower, upper }) => {
                assert_eq!(cap, 25);
                assert_eq!(size, 30);
                assert_eq!(lower, 1);
                assert_eq!(upper, 15);
            }
            o => panic!("unexpected {o:?}"),
        }
        // raising the cap makes it exact: a 30-path needs 15 cliques
        assert_eq!(bound_c(&g, 32, false).unwrap().0, 15);
    }

    #[test]
    fn dot_output() {
        let empty = SigmaGraph::from_edges(0, &[]);
        assert_eq!(to_dot(&empty), "graph sigma {\n}\n");
        let g = SigmaGraph {
            vertices: vec![
                SrGenerator { rays: vec![1, 2] },
                SrGenerator { rays: vec![3, 4] },
            ],
            adjacency: vec![vec![false, true], vec![true, false]],
            component_id: vec![0, 0],
        };
        let dot = to_dot(&g);
        assert!(dot.contains("\"M:1,2\" -- \"M:3,4\";"));
        assert_eq!(
            dot,
            "graph sigma {\n  \"M:1,2\";\n  \"M:3,4\";\n  \"M:1,2\" -- \"M:3,4\";\n}\n"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bound_inequalities(edges in proptest::collection::vec((0usize..9, 0usize..9), 0..=16)) {
            let clean: Vec<(usize, usize)> = edges
                .into_iter()
                .filter(|&(u, v)| u != v)
                .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
                .collect();
            let mut dedup = clean;
            dedup.sort_unstable();
            dedup.dedup();
            let g = SigmaGraph::from_edges(9, &dedup);
            let (b, m) = bound_b(&g, true);
            let (c, _) = bound_c(&g, 25, false).unwrap();
            // edges and vertices are cliques, so b-covers are clique covers
            prop_assert!(c <= b);
            prop_assert!(c >= g.component_count());
            prop_assert!(2 * b >= g.vertex_count());
            prop_assert_eq!(b, g.vertex_count() - m.unwrap().len());
        }
    }
}
