//! Polynomials as exact-rational term lists: A-degrees, A-homogeneous
//! decomposition, the cone of a monomial, induced subgraphs of the non-face
//! graph, and the spanning-subgraph cover check.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cone::ConeModel;
use crate::lattice::VectorConfig;
use crate::rat::{int_to_rat_vec, Int, Rat};
use crate::sigma_graph::SigmaGraph;
use crate::stanley_reisner::SrGenerator;

/// Monomial as an exponent vector in N^m.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mono {
    pub exponents: Vec<u32>,
}

impl Mono {
    pub fn new(exponents: Vec<u32>) -> Self {
        Mono { exponents }
    }

    pub fn one(m: usize) -> Self {
        Mono {
            exponents: vec![0; m],
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Mono) -> Mono {
        Mono {
            exponents: other
                .exponents
                .iter()
                .zip(&self.exponents)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

/// Degree-lexicographic order: total degree first, then lexicographic on the
/// exponent vector with earlier variables more significant.
pub fn deglex_cmp(a: &Mono, b: &Mono) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.exponents.cmp(&b.exponents))
}

/// Terms sorted descending in degree-lexicographic order; no zero
/// coefficients; monomials pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub terms: Vec<(Rat, Mono)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<(Rat, Mono)>) -> Self {
        let mut merged: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (c, m) in terms {
            *merged.entry(m.exponents).or_insert_with(Rat::zero) += c;
        }
        let mut terms: Vec<(Rat, Mono)> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, Mono::new(e)))
            .collect();
        terms.sort_by(|(_, a), (_, b)| deglex_cmp(b, a));
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> &(Rat, Mono) {
        &self.terms[0]
    }

    pub fn num_vars(&self) -> Option<usize> {
        self.terms.first().map(|(_, m)| m.exponents.len())
    }

    /// self - coeff * x^shift * other.
    pub fn sub_mul_term(&self, coeff: &Rat, shift: &Mono, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (c, m) in &other.terms {
            terms.push((-(coeff * c), shift.mul(m)));
        }
        Poly::from_terms(terms)
    }

    pub fn scale(&self, by: &Rat) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (c * by, m.clone()))
                .collect(),
        }
    }
}

/// x^{u+} - x^{u-} for an integer vector u.
pub fn binomial_from_vector(u: &[Int]) -> Poly {
    let plus: Vec<u32> = u
        .iter()
        .map(|x| {
            if x > &Int::zero() {
                u32::try_from(x).expect("exponent fits in u32")
            } else {
                0
            }
        })
        .collect();
    let minus: Vec<u32> = u
        .iter()
        .map(|x| {
            if x < &Int::zero() {
                u32::try_from(&-x.clone()).expect("exponent fits in u32")
            } else {
                0
            }
        })
        .collect();
    Poly::from_terms(vec![
        (Rat::from_integer(1.into()), Mono::new(plus)),
        (Rat::from_integer((-1).into()), Mono::new(minus)),
    ])
}

/// Σ u_i a_i, the A-degree of a monomial.
pub fn a_degree(mono: &Mono, config: &VectorConfig) -> Vec<Int> {
    assert_eq!(mono.exponents.len(), config.len());
    let n = config.dim();
    let mut deg = vec![Int::zero(); n];
    for (i, &e) in mono.exponents.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let ei = Int::from(e);
        for (d, a) in deg.iter_mut().zip(config.vector(i)) {
            *d += &ei * a;
        }
    }
    deg
}

/// Partition of the terms by A-degree, components ordered by degree vector.
pub fn homogeneous_components(f: &Poly, config: &VectorConfig) -> Vec<Poly> {
    let mut groups: BTreeMap<Vec<Int>, Vec<(Rat, Mono)>> = BTreeMap::new();
    for (c, m) in &f.terms {
        groups
            .entry(a_degree(m, config))
            .or_default()
            .push((c.clone(), m.clone()));
    }
    groups
        .into_values()
        .map(Poly::from_terms)
        .collect()
}

/// The trace of cone(N) on the extreme rays: T = {r : A_N ⊄ pos(R_σ ∖ r)}.
/// `exact` records whether A_N ⊆ pos(T), i.e. whether cone(N) = pos_Q(T);
/// otherwise pos_Q(T) is a proper subcone and no ray subset M satisfies
/// cone(N) = pos_Q(M).
#[derive(Clone, Debug)]
pub struct ConeTrace {
    pub rays: Vec<usize>,
    pub exact: bool,
}

pub fn cone_trace(mono: &Mono, cone: &ConeModel) -> ConeTrace {
    let support = mono.support();
    let a_n: Vec<Vec<Rat>> = support
        .iter()
        .map(|&i| int_to_rat_vec(cone.config().vector(i)))
        .collect();
    let t = cone.ray_count();
    let mut rays = Vec::new();
    for r in 0..t {
        // a support generator on the ray survives every covering subset
        if support.iter().any(|&i| cone.ray_of_generator(i) == Some(r)) {
            rays.push(r);
            continue;
        }
        let others: Vec<usize> = (0..t).filter(|&x| x != r).collect();
        if !a_n.iter().all(|a| cone.member_pos(a, &others)) {
            rays.push(r);
        }
    }
    let exact = a_n.iter().all(|a| cone.member_pos(a, &rays));
    ConeTrace { rays, exact }
}

/// Does cone(N) equal pos_Q of the given ray set? By the trace
/// characterization: A_N ⊆ pos_Q(M) and R_M ⊆ T.
pub fn cone_equals_pos(mono: &Mono, cone: &ConeModel, ray_set: &[usize]) -> bool {
    let trace = cone_trace(mono, cone);
    if !ray_set.iter().all(|r| trace.rays.contains(r)) {
        return false;
    }
    mono.support()
        .iter()
        .all(|&i| cone.member_pos(&int_to_rat_vec(cone.config().vector(i)), ray_set))
}

/// Vertex set of G_σ(F): generators M_i with cone(N) = pos_Q(M_i) for some
/// monomial N of F.
pub fn poly_subgraph(f: &Poly, cone: &ConeModel, gens: &[SrGenerator]) -> Vec<usize> {
    let mut verts: BTreeSet<usize> = BTreeSet::new();
    for (_, mono) in &f.terms {
        let trace = cone_trace(mono, cone);
        let a_n: Vec<Vec<Rat>> = mono
            .support()
            .iter()
            .map(|&i| int_to_rat_vec(cone.config().vector(i)))
            .collect();
        for (gi, g) in gens.iter().enumerate() {
            if verts.contains(&gi) {
                continue;
            }
            if !g.rays.iter().all(|r| trace.rays.contains(r)) {
                continue;
            }
            if a_n.iter().all(|a| cone.member_pos(a, &g.rays)) {
                verts.insert(gi);
            }
        }
    }
    verts.into_iter().collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyCover {
    pub index: usize,
    pub vertices: Vec<usize>,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverReport {
    pub per_poly: Vec<PolyCover>,
    pub union_vertices: Vec<usize>,
    pub spanning: bool,
    pub uncovered: Vec<SrGenerator>,
}

/// The spanning-subgraph necessary condition: the union of the G_σ(F_i) must
/// reach every vertex if the polynomials generate the ideal up to radical.
/// Completeness of each A-homogeneous subgraph is re-checked; a violation
/// would falsify the implementation, not the input.
pub fn check_cover(
    polys: &[Poly],
    cone: &ConeModel,
    gens: &[SrGenerator],
    graph: &SigmaGraph,
) -> CoverReport {
    let mut union: BTreeSet<usize> = BTreeSet::new();
    let mut per_poly = Vec::new();
    for (index, f) in polys.iter().enumerate() {
        let mut vertices: BTreeSet<usize> = BTreeSet::new();
        let mut complete = true;
        for component in homogeneous_components(f, cone.config()) {
            let vs = poly_subgraph(&component, cone, gens);
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    if !graph.adjacency[u][v] {
                        complete = false;
                    }
                }
            }
            vertices.extend(vs);
        }
        union.extend(vertices.iter().copied());
        per_poly.push(PolyCover {
            index,
            vertices: vertices.into_iter().collect(),
            complete,
        });
    }
    let uncovered: Vec<SrGenerator> = gens
        .iter()
        .enumerate()
        .filter(|(i, _)| !union.contains(i))
        .map(|(_, g)| g.clone())
        .collect();
    let spanning = uncovered.is_empty();
    CoverReport {
        per_poly,
        union_vertices: union.into_iter().collect(),
        spanning,
        uncovered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use crate::sigma_graph::build_graph;
    use crate::stanley_reisner::minimal_nonfaces;
    use proptest::prelude::*;

    fn a3_config() -> VectorConfig {
        VectorConfig::from_i64(&[
            vec![2, 1, 0],
            vec![2, 0, 1],
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![0, 1, 2],
        ])
        .unwrap()
    }

    fn mono(e: &[u32]) -> Mono {
        Mono::new(e.to_vec())
    }

    #[test]
    fn a_degree_examples() {
        let cfg = a3_config();
        let d = a_degree(&mono(&[1, 0, 0, 0, 0, 1]), &cfg);
        assert_eq!(d, vec![int(2), int(2), int(2)]);
        assert_eq!(
            a_degree(&mono(&[0, 0, 0, 0, 0, 0]), &cfg),
            vec![int(0), int(0), int(0)]
        );
        assert_eq!(
            a_degree(&mono(&[2, 0, 0, 0, 1, 0]), &cfg),
            vec![int(5), int(2), int(2)]
        );
    }

    #[test]
    fn homogeneous_decomposition() {
        let cfg = a3_config();
        // x12*x32 - x23*x13: both terms have A-degree (2,2,2)
        let f = Poly::from_terms(vec![
            (rat(1), mono(&[1, 0, 0, 0, 0, 1])),
            (rat(-1), mono(&[0, 1, 0, 1, 0, 0])),
        ]);
        assert_eq!(homogeneous_components(&f, &cfg).len(), 1);
        let g = Poly::from_terms(vec![
            (rat(1), mono(&[1, 0, 0, 0, 0, 1])),
            (rat(-1), mono(&[0, 1, 0, 1, 0, 0])),
            (rat(1), mono(&[1, 0, 0, 0, 0, 0])),
        ]);
        assert_eq!(homogeneous_components(&g, &cfg).len(), 2);
    }

    #[test]
    fn deglex_ordering() {
        // x0^2 > x0 x1 > x1^2 > x0 > x1
        let a = mono(&[2, 0]);
        let b = mono(&[1, 1]);
        let c = mono(&[0, 2]);
        let d = mono(&[1, 0]);
        assert_eq!(deglex_cmp(&a, &b), Ordering::Greater);
        assert_eq!(deglex_cmp(&b, &c), Ordering::Greater);
        assert_eq!(deglex_cmp(&c, &d), Ordering::Greater);
        let p = Poly::from_terms(vec![
            (rat(1), d.clone()),
            (rat(1), a.clone()),
            (rat(1), b.clone()),
        ]);
        assert_eq!(p.leading().1, a);
    }

    #[test]
    fn trace_of_two_variable_monomial() {
        let cone = ConeModel::new(a3_config()).unwrap();
        // N = x12*x32: support rays are 5 (2,1,0) and 0 (0,1,2)
        let trace = cone_trace(&mono(&[1, 0, 0, 0, 0, 1]), &cone);
        assert_eq!(trace.rays, vec![0, 5]);
        assert!(trace.exact);
        assert!(cone_equals_pos(&mono(&[1, 0, 0, 0, 0, 1]), &cone, &[0, 5]));
        assert!(!cone_equals_pos(&mono(&[1, 0, 0, 0, 0, 1]), &cone, &[0]));
    }

    #[test]
    fn trace_of_single_variable() {
        let cone = ConeModel::new(a3_config()).unwrap();
        let trace = cone_trace(&mono(&[1, 0, 0, 0, 0, 0]), &cone);
        assert_eq!(trace.rays, vec![5]);
        assert!(trace.exact);
    }

    #[test]
    fn trace_of_interior_generator() {
        let cone = ConeModel::new(
            VectorConfig::from_i64(&[
                vec![0, 0, 1],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
                vec![1, 1, 2],
            ])
            .unwrap(),
        )
        .unwrap();
        // the interior generator is inside every drop-one subcone, so no ray
        // survives and no ray subset reproduces cone(N)
        let trace = cone_trace(&mono(&[0, 0, 0, 0, 1]), &cone);
        assert!(trace.rays.is_empty());
        assert!(!trace.exact);
        for mask in 0u32..16 {
            let set: Vec<usize> = (0..4).filter(|&j| mask >> j & 1 == 1).collect();
            assert!(!cone_equals_pos(&mono(&[0, 0, 0, 0, 1]), &cone, &set));
        }
    }

    #[test]
    fn subgraph_of_quadratic_binomial() {
        let cone = ConeModel::new(a3_config()).unwrap();
        let (gens, _) = minimal_nonfaces(&cone);
        let graph = build_graph(&cone, &gens);
        let f = Poly::from_terms(vec![
            (rat(1), mono(&[1, 0, 0, 0, 0, 1])),
            (rat(-1), mono(&[0, 1, 0, 1, 0, 0])),
        ]);
        assert_eq!(poly_subgraph(&f, &cone, &gens), vec![2, 4]);
        let single = Poly::from_terms(vec![(rat(1), mono(&[1, 0, 0, 0, 0, 0]))]);
        assert!(poly_subgraph(&single, &cone, &gens).is_empty());
        let report = check_cover(&[f], &cone, &gens, &graph);
        assert!(report.per_poly[0].complete);
        assert!(!report.spanning);
        assert_eq!(report.union_vertices, vec![2, 4]);
        assert_eq!(report.uncovered.len(), 7);
    }

    #[test]
    fn square_cone_cover_is_spanning() {
        let cone = ConeModel::new(
            VectorConfig::from_i64(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]])
                .unwrap(),
        )
        .unwrap();
        let (gens, _) = minimal_nonfaces(&cone);
        let graph = build_graph(&cone, &gens);
        // x0 x3 - x1 x2, the square relation
        let f = Poly::from_terms(vec![
            (rat(1), mono(&[1, 0, 0, 1])),
            (rat(-1), mono(&[0, 1, 1, 0])),
        ]);
        let report = check_cover(&[f], &cone, &gens, &graph);
        assert!(report.spanning);
        assert!(report.per_poly[0].complete);
        assert_eq!(report.union_vertices, vec![0, 1]);
    }

    /// Definitional cone(N) = pos(M): A_N ⊆ pos(M) and every covering ray
    /// subset S contains M's rays in its positive hull.
    fn definitional_equals(cone: &ConeModel, m: &Mono, ray_set: &[usize]) -> bool {
        let t = cone.ray_count();
        let a_n: Vec<Vec<Rat>> = m
            .support()
            .iter()
            .map(|&i| int_to_rat_vec(cone.config().vector(i)))
            .collect();
        if !a_n.iter().all(|a| cone.member_pos(a, ray_set)) {
            return false;
        }
        for mask in 0u32..(1 << t) {
            let s: Vec<usize> = (0..t).filter(|&j| mask >> j & 1 == 1).collect();
            if !a_n.iter().all(|a| cone.member_pos(a, &s)) {
                continue;
            }
            let covered = ray_set
                .iter()
                .all(|&r| cone.member_pos(&int_to_rat_vec(cone.ray(r)), &s));
            if !covered {
                return false;
            }
        }
        true
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn trace_characterization_matches_definition(
            (vecs, expo) in (3usize..=5, 2usize..=3).prop_flat_map(|(m, n)| (
                proptest::collection::vec(proptest::collection::vec(0i64..=3, n), m),
                proptest::collection::vec(0u32..=2, m),
            ))
        ) {
            prop_assume!(vecs.iter().all(|v| v.iter().any(|&x| x != 0)));
            prop_assume!(expo.iter().any(|&e| e > 0));
            let cone = ConeModel::new(VectorConfig::from_i64(&vecs).unwrap()).unwrap();
            let t = cone.ray_count();
            prop_assume!(t <= 5);
            let m = Mono::new(expo);
            for mask in 0u32..(1 << t) {
                let set: Vec<usize> = (0..t).filter(|&j| mask >> j & 1 == 1).collect();
                prop_assert_eq!(
                    cone_equals_pos(&m, &cone, &set),
                    definitional_equals(&cone, &m, &set)
                );
            }
        }

        #[test]
        fn homogeneous_binomial_subgraphs_are_complete(
            vecs in (4usize..=6, 2usize..=3).prop_flat_map(|(m, n)| {
                proptest::collection::vec(proptest::collection::vec(0i64..=3, n), m)
            })
        ) {
            prop_assume!(vecs.iter().all(|v| v.iter().any(|&x| x != 0)));
            let config = VectorConfig::from_i64(&vecs).unwrap();
            let Some(kernel) = config.kernel_lattice() else {
                return Ok(());
            };
            let cone = ConeModel::new(config).unwrap();
            let (gens, _) = minimal_nonfaces(&cone);
            let graph = build_graph(&cone, &gens);
            for row in kernel.basis_rows() {
                let f = binomial_from_vector(&row);
                if f.is_zero() {
                    continue;
                }
                let comps = homogeneous_components(&f, cone.config());
                prop_assert_eq!(comps.len(), 1);
                let report = check_cover(&[f], &cone, &gens, &graph);
                prop_assert!(report.per_poly[0].complete);
            }
        }
    }
}
