//! The strongly convex rational cone spanned by a vector configuration:
//! extreme rays, face and minimal-face oracles, relative-interior tests.
//! Every verdict is an exact LP answer; face verdicts carry integer
//! supporting functionals as witnesses.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::lattice::VectorConfig;
use crate::lp::{lp_solve, LpOutcome, LpProblem};
use crate::rat::{
    dot_int, format_rat, int_to_rat_vec, primitive_int, rat, scale_to_primitive, Int, Rat,
};

/// σ = pos_Q(A) with its extreme rays in lexicographic order. Immutable apart
/// from the face memo, which is a thread-safe cache of verdict + witness.
#[derive(Debug)]
pub struct ConeModel {
    config: VectorConfig,
    rays: Vec<Vec<Int>>,
    ray_of_generator: Vec<Option<usize>>,
    face_cache: RwLock<HashMap<Vec<usize>, Option<Vec<Int>>>>,
}

pub fn extreme_rays(config: VectorConfig) -> Result<ConeModel, Error> {
    ConeModel::new(config)
}

impl ConeModel {
    pub fn new(config: VectorConfig) -> Result<Self, Error> {
        check_strongly_convex(&config)?;
        let n = config.dim();
        let mut candidates: Vec<Vec<Int>> = config
            .vectors()
            .iter()
            .map(|a| primitive_int(a))
            .collect();
        candidates.sort();
        candidates.dedup();
        // a candidate is extreme iff it is not a positive combination of the
        // other candidates
        let rays: Vec<Vec<Int>> = candidates
            .iter()
            .filter(|c| {
                let others: Vec<&[Int]> = candidates
                    .iter()
                    .filter(|o| o != c)
                    .map(|o| o.as_slice())
                    .collect();
                !vectors_member_pos(&others, &int_to_rat_vec(c), n)
            })
            .cloned()
            .collect();
        let ray_of_generator: Vec<Option<usize>> = config
            .vectors()
            .iter()
            .map(|a| rays.binary_search(&primitive_int(a)).ok())
            .collect();
        let model = ConeModel {
            config,
            rays,
            ray_of_generator,
            face_cache: RwLock::new(HashMap::new()),
        };
        if cfg!(debug_assertions) {
            let all: Vec<usize> = (0..model.rays.len()).collect();
            for a in model.config.vectors() {
                debug_assert!(
                    model.member_pos(&int_to_rat_vec(a), &all),
                    "generator escapes the positive hull of the extreme rays"
                );
            }
        }
        Ok(model)
    }

    pub fn config(&self) -> &VectorConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray(&self, j: usize) -> &[Int] {
        &self.rays[j]
    }

    pub fn ray_of_generator(&self, i: usize) -> Option<usize> {
        self.ray_of_generator[i]
    }

    /// Generator indices lying on ray j.
    pub fn generators_on_ray(&self, j: usize) -> Vec<usize> {
        (0..self.config.len())
            .filter(|&i| self.ray_of_generator[i] == Some(j))
            .collect()
    }

    /// v ∈ pos_Q of the chosen rays?
    pub fn member_pos(&self, v: &[Rat], ray_set: &[usize]) -> bool {
        let vs: Vec<&[Int]> = ray_set.iter().map(|&j| self.rays[j].as_slice()).collect();
        vectors_member_pos(&vs, v, self.dim())
    }

    pub fn member_sigma(&self, v: &[Rat]) -> bool {
        let all: Vec<usize> = (0..self.rays.len()).collect();
        self.member_pos(v, &all)
    }

    /// Rays of the minimal face containing the given rays.
    pub fn minimal_face_of_rays(&self, ray_set: &[usize]) -> Vec<usize> {
        let pts: Vec<Vec<Rat>> = ray_set
            .iter()
            .map(|&j| int_to_rat_vec(&self.rays[j]))
            .collect();
        self.minimal_face_of_points_unchecked(&pts)
    }

    /// Rays of the minimal face containing the given points of σ.
    pub fn minimal_face_of_points(&self, points: &[Vec<Rat>]) -> Result<Vec<usize>, Error> {
        for p in points {
            if !self.member_sigma(p) {
                return Err(Error::PointOutsideCone {
                    point: p.iter().map(format_rat).collect(),
                });
            }
        }
        Ok(self.minimal_face_of_points_unchecked(points))
    }

    /// Ray r_j lies in the minimal face iff every supporting functional
    /// vanishing on the points also vanishes on r_j: maximize c·r_j over
    /// {c : c·p = 0, 0 ≤ c·a_i ≤ 1} and test for optimum zero.
    fn minimal_face_of_points_unchecked(&self, points: &[Vec<Rat>]) -> Vec<usize> {
        let n = self.dim();
        (0..self.rays.len())
            .filter(|&j| {
                let mut p = LpProblem::new(n);
                for pt in points {
                    p.eq_row(pt.clone(), rat(0));
                }
                for a in self.config.vectors() {
                    let row: Vec<Rat> = int_to_rat_vec(a);
                    let neg: Vec<Rat> = row.iter().map(|x| -x.clone()).collect();
                    p.ge_row(row, rat(0));
                    p.ge_row(neg, rat(-1));
                }
                p.maximize(int_to_rat_vec(&self.rays[j]));
                match lp_solve(&p) {
                    LpOutcome::Optimal { value, .. } => value.is_zero(),
                    o => unreachable!("minimal-face LP is bounded and feasible: {o:?}"),
                }
            })
            .collect()
    }

    /// Is R exactly the extreme-ray set of a face? Decided by the alternative
    /// system: λ free on R, μ ≥ 0 on the complement, Σ λ r + Σ μ q = 0 with
    /// Σ μ = 1. Feasibility refutes the face; the Farkas certificate of
    /// infeasibility yields a supporting functional vanishing exactly on R.
    pub fn is_face(&self, ray_set: &[usize]) -> bool {
        self.face_entry(ray_set).is_some()
    }

    /// Integer supporting functional c with c·r = 0 exactly for rays in R and
    /// c·a ≥ 0 for all generators; present iff R is a face.
    pub fn face_witness(&self, ray_set: &[usize]) -> Option<Vec<Int>> {
        self.face_entry(ray_set)
    }

    fn face_entry(&self, ray_set: &[usize]) -> Option<Vec<Int>> {
        let mut key: Vec<usize> = ray_set.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(hit) = self.face_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let entry = self.face_probe(&key);
        if let Some(c) = &entry {
            debug_assert!(self.witness_supports(&key, c));
        }
        self.face_cache
            .write()
            .unwrap()
            .insert(key, entry.clone());
        entry
    }

    fn face_probe(&self, key: &[usize]) -> Option<Vec<Int>> {
        let n = self.dim();
        let inside = key;
        let outside: Vec<usize> = (0..self.rays.len())
            .filter(|j| !inside.contains(j))
            .collect();
        let vars = inside.len() + outside.len();
        let mut p = LpProblem::new(vars);
        for (k, _) in outside.iter().enumerate() {
            p.nonneg[inside.len() + k] = true;
        }
        for coord in 0..n {
            let mut row = Vec::with_capacity(vars);
            for &j in inside {
                row.push(Rat::from_integer(self.rays[j][coord].clone()));
            }
            for &q in &outside {
                row.push(Rat::from_integer(self.rays[q][coord].clone()));
            }
            p.eq_row(row, rat(0));
        }
        let mut norm = vec![Rat::zero(); vars];
        for x in norm.iter_mut().skip(inside.len()) {
            *x = rat(1);
        }
        p.eq_row(norm, rat(1));
        match lp_solve(&p) {
            LpOutcome::Feasible(_) => None,
            LpOutcome::Infeasible(cert) => {
                // eq multipliers: n for the coordinate rows, one for Σ μ = 1;
                // c = -π restricted to the coordinate rows supports the face
                let c_rat: Vec<Rat> = cert.eq[..n].iter().map(|x| -x.clone()).collect();
                Some(scale_to_primitive(&c_rat))
            }
            o => unreachable!("face probe is a pure feasibility LP: {o:?}"),
        }
    }

    fn witness_supports(&self, ray_set: &[usize], c: &[Int]) -> bool {
        let on_rays = (0..self.rays.len()).all(|j| {
            let d = dot_int(c, &self.rays[j]);
            if ray_set.contains(&j) {
                d.is_zero()
            } else {
                d.is_positive()
            }
        });
        let on_gens = self
            .config
            .vectors()
            .iter()
            .all(|a| !dot_int(c, a).is_negative());
        on_rays && on_gens
    }

    /// Do the relative interiors of pos_Q(R1) and pos_Q(R2) share a nonzero
    /// point? Strict positivity is scaled to coefficients ≥ 1.
    pub fn relint_intersect(&self, r1: &[usize], r2: &[usize]) -> bool {
        self.relint_common_point(r1, r2).is_some()
    }

    /// A common point of the two relative interiors, as Σ l_j r_j with all
    /// l_j ≥ 1 over R1.
    pub fn relint_common_point(&self, r1: &[usize], r2: &[usize]) -> Option<Vec<Rat>> {
        assert!(!r1.is_empty() && !r2.is_empty());
        let n = self.dim();
        // substitute l = 1 + l', k = 1 + k' with l', k' ≥ 0
        let vars = r1.len() + r2.len();
        let mut p = LpProblem::new_nonneg(vars);
        for coord in 0..n {
            let mut row = Vec::with_capacity(vars);
            let mut rhs = Rat::zero();
            for &j in r1 {
                row.push(Rat::from_integer(self.rays[j][coord].clone()));
                rhs -= Rat::from_integer(self.rays[j][coord].clone());
            }
            for &k in r2 {
                row.push(-Rat::from_integer(self.rays[k][coord].clone()));
                rhs += Rat::from_integer(self.rays[k][coord].clone());
            }
            p.eq_row(row, rhs);
        }
        match lp_solve(&p) {
            LpOutcome::Feasible(shifted) => {
                let point: Vec<Rat> = (0..n)
                    .map(|coord| {
                        r1.iter()
                            .enumerate()
                            .map(|(idx, &j)| {
                                (rat(1) + &shifted[idx])
                                    * Rat::from_integer(self.rays[j][coord].clone())
                            })
                            .fold(Rat::zero(), |a, v| a + v)
                    })
                    .collect();
                Some(point)
            }
            LpOutcome::Infeasible(_) => None,
            o => unreachable!("relint probe is a pure feasibility LP: {o:?}"),
        }
    }
}

fn check_strongly_convex(config: &VectorConfig) -> Result<(), Error> {
    let m = config.len();
    let n = config.dim();
    let mut p = LpProblem::new_nonneg(m);
    for coord in 0..n {
        let row: Vec<Rat> = config
            .vectors()
            .iter()
            .map(|a| Rat::from_integer(a[coord].clone()))
            .collect();
        p.eq_row(row, rat(0));
    }
    p.eq_row(vec![rat(1); m], rat(1));
    match lp_solve(&p) {
        LpOutcome::Infeasible(_) => Ok(()),
        LpOutcome::Feasible(lambda) => {
            let scaled = scale_to_primitive(&lambda);
            let dependency: Vec<String> = scaled
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_zero())
                .map(|(i, l)| format!("{l}*a{i}"))
                .collect();
            Err(Error::NotStronglyConvex { dependency })
        }
        o => unreachable!("convexity probe is a pure feasibility LP: {o:?}"),
    }
}

/// v ∈ pos_Q of the given vectors (exact LP feasibility).
pub fn vectors_member_pos(vs: &[&[Int]], v: &[Rat], dim: usize) -> bool {
    if vs.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let mut p = LpProblem::new_nonneg(vs.len());
    for coord in 0..dim {
        let row: Vec<Rat> = vs
            .iter()
            .map(|w| Rat::from_integer(w[coord].clone()))
            .collect();
        p.eq_row(row, v[coord].clone());
    }
    match lp_solve(&p) {
        LpOutcome::Feasible(l) => {
            debug_assert!({
                (0..dim).all(|coord| {
                    let s: Rat = vs
                        .iter()
                        .zip(&l)
                        .map(|(w, li)| li * Rat::from_integer(w[coord].clone()))
                        .fold(Rat::zero(), |a, x| a + x);
                    s == v[coord]
                })
            });
            true
        }
        LpOutcome::Infeasible(_) => false,
        o => unreachable!("membership probe is a pure feasibility LP: {o:?}"),
    }
}

/// Convenience membership for integer points against explicit vectors.
pub fn int_member_pos(vs: &[&[Int]], v: &[Int]) -> bool {
    let dim = v.len();
    vectors_member_pos(vs, &int_to_rat_vec(v), dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use proptest::prelude::*;

    fn cfg(vs: &[Vec<i64>]) -> VectorConfig {
        VectorConfig::from_i64(vs).unwrap()
    }

    fn a3_config() -> VectorConfig {
        // pairs (i,j), i ≠ j, in lexicographic order; generator 2e_i + e_j
        cfg(&[
            vec![2, 1, 0],
            vec![2, 0, 1],
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![0, 1, 2],
        ])
    }

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn redundant_generator_dropped() {
        let model = ConeModel::new(cfg(&[vec![1, 0], vec![1, 1], vec![1, 2]])).unwrap();
        assert_eq!(model.rays(), &[iv(&[1, 0]), iv(&[1, 2])]);
        assert_eq!(model.ray_of_generator(1), None);
    }

    #[test]
    fn parallel_generators_dedup() {
        let model = ConeModel::new(cfg(&[vec![1, 0], vec![2, 0], vec![0, 1]])).unwrap();
        assert_eq!(model.rays(), &[iv(&[0, 1]), iv(&[1, 0])]);
        assert_eq!(model.ray_of_generator(0), Some(1));
        assert_eq!(model.ray_of_generator(1), Some(1));
        assert_eq!(model.ray_of_generator(2), Some(0));
        assert_eq!(model.generators_on_ray(1), vec![0, 1]);
    }

    #[test]
    fn not_strongly_convex_rejected() {
        let err = ConeModel::new(cfg(&[vec![1, 0], vec![-1, 0], vec![0, 1]])).unwrap_err();
        match err {
            Error::NotStronglyConvex { dependency } => {
                assert!(!dependency.is_empty());
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn six_ray_cone_rays() {
        let model = ConeModel::new(a3_config()).unwrap();
        let expect: Vec<Vec<Int>> = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|v| iv(&v[..]))
        .collect();
        assert_eq!(model.rays(), expect.as_slice());
        for i in 0..6 {
            assert!(model.ray_of_generator(i).is_some());
        }
    }

    // lexicographic ray order for the 6-ray cone:
    //   0:(0,1,2) 1:(0,2,1) 2:(1,0,2) 3:(1,2,0) 4:(2,0,1) 5:(2,1,0)

    #[test]
    fn six_ray_cone_faces() {
        let model = ConeModel::new(a3_config()).unwrap();
        let nonface_pairs = [
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 5),
            (3, 4),
        ];
        for i in 0..6 {
            assert!(model.is_face(&[i]), "single ray {i}");
            for j in i + 1..6 {
                let expect_nonface = nonface_pairs.contains(&(i, j));
                assert_eq!(
                    model.is_face(&[i, j]),
                    !expect_nonface,
                    "pair ({i},{j})"
                );
            }
        }
        assert!(model.is_face(&[]));
        assert!(model.is_face(&[0, 1, 2, 3, 4, 5]));
        // supporting functional vanishing on {3,5} and positive elsewhere
        let w = model.face_witness(&[3, 5]).unwrap();
        assert!(dot_int(&w, &iv(&[1, 2, 0])).is_zero());
        assert!(dot_int(&w, &iv(&[2, 1, 0])).is_zero());
        assert!(dot_int(&w, &iv(&[0, 1, 2])).is_positive());
    }

    #[test]
    fn six_ray_cone_minimal_faces() {
        let model = ConeModel::new(a3_config()).unwrap();
        assert_eq!(model.minimal_face_of_rays(&[4, 5]), vec![4, 5]);
        assert_eq!(model.minimal_face_of_rays(&[0, 5]), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(model.minimal_face_of_rays(&[]), Vec::<usize>::new());
        let on_ray = vec![vec![rat(4), rat(2), rat(0)]];
        assert_eq!(model.minimal_face_of_points(&on_ray).unwrap(), vec![5]);
        let interior = vec![vec![rat(2), rat(2), rat(2)]];
        assert_eq!(
            model.minimal_face_of_points(&interior).unwrap(),
            vec![0, 1, 2, 3, 4, 5]
        );
        let outside = vec![vec![rat(-1), rat(0), rat(0)]];
        assert!(matches!(
            model.minimal_face_of_points(&outside),
            Err(Error::PointOutsideCone { .. })
        ));
    }

    #[test]
    fn six_ray_cone_relint() {
        let model = ConeModel::new(a3_config()).unwrap();
        // {r_12, r_32} vs {r_21, r_31}: meet at multiples of (2,2,2)
        assert!(model.relint_intersect(&[0, 5], &[2, 3]));
        let pt = model.relint_common_point(&[0, 5], &[2, 3]).unwrap();
        assert!(model.member_pos(&pt, &[0, 5]));
        assert!(model.member_pos(&pt, &[2, 3]));
        assert!(!model.relint_intersect(&[4, 5], &[0, 1]));
        assert!(model.relint_intersect(&[0, 5], &[0, 5]));
    }

    #[test]
    fn interior_generator_supported() {
        let model = ConeModel::new(cfg(&[
            vec![0, 0, 1],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
            vec![1, 1, 2],
        ]))
        .unwrap();
        let expect: Vec<Vec<Int>> = [[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]]
            .iter()
            .map(|v| iv(&v[..]))
            .collect();
        assert_eq!(model.rays(), expect.as_slice());
        assert_eq!(model.ray_of_generator(4), None);
        assert!(!model.is_face(&[0, 3]));
        assert!(!model.is_face(&[1, 2]));
        assert!(model.is_face(&[0, 1]));
        assert!(model.is_face(&[0, 2]));
        assert!(model.is_face(&[1, 3]));
        assert!(model.is_face(&[2, 3]));
    }

    #[test]
    fn member_pos_examples() {
        let model = ConeModel::new(a3_config()).unwrap();
        // (2,2,2) ∈ pos{(2,1,0),(0,1,2)}
        let v = vec![rat(2), rat(2), rat(2)];
        assert!(model.member_pos(&v, &[0, 5]));
        assert!(!model.member_pos(&vec![rat(1), rat(0), rat(0)], &[0]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn face_family_properties((m, vecs, pick1, pick2) in (2usize..=5, 2usize..=3).prop_flat_map(|(m, n)| (
            Just(m),
            proptest::collection::vec(proptest::collection::vec(0i64..=3, n), m),
            proptest::collection::vec(proptest::bool::ANY, 8),
            proptest::collection::vec(proptest::bool::ANY, 8),
        ))) {
            let _ = m;
            prop_assume!(vecs.iter().all(|v| v.iter().any(|&x| x != 0)));
            let model = ConeModel::new(cfg(&vecs)).unwrap();
            let t = model.ray_count();
            let r1: Vec<usize> = (0..t).filter(|&j| pick1[j % pick1.len()]).collect();
            let r2: Vec<usize> = (0..t).filter(|&j| pick2[j % pick2.len()]).collect();
            // the is_face verdict matches the definitional contract
            let mf1 = model.minimal_face_of_rays(&r1);
            prop_assert_eq!(model.is_face(&r1), mf1 == r1);
            // faces are closed under intersection
            if model.is_face(&r1) && model.is_face(&r2) {
                let meet: Vec<usize> = r1.iter().copied().filter(|j| r2.contains(j)).collect();
                prop_assert!(model.is_face(&meet));
            }
            // relint intersection is symmetric, and reflexive when nonempty
            if !r1.is_empty() && !r2.is_empty() {
                prop_assert_eq!(
                    model.relint_intersect(&r1, &r2),
                    model.relint_intersect(&r2, &r1)
                );
                prop_assert!(model.relint_intersect(&r1, &r1));
            }
        }
    }
}
