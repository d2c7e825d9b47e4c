//! Minimal non-faces of the extreme-ray set: the square-free monomial
//! generators of the Stanley-Reisner ideal of the cone. Enumeration walks
//! subsets breadth-first by cardinality; only sets whose proper subsets are
//! all faces are ever queried, which is exactly the minimal-non-face
//! structure and keeps the LP count at the frontier.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cone::ConeModel;
use crate::matrix::rank_of_rows;
use crate::rat::Int;

/// A minimal non-face: every proper subset of `rays` is a face, the set
/// itself is not, and the ray vectors are linearly independent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrGenerator {
    pub rays: Vec<usize>,
}

/// Faces discovered during enumeration, each with the dimension of its span.
#[derive(Clone, Debug, Default)]
pub struct FaceLattice {
    pub faces: Vec<(Vec<usize>, usize)>,
}

impl FaceLattice {
    pub fn contains(&self, set: &[usize]) -> bool {
        self.faces.binary_search_by(|(f, _)| f.as_slice().cmp(set)).is_ok()
    }
}

pub fn minimal_nonfaces(cone: &ConeModel) -> (Vec<SrGenerator>, FaceLattice) {
    let t = cone.ray_count();
    let n = cone.dim();
    let mut faces: Vec<Vec<usize>> = vec![Vec::new()];
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..t).map(|j| vec![j]).collect();
    debug_assert!(level.iter().all(|s| cone.is_face(s)));
    faces.extend(level.iter().cloned());
    // minimal non-faces are simplex cones, hence have at most n rays; the
    // defensive extra level is asserted empty below
    let cap = (n + 1).min(t);
    for _k in 2..=cap {
        if level.is_empty() {
            break;
        }
        let prev: HashSet<&[usize]> = level.iter().map(|f| f.as_slice()).collect();
        let mut next = Vec::new();
        for f in &level {
            let start = f.last().map_or(0, |&x| x + 1);
            for r in start..t {
                let mut cand = f.clone();
                cand.push(r);
                // every proper subset of one element less must be a face;
                // dropping the last element gives f itself
                let minimal = (0..cand.len() - 1).all(|skip| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    prev.contains(sub.as_slice())
                });
                if !minimal {
                    continue;
                }
                if cone.is_face(&cand) {
                    next.push(cand);
                } else {
                    gens.push(cand);
                }
            }
        }
        faces.extend(next.iter().cloned());
        level = next;
    }
    assert!(
        gens.iter().all(|g| g.len() <= n),
        "a minimal non-face exceeded the simplex-cone size bound"
    );
    gens.sort();
    let gens: Vec<SrGenerator> = gens
        .into_iter()
        .map(|rays| {
            let vecs: Vec<Vec<Int>> = rays.iter().map(|&j| cone.ray(j).to_vec()).collect();
            assert_eq!(
                rank_of_rows(&vecs),
                rays.len(),
                "minimal non-face rays must be linearly independent"
            );
            SrGenerator { rays }
        })
        .collect();
    faces.sort();
    faces.dedup();
    let lattice = FaceLattice {
        faces: faces
            .into_iter()
            .map(|f| {
                let vecs: Vec<Vec<Int>> = f.iter().map(|&j| cone.ray(j).to_vec()).collect();
                let dim = rank_of_rows(&vecs);
                (f, dim)
            })
            .collect(),
    };
    (gens, lattice)
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Closed-form generator count for the reference family with parameter n.
pub fn sr_generator_count_formula_an(n: usize) -> usize {
    9 * binom(n, 3) + 12 * binom(n, 4)
}
