//! Integer lattices given by a basis, their saturations, and the quotient
//! vector configuration describing Z^m modulo the saturation.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lp::{lp_solve, LpOutcome, LpProblem};
use crate::matrix::{rank_of_rows, solve_integer, IntMat};
use crate::rat::{int, rat, scale_to_primitive, Int, Rat};

/// Sublattice of Z^m spanned by independent basis rows.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: IntMat,
}

impl Lattice {
    pub fn new(rows: Vec<Vec<Int>>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::Parse("lattice basis must be nonempty".into()));
        }
        let m = rows[0].len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Parse(
                "lattice basis rows must share a positive length".into(),
            ));
        }
        if rank_of_rows(&rows) != rows.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Lattice {
            basis: IntMat::from_rows(rows),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis_rows(&self) -> Vec<Vec<Int>> {
        self.basis.row_vecs()
    }

    /// Membership via the integer system B^T c = v.
    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.ambient_dim() && solve_integer(&self.basis.transpose(), v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_rows().iter().all(|r| self.contains(r))
    }

    /// The lattice is positive when it meets the nonnegative orthant only in
    /// zero; otherwise a nonzero nonnegative member is returned as witness.
    pub fn check_positive(&self) -> Result<(), Error> {
        let r = self.rank();
        let m = self.ambient_dim();
        let rows = self.basis_rows();
        // seek free multipliers with B^T lambda >= 0 and coordinate sum 1
        let mut p = LpProblem::new(r);
        let sums: Vec<Rat> = rows
            .iter()
            .map(|row| rat(0) + row.iter().fold(Rat::zero(), |a, x| a + Rat::from_integer(x.clone())))
            .collect();
        p.eq_row(sums, rat(1));
        for i in 0..m {
            let coeffs: Vec<Rat> = rows.iter().map(|row| Rat::from_integer(row[i].clone())).collect();
            p.ge_row(coeffs, rat(0));
        }
        match lp_solve(&p) {
            LpOutcome::Infeasible(_) => Ok(()),
            LpOutcome::Feasible(lambda) => {
                let x: Vec<Rat> = (0..m)
                    .map(|i| {
                        rows.iter()
                            .zip(&lambda)
                            .map(|(row, l)| l * Rat::from_integer(row[i].clone()))
                            .fold(Rat::zero(), |a, v| a + v)
                    })
                    .collect();
                let prim = scale_to_primitive(&x);
                // primitive witness lies in the saturation; the largest
                // elementary divisor annihilates Sat/L, pushing it into L
                let scale = self.index_annihilator();
                let witness: Vec<Int> = prim.iter().map(|w| w * &scale).collect();
                debug_assert!(self.contains(&witness));
                debug_assert!(witness.iter().all(|w| !w.is_negative()));
                debug_assert!(witness.iter().any(|w| w.is_positive()));
                Err(Error::NotPositive { witness })
            }
            o => unreachable!("positivity probe is a pure feasibility LP: {o:?}"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.check_positive().is_ok()
    }

    /// Diagonal of the Smith form of the basis matrix.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        let snf = self.basis.snf();
        (0..self.rank()).map(|i| snf.d[(i, i)].clone()).collect()
    }

    /// Largest elementary divisor; multiplication by it maps Sat(L) into L.
    pub fn index_annihilator(&self) -> Int {
        self.elementary_divisors()
            .last()
            .cloned()
            .unwrap_or_else(Int::one)
    }

    pub fn is_saturated(&self) -> bool {
        self.elementary_divisors().iter().all(|d| d.is_one())
    }

    /// Sat(L) = span_Q(L) intersected with Z^m: with U B V = D the rows of
    /// D V^-1 span L, so the first rank rows of V^-1 span the saturation.
    pub fn saturation(&self) -> Lattice {
        let snf = self.basis.snf();
        let rows: Vec<Vec<Int>> = (0..self.rank()).map(|i| snf.vinv.row(i).to_vec()).collect();
        let sat = Lattice::new(rows).expect("saturation basis rows are independent");
        debug_assert!(sat.contains_lattice(self));
        sat
    }

    /// Images of the unit vectors under Z^m -> Z^m / Sat(L) = Z^n, n = m - r,
    /// read from the last n coordinates in the V^-1 basis: e_i maps to the
    /// last n entries of row i of V.
    pub fn quotient_config(&self) -> Result<VectorConfig, Error> {
        let m = self.ambient_dim();
        let r = self.rank();
        let n = m - r;
        let snf = self.basis.snf();
        let vectors: Vec<Vec<Int>> = (0..m)
            .map(|i| snf.v.row(i)[r..].to_vec())
            .collect();
        if cfg!(debug_assertions) {
            for row in self.basis_rows() {
                for j in 0..n {
                    let s: Int = row
                        .iter()
                        .zip(&vectors)
                        .map(|(c, a)| c * &a[j])
                        .fold(Int::zero(), |acc, v| acc + v);
                    debug_assert!(s.is_zero(), "basis row survives the quotient map");
                }
            }
        }
        VectorConfig::new(vectors)
    }
}

/// Finite list of nonzero integer vectors a_1, ..., a_m in Z^n.
#[derive(Clone, Debug)]
pub struct VectorConfig {
    vectors: Vec<Vec<Int>>,
    dim: usize,
}

impl VectorConfig {
    pub fn new(vectors: Vec<Vec<Int>>) -> Result<Self, Error> {
        if vectors.is_empty() {
            return Err(Error::Parse("vector configuration must be nonempty".into()));
        }
        let dim = vectors[0].len();
        if dim == 0 || vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::Parse(
                "configuration vectors must share a positive length".into(),
            ));
        }
        if let Some(index) = vectors.iter().position(|v| v.iter().all(|x| x.is_zero())) {
            return Err(Error::ZeroVector { index });
        }
        Ok(VectorConfig { vectors, dim })
    }

    pub fn from_i64(vectors: &[Vec<i64>]) -> Result<Self, Error> {
        Self::new(
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, i: usize) -> &[Int] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<Int>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.vectors)
    }

    /// Kernel lattice {u : sum u_i a_i = 0}, automatically saturated. With
    /// U A V = D the rows of U past the rank annihilate A.
    pub fn kernel_lattice(&self) -> Option<Lattice> {
        let a = IntMat::from_rows(self.vectors.clone());
        let snf = a.snf();
        let rank = (0..snf.d.rows.min(snf.d.cols))
            .filter(|&i| !snf.d[(i, i)].is_zero())
            .count();
        let rows: Vec<Vec<Int>> = (rank..self.len()).map(|i| snf.u.row(i).to_vec()).collect();
        if rows.is_empty() {
            return None;
        }
        let lat = Lattice::new(rows).expect("kernel basis rows are independent");
        debug_assert!(lat
            .basis_rows()
            .iter()
            .all(|u| { a.transpose().mul_vec(u).iter().all(|x| x.is_zero()) }));
        Some(lat)
    }

    /// Height of the associated ideal: rank of the kernel lattice.
    pub fn ideal_height(&self) -> usize {
        self.len() - self.rank()
    }
}

/// x^u - x^v lies in the lattice ideal of L (trivial character) iff u - v
/// is a lattice vector.
pub fn binomial_in_ideal(u: &[Int], v: &[Int], lattice: &Lattice) -> bool {
    assert_eq!(u.len(), v.len());
    assert_eq!(u.len(), lattice.ambient_dim());
    let diff: Vec<Int> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    lattice.contains(&diff)
}
