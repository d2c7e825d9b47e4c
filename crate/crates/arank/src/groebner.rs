//! Buchberger's algorithm in degree-lexicographic order, with the product
//! criterion and normal selection (lowest lcm degree first). Only ideal
//! membership is exposed; bases are not minimized beyond monic scaling.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::One;

use crate::error::Error;
use crate::poly::{Mono, Poly};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_basis: 400,
            max_pairs: 50_000,
        }
    }
}

fn monic(f: &Poly) -> Poly {
    let lead = f.leading().0.clone();
    f.scale(&(Rat::one() / lead))
}

/// Fully reduce f modulo the basis: no remainder term is divisible by any
/// leading monomial.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut remainder: Vec<(Rat, Mono)> = Vec::new();
    'outer: while !p.is_zero() {
        let (lc, lm) = p.leading().clone();
        for g in basis {
            let (glc, glm) = g.leading();
            if glm.divides(&lm) {
                let shift = glm.quotient_into(&lm);
                let coeff = &lc / glc;
                p = p.sub_mul_term(&coeff, &shift, g);
                continue 'outer;
            }
        }
        remainder.push((lc, lm));
        p.terms.remove(0);
    }
    remainder.extend(p.terms);
    Poly { terms: remainder }
}

fn spoly(f: &Poly, g: &Poly) -> Poly {
    let (flc, flm) = f.leading();
    let (glc, glm) = g.leading();
    let gamma = flm.lcm(glm);
    let sf = flm.quotient_into(&gamma);
    let sg = glm.quotient_into(&gamma);
    let mut terms: Vec<(Rat, Mono)> = Vec::new();
    for (c, m) in &f.terms {
        terms.push((c / flc, sf.mul(m)));
    }
    for (c, m) in &g.terms {
        terms.push((-(c / glc), sg.mul(m)));
    }
    Poly::from_terms(terms)
}

pub fn groebner_basis(gens: &[Poly], limits: &GroebnerLimits) -> Result<Vec<Poly>, Error> {
    let mut basis: Vec<Poly> = gens
        .iter()
        .filter(|f| !f.is_zero())
        .map(monic)
        .collect();
    let mut pairs: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let deg = basis[i].leading().1.lcm(&basis[j].leading().1).total_degree();
            pairs.push(Reverse((deg, i, j)));
        }
    }
    let mut processed = 0usize;
    while let Some(Reverse((_, i, j))) = pairs.pop() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "basis computation exceeded {} S-pairs",
                limits.max_pairs
            )));
        }
        let (lmi, lmj) = (&basis[i].leading().1, &basis[j].leading().1);
        if lmi.mul(lmj) == lmi.lcm(lmj) {
            continue;
        }
        let r = normal_form(&spoly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = monic(&r);
        let k = basis.len();
        if k + 1 > limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "basis size exceeded {}",
                limits.max_basis
            )));
        }
        for (idx, g) in basis.iter().enumerate() {
            let deg = g.leading().1.lcm(&r.leading().1).total_degree();
            pairs.push(Reverse((deg, idx, k)));
        }
        basis.push(r);
    }
    Ok(basis)
}

/// Is f in the ideal generated by gens? Decided by zero remainder against a
/// full basis in degree-lexicographic order.
pub fn groebner_member(f: &Poly, gens: &[Poly], limits: &GroebnerLimits) -> Result<bool, Error> {
    if f.is_zero() {
        return Ok(true);
    }
    let basis = groebner_basis(gens, limits)?;
    if basis.is_empty() {
        return Ok(false);
    }
    Ok(normal_form(f, &basis).is_zero())
}

/// f^k by repeated multiplication, for membership of powers.
pub fn poly_pow(f: &Poly, k: u32) -> Poly {
    let m = f.num_vars().unwrap_or(0);
    let mut acc = Poly::from_terms(vec![(Rat::one(), Mono::one(m))]);
    for _ in 0..k {
        acc = poly_mul(&acc, f);
    }
    acc
}

pub fn poly_mul(f: &Poly, g: &Poly) -> Poly {
    let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
    for (cf, mf) in &f.terms {
        for (cg, mg) in &g.terms {
            terms.push((cf * cg, mf.mul(mg)));
        }
    }
    Poly::from_terms(terms)
}
