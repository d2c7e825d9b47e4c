//! Exact scalar types and small vector helpers.
//!
//! `Rat` keeps every invariant we need (reduced fraction, positive
//! denominator), so all decision procedures in this crate are float-free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Parses "p" or "p/q" with optional sign; q must be nonzero.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: Int = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))?;
    let q: Int = q
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(p, q))
}

/// Renders as "p" or "p/q" with q > 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Int::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

pub fn dot_rat_int(a: &[Rat], b: &[Int]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * Rat::from_integer(y.clone());
    }
    s
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Clears denominators and divides out the content; keeps the direction.
/// Returns the zero vector unchanged.
pub fn scale_to_primitive(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_int(&ints)
}

/// Divides an integer vector by the gcd of its entries; zero stays zero.
pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn rat_vec_nonneg(v: &[Rat]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-4/6").unwrap(), rat_frac(-2, 3));
        assert_eq!(parse_rat("4/-6").unwrap(), rat_frac(-2, 3));
        assert_eq!(format_rat(&rat_frac(-2, 3)), "-2/3");
        assert_eq!(format_rat(&rat(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![rat_frac(1, 2), rat_frac(3, 4), rat(0)];
        assert_eq!(scale_to_primitive(&v), vec![int(2), int(3), int(0)]);
        assert_eq!(primitive_int(&[int(-4), int(6)]), vec![int(-2), int(3)]);
        assert_eq!(primitive_int(&[int(0), int(0)]), vec![int(0), int(0)]);
    }
}
