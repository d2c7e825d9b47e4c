//! File formats: the analysis input (a lattice basis, a vector
//! configuration, or a named family) and polynomial lists, either as exact
//! term arrays or in a compact textual form for family variables.

use serde::Deserialize;

use crate::error::Error;
use crate::family_an::{an_config, AnSpec};
use crate::lattice::{Lattice, VectorConfig};
use crate::poly::{Mono, Poly};
use crate::rat::{parse_rat, Int, Rat};

#[derive(Clone, Debug)]
pub struct AnalysisInput {
    /// "lattice_basis", "vector_config" or "family_an", echoed in reports.
    pub kind: String,
    pub family_n: Option<usize>,
    /// Present only for lattice inputs; already checked positive.
    pub lattice: Option<Lattice>,
    pub config: VectorConfig,
    pub height: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    lattice_basis: Option<Vec<Vec<i64>>>,
    vector_config: Option<Vec<Vec<i64>>>,
    family: Option<RawFamily>,
    character: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    kind: String,
    n: usize,
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Int>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Int::from(x)).collect())
        .collect()
}

pub fn parse_input_str(s: &str) -> Result<AnalysisInput, Error> {
    let raw: RawInput = serde_json::from_str(s)?;
    if let Some(ch) = &raw.character {
        if ch != "trivial" {
            return Err(Error::Parse(format!(
                "character {ch:?} is not supported; only \"trivial\" is \
                 (all computed bounds are independent of the character)"
            )));
        }
    }
    let given = usize::from(raw.lattice_basis.is_some())
        + usize::from(raw.vector_config.is_some())
        + usize::from(raw.family.is_some());
    if given != 1 {
        return Err(Error::Parse(
            "input must contain exactly one of \"lattice_basis\", \
             \"vector_config\", \"family\""
                .into(),
        ));
    }
    if let Some(rows) = raw.lattice_basis {
        let lattice = Lattice::new(int_rows(&rows))?;
        lattice.check_positive()?;
        let config = lattice.quotient_config()?;
        let height = lattice.rank();
        return Ok(AnalysisInput {
            kind: "lattice_basis".into(),
            family_n: None,
            lattice: Some(lattice),
            config,
            height,
        });
    }
    if let Some(rows) = raw.vector_config {
        let config = VectorConfig::new(int_rows(&rows))?;
        let height = config.ideal_height();
        return Ok(AnalysisInput {
            kind: "vector_config".into(),
            family_n: None,
            lattice: None,
            config,
            height,
        });
    }
    let family = raw.family.unwrap();
    if family.kind != "An" {
        return Err(Error::Parse(format!(
            "unknown family kind {:?}; expected \"An\"",
            family.kind
        )));
    }
    let config = an_config(family.n)?;
    let height = config.ideal_height();
    Ok(AnalysisInput {
        kind: "family_an".into(),
        family_n: Some(family.n),
        lattice: None,
        config,
        height,
    })
}

pub fn parse_input_file(path: &std::path::Path) -> Result<AnalysisInput, Error> {
    parse_input_str(&std::fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolyFile {
    variables: usize,
    polys: Vec<RawPoly>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPoly {
    Terms(Vec<RawTerm>),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    c: String,
    e: Vec<u32>,
}

pub fn parse_polys_str(s: &str) -> Result<(usize, Vec<Poly>), Error> {
    let raw: RawPolyFile = serde_json::from_str(s)?;
    let m = raw.variables;
    let spec = family_spec_for(m);
    let mut out = Vec::with_capacity(raw.polys.len());
    for (pi, rp) in raw.polys.into_iter().enumerate() {
        let poly = match rp {
            RawPoly::Terms(terms) => {
                let mut list: Vec<(Rat, Mono)> = Vec::with_capacity(terms.len());
                for t in terms {
                    if t.e.len() != m {
                        return Err(Error::Parse(format!(
                            "poly {pi}: exponent vector has length {}, expected {m}",
                            t.e.len()
                        )));
                    }
                    list.push((parse_rat(&t.c)?, Mono::new(t.e)));
                }
                Poly::from_terms(list)
            }
            RawPoly::Text(text) => match &spec {
                Some(spec) => parse_poly_text(&text, spec)
                    .map_err(|e| Error::Parse(format!("poly {pi}: {e}")))?,
                None => {
                    return Err(Error::Parse(format!(
                        "poly {pi}: textual form needs a family variable count \
                         n(n-1) with n <= 9, not {m} variables"
                    )))
                }
            },
        };
        out.push(poly);
    }
    Ok((m, out))
}

pub fn parse_polys_file(path: &std::path::Path) -> Result<(usize, Vec<Poly>), Error> {
    parse_polys_str(&std::fs::read_to_string(path)?)
}

/// Serialize polynomials to the term-array file format; inverse of
/// parse_polys_str up to term normalization.
pub fn polys_to_json(variables: usize, polys: &[Poly]) -> String {
    let doc = serde_json::json!({
        "variables": variables,
        "polys": polys
            .iter()
            .map(|p| {
                p.terms
                    .iter()
                    .map(|(c, m)| {
                        serde_json::json!({
                            "c": crate::rat::format_rat(c),
                            "e": m.exponents,
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("poly serialization");
    s.push('\n');
    s
}

/// The AnSpec whose variable count is m, when m = n(n-1) for some n <= 9.
fn family_spec_for(m: usize) -> Option<AnSpec> {
    (2..=9)
        .find(|n| n * (n - 1) == m)
        .map(|n| AnSpec::new(n).unwrap())
}

/// Textual polynomials over family variables: terms joined by + or -, each
/// an optional rational coefficient and *-separated factors "xij^k" with
/// single-digit 1-based indices.
fn parse_poly_text(text: &str, spec: &AnSpec) -> Result<Poly, String> {
    let mut terms: Vec<(Rat, Mono)> = Vec::new();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut rest = compact.as_str();
    let mut sign = Rat::from_integer(1.into());
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let split = rest
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i);
        let (term_str, tail) = match split {
            Some(i) => (&rest[..i], Some(&rest[i..])),
            None => (rest, None),
        };
        terms.push(parse_term(term_str, &sign, spec)?);
        match tail {
            None => break,
            Some(t) => {
                sign = if t.starts_with('-') {
                    -Rat::from_integer(1.into())
                } else {
                    Rat::from_integer(1.into())
                };
                rest = &t[1..];
            }
        }
    }
    Ok(Poly::from_terms(terms))
}

fn parse_term(term: &str, sign: &Rat, spec: &AnSpec) -> Result<(Rat, Mono), String> {
    let mut coeff = sign.clone();
    let mut expo = vec![0u32; spec.m()];
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(format!("empty factor in term {term:?}"));
        }
        if let Some(body) = factor.strip_prefix('x') {
            let (vars, pow) = match body.split_once('^') {
                Some((v, p)) => {
                    let pow: u32 = p
                        .parse()
                        .map_err(|_| format!("bad exponent {p:?} in {factor:?}"))?;
                    (v, pow)
                }
                None => (body, 1),
            };
            let digits: Vec<u32> = vars.chars().map(|c| c.to_digit(10).unwrap_or(0)).collect();
            if digits.len() != 2 || digits.iter().any(|&d| d == 0) {
                return Err(format!(
                    "variable {factor:?} must be x<i><j> with single digits"
                ));
            }
            let (i, j) = (digits[0] as usize, digits[1] as usize);
            if i == j || i > spec.n || j > spec.n {
                return Err(format!("variable {factor:?} is outside the family"));
            }
            expo[spec.var(i, j)] += pow;
        } else {
            let c = parse_rat(factor).map_err(|e| format!("bad coefficient {factor:?}: {e}"))?;
            coeff *= c;
        }
    }
    Ok((coeff, Mono::new(expo)))
}
