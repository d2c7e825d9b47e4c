//! The configuration family {2e_i + e_j : i ≠ j}, its two generating sets
//! for the radical, the closed-form expected counts, and a verification
//! driver that recomputes every quantity and compares.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone::ConeModel;
use crate::error::Error;
use crate::groebner::{groebner_member, poly_pow, GroebnerLimits};
use crate::lattice::VectorConfig;
use crate::poly::{check_cover, deglex_cmp, Mono, Poly};
use crate::rat::{rat, Int};
use crate::sigma_graph::{bound_b, bound_c, build_graph, SigmaGraph};
use crate::stanley_reisner::{binom, minimal_nonfaces, FaceLattice, SrGenerator};

/// Index bookkeeping for the family: variables are ordered pairs (i, j) with
/// i ≠ j, 1-based, in lexicographic order; the vector of (i, j) is 2e_i + e_j.
#[derive(Clone, Debug)]
pub struct AnSpec {
    pub n: usize,
    pairs: Vec<(usize, usize)>,
}

impl AnSpec {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidN { n, min: 2 });
        }
        let pairs = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        Ok(AnSpec { n, pairs })
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn var(&self, i: usize, j: usize) -> usize {
        assert!(i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        (i - 1) * (self.n - 1) + (j - 1) - usize::from(j > i)
    }

    pub fn pair(&self, v: usize) -> (usize, usize) {
        self.pairs[v]
    }

    pub fn label(&self, v: usize) -> String {
        let (i, j) = self.pairs[v];
        if self.n <= 9 {
            format!("x{i}{j}")
        } else {
            format!("x{i}_{j}")
        }
    }

    pub fn config(&self) -> VectorConfig {
        let vectors = self
            .pairs
            .iter()
            .map(|&(i, j)| {
                let mut v = vec![Int::from(0); self.n];
                v[i - 1] = Int::from(2);
                v[j - 1] += Int::from(1);
                v
            })
            .collect();
        VectorConfig::new(vectors).expect("family vectors are nonzero")
    }

    /// Monomial from (i, j, exponent) entries, exponents on repeated pairs
    /// accumulating.
    pub fn mono(&self, entries: &[(usize, usize, u32)]) -> Mono {
        let mut e = vec![0u32; self.m()];
        for &(i, j, x) in entries {
            e[self.var(i, j)] += x;
        }
        Mono::new(e)
    }
}

pub fn an_config(n: usize) -> Result<VectorConfig, Error> {
    Ok(AnSpec::new(n)?.config())
}

/// x^a - x^b with the degree-lexicographically least monomial carrying +1.
fn oriented_binomial(a: &Mono, b: &Mono) -> Poly {
    let (lo, hi) = if deglex_cmp(a, b) == Ordering::Less {
        (a, b)
    } else {
        (b, a)
    };
    Poly::from_terms(vec![(rat(1), lo.clone()), (rat(-1), hi.clone())])
}

/// The binomial generating set realizing the b-bound: per triple i < j < k
/// the two independent quadrics x_aj x_bj - x_ak x_bk (the third choice of
/// repeated second index is their ideal-theoretic sum and is dropped) and
/// the three cubics x_dp² x_qd - x_dq² x_pd, one per distinguished index d;
/// per 4-set the six quadrics x_ac x_bd - x_ad x_bc.
pub fn binomial_generators(n: usize) -> Result<Vec<Poly>, Error> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    let spec = AnSpec::new(n)?;
    let mut out = Vec::new();
    for t in (1..=n).combinations(3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let start = out.len();
        let repeated_second =
            |s: usize, a: usize, b: usize| spec.mono(&[(a, s, 1), (b, s, 1)]);
        let mi = repeated_second(i, j, k);
        let mj = repeated_second(j, i, k);
        let mk = repeated_second(k, i, j);
        out.push(oriented_binomial(&mi, &mj));
        out.push(oriented_binomial(&mi, &mk));
        for (d, p, q) in [(i, j, k), (j, i, k), (k, i, j)] {
            out.push(oriented_binomial(
                &spec.mono(&[(d, p, 2), (q, d, 1)]),
                &spec.mono(&[(d, q, 2), (p, d, 1)]),
            ));
        }
        assert_eq!(out.len() - start, 5);
    }
    push_quadruple_binomials(&spec, n, &mut out);
    assert_eq!(out.len(), 5 * binom(n, 3) + 6 * binom(n, 4));
    Ok(out)
}

fn push_quadruple_binomials(spec: &AnSpec, n: usize, out: &mut Vec<Poly>) {
    for q in (1..=n).combinations(4) {
        for firsts in q.iter().copied().combinations(2) {
            let (a, b) = (firsts[0], firsts[1]);
            let seconds: Vec<usize> =
                q.iter().copied().filter(|x| !firsts.contains(x)).collect();
            let (c, d) = (seconds[0], seconds[1]);
            out.push(oriented_binomial(
                &spec.mono(&[(a, c, 1), (b, d, 1)]),
                &spec.mono(&[(a, d, 1), (b, c, 1)]),
            ));
        }
    }
}

/// The homogeneous generating set realizing the c-bound: per triple the
/// three cubics plus one four-term polynomial; per 4-set the six quadrics.
pub fn homogeneous_generators(n: usize) -> Result<Vec<Poly>, Error> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    let spec = AnSpec::new(n)?;
    let mut out = Vec::new();
    for t in (1..=n).combinations(3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        for (d, p, q) in [(i, j, k), (j, i, k), (k, i, j)] {
            out.push(oriented_binomial(
                &spec.mono(&[(d, p, 2), (q, d, 1)]),
                &spec.mono(&[(d, q, 2), (p, d, 1)]),
            ));
        }
        out.push(Poly::from_terms(vec![
            (rat(1), spec.mono(&[(i, j, 3), (k, j, 3)])),
            (rat(-1), spec.mono(&[(j, k, 3), (i, k, 3)])),
            (rat(1), spec.mono(&[(k, i, 3), (j, i, 3)])),
            (rat(-1), spec.mono(&[(i, j, 2), (k, i, 2), (j, k, 2)])),
        ]));
    }
    push_quadruple_binomials(&spec, n, &mut out);
    assert_eq!(out.len(), 4 * binom(n, 3) + 6 * binom(n, 4));
    Ok(out)
}

/// The quadric whose fifth power lies in the ideal of the homogeneous set,
/// with the n = 3 generating set; the identity is index-local, so the
/// triple {1,2,3} instance settles every n.
pub fn fifth_power_instance() -> (Poly, Vec<Poly>) {
    let spec = AnSpec::new(3).unwrap();
    let f = Poly::from_terms(vec![
        (rat(1), spec.mono(&[(1, 2, 1), (3, 2, 1)])),
        (rat(-1), spec.mono(&[(2, 3, 1), (1, 3, 1)])),
    ]);
    (f, homogeneous_generators(3).unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCounts {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub b: usize,
    pub c: usize,
    pub rays: usize,
    pub height: usize,
}

pub fn expected_counts(n: usize) -> ExpectedCounts {
    let c3 = binom(n, 3);
    let c4 = binom(n, 4);
    ExpectedCounts {
        vertices: 9 * c3 + 12 * c4,
        edges: 15 * c3 + 18 * c4,
        components: c3 + c4,
        b: 5 * c3 + 6 * c4,
        c: 4 * c3 + 6 * c4,
        rays: n * (n - 1),
        height: n * (n - 2),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl ClaimCheck {
    fn counts(claim: &str, expected: usize, computed: usize) -> Self {
        ClaimCheck {
            claim: claim.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass: expected == computed,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub counts_only: bool,
    pub claims: Vec<ClaimCheck>,
    pub all_pass: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub counts_only: bool,
    pub groebner: bool,
    pub faces: bool,
    pub max_clique_vertices: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            counts_only: false,
            groebner: false,
            faces: false,
            max_clique_vertices: 25,
        }
    }
}

/// Ray index -> (i, j) pair of the generator sitting on that ray. Every ray
/// of the family carries exactly one generator.
fn ray_pairs(spec: &AnSpec, cone: &ConeModel) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0); cone.ray_count()];
    for v in 0..spec.m() {
        let r = cone
            .ray_of_generator(v)
            .expect("every family generator is extreme");
        out[r] = spec.pair(v);
    }
    out
}

fn index_support(vertex: &SrGenerator, pairs: &[(usize, usize)]) -> BTreeSet<usize> {
    vertex
        .rays
        .iter()
        .flat_map(|&r| [pairs[r].0, pairs[r].1])
        .collect()
}

/// Does the ray pair set match pos{2e_i + e_k : k ∈ T} (common first index)
/// or pos{2e_p + e_q : {p,q} ⊆ T} (all ordered pairs inside an index set)?
fn face_matches_pattern(ray_set: &[usize], pairs: &[(usize, usize)]) -> bool {
    if ray_set.is_empty() {
        return true;
    }
    let face_pairs: BTreeSet<(usize, usize)> =
        ray_set.iter().map(|&r| pairs[r]).collect();
    let firsts: BTreeSet<usize> = face_pairs.iter().map(|p| p.0).collect();
    if firsts.len() == 1 {
        return true;
    }
    let support: BTreeSet<usize> = face_pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect();
    let t = support.len();
    face_pairs.len() == t * (t - 1)
}

struct ComponentShape {
    vertices: usize,
    edges: usize,
    triangles: usize,
    support: BTreeSet<usize>,
}

fn component_shapes(graph: &SigmaGraph, pairs: &[(usize, usize)]) -> Vec<ComponentShape> {
    graph
        .components()
        .into_iter()
        .map(|verts| {
            let mut edges = 0;
            let mut triangles = 0;
            for (a, &u) in verts.iter().enumerate() {
                for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                    if !graph.adjacency[u][v] {
                        continue;
                    }
                    edges += 1;
                    for &w in verts.iter().skip(b + 1) {
                        if graph.adjacency[u][w] && graph.adjacency[v][w] {
                            triangles += 1;
                        }
                    }
                }
            }
            let support = verts
                .iter()
                .flat_map(|&u| index_support(&graph.vertices[u], pairs))
                .collect();
            ComponentShape {
                vertices: verts.len(),
                edges,
                triangles,
                support,
            }
        })
        .collect()
}

fn structure_claim(graph: &SigmaGraph, pairs: &[(usize, usize)], n: usize) -> ClaimCheck {
    let shapes = component_shapes(graph, pairs);
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut violations: Vec<String> = Vec::new();
    for shape in &shapes {
        let key: Vec<usize> = shape.support.iter().copied().collect();
        *seen.entry(key.clone()).or_insert(0) += 1;
        let ok = match shape.support.len() {
            3 => shape.vertices == 9 && shape.edges == 15 && shape.triangles == 1,
            4 => shape.vertices == 12 && shape.edges == 18 && shape.triangles == 0,
            _ => false,
        };
        if !ok {
            violations.push(format!(
                "support {key:?}: {}V/{}E/{} triangles",
                shape.vertices, shape.edges, shape.triangles
            ));
        }
    }
    for (key, count) in &seen {
        if *count != 1 {
            violations.push(format!("support {key:?} split across {count} components"));
        }
    }
    let expected_sets = binom(n, 3) + binom(n, 4);
    if seen.len() != expected_sets {
        violations.push(format!(
            "{} distinct index supports, expected {expected_sets}",
            seen.len()
        ));
    }
    ClaimCheck {
        claim: "component structure".into(),
        expected: "one component per 3- or 4-set: 9V/15E/1 triangle or 12V/18E/0 triangles"
            .into(),
        computed: if violations.is_empty() {
            "as expected".into()
        } else {
            violations.join("; ")
        },
        pass: violations.is_empty(),
    }
}

fn cover_claim(name: &str, polys: &[Poly], cone: &ConeModel, gens: &[SrGenerator], graph: &SigmaGraph, require_complete: bool) -> ClaimCheck {
    let report = check_cover(polys, cone, gens, graph);
    let complete_ok = !require_complete || report.per_poly.iter().all(|p| p.complete);
    let pass = report.spanning && complete_ok;
    let computed = if pass {
        if require_complete {
            "spanning, all subgraphs complete".to_string()
        } else {
            "spanning".to_string()
        }
    } else if !report.spanning {
        format!("{} vertices uncovered", report.uncovered.len())
    } else {
        "incomplete polynomial subgraph".to_string()
    };
    ClaimCheck {
        claim: name.to_string(),
        expected: if require_complete {
            "spanning, all subgraphs complete".into()
        } else {
            "spanning".into()
        },
        computed,
        pass,
    }
}

fn faces_claim(faces: &FaceLattice, pairs: &[(usize, usize)]) -> ClaimCheck {
    let bad = faces
        .faces
        .iter()
        .filter(|(f, _)| !face_matches_pattern(f, pairs))
        .count();
    ClaimCheck {
        claim: "face patterns".into(),
        expected: format!("{} faces match F_(i,T) or F_T", faces.faces.len()),
        computed: if bad == 0 {
            "all match".into()
        } else {
            format!("{bad} faces match neither pattern")
        },
        pass: bad == 0,
    }
}

pub fn verify_an(n: usize, opts: &VerifyOptions) -> Result<VerifyReport, Error> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    let spec = AnSpec::new(n)?;
    let cone = ConeModel::new(spec.config())?;
    let (gens, face_lattice) = minimal_nonfaces(&cone);
    let graph = build_graph(&cone, &gens);
    let exp = expected_counts(n);
    let mut claims = vec![
        ClaimCheck::counts("extreme rays", exp.rays, cone.ray_count()),
        ClaimCheck::counts("SR generators", exp.vertices, gens.len()),
        ClaimCheck::counts("graph edges", exp.edges, graph.edge_count()),
        ClaimCheck::counts("graph components", exp.components, graph.component_count()),
        ClaimCheck::counts("bound b", exp.b, bound_b(&graph, false).0),
        ClaimCheck::counts(
            "bound c",
            exp.c,
            bound_c(&graph, opts.max_clique_vertices, false)?.0,
        ),
        ClaimCheck::counts("height", exp.height, cone.config().ideal_height()),
    ];
    if !opts.counts_only {
        let pairs = ray_pairs(&spec, &cone);
        claims.push(structure_claim(&graph, &pairs, n));
        claims.push(cover_claim(
            "binomial set cover",
            &binomial_generators(n)?,
            &cone,
            &gens,
            &graph,
            false,
        ));
        claims.push(cover_claim(
            "homogeneous set cover",
            &homogeneous_generators(n)?,
            &cone,
            &gens,
            &graph,
            true,
        ));
        if opts.faces {
            claims.push(faces_claim(&face_lattice, &pairs));
        }
        if opts.groebner {
            let (f, ideal) = fifth_power_instance();
            let member = groebner_member(&poly_pow(&f, 5), &ideal, &GroebnerLimits::default())?;
            claims.push(ClaimCheck {
                claim: "fifth power membership".into(),
                expected: "member".into(),
                computed: if member { "member" } else { "not a member" }.into(),
                pass: member,
            });
        }
    }
    let all_pass = claims.iter().all(|c| c.pass);
    Ok(VerifyReport {
        n,
        counts_only: opts.counts_only,
        claims,
        all_pass,
    })
}
