//! Deterministic report documents: JSON serialization of the analysis
//! results plus plain-text renderings for the terminal. Timing is never
//! embedded so identical inputs produce identical bytes.

use serde::{Deserialize, Serialize};

use crate::cone::ConeModel;
use crate::error::Error;
use crate::family_an::VerifyReport;
use crate::input::AnalysisInput;
use crate::poly::CoverReport;
use crate::sigma_graph::{bound_b, bound_c, SigmaGraph};
use crate::stanley_reisner::{FaceLattice, SrGenerator};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputEcho {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_n: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
}

/// Exact clique-cover number, or the bracketing interval when a component
/// was larger than the exact-search cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CliqueBound {
    Exact(usize),
    Interval { lower: usize, upper: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bounds {
    pub b: usize,
    pub c: CliqueBound,
    pub mu_lower: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceEcho {
    pub rays: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub strongly_convex: bool,
    pub simplex_cone: bool,
    pub height: usize,
    /// Dimension m, the generic upper bound for ara.
    pub ara_upper_hint: usize,
    pub rays: Vec<Vec<i64>>,
    pub sr_generators: Vec<Vec<usize>>,
    pub graph: GraphStats,
    pub bounds: Bounds,
    pub inequalities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clique_cover: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceEcho>>,
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub max_clique_vertices: usize,
    pub counts_only: bool,
    pub include_faces: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_clique_vertices: 25,
            counts_only: false,
            include_faces: false,
        }
    }
}

fn rays_to_i64(cone: &ConeModel) -> Result<Vec<Vec<i64>>, Error> {
    cone.rays()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    i64::try_from(x).map_err(|_| {
                        Error::Parse("ray coordinate exceeds the i64 report range".into())
                    })
                })
                .collect()
        })
        .collect()
}

pub fn build_report(
    input: &AnalysisInput,
    cone: &ConeModel,
    gens: &[SrGenerator],
    face_lattice: &FaceLattice,
    graph: &SigmaGraph,
    opts: &ReportOptions,
) -> Result<AnalysisReport, Error> {
    let with_cert = !opts.counts_only;
    let (b, matching) = bound_b(graph, with_cert);
    let (c, clique_cover) = match bound_c(graph, opts.max_clique_vertices, with_cert) {
        Ok((c, cert)) => (CliqueBound::Exact(c), cert),
        Err(Error::ComponentTooLarge { lower, upper, .. }) => {
            (CliqueBound::Interval { lower, upper }, None)
        }
        Err(e) => return Err(e),
    };
    let m = input.config.len();
    let height = input.height;
    let mu_lower = b.max(height);
    let mut inequalities = vec![
        format!("height h = {height} <= ara(I) <= m = {m}"),
        format!("b_G = {b} <= bar(I)"),
    ];
    match c {
        CliqueBound::Exact(c) => inequalities.push(format!("c_G = {c} <= ara_A(I)")),
        CliqueBound::Interval { lower, upper } => inequalities.push(format!(
            "{lower} <= c_G <= {upper}, c_G <= ara_A(I) (exact search skipped above cap)"
        )),
    }
    inequalities.push(format!("max(b_G, h) = {mu_lower} <= mu(I)"));
    let component_sizes: Vec<usize> = graph.components().iter().map(|c| c.len()).collect();
    let faces = opts.include_faces.then(|| {
        face_lattice
            .faces
            .iter()
            .map(|(rays, dim)| FaceEcho {
                rays: rays.clone(),
                dim: *dim,
            })
            .collect()
    });
    Ok(AnalysisReport {
        input: InputEcho {
            kind: input.kind.clone(),
            m,
            n: input.config.dim(),
            family_n: input.family_n,
        },
        strongly_convex: true,
        simplex_cone: gens.is_empty(),
        height,
        ara_upper_hint: m,
        rays: rays_to_i64(cone)?,
        sr_generators: gens.iter().map(|g| g.rays.clone()).collect(),
        graph: GraphStats {
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            components: graph.component_count(),
            component_sizes,
        },
        bounds: Bounds { b, c, mu_lower },
        inequalities,
        matching,
        clique_cover,
        faces,
    })
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

pub fn analysis_summary(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "input: {} (m = {} variables, cone dimension {})\n",
        r.input.kind, r.input.m, r.input.n
    ));
    if let Some(n) = r.input.family_n {
        out.push_str(&format!("family parameter n = {n}\n"));
    }
    out.push_str(&format!(
        "strongly convex: {}\nsimplex cone: {}\n",
        if r.strongly_convex { "yes" } else { "no" },
        if r.simplex_cone { "yes" } else { "no" }
    ));
    out.push_str(&format!("extreme rays: {}\n", r.rays.len()));
    out.push_str(&format!("SR generators: {}\n", r.sr_generators.len()));
    out.push_str(&format!(
        "graph: {} vertices, {} edges, {} component(s)\n",
        r.graph.vertices, r.graph.edges, r.graph.components
    ));
    for line in &r.inequalities {
        out.push_str(line);
        out.push('\n');
    }
    out
}

pub fn cover_summary(report: &CoverReport, gens: &[SrGenerator]) -> String {
    let mut out = String::new();
    for p in &report.per_poly {
        out.push_str(&format!(
            "poly {}: vertices {:?}{}\n",
            p.index,
            p.vertices,
            if p.complete { "" } else { " (subgraph not complete)" }
        ));
    }
    out.push_str(&format!(
        "union: {} of {} vertices\nspanning: {}\n",
        report.union_vertices.len(),
        gens.len(),
        report.spanning
    ));
    if !report.spanning {
        for g in &report.uncovered {
            out.push_str(&format!("uncovered: rays {:?}\n", g.rays));
        }
    }
    out
}

pub fn verify_table(report: &VerifyReport) -> String {
    let headers = ["claim", "expected", "computed", "result"];
    let rows: Vec<[String; 4]> = report
        .claims
        .iter()
        .map(|c| {
            [
                c.claim.clone(),
                c.expected.clone(),
                c.computed.clone(),
                if c.pass { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut width = [0usize; 4];
    for (i, h) in headers.iter().enumerate() {
        width[i] = h.len();
    }
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: [&str; 4], width: &[usize; 4]| -> String {
        format!(
            "{:<w0$}  {:<w1$}  {:<w2$}  {}\n",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2],
        )
    };
    out.push_str(&fmt_row(headers, &width));
    out.push_str(&format!(
        "{}\n",
        "-".repeat(width.iter().sum::<usize>() + 6)
    ));
    for row in &rows {
        out.push_str(&fmt_row(
            [&row[0], &row[1], &row[2], &row[3]],
            &width,
        ));
    }
    let failed = report.claims.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        out.push_str(&format!("all {} claims passed\n", report.claims.len()));
    } else {
        out.push_str(&format!("{failed} claim(s) failed\n"));
    }
    out
}
