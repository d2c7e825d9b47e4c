//! Python bindings: an `Analysis` class running the full pipeline on one
//! input, plus module-level helpers for the built-in family.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use arank::cone::ConeModel;
use arank::error::Error;
use arank::family_an::{binomial_generators, homogeneous_generators, verify_an, VerifyOptions};
use arank::input::{parse_input_str, parse_polys_str, polys_to_json, AnalysisInput};
use arank::poly::check_cover;
use arank::report::{build_report, to_json_pretty, ReportOptions};
use arank::sigma_graph::{bound_b, bound_c, build_graph, to_dot, SigmaGraph};
use arank::stanley_reisner::{minimal_nonfaces, FaceLattice, SrGenerator};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// One analyzed input: the cone, its minimal non-faces, the intersection
/// graph, and the bounds derived from them.
#[pyclass]
struct Analysis {
    input: AnalysisInput,
    cone: ConeModel,
    gens: Vec<SrGenerator>,
    faces: FaceLattice,
    graph: SigmaGraph,
}

impl Analysis {
    fn build(input: AnalysisInput) -> PyResult<Self> {
        let cone = ConeModel::new(input.config.clone()).map_err(to_py_err)?;
        let (gens, faces) = minimal_nonfaces(&cone);
        let graph = build_graph(&cone, &gens);
        Ok(Analysis {
            input,
            cone,
            gens,
            faces,
            graph,
        })
    }
}

#[pymethods]
impl Analysis {
    /// Parse the JSON input document (lattice_basis / vector_config /
    /// family) and run the pipeline.
    #[new]
    fn new(input_json: &str) -> PyResult<Self> {
        Analysis::build(parse_input_str(input_json).map_err(to_py_err)?)
    }

    /// Shortcut for the built-in family at a given n.
    #[staticmethod]
    fn from_family(n: usize) -> PyResult<Self> {
        Analysis::new(&format!("{{\"family\": {{\"kind\": \"An\", \"n\": {n}}}}}"))
    }

    /// Shortcut for a plain vector configuration.
    #[staticmethod]
    fn from_vectors(vectors: Vec<Vec<i64>>) -> PyResult<Self> {
        let doc = serde_json::json!({ "vector_config": vectors });
        Analysis::new(&doc.to_string())
    }

    /// Shortcut for a lattice given by basis rows.
    #[staticmethod]
    fn from_lattice_basis(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        let doc = serde_json::json!({ "lattice_basis": rows });
        Analysis::new(&doc.to_string())
    }

    fn kind(&self) -> String {
        self.input.kind.clone()
    }

    fn variables(&self) -> usize {
        self.input.config.len()
    }

    fn dimension(&self) -> usize {
        self.input.config.dim()
    }

    fn height(&self) -> usize {
        self.input.height
    }

    fn ray_count(&self) -> usize {
        self.cone.ray_count()
    }

    fn rays(&self) -> PyResult<Vec<Vec<i64>>> {
        self.cone
            .rays()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        i64::try_from(x).map_err(|_| {
                            PyValueError::new_err("ray coordinate exceeds i64")
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Minimal non-faces as sorted ray index lists.
    fn sr_generators(&self) -> Vec<Vec<usize>> {
        self.gens.iter().map(|g| g.rays.clone()).collect()
    }

    fn is_face(&self, rays: Vec<usize>) -> PyResult<bool> {
        for &r in &rays {
            if r >= self.cone.ray_count() {
                return Err(PyValueError::new_err(format!(
                    "ray index {r} out of range 0..{}",
                    self.cone.ray_count()
                )));
            }
        }
        Ok(self.cone.is_face(&rays))
    }

    fn simplex_cone(&self) -> bool {
        self.gens.is_empty()
    }

    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    fn component_count(&self) -> usize {
        self.graph.component_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges()
    }

    fn bound_b(&self) -> usize {
        bound_b(&self.graph, false).0
    }

    #[pyo3(signature = (max_clique_vertices = 25))]
    fn bound_c(&self, max_clique_vertices: usize) -> PyResult<usize> {
        bound_c(&self.graph, max_clique_vertices, false)
            .map(|(c, _)| c)
            .map_err(to_py_err)
    }

    fn matching(&self) -> Vec<(usize, usize)> {
        bound_b(&self.graph, true).1.unwrap_or_default()
    }

    #[pyo3(signature = (max_clique_vertices = 25))]
    fn clique_cover(&self, max_clique_vertices: usize) -> PyResult<Vec<Vec<usize>>> {
        bound_c(&self.graph, max_clique_vertices, true)
            .map(|(_, cert)| cert.unwrap_or_default())
            .map_err(to_py_err)
    }

    fn mu_lower(&self) -> usize {
        self.bound_b().max(self.input.height)
    }

    fn to_dot(&self) -> String {
        to_dot(&self.graph)
    }

    /// The full analysis report as a JSON string.
    #[pyo3(signature = (max_clique_vertices = 25, counts_only = false, include_faces = false))]
    fn report_json(
        &self,
        max_clique_vertices: usize,
        counts_only: bool,
        include_faces: bool,
    ) -> PyResult<String> {
        let report = build_report(
            &self.input,
            &self.cone,
            &self.gens,
            &self.faces,
            &self.graph,
            &ReportOptions {
                max_clique_vertices,
                counts_only,
                include_faces,
            },
        )
        .map_err(to_py_err)?;
        Ok(to_json_pretty(&report))
    }

    /// Run the spanning check for a polynomial file document and return the
    /// cover report as a JSON string.
    fn check_cover_json(&self, polys_json: &str) -> PyResult<String> {
        let (variables, polys) = parse_polys_str(polys_json).map_err(to_py_err)?;
        if variables != self.input.config.len() {
            return Err(PyValueError::new_err(format!(
                "polynomials use {variables} variables but the input has {}",
                self.input.config.len()
            )));
        }
        let report = check_cover(&polys, &self.cone, &self.gens, &self.graph);
        Ok(to_json_pretty(&report))
    }

    fn __repr__(&self) -> String {
        format!(
            "Analysis(kind={}, m={}, n={}, rays={}, vertices={}, edges={})",
            self.input.kind,
            self.input.config.len(),
            self.input.config.dim(),
            self.cone.ray_count(),
            self.graph.vertex_count(),
            self.graph.edge_count(),
        )
    }
}

/// Replay the family claims for n; returns the claim table as JSON.
#[pyfunction]
#[pyo3(signature = (n, counts_only = false, groebner = false, faces = false, max_clique_vertices = 25))]
fn verify_an_json(
    n: usize,
    counts_only: bool,
    groebner: bool,
    faces: bool,
    max_clique_vertices: usize,
) -> PyResult<String> {
    let report = verify_an(
        n,
        &VerifyOptions {
            counts_only,
            groebner,
            faces,
            max_clique_vertices,
        },
    )
    .map_err(to_py_err)?;
    Ok(to_json_pretty(&report))
}

/// The binomial generating set for the family, in the polynomial file
/// format accepted by check_cover_json.
#[pyfunction]
fn binomial_generators_json(n: usize) -> PyResult<String> {
    let polys = binomial_generators(n).map_err(to_py_err)?;
    Ok(polys_to_json(n * (n - 1), &polys))
}

/// The homogeneous generating set for the family, same format.
#[pyfunction]
fn homogeneous_generators_json(n: usize) -> PyResult<String> {
    let polys = homogeneous_generators(n).map_err(to_py_err)?;
    Ok(polys_to_json(n * (n - 1), &polys))
}

#[pymodule]
fn arank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Analysis>()?;
    m.add_function(wrap_pyfunction!(verify_an_json, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_generators_json, m)?)?;
    m.add_function(wrap_pyfunction!(homogeneous_generators_json, m)?)?;
    Ok(())
}
