//! Python bindings.
//!
//! Maps are a native class. Larger structured values (groups, examples,
//! verdicts, chart complexes) cross the boundary as plain dicts and lists,
//! using the same JSON layout as the command line tool.

use affine_atlas::dev_chart::{develop as develop_path, loop_holonomy, ChartComplex, DevPath};
use affine_atlas::fixtures::{build_example as build, ExampleId};
use affine_atlas::flows::{self, Ball};
use affine_atlas::line_groups::{self, classify_cyclic};
use affine_atlas::tiling::{self, TilingJob};
use affine_atlas::{
    evaluate_word, fixed_points, AffineMap as CoreMap, FlowKind, FlowSpec, GroupPresentation,
    Matrix, Vector, Word,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Accepts either a JSON string or a JSON-compatible Python object.
fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = if obj.is_instance_of::<PyString>() {
        obj.extract()?
    } else {
        obj.py()
            .import("json")?
            .call_method1("dumps", (obj,))?
            .extract()?
    };
    serde_json::from_str(&text).map_err(err)
}

fn vector(xs: Vec<f64>) -> Vector {
    Vector::from_vec(xs)
}

/// An invertible affine map `x -> L x + t`.
#[pyclass(name = "AffineMap", module = "affine_atlas", frozen, from_py_object)]
#[derive(Clone)]
struct PyAffineMap(CoreMap);

#[pymethods]
impl PyAffineMap {
    #[new]
    fn new(linear: Vec<Vec<f64>>, translation: Vec<f64>) -> PyResult<Self> {
        let n = linear.len();
        if linear.iter().any(|row| row.len() != n) {
            return Err(PyValueError::new_err(
                "linear part must be a square list of rows",
            ));
        }
        let m = Matrix::from_fn(n, n, |i, j| linear[i][j]);
        CoreMap::new(m, vector(translation)).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(CoreMap::identity(n))
    }

    #[staticmethod]
    fn from_json(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        from_py(obj).map(Self)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn linear(&self) -> Vec<Vec<f64>> {
        self.0
            .linear()
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    #[getter]
    fn translation(&self) -> Vec<f64> {
        self.0.translation().iter().copied().collect()
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyAffineMap) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn __matmul__(&self, other: &PyAffineMap) -> PyResult<Self> {
        self.compose(other)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(err)
    }

    fn pow(&self, k: i64) -> PyResult<Self> {
        self.0.pow(k).map(Self).map_err(err)
    }

    fn apply(&self, point: Vec<f64>) -> PyResult<Vec<f64>> {
        let p = self.0.apply(&vector(point)).map_err(err)?;
        Ok(p.iter().copied().collect())
    }

    fn __call__(&self, point: Vec<f64>) -> PyResult<Vec<f64>> {
        self.apply(point)
    }

    #[pyo3(signature = (other, tolerance = 1e-9))]
    fn approx_eq(&self, other: &PyAffineMap, tolerance: f64) -> bool {
        self.0.approx_eq(&other.0, tolerance)
    }

    fn fixed_points<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &fixed_points(&self.0))
    }

    fn __repr__(&self) -> String {
        format!(
            "AffineMap(linear={:?}, translation={:?})",
            self.linear(),
            self.translation()
        )
    }
}

/// Split a line-preserving map into `{r, w, A, d}`.
#[pyfunction]
fn block_decompose<'py>(py: Python<'py>, map: &PyAffineMap) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &line_groups::block_decompose(&map.0).map_err(err)?)
}

/// Shear normal form of a line-translating map.
#[pyfunction]
fn shear_normal_form<'py>(py: Python<'py>, map: &PyAffineMap) -> PyResult<Bound<'py, PyAny>> {
    let block = line_groups::block_decompose(&map.0).map_err(err)?;
    to_py(py, &line_groups::shear_normal_form(&block).map_err(err)?)
}

/// Classify a line-preserving map as a cyclic holonomy.
#[pyfunction]
fn classify<'py>(py: Python<'py>, map: &PyAffineMap) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &classify_cyclic(&map.0).map_err(err)?)
}

/// Common fixed point of a group, or `None`.
#[pyfunction]
fn radiant_conjugator<'py>(
    py: Python<'py>,
    group: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let group: GroupPresentation = from_py(group)?;
    to_py(py, &line_groups::radiant_conjugator(&group))
}

/// Evaluate a word given as `[(generator_index, exponent), ...]`.
#[pyfunction]
fn evaluate(group: &Bound<'_, PyAny>, word: Vec<(usize, i32)>) -> PyResult<PyAffineMap> {
    let group: GroupPresentation = from_py(group)?;
    let word = Word::from_pairs(&word).map_err(err)?;
    evaluate_word(&group, &word).map(PyAffineMap).map_err(err)
}

/// Build a named example group as a dict.
#[pyfunction]
#[pyo3(signature = (name, lambda_ = None, theta = None, n = None))]
fn build_example<'py>(
    py: Python<'py>,
    name: &str,
    lambda_: Option<f64>,
    theta: Option<f64>,
    n: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let id = ExampleId::with_params(name, lambda_, theta, n).map_err(err)?;
    to_py(py, &build(id).map_err(err)?)
}

/// Generator `index` of a group as a map.
#[pyfunction]
fn generator(group: &Bound<'_, PyAny>, index: usize) -> PyResult<PyAffineMap> {
    let group: GroupPresentation = from_py(group)?;
    group
        .generator(index)
        .cloned()
        .map(PyAffineMap)
        .map_err(err)
}

/// Develop `path` through `complex`; returns `{polyline, terminal, accumulated}`.
#[pyfunction]
fn develop<'py>(
    py: Python<'py>,
    complex: &Bound<'py, PyAny>,
    path: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let cc: ChartComplex = from_py(complex)?;
    let path: DevPath = from_py(path)?;
    to_py(py, &develop_path(&cc, &path).map_err(err)?)
}

#[pyfunction]
fn holonomy(complex: &Bound<'_, PyAny>, path: &Bound<'_, PyAny>) -> PyResult<PyAffineMap> {
    let cc: ChartComplex = from_py(complex)?;
    let path: DevPath = from_py(path)?;
    loop_holonomy(&cc, &path).map(PyAffineMap).map_err(err)
}

/// Closed-form flow of kind `"Parallel"`, `"Radial"` or `"Cylindrical"`.
#[pyfunction]
fn flow(kind: &str, t: f64, point: Vec<f64>) -> PyResult<Vec<f64>> {
    let kind = match kind {
        "Parallel" => FlowKind::Parallel,
        "Radial" => FlowKind::Radial,
        "Cylindrical" => FlowKind::Cylindrical,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown flow kind {other:?}"
            )))
        }
    };
    let spec = FlowSpec::new(kind, point.len()).map_err(err)?;
    let p = flows::flow(spec, t, &vector(point)).map_err(err)?;
    Ok(p.iter().copied().collect())
}

/// Whether the radial orbit of `q` meets the open ball.
#[pyfunction]
fn radial_saturation_contains(center: Vec<f64>, radius: f64, q: Vec<f64>) -> PyResult<bool> {
    let ball = Ball::new(vector(center), radius).map_err(err)?;
    flows::radial_saturation_contains(&ball, &vector(q)).map_err(err)
}

/// Render a tiling job (`{polygon, group, max_word_length, viewport?}`) as SVG.
#[pyfunction]
fn render_tiling(job: &Bound<'_, PyAny>) -> PyResult<String> {
    let job: TilingJob = from_py(job)?;
    tiling::render_tiling(&job).map_err(err)
}

#[pymodule(name = "affine_atlas")]
fn affine_atlas_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAffineMap>()?;
    m.add_function(wrap_pyfunction!(block_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(shear_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(radiant_conjugator, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(build_example, m)?)?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    m.add_function(wrap_pyfunction!(develop, m)?)?;
    m.add_function(wrap_pyfunction!(holonomy, m)?)?;
    m.add_function(wrap_pyfunction!(flow, m)?)?;
    m.add_function(wrap_pyfunction!(radial_saturation_contains, m)?)?;
    m.add_function(wrap_pyfunction!(render_tiling, m)?)?;
    Ok(())
}
