//! Python bindings for the fibcurve engine.
//!
//! Exposes exact golden-ring integers, supertile expansion, the decoration
//! solver, curve evaluation/inversion and the figure emitters. Build with
//! `cargo build -p fibcurve-py --release`, rename the produced
//! `libfibcurve_py.so` to `fibcurve_py.so` (see `python/smoke_test.py`) and
//! import it:
//!
//! ```python
//! import fibcurve_py as fc
//! fc.dominant_eigenvalue()        # (2.6180339887498953, 30)
//! fc.curve_eval(1, 2, depth=24)   # ((0.302…, 0.809…), 2.8e-5)
//! ```

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use fibcurve::curve;
use fibcurve::export;
use fibcurve::golden;
use fibcurve::prototiles;
use fibcurve::solver;
use fibcurve::substitution;

fn value_err(e: fibcurve::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_label(s: &str) -> PyResult<prototiles::Label> {
    s.parse().map_err(value_err)
}

/// An exact element a + b·φ of the golden-ratio ring.
#[pyclass(name = "GoldenInt", module = "fibcurve_py", from_py_object)]
#[derive(Clone)]
struct PyGoldenInt {
    inner: golden::GoldenInt,
}

#[pymethods]
impl PyGoldenInt {
    #[new]
    #[pyo3(signature = (a = BigInt::from(0), b = BigInt::from(0)))]
    fn new(a: BigInt, b: BigInt) -> Self {
        Self { inner: golden::GoldenInt::new(a, b) }
    }

    /// φ^n for any integer n, exact.
    #[staticmethod]
    fn phi_pow(n: i64) -> Self {
        Self { inner: golden::GoldenInt::phi_pow(n) }
    }

    #[getter]
    fn a(&self) -> BigInt {
        self.inner.a().clone()
    }

    #[getter]
    fn b(&self) -> BigInt {
        self.inner.b().clone()
    }

    /// Exact sign of the real value: -1, 0 or 1.
    fn sign(&self) -> i32 {
        self.inner.sign()
    }

    fn to_float(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: &self.inner * &other.inner }
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __lt__(&self, other: &Self) -> bool {
        self.inner < other.inner
    }

    fn __le__(&self, other: &Self) -> bool {
        self.inner <= other.inner
    }

    fn __gt__(&self, other: &Self) -> bool {
        self.inner > other.inner
    }

    fn __ge__(&self, other: &Self) -> bool {
        self.inner >= other.inner
    }

    fn __repr__(&self) -> String {
        format!("GoldenInt({}, {})", self.inner.a(), self.inner.b())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Exact number of tiles in the k-th supertile of a seed label.
#[pyfunction]
fn tile_count(seed: &str, k: u32) -> PyResult<num_bigint::BigUint> {
    let seed = parse_label(seed)?;
    let counts = substitution::count_matrix().counts_after(seed, k);
    Ok(counts.iter().sum())
}

/// Labels of the k-th supertile of a seed, in curve order.
#[pyfunction]
fn nu_word(seed: &str, k: u32) -> PyResult<Vec<String>> {
    let seed = parse_label(seed)?;
    Ok(substitution::nu_word(seed, k).iter().map(|l| l.to_string()).collect())
}

/// The k-th supertile as a `fibcurve-patch-v1` JSON document.
#[pyfunction]
#[pyo3(signature = (seed, k, include_decorations = true))]
fn supertile_json(seed: &str, k: u32, include_decorations: bool) -> PyResult<String> {
    let seed = parse_label(seed)?;
    Ok(export::patch_to_json(&substitution::supertile(seed, k), include_decorations))
}

/// SVG rendering of the k-th supertile of a seed.
#[pyfunction]
fn supertile_svg(seed: &str, k: u32) -> PyResult<String> {
    let seed = parse_label(seed)?;
    Ok(export::patch_to_svg(&substitution::supertile(seed, k), &export::Style::default()))
}

/// Dominant eigenvalue of the 24×24 substitution count matrix by power
/// iteration: returns (eigenvalue, iterations).
#[pyfunction]
#[pyo3(signature = (tol = 1e-12))]
fn dominant_eigenvalue(tol: f64) -> PyResult<(f64, u32)> {
    substitution::dominant_eigenvalue(&substitution::count_matrix(), tol)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Decoration endpoints of a label on its own support, as float points.
#[pyfunction]
fn decoration_endpoints(label: &str) -> PyResult<((f64, f64), (f64, f64))> {
    let label = parse_label(label)?;
    let (w, h) = label.color.dims();
    let (s, e) = prototiles::decoration_endpoints(label).resolve(&w, &h);
    Ok(((s.0.to_f64(), s.1.to_f64()), (e.0.to_f64(), e.1.to_f64())))
}

/// Evaluate the curve at the rational p/q: returns ((x, y), error_bound)
/// with the centre within error_bound of the true point.
#[pyfunction]
#[pyo3(signature = (p, q, depth = 32))]
fn curve_eval(p: BigInt, q: BigInt, depth: u32) -> PyResult<((f64, f64), f64)> {
    let x = curve::ParamRational::new(p, q).map_err(value_err)?;
    let res = curve::eval_rational(&x, depth);
    Ok((res.center.to_f64(), res.error_bound))
}

/// Parameter whose image lies within √2·φ^(-depth) of the target point.
/// Returns (float value, exact display form).
#[pyfunction]
#[pyo3(signature = (x, y, depth = 24))]
fn curve_preimage(x: f64, y: f64, depth: u32) -> PyResult<(f64, String)> {
    let t = curve::preimage((x, y), depth).map_err(value_err)?;
    Ok((t.to_f64(), t.to_string()))
}

/// Vertices of the k-th approximating polygon as floats, in curve order.
#[pyfunction]
fn polygon_points(k: u32) -> Vec<(f64, f64)> {
    export::polygon(k).points.iter().map(|p| p.to_f64()).collect()
}

/// SVG rendering of the k-th approximating polygon over its partition grid.
#[pyfunction]
fn polygon_svg(k: u32) -> String {
    let grid = curve::partition(k).rects;
    export::polyline_to_svg(&export::polygon(k), Some(&grid), &export::Style::default())
}

/// True iff consecutive level-k rectangles share a positive-length edge.
#[pyfunction]
fn connectedness(k: u32) -> bool {
    curve::connectedness_check(k)
}

/// Number of decoration systems the exhaustive solver finds for a rule
/// variant: "corrected", "printed", or "free" (published rows with free D
/// indices).
#[pyfunction]
fn solve_decoration_count(variant: &str) -> PyResult<usize> {
    let problem = match variant {
        "corrected" => solver::SolverProblem::corrected(),
        "printed" => solver::SolverProblem::printed(),
        "free" => solver::SolverProblem::free_d_indices(),
        other => return Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
    };
    Ok(solver::solve_decorations(&problem).len())
}

/// Run the invariant suite; returns (name, passed, detail) per check.
#[pyfunction]
#[pyo3(signature = (max_depth = 4))]
fn verify(max_depth: u32) -> Vec<(String, bool, String)> {
    fibcurve::verify::run_all(max_depth)
        .into_iter()
        .map(|r| (r.name.to_string(), r.passed, r.detail))
        .collect()
}

#[pymodule]
fn fibcurve_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGoldenInt>()?;
    m.add_function(wrap_pyfunction!(tile_count, m)?)?;
    m.add_function(wrap_pyfunction!(nu_word, m)?)?;
    m.add_function(wrap_pyfunction!(supertile_json, m)?)?;
    m.add_function(wrap_pyfunction!(supertile_svg, m)?)?;
    m.add_function(wrap_pyfunction!(dominant_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(decoration_endpoints, m)?)?;
    m.add_function(wrap_pyfunction!(curve_eval, m)?)?;
    m.add_function(wrap_pyfunction!(curve_preimage, m)?)?;
    m.add_function(wrap_pyfunction!(polygon_points, m)?)?;
    m.add_function(wrap_pyfunction!(polygon_svg, m)?)?;
    m.add_function(wrap_pyfunction!(connectedness, m)?)?;
    m.add_function(wrap_pyfunction!(solve_decoration_count, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
