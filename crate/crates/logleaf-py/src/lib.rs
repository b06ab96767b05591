//! Python bindings: the exact lattice layer, residue algebra, foliation
//! operations, and the numeric period oracle.
//!
//! Exact integers cross the boundary as Python ints, rationals as strings
//! (or ints), complex values as Python complex. Structured reports come back
//! as plain dicts shaped exactly like the CLI's JSON output.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};

use logleaf::document::{parse_rational, parse_spec_str, spec_to_document};
use logleaf::foliation::standard_assumptions;
use logleaf::report::{
    classify_period_error, ConnectivityBody, ConstraintBody, ErrorClass, PeriodsBody,
    RelationsBody, ResonanceBody, SectionBody,
};
use logleaf::{
    FoliationError, FoliationSpec, Lattice, PeriodError, ResidueError, SmithDecomposition,
};

fn foliation_err(e: FoliationError) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn period_err(e: PeriodError) -> PyErr {
    match classify_period_error(&e) {
        ErrorClass::Validation => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn residue_err(e: ResidueError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize_to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value =
        serde_json::to_value(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

/// Rational argument: a Python int or a string like "-1/2".
#[derive(FromPyObject)]
enum RationalArg {
    Int(i64),
    Text(String),
}

impl RationalArg {
    fn to_rational(&self) -> PyResult<BigRational> {
        match self {
            RationalArg::Int(n) => Ok(BigRational::from(BigInt::from(*n))),
            RationalArg::Text(s) => parse_rational(s).ok_or_else(|| {
                PyValueError::new_err(format!(
                    "expected an integer or \"p/q\" string, got {s:?}"
                ))
            }),
        }
    }
}

#[pyclass(name = "IntegerMatrix", skip_from_py_object)]
#[derive(Clone)]
struct PyIntegerMatrix {
    inner: logleaf::IntegerMatrix,
}

#[pymethods]
impl PyIntegerMatrix {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PyValueError::new_err("rows must all have the same length"));
        }
        Ok(PyIntegerMatrix {
            inner: logleaf::IntegerMatrix::from_rows(rows),
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyIntegerMatrix {
            inner: logleaf::IntegerMatrix::identity(n),
        }
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.inner.to_rows()
    }

    /// Returns (H, U) with U unimodular, U*A = H, H in row Hermite form.
    fn hermite_normal_form(&self) -> (PyIntegerMatrix, PyIntegerMatrix) {
        let (h, u) = logleaf::hermite_normal_form(&self.inner);
        (PyIntegerMatrix { inner: h }, PyIntegerMatrix { inner: u })
    }

    fn smith_normal_form(&self) -> PySmithDecomposition {
        PySmithDecomposition {
            inner: logleaf::smith_normal_form(&self.inner),
        }
    }

    /// The lattice of integer row vectors m with m*A = 0.
    fn left_kernel(&self) -> PyLattice {
        PyLattice {
            inner: logleaf::left_kernel(&self.inner),
        }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("IntegerMatrix({}x{})", self.inner.rows(), self.inner.cols())
    }
}

#[pyclass(name = "SmithDecomposition")]
struct PySmithDecomposition {
    inner: SmithDecomposition,
}

#[pymethods]
impl PySmithDecomposition {
    #[getter]
    fn u(&self) -> PyIntegerMatrix {
        PyIntegerMatrix {
            inner: self.inner.u.clone(),
        }
    }

    #[getter]
    fn s(&self) -> PyIntegerMatrix {
        PyIntegerMatrix {
            inner: self.inner.s.clone(),
        }
    }

    #[getter]
    fn v(&self) -> PyIntegerMatrix {
        PyIntegerMatrix {
            inner: self.inner.v.clone(),
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        self.inner.diagonal()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn torsion_factors(&self) -> Vec<BigInt> {
        self.inner.torsion_factors()
    }

    fn __repr__(&self) -> String {
        format!("SmithDecomposition(diagonal={:?})", self.inner.diagonal())
    }
}

#[pyclass(name = "Lattice", skip_from_py_object)]
#[derive(Clone)]
struct PyLattice {
    inner: Lattice,
}

impl PyLattice {
    fn check_len(&self, v: &[BigInt]) -> PyResult<()> {
        if v.len() != self.inner.ambient_rank() {
            return Err(PyValueError::new_err(format!(
                "vector length {} does not match ambient rank {}",
                v.len(),
                self.inner.ambient_rank()
            )));
        }
        Ok(())
    }
}

#[pymethods]
impl PyLattice {
    #[staticmethod]
    fn from_generators(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> PyResult<Self> {
        if generators.iter().any(|g| g.len() != ambient_rank) {
            return Err(PyValueError::new_err(
                "every generator must have length ambient_rank",
            ));
        }
        Ok(PyLattice {
            inner: Lattice::from_generators(ambient_rank, generators),
        })
    }

    #[staticmethod]
    fn full(ambient_rank: usize) -> Self {
        PyLattice {
            inner: Lattice::full(ambient_rank),
        }
    }

    #[staticmethod]
    fn zero(ambient_rank: usize) -> Self {
        PyLattice {
            inner: Lattice::zero(ambient_rank),
        }
    }

    #[staticmethod]
    fn spanned_by(vector: Vec<BigInt>) -> Self {
        PyLattice {
            inner: Lattice::spanned_by(vector),
        }
    }

    #[getter]
    fn ambient_rank(&self) -> usize {
        self.inner.ambient_rank()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Canonical Hermite-form basis rows.
    fn basis(&self) -> Vec<Vec<BigInt>> {
        self.inner.basis().to_vec()
    }

    fn contains(&self, vector: Vec<BigInt>) -> PyResult<bool> {
        self.check_len(&vector)?;
        Ok(self.inner.contains(&vector))
    }

    fn coordinates_of(&self, vector: Vec<BigInt>) -> PyResult<Option<Vec<BigInt>>> {
        self.check_len(&vector)?;
        Ok(self.inner.coordinates_of(&vector))
    }

    /// Invariants of self / sub as a finitely generated abelian group.
    fn quotient_by(&self, sub: &PyLattice) -> PyResult<PyAbelianGroup> {
        if sub.inner.ambient_rank() != self.inner.ambient_rank() {
            return Err(PyValueError::new_err("ambient rank mismatch"));
        }
        self.inner
            .quotient_by(&sub.inner)
            .map(|g| PyAbelianGroup { inner: g })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Lattice(rank {} in Z^{})",
            self.inner.rank(),
            self.inner.ambient_rank()
        )
    }
}

#[pyclass(name = "AbelianGroupInvariants", skip_from_py_object)]
#[derive(Clone)]
struct PyAbelianGroup {
    inner: logleaf::AbelianGroupInvariants,
}

#[pymethods]
impl PyAbelianGroup {
    #[new]
    #[pyo3(signature = (free_rank, torsion=vec![]))]
    fn new(free_rank: usize, torsion: Vec<BigInt>) -> PyResult<Self> {
        for (i, t) in torsion.iter().enumerate() {
            if t < &BigInt::from(2) {
                return Err(PyValueError::new_err("invariant factors are at least 2"));
            }
            if i > 0 && !(t % &torsion[i - 1]).is_zero() {
                return Err(PyValueError::new_err(
                    "invariant factors must form a divisor chain",
                ));
            }
        }
        Ok(PyAbelianGroup {
            inner: logleaf::AbelianGroupInvariants::new(free_rank, torsion),
        })
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.inner.free_rank()
    }

    #[getter]
    fn torsion(&self) -> Vec<BigInt> {
        self.inner.torsion().to_vec()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroupInvariants({})", self.inner)
    }
}

#[pyclass(name = "SymbolBasis", from_py_object)]
#[derive(Clone)]
struct PySymbolBasis {
    inner: Arc<logleaf::SymbolBasis>,
}

#[pymethods]
impl PySymbolBasis {
    #[new]
    #[pyo3(signature = (symbols, numeric=None))]
    fn new(
        symbols: Vec<String>,
        numeric: Option<BTreeMap<String, Complex64>>,
    ) -> PyResult<Self> {
        let basis = match numeric {
            None => logleaf::SymbolBasis::new(symbols),
            Some(map) => logleaf::SymbolBasis::with_numeric(symbols, map),
        }
        .map_err(residue_err)?;
        Ok(PySymbolBasis {
            inner: Arc::new(basis),
        })
    }

    #[getter]
    fn symbols(&self) -> Vec<String> {
        self.inner.symbols().to_vec()
    }

    #[getter]
    fn has_numeric_values(&self) -> bool {
        self.inner.has_numeric_values()
    }

    fn __repr__(&self) -> String {
        format!("SymbolBasis({:?})", self.inner.symbols())
    }
}

#[pyclass(name = "ResidueVector", from_py_object)]
#[derive(Clone)]
struct PyResidueVector {
    inner: logleaf::ResidueVector,
}

#[pymethods]
impl PyResidueVector {
    /// Builds a residue from a {symbol: rational} mapping; rationals are
    /// ints or strings like "-1/2".
    #[new]
    fn new(basis: PySymbolBasis, coords: BTreeMap<String, RationalArg>) -> PyResult<Self> {
        let mut parsed = BTreeMap::new();
        for (k, v) in &coords {
            parsed.insert(k.clone(), v.to_rational()?);
        }
        logleaf::ResidueVector::from_map(basis.inner.clone(), &parsed)
            .map(|inner| PyResidueVector { inner })
            .map_err(residue_err)
    }

    #[getter]
    fn coords(&self) -> Vec<String> {
        self.inner.coords().iter().map(|c| c.to_string()).collect()
    }

    fn numeric_value(&self) -> Option<Complex64> {
        self.inner.numeric_value()
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self
            .inner
            .basis()
            .symbols()
            .iter()
            .zip(self.inner.coords())
            .map(|(s, c)| format!("{c}*{s}"))
            .collect();
        format!("ResidueVector({})", parts.join(" + "))
    }
}

#[pyclass(name = "FoliationSpec", skip_from_py_object)]
#[derive(Clone)]
struct PyFoliationSpec {
    inner: FoliationSpec,
    warnings: Vec<String>,
}

#[pymethods]
impl PyFoliationSpec {
    /// Parses the JSON document format used by the CLI.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let parsed = parse_spec_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyFoliationSpec {
            inner: parsed.spec,
            warnings: parsed.warnings,
        })
    }

    fn to_json(&self) -> String {
        logleaf::document::document_to_string(&spec_to_document(&self.inner))
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.warnings.clone()
    }

    #[getter]
    fn degrees(&self) -> Vec<u64> {
        self.inner.degrees()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient().dim()
    }

    fn assumptions(&self) -> Vec<String> {
        standard_assumptions()
    }

    fn relation_lattice(&self) -> PyResult<PyLattice> {
        self.inner
            .relation_lattice()
            .map(|inner| PyLattice { inner })
            .map_err(foliation_err)
    }

    fn complement_pi1(&self) -> PyResult<PyAbelianGroup> {
        self.inner
            .complement_pi1()
            .map(|inner| PyAbelianGroup { inner })
            .map_err(foliation_err)
    }

    fn leaf_pi1(&self) -> PyResult<PyAbelianGroup> {
        self.inner
            .leaf_pi1()
            .map(|inner| PyAbelianGroup { inner })
            .map_err(foliation_err)
    }

    fn resonance_classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = self.inner.resonance_classify().map_err(foliation_err)?;
        serialize_to_py(py, &ResonanceBody::from_resonance(&r))
    }

    fn residue_theorem_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let outcome = self.inner.residue_constraint().map_err(foliation_err)?;
        serialize_to_py(py, &ConstraintBody::from_outcome(&outcome))
    }

    fn connectivity_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = self.inner.connectivity_report().map_err(foliation_err)?;
        let mut value = serde_json::to_value(ConnectivityBody::from_report(&report))
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let obj = value.as_object_mut().expect("connectivity body is an object");
        obj.insert("assumptions".into(), serde_json::json!(report.assumptions));
        obj.insert("warnings".into(), serde_json::json!(report.warnings));
        json_to_py(py, &value)
    }

    fn hyperplane_section_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = self
            .inner
            .hyperplane_section_report()
            .map_err(foliation_err)?;
        serialize_to_py(py, &SectionBody::from_report(&report))
    }

    /// Loop-integral verification of every meridian on a generic line.
    #[pyo3(signature = (tolerance=1e-6, seed=0, samples=1024))]
    fn verify_meridians<'py>(
        &self,
        py: Python<'py>,
        tolerance: f64,
        seed: u64,
        samples: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = logleaf::periods::verify_meridians(&self.inner, tolerance, seed, samples)
            .map_err(period_err)?;
        serialize_to_py(py, &PeriodsBody::from_report(&report))
    }

    fn __repr__(&self) -> String {
        format!(
            "FoliationSpec(dim {}, {} components)",
            self.inner.ambient().dim(),
            self.inner.components().len()
        )
    }
}

#[pyfunction]
fn parse_spec(text: &str) -> PyResult<PyFoliationSpec> {
    PyFoliationSpec::from_json(text)
}

#[pyfunction]
fn relation_lattice(residues: Vec<PyResidueVector>) -> PyResult<PyLattice> {
    let inner: Vec<logleaf::ResidueVector> = residues.into_iter().map(|r| r.inner).collect();
    logleaf::relation_lattice(&inner)
        .map(|inner| PyLattice { inner })
        .map_err(residue_err)
}

#[pyfunction]
fn residue_theorem_check<'py>(
    py: Python<'py>,
    degrees: Vec<u64>,
    residues: Vec<PyResidueVector>,
) -> PyResult<Bound<'py, PyAny>> {
    let inner: Vec<logleaf::ResidueVector> = residues.into_iter().map(|r| r.inner).collect();
    let outcome = logleaf::residue_theorem_check(&degrees, &inner).map_err(residue_err)?;
    serialize_to_py(py, &ConstraintBody::from_outcome(&outcome))
}

/// Heuristic LLL-based scan for integer relations among complex values.
#[pyfunction]
#[pyo3(signature = (values, height_bound=1_000_000, epsilon=None))]
fn numeric_relation_candidates<'py>(
    py: Python<'py>,
    values: Vec<Complex64>,
    height_bound: u64,
    epsilon: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let eps = epsilon.unwrap_or_else(|| logleaf::relations::default_epsilon(&values));
    let scan = logleaf::numeric_relation_candidates(&values, height_bound, eps)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    serialize_to_py(py, &RelationsBody::from_scan(&scan))
}

/// Integrates the pulled-back form along a polyline on the exponential cover
/// of a coordinate-hyperplane arrangement and checks the linear closed form.
#[pyfunction]
#[pyo3(signature = (dim, residues, path, tolerance=1e-8, segments_per_edge=256))]
fn explicit_cover_check<'py>(
    py: Python<'py>,
    dim: usize,
    residues: Vec<Complex64>,
    path: Vec<Vec<Complex64>>,
    tolerance: f64,
    segments_per_edge: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let report =
        logleaf::explicit_cover_check(dim, &residues, &path, tolerance, segments_per_edge)
            .map_err(period_err)?;
    let value = serde_json::json!({
        "value": [report.value.re, report.value.im],
        "expected": [report.expected.re, report.expected.im],
        "abs_error": report.abs_error,
        "tolerance": report.tolerance,
        "segments_per_edge": report.segments_per_edge,
    });
    json_to_py(py, &value)
}

#[pymodule]
fn logleaf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyIntegerMatrix>()?;
    m.add_class::<PySmithDecomposition>()?;
    m.add_class::<PyLattice>()?;
    m.add_class::<PyAbelianGroup>()?;
    m.add_class::<PySymbolBasis>()?;
    m.add_class::<PyResidueVector>()?;
    m.add_class::<PyFoliationSpec>()?;
    m.add_function(wrap_pyfunction!(parse_spec, m)?)?;
    m.add_function(wrap_pyfunction!(relation_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(residue_theorem_check, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_relation_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(explicit_cover_check, m)?)?;
    Ok(())
}
