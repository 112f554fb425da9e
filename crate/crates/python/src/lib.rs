//! Python bindings: model construction, inertia, Chow rings, orbifold
//! tables and the verifiers. Structured results come back as plain Python
//! lists and dicts; rationals are `"p/q"` strings, integers are Python ints.

use hypertoric_core::cli;
use hypertoric_core::exact::{parse_rational, snf as core_snf, IntMatrix};
use hypertoric_core::inertia::{inertia_components, TorsionElement};
use hypertoric_core::model::{check_generic as core_check_generic, Character, StackModel, WeightMatrix};
use hypertoric_core::orbifold::{self, OrbifoldChow};
use hypertoric_core::verifiers::{self, LocalModelSRE};
use hypertoric_core::GradedClass;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

fn err(e: hypertoric_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let loads = py.import("json")?.getattr("loads")?;
    Ok(loads.call1((v.to_string(),))?.unbind())
}

fn weight_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<WeightMatrix> {
    WeightMatrix::new(IntMatrix::from_rows(&rows).map_err(err)?).map_err(err)
}

fn element(v: Vec<String>) -> PyResult<TorsionElement> {
    let entries = v
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(TorsionElement::from_rationals(entries))
}

/// A Lawrence, hypertoric or direct toric stack.
#[pyclass(name = "Model", module = "hypertoric", frozen)]
struct PyModel {
    inner: StackModel,
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn lawrence(a: Vec<Vec<BigInt>>, theta: Vec<BigInt>) -> PyResult<Self> {
        let inner = StackModel::lawrence(weight_matrix(a)?, Character(theta)).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn hypertoric(a: Vec<Vec<BigInt>>, theta: Vec<BigInt>) -> PyResult<Self> {
        let inner = StackModel::hypertoric(weight_matrix(a)?, Character(theta)).map_err(err)?;
        Ok(Self { inner })
    }

    /// `unstable` lists one-based coordinate indices.
    #[staticmethod]
    fn direct(a: Vec<Vec<BigInt>>, unstable: Vec<Vec<usize>>) -> PyResult<Self> {
        if unstable.iter().flatten().any(|&c| c == 0) {
            return Err(PyValueError::new_err("unstable coordinates are one-based"));
        }
        let sets = unstable
            .into_iter()
            .map(|s| s.into_iter().map(|c| c - 1).collect())
            .collect();
        let inner = StackModel::direct(weight_matrix(a)?, sets).map_err(err)?;
        Ok(Self { inner })
    }

    /// Same schema as the CLI model files.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: cli::parse_model(text).map_err(err)?,
        })
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.kind.to_string()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn default_truncation(&self) -> usize {
        self.inner.default_truncation()
    }

    fn analyze(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &cli::analysis_value(&self.inner))
    }

    fn inertia(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let comps = inertia_components(&self.inner).map_err(err)?;
        to_py(py, &cli::inertia_value(&comps))
    }

    #[pyo3(signature = (degree=None))]
    fn chow_ring(&self, py: Python<'_>, degree: Option<usize>) -> PyResult<Py<PyAny>> {
        let d = degree.unwrap_or_else(|| self.inner.default_truncation());
        to_py(py, &cli::chowring_value(&self.inner, d).map_err(err)?)
    }

    #[pyo3(signature = (degree=None))]
    fn orbifold_table(&self, py: Python<'_>, degree: Option<usize>) -> PyResult<Py<PyAny>> {
        let d = degree.unwrap_or_else(|| self.inner.default_truncation());
        let table = orbifold::orbifold_table(&self.inner, d).map_err(err)?;
        to_py(py, &cli::table_value(&table))
    }

    /// `l_{g1} ⋆ l_{g2}` as `(target, poly)`, or `None` when the product is
    /// zero for lack of a double-inertia component.
    #[pyo3(signature = (g1, g2, degree=None))]
    fn star(&self, g1: Vec<String>, g2: Vec<String>, degree: Option<usize>) -> PyResult<Option<(Vec<String>, String)>> {
        let d = degree.unwrap_or_else(|| self.inner.default_truncation());
        let chow = OrbifoldChow::new(&self.inner, d).map_err(err)?;
        let index = |g: Vec<String>| -> PyResult<usize> {
            let g = element(g)?;
            chow.component_index(&g)
                .ok_or_else(|| PyValueError::new_err(format!("{g} is not an inertia component")))
        };
        let nvars = chow.nvars();
        let (a, b) = (
            GradedClass::unit(index(g1)?, nvars),
            GradedClass::unit(index(g2)?, nvars),
        );
        let Some(p) = chow.star(&a, &b).map_err(err)? else {
            return Ok(None);
        };
        let normal = chow.presentations[p.component]
            .normal_form(&p.poly, p.degree)
            .map_err(err)?;
        Ok(Some((
            chow.components[p.component].g.v().to_strings(),
            normal.to_string(),
        )))
    }

    /// Unit, commutativity, associativity and age-grading checks.
    #[pyo3(signature = (degree=4))]
    fn check_star_laws(&self, py: Python<'_>, degree: usize) -> PyResult<Py<PyAny>> {
        let chow = OrbifoldChow::new(&self.inner, degree).map_err(err)?;
        let r = orbifold::check_star_laws(&chow).map_err(err)?;
        to_py(
            py,
            &json!({
                "pass": r.passed(),
                "unit": r.unit_checks,
                "commutativity": r.commutativity_checks,
                "associativity": r.associativity_checks,
                "age": r.age_checks,
                "skipped": r.skipped,
                "failures": r.failures,
            }),
        )
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(kind={}, d={}, n={})",
            self.inner.kind,
            self.inner.d(),
            self.inner.n()
        )
    }
}

type Rows = Vec<Vec<BigInt>>;

/// `(U, D, V)` with `U·M·V = D`.
#[pyfunction]
fn snf(m: Rows) -> PyResult<(Rows, Rows, Rows)> {
    let r = core_snf(&IntMatrix::from_rows(&m).map_err(err)?);
    Ok((r.u.to_rows(), r.d.to_rows(), r.v.to_rows()))
}

/// `None` if generic, otherwise the one-based `(basis, column)` witness.
#[pyfunction]
fn check_generic(a: Vec<Vec<BigInt>>, theta: Vec<BigInt>) -> PyResult<Option<(Vec<usize>, usize)>> {
    let m = weight_matrix(a)?;
    let r = core_check_generic(m.matrix(), &Character(theta)).map_err(err)?;
    Ok(r.witness.map(|(b, c)| (b.iter().map(|i| i + 1).collect(), c + 1)))
}

#[pyfunction]
fn verify_obstruction_pullback(py: Python<'_>, a: Vec<Vec<BigInt>>, theta: Vec<BigInt>) -> PyResult<Py<PyAny>> {
    let r = orbifold::verify_obstruction_pullback(&weight_matrix(a)?, &Character(theta)).map_err(err)?;
    to_py(py, &cli::report_value(&r))
}

#[pyfunction]
fn verify_orbifold_iso(py: Python<'_>, a: Vec<Vec<BigInt>>, theta: Vec<BigInt>, degree: usize) -> PyResult<Py<PyAny>> {
    let r = orbifold::verify_orbifold_iso(&weight_matrix(a)?, &Character(theta), degree).map_err(err)?;
    to_py(py, &cli::report_value(&r))
}

#[pyfunction]
#[pyo3(signature = (a, theta, samples=100, seed=0))]
fn verify_charts(
    py: Python<'_>,
    a: Vec<Vec<BigInt>>,
    theta: Vec<BigInt>,
    samples: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let r = verifiers::verify_charts(&weight_matrix(a)?, &Character(theta), samples, seed).map_err(err)?;
    to_py(
        py,
        &json!({
            "pass": r.passed(),
            "charts": r.charts.iter().map(|c| c.sigma.to_string()).collect::<Vec<_>>(),
            "roundtrips": r.roundtrips,
            "failures": r.failures,
        }),
    )
}

/// Generators are lists of `"p/q"` strings; weights are integer vectors.
#[pyfunction]
fn sre_condition_iii(generators: Vec<Vec<String>>, normal_weights: Vec<Vec<BigInt>>) -> PyResult<bool> {
    let generators = generators.into_iter().map(element).collect::<PyResult<Vec<_>>>()?;
    Ok(verifiers::sre_condition_iii(&LocalModelSRE {
        generators,
        normal_weights,
    }))
}

#[pymodule]
fn hypertoric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(check_generic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_obstruction_pullback, m)?)?;
    m.add_function(wrap_pyfunction!(verify_orbifold_iso, m)?)?;
    m.add_function(wrap_pyfunction!(verify_charts, m)?)?;
    m.add_function(wrap_pyfunction!(sre_condition_iii, m)?)?;
    Ok(())
}
