//! Python bindings for bundlecalc.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use bundlecalc::chern::{euler_characteristic, twist};
use bundlecalc::chow::GradedClass;
use bundlecalc::exactalg::ParamPoly;
use bundlecalc::{claims, cohom, geometry, heisenberg, pencil, stability, Error};

fn integer(p: &ParamPoly) -> PyResult<i64> {
    p.constant_value()
        .filter(|r| r.is_integer())
        .and_then(|r| i64::try_from(&r.to_integer()).ok())
        .ok_or_else(|| PyValueError::new_err(format!("{p} is not a machine integer")))
}

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownClaimId(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// chi(E(a, b)) as an integer.
#[pyfunction]
fn chi(a: i64, b: i64) -> PyResult<i64> {
    let e = geometry::bundle_e();
    let l = GradedClass::combination(e.ring(), [(ParamPoly::int(a), "h1"), (ParamPoly::int(b), "h3")])
        .map_err(py_err)?;
    integer(&euler_characteristic(&twist(&e, &l).map_err(py_err)?))
}

/// chi(E(a, b)) as a polynomial string in a, b.
#[pyfunction]
fn chi_polynomial() -> String {
    geometry::chi_e_twisted().to_string()
}

/// [h^0, ..., h^4] of O(a, b) on P1 x P3.
#[pyfunction]
fn cohom_table(a: i64, b: i64) -> Vec<u64> {
    cohom::line_bundle_table(a, b).dims().to_vec()
}

/// O(a, b) . O(m, n)^3.
#[pyfunction]
fn slope(m: i64, n: i64, a: i64, b: i64) -> PyResult<i64> {
    let pol = stability::Polarization::new(m, n).map_err(py_err)?;
    integer(&stability::slope_dot(a, b, pol))
}

/// "stable", "semistable_not_stable" or "unstable" for the polarization O(m, n).
#[pyfunction]
fn stability_of(m: i64, n: i64) -> PyResult<String> {
    let pol = stability::Polarization::new(m, n).map_err(py_err)?;
    Ok(stability::stability_decide(pol).to_string())
}

/// (order, commutator order, abelianization invariants) of the group generated by sigma and tau.
#[pyfunction]
fn heisenberg_structure() -> PyResult<(usize, usize, Vec<u64>)> {
    let g = heisenberg::group_closure(&[heisenberg::sigma(), heisenberg::tau()], heisenberg::DEFAULT_CAP)
        .map_err(py_err)?;
    let (comm, ab) = heisenberg::commutator_structure(&g).map_err(py_err)?;
    Ok((g.order(), comm, ab.invariants().to_vec()))
}

#[pyfunction]
fn claim_ids() -> Vec<&'static str> {
    claims::registry().iter().map(|c| c.id).collect()
}

/// Runs claims (all if `ids` is empty) and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (ids = Vec::new(), timing = false))]
fn verify(ids: Vec<String>, timing: bool) -> PyResult<String> {
    Ok(claims::verify(&ids, timing).map_err(py_err)?.to_json())
}

/// A pencil of quadrics in the variables l, m.
#[pyclass(name = "Pencil", frozen)]
struct PyPencil(pencil::QuadricPencil);

#[pymethods]
impl PyPencil {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        pencil::parse_pencil(text).map(PyPencil).map_err(py_err)
    }

    /// The linear normal form with parameters a0, a1, a2.
    #[staticmethod]
    fn linear_normal_form(a0: i64, a1: i64, a2: i64) -> Self {
        let [a0, a1, a2] = [a0, a1, a2].map(bundlecalc::exactalg::rat);
        PyPencil(pencil::linear_normal_form(&a0, &a1, &a2))
    }

    #[staticmethod]
    fn quartic_witness() -> Self {
        PyPencil(pencil::quartic_witness())
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn generic_rank(&self) -> usize {
        pencil::generic_rank(&self.0)
    }

    fn rank_at(&self, l: i64, m: i64) -> PyResult<usize> {
        let [l, m] = [l, m].map(bundlecalc::exactalg::rat);
        pencil::rank_at(&self.0, &l, &m).map_err(py_err)
    }

    /// Number of distinct points where the rank drops to 1, or None if it drops everywhere.
    fn rank_one_points(&self) -> PyResult<Option<usize>> {
        Ok(pencil::rank1_parameter_count(&self.0).map_err(py_err)?.distinct())
    }

    /// Whether the singular line is the same for every member.
    fn singular_line_constant(&self) -> PyResult<bool> {
        Ok(pencil::singular_line_family(&self.0).map_err(py_err)?.1)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pymodule]
fn pybundlecalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(chi_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(cohom_table, m)?)?;
    m.add_function(wrap_pyfunction!(slope, m)?)?;
    m.add_function(wrap_pyfunction!(stability_of, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_structure, m)?)?;
    m.add_function(wrap_pyfunction!(claim_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_class::<PyPencil>()?;
    Ok(())
}
