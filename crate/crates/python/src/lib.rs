//! Python bindings: `import spgauge`.
//!
//! Integers cross the boundary as Python `int` and rationals as
//! `fractions.Fraction`, so nothing is ever rounded.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sp_gauge::gauge::{self, LieFamily, Outcome};
use sp_gauge::lattice::{self, IntMatrix};
use sp_gauge::{arith, chdata, cli, phi, series, Backend, Rational};

fn err(e: sp_gauge::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn backend(name: &str) -> PyResult<Backend> {
    name.parse().map_err(err)
}

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    let nrows = rows.len();
    IntMatrix::from_entries(nrows, cols, rows.into_iter().flatten().collect()).map_err(err)
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.entries()
        .chunks(m.cols().max(1))
        .take(m.rows())
        .map(<[BigInt]>::to_vec)
        .collect()
}

#[pyclass(frozen, get_all, skip_from_py_object, name = "PhiResult")]
#[derive(Clone)]
struct PyPhiResult {
    n: u32,
    lower_gen: BigInt,
    upper_gens: Vec<BigInt>,
    pinned_order: Option<BigInt>,
    backend: String,
}

#[pymethods]
impl PyPhiResult {
    fn __repr__(&self) -> String {
        format!(
            "PhiResult(n={}, lower_gen={}, upper_gens={:?}, pinned_order={}, backend={:?})",
            self.n,
            self.lower_gen,
            self.upper_gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
            self.pinned_order
                .as_ref()
                .map_or_else(|| "None".to_string(), ToString::to_string),
            self.backend
        )
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, name = "Verdict")]
#[derive(Clone)]
struct PyVerdict {
    outcome: String,
    criterion: String,
    invariant_values: Option<(BigInt, BigInt)>,
    guards: Vec<(String, bool)>,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn equivalent(&self) -> Option<bool> {
        match self.outcome.as_str() {
            "equivalent" => Some(true),
            "distinct" => Some(false),
            _ => None,
        }
    }

    fn __repr__(&self) -> String {
        format!("Verdict(outcome={:?}, criterion={:?})", self.outcome, self.criterion)
    }
}

impl From<gauge::Verdict> for PyVerdict {
    fn from(v: gauge::Verdict) -> Self {
        debug_assert!(v.outcome != Outcome::NotDetermined || v.invariant_values.is_none());
        Self {
            outcome: v.outcome.to_string(),
            criterion: v.criterion,
            invariant_values: v.invariant_values,
            guards: v
                .guards_checked
                .into_iter()
                .map(|g| (g.condition, g.passed))
                .collect(),
        }
    }
}

#[pyfunction]
fn gcd_nonneg(a: BigInt, b: BigInt) -> BigInt {
    arith::gcd_nonneg(&a, &b)
}

#[pyfunction]
fn p_part(a: BigInt, p: u64) -> PyResult<BigInt> {
    arith::p_part(&a, p).map_err(err)
}

#[pyfunction]
fn frac_gcd(values: Vec<Rational>) -> PyResult<Rational> {
    arith::frac_gcd(&values).map_err(err)
}

#[pyfunction]
fn surjections(m: u32, k: u32) -> BigInt {
    arith::surjections(m, k)
}

#[pyfunction]
fn exp_minus_one_pow(k: u32, max_deg: usize) -> Vec<Rational> {
    series::exp_minus_one_pow(k, max_deg).coeffs().to_vec()
}

#[pyfunction]
#[pyo3(signature = (n, k, backend = "series"))]
fn top_coeff(n: u32, k: u32, backend: &str) -> PyResult<Rational> {
    series::top_coeff(n, k, self::backend(backend)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, backend = "series"))]
fn phi_generator_tops(n: u32, backend: &str) -> PyResult<Vec<Rational>> {
    chdata::phi_generator_tops(n, self::backend(backend)?).map_err(err)
}

/// Generator tables as a JSON string.
#[pyfunction]
#[pyo3(signature = (n = None))]
fn generator_tables_json(n: Option<u32>) -> PyResult<String> {
    Ok(chdata::tables_json(n).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (n, backend = "series"))]
fn phi_image(n: u32, backend: &str) -> PyResult<PyPhiResult> {
    let r = phi::phi_image(n, self::backend(backend)?).map_err(err)?;
    Ok(PyPhiResult {
        n: r.n,
        lower_gen: r.lower_gen,
        upper_gens: r.upper_gens,
        pinned_order: r.pinned_order,
        backend: r.backend.to_string(),
    })
}

#[pyfunction]
fn samelson_order(n: u32) -> PyResult<BigInt> {
    phi::samelson_order_eps_iota(n).map_err(err)
}

#[pyfunction]
fn samelson_p_part_full(n: u32, p: u64) -> PyResult<BigInt> {
    phi::samelson_p_part_full(n, p).map_err(err)
}

fn bundle(n: u32, k: i64) -> PyResult<gauge::Bundle> {
    gauge::Bundle::new(n, k).map_err(err)
}

#[pyfunction]
fn sutherland_invariant(n: u32, k: i64) -> PyResult<BigInt> {
    Ok(gauge::sutherland_invariant(bundle(n, k)?))
}

#[pyfunction]
fn refined_invariant(n: u32, k: i64) -> PyResult<BigInt> {
    Ok(gauge::refined_invariant(bundle(n, k)?))
}

#[pyfunction]
fn mapping_group_sp_n(n: u32) -> PyResult<BigInt> {
    gauge::mapping_group_sp_n(n).map_err(err)
}

#[pyfunction]
fn im_delta_gen(n: u32, k: i64) -> PyResult<BigInt> {
    gauge::im_delta_gen(n, k).map_err(err)
}

/// `(computed, closed_form)`.
#[pyfunction]
fn q2_mapping_invariant(n: u32, k: i64) -> PyResult<(BigInt, BigInt)> {
    let q = gauge::q2_mapping_invariant(n, k).map_err(err)?;
    Ok((q.computed, q.claimed))
}

/// `(computed, closed_form)`.
#[pyfunction]
fn im_partial_order(n: u32, k: i64) -> PyResult<(BigInt, BigInt)> {
    let r = gauge::im_partial_order(n, k).map_err(err)?;
    Ok((r.computed, r.printed))
}

#[pyfunction]
fn decide_local(n: u32, k: i64, l: i64, p: u64) -> PyResult<PyVerdict> {
    gauge::decide_local(n, k, l, p).map(Into::into).map_err(err)
}

#[pyfunction]
fn decide_spin(m: u32, k: i64, l: i64, p: u64) -> PyResult<PyVerdict> {
    gauge::decide_spin(m, k, l, p).map(Into::into).map_err(err)
}

#[pyfunction]
fn pi_4n1_order(n: u32, k: i64, p: u64) -> PyResult<BigInt> {
    gauge::pi_4n1_order(n, k, p).map_err(err)
}

#[pyfunction]
fn retractible(family: &str, rank: u32, p: u64) -> PyResult<bool> {
    let family: LieFamily = family.parse().map_err(err)?;
    Ok(gauge::retractible(family, rank, p))
}

/// `(U, D, V)` with `U A V = D`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn smith_normal_form(
    rows: Vec<Vec<BigInt>>,
) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let s = lattice::smith_normal_form(&matrix(rows)?);
    Ok((to_rows(&s.u), to_rows(&s.d), to_rows(&s.v)))
}

/// `(invariant_factors, free_rank)` of `Z^rows / column span`.
#[pyfunction]
fn cokernel(rows: Vec<Vec<BigInt>>) -> PyResult<(Vec<BigInt>, usize)> {
    let g = lattice::cokernel(&matrix(rows)?);
    Ok((g.invariant_factors, g.free_rank))
}

/// `None` when the class has infinite order.
#[pyfunction]
fn element_order_in_coker(rows: Vec<Vec<BigInt>>, v: Vec<BigInt>) -> PyResult<Option<BigInt>> {
    Ok(lattice::element_order_in_coker(&matrix(rows)?, &v)
        .map_err(err)?
        .finite())
}

/// Runs the verification sweep and returns the report as a JSON string.
#[pyfunction]
fn verify(max_n: u32) -> PyResult<String> {
    Ok(cli::verify_sweep(max_n).map_err(err)?.to_json())
}

#[pymodule]
fn spgauge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPhiResult>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(gcd_nonneg, m)?)?;
    m.add_function(wrap_pyfunction!(p_part, m)?)?;
    m.add_function(wrap_pyfunction!(frac_gcd, m)?)?;
    m.add_function(wrap_pyfunction!(surjections, m)?)?;
    m.add_function(wrap_pyfunction!(exp_minus_one_pow, m)?)?;
    m.add_function(wrap_pyfunction!(top_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(phi_generator_tops, m)?)?;
    m.add_function(wrap_pyfunction!(generator_tables_json, m)?)?;
    m.add_function(wrap_pyfunction!(phi_image, m)?)?;
    m.add_function(wrap_pyfunction!(samelson_order, m)?)?;
    m.add_function(wrap_pyfunction!(samelson_p_part_full, m)?)?;
    m.add_function(wrap_pyfunction!(sutherland_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(refined_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(mapping_group_sp_n, m)?)?;
    m.add_function(wrap_pyfunction!(im_delta_gen, m)?)?;
    m.add_function(wrap_pyfunction!(q2_mapping_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(im_partial_order, m)?)?;
    m.add_function(wrap_pyfunction!(decide_local, m)?)?;
    m.add_function(wrap_pyfunction!(decide_spin, m)?)?;
    m.add_function(wrap_pyfunction!(pi_4n1_order, m)?)?;
    m.add_function(wrap_pyfunction!(retractible, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(cokernel, m)?)?;
    m.add_function(wrap_pyfunction!(element_order_in_coker, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
