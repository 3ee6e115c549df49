//! Python bindings for the entropy-bracket library.
//!
//! Build with `cargo build -p entrobound-py --release`; the resulting
//! cdylib imports as the `entrobound_py` module (see python/smoke_test.py).

// the #[pyfunction] expansion converts PyErr into PyErr under abi3
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use entrobound::{Distribution, ParametricFamily, SigmaParam};

fn to_py_err(err: entrobound::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn sigma(value: f64) -> PyResult<SigmaParam> {
    SigmaParam::new(value).map_err(to_py_err)
}

fn dist(probs: Vec<f64>) -> PyResult<Distribution> {
    Distribution::new(probs).map_err(to_py_err)
}

fn family(kind: &str, parameter: f64) -> PyResult<ParametricFamily> {
    match kind {
        "geometric" => ParametricFamily::geometric(parameter).map_err(to_py_err),
        "zipf" => ParametricFamily::zipf(parameter).map_err(to_py_err),
        other => Err(PyValueError::new_err(format!(
            "unknown family kind {other:?} (expected \"geometric\" or \"zipf\")"
        ))),
    }
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<entrobound::DensityMatrix> {
    entrobound::validate_density_matrix(&rows).map_err(to_py_err)
}

/// The tight constant C(sigma) = 1/(ln 2 (1 - sigma)).
#[pyfunction]
fn optimal_constant(sigma_value: f64) -> PyResult<f64> {
    Ok(sigma(sigma_value)?.constant())
}

#[pyfunction]
fn neg_log_lower(x: f64, sigma_value: f64) -> PyResult<f64> {
    entrobound::neg_log_lower(x, sigma(sigma_value)?).map_err(to_py_err)
}

#[pyfunction]
fn neg_log_upper(x: f64, sigma_value: f64) -> PyResult<f64> {
    entrobound::neg_log_upper(x, sigma(sigma_value)?).map_err(to_py_err)
}

#[pyfunction]
fn xlog_lower(x: f64, sigma_value: f64) -> PyResult<f64> {
    entrobound::xlog_lower(x, sigma(sigma_value)?).map_err(to_py_err)
}

#[pyfunction]
fn xlog_upper(x: f64, sigma_value: f64) -> PyResult<f64> {
    entrobound::xlog_upper(x, sigma(sigma_value)?).map_err(to_py_err)
}

/// Shannon entropy in bits of a probability vector.
#[pyfunction]
fn shannon_entropy(probs: Vec<f64>) -> PyResult<f64> {
    Ok(entrobound::shannon_entropy(&dist(probs)?))
}

/// (sum v_i^q)^(1/q) for q > 0 over a nonnegative vector.
#[pyfunction]
fn quasinorm(values: Vec<f64>, q: f64) -> PyResult<f64> {
    entrobound::quasinorm(&values, q).map_err(to_py_err)
}

/// (lower, upper) entropy bracket.
#[pyfunction]
fn entropy_bounds(probs: Vec<f64>, sigma_value: f64) -> PyResult<(f64, f64)> {
    let b = entrobound::entropy_bracket(&dist(probs)?, sigma(sigma_value)?);
    Ok((b.lower(), b.upper()))
}

/// Worst-case absolute error of either bound: upper - lower.
#[pyfunction]
fn bracket_gap(probs: Vec<f64>, sigma_value: f64) -> PyResult<f64> {
    Ok(entrobound::bracket_gap(&dist(probs)?, sigma(sigma_value)?))
}

/// (estimate, half_width) with |S - estimate| <= half_width.
#[pyfunction]
fn estimate_entropy(probs: Vec<f64>, sigma_value: f64) -> PyResult<(f64, f64)> {
    Ok(entrobound::estimate_entropy(&dist(probs)?, sigma(sigma_value)?))
}

/// (lower, upper) bounds on S(p) - S(q).
#[pyfunction]
fn entropy_diff_bounds(p: Vec<f64>, q: Vec<f64>, sigma_value: f64) -> PyResult<(f64, f64)> {
    let (p, q, s) = (dist(p)?, dist(q)?, sigma(sigma_value)?);
    Ok((
        entrobound::diff_lower_bound(&p, &q, s),
        entrobound::diff_upper_bound(&p, &q, s),
    ))
}

/// Smallest grid sigma whose difference lower bound is positive, or None.
#[pyfunction]
fn find_sigma_nontrivial(p: Vec<f64>, q: Vec<f64>, grid: Vec<f64>) -> PyResult<Option<f64>> {
    let found =
        entrobound::find_sigma_nontrivial(&dist(p)?, &dist(q)?, &grid).map_err(to_py_err)?;
    Ok(found.map(|s| s.sigma()))
}

/// Whether the family lies in l^sigma (finite-entropy criterion).
#[pyfunction]
fn is_in_ell_sigma(kind: &str, parameter: f64, sigma_value: f64) -> PyResult<bool> {
    Ok(entrobound::is_in_ell_sigma(
        family(kind, parameter)?,
        sigma(sigma_value)?,
    ))
}

/// (value, error_bound) enclosure of the family's q-quasinorm.
#[pyfunction]
fn family_norm(kind: &str, parameter: f64, q: f64, abs_tol: f64) -> PyResult<(f64, f64)> {
    let tbv = entrobound::family_norm(family(kind, parameter)?, q, abs_tol).map_err(to_py_err)?;
    Ok((tbv.value, tbv.error_bound))
}

/// (value, error_bound) enclosure of the family's entropy in bits.
#[pyfunction]
fn family_entropy(kind: &str, parameter: f64, abs_tol: f64) -> PyResult<(f64, f64)> {
    let tbv = entrobound::family_entropy(family(kind, parameter)?, abs_tol).map_err(to_py_err)?;
    Ok((tbv.value, tbv.error_bound))
}

/// (lower, upper) rigorous bracket of the family's entropy.
#[pyfunction]
fn family_bounds(
    kind: &str,
    parameter: f64,
    sigma_value: f64,
    abs_tol: f64,
) -> PyResult<(f64, f64)> {
    let b = entrobound::family_bracket(family(kind, parameter)?, sigma(sigma_value)?, abs_tol)
        .map_err(to_py_err)?;
    Ok((b.lower(), b.upper()))
}

/// Eigenvalues of a density matrix, descending.
#[pyfunction]
fn hermitian_eigenvalues(rows: Vec<Vec<Complex64>>) -> PyResult<Vec<f64>> {
    entrobound::hermitian_eigenvalues(&matrix(rows)?).map_err(to_py_err)
}

/// von Neumann entropy H(rho) in bits.
#[pyfunction]
fn von_neumann_entropy(rows: Vec<Vec<Complex64>>) -> PyResult<f64> {
    entrobound::von_neumann_entropy(&matrix(rows)?).map_err(to_py_err)
}

/// (lower, upper) bracket of H(rho).
#[pyfunction]
fn von_neumann_bounds(rows: Vec<Vec<Complex64>>, sigma_value: f64) -> PyResult<(f64, f64)> {
    let b = entrobound::von_neumann_bracket(&matrix(rows)?, sigma(sigma_value)?)
        .map_err(to_py_err)?;
    Ok((b.lower(), b.upper()))
}

/// Uniform point on the (n-1)-simplex, deterministic in the seed.
#[pyfunction]
fn sample_simplex(n: usize, seed: u64) -> PyResult<Vec<f64>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(entrobound::sample_simplex(n, &mut rng).probs().to_vec())
}

type BoundsRow = (usize, f64, f64, f64, f64, f64, Option<f64>, Option<f64>);
type DiffRow = (usize, f64, f64, f64, Option<f64>);

/// Batch bounds experiment; rows are (index, entropy, lower, upper,
/// abs_err_lower, abs_err_upper, rel_err_lower, rel_err_upper).
#[pyfunction]
#[pyo3(signature = (num=500, support=100, sigma_value=0.9, seed=42))]
fn run_bounds_experiment(
    num: usize,
    support: usize,
    sigma_value: f64,
    seed: u64,
) -> PyResult<Vec<BoundsRow>> {
    let cfg = entrobound::ExperimentConfig {
        num_distributions: num,
        support_size: support,
        sigma: sigma(sigma_value)?,
        seed,
        mode: entrobound::ExperimentMode::Bounds,
    };
    Ok(entrobound::run_bounds_experiment(&cfg)
        .into_iter()
        .map(|r| {
            (
                r.index,
                r.entropy,
                r.lower,
                r.upper,
                r.abs_err_lower,
                r.abs_err_upper,
                r.rel_err_lower,
                r.rel_err_upper,
            )
        })
        .collect())
}

/// Batch difference experiment; rows are (index, true_diff, upper_bound,
/// abs_err, rel_err).
#[pyfunction]
#[pyo3(signature = (num=500, support=100, sigma_value=0.9, seed=42))]
fn run_difference_experiment(
    num: usize,
    support: usize,
    sigma_value: f64,
    seed: u64,
) -> PyResult<Vec<DiffRow>> {
    let cfg = entrobound::ExperimentConfig {
        num_distributions: num,
        support_size: support,
        sigma: sigma(sigma_value)?,
        seed,
        mode: entrobound::ExperimentMode::Difference,
    };
    Ok(entrobound::run_difference_experiment(&cfg)
        .into_iter()
        .map(|r| (r.index, r.true_diff, r.upper_bound, r.abs_err, r.rel_err))
        .collect())
}

#[pymodule]
fn entrobound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(optimal_constant, m)?)?;
    m.add_function(wrap_pyfunction!(neg_log_lower, m)?)?;
    m.add_function(wrap_pyfunction!(neg_log_upper, m)?)?;
    m.add_function(wrap_pyfunction!(xlog_lower, m)?)?;
    m.add_function(wrap_pyfunction!(xlog_upper, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(quasinorm, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(bracket_gap, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_diff_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(find_sigma_nontrivial, m)?)?;
    m.add_function(wrap_pyfunction!(is_in_ell_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(family_norm, m)?)?;
    m.add_function(wrap_pyfunction!(family_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(family_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(sample_simplex, m)?)?;
    m.add_function(wrap_pyfunction!(run_bounds_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(run_difference_experiment, m)?)?;
    Ok(())
}
