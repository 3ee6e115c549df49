//! Two-sided Shannon and von Neumann entropy brackets from p-quasinorms.
//!
//! For every sigma in (0,1) the entropy of a probability distribution p is
//! pinned between norm functionals of p:
//!
//! ```text
//! C(sigma) (1 - ||p||_{2-sigma})  <=  S(p)  <=  C(sigma) (||p||_sigma - 1),
//! C(sigma) = 1/(ln 2 (1 - sigma)),
//! ```
//!
//! with the bracket tightening monotonically as sigma -> 1. The crate
//! provides the scalar inequality kernels, the finite-distribution bracket
//! with gap and difference bounds, infinite families (geometric, zipf) with
//! rigorous truncation enclosures and the l^sigma finiteness criterion, von
//! Neumann entropy of density matrices via a Jacobi eigensolver, and a
//! reproducible batch experiment runner behind the `entrobound` CLI.

pub mod bounds;
pub mod cli;
pub mod distribution;
pub mod error;
pub mod experiments;
pub mod infinite;
pub mod kahan;
pub mod norms;
pub mod quantum;
pub mod scalar;
pub mod sigma;

pub use bounds::{
    bracket_gap, diff_bounds, diff_lower_bound, diff_upper_bound, entropy_bracket,
    entropy_lower_bound, entropy_upper_bound, estimate_entropy, find_sigma_nontrivial, Bracket,
    DiffBound,
};
pub use distribution::{validate_distribution, Distribution, SUM_TOL};
pub use error::{Error, Result};
pub use experiments::{
    bound_record, diff_record, run_bounds_experiment, run_difference_experiment, sample_simplex,
    summarize_bounds, summarize_diffs, BoundRecord, ColumnStats, DiffRecord, ExperimentConfig,
    ExperimentMode, Summary,
};
pub use infinite::{
    family_bracket, family_entropy, family_norm, is_in_ell_sigma, ParametricFamily,
    TailBoundedValue,
};
pub use norms::{quasinorm, shannon_entropy};
pub use quantum::{
    hermitian_eigenvalues, validate_density_matrix, von_neumann_bracket, von_neumann_entropy,
    DensityMatrix,
};
pub use scalar::{neg_log_lower, neg_log_upper, xlog_lower, xlog_upper};
pub use sigma::{optimal_constant, SigmaParam, SIGMA_MAX, SIGMA_MIN};
