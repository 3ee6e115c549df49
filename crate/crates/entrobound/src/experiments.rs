//! Batch bound evaluation over randomly generated distributions: uniform
//! simplex sampling, per-record error statistics, and summaries.
//!
//! Determinism contract: every record draws from its own RNG substream
//! keyed by (seed, index), so parallel and serial runs produce identical
//! output, and two runs with equal configs are bit-identical.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::bounds::{diff_upper_bound, entropy_bracket};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::kahan::kahan_sum;
use crate::norms::shannon_entropy;
use crate::sigma::SigmaParam;

/// Bound violations beyond this slack count as real (not floating noise).
pub const VIOLATION_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    Bounds,
    Difference,
}

/// Batch configuration. The defaults (500 distributions, 100 values each,
/// sigma 0.9) are the standard test setup reproduced by the CLI.
#[derive(Debug, Clone, Copy)]
pub struct ExperimentConfig {
    pub num_distributions: usize,
    pub support_size: usize,
    pub sigma: SigmaParam,
    pub seed: u64,
    pub mode: ExperimentMode,
}

impl ExperimentConfig {
    pub fn defaults(mode: ExperimentMode, seed: u64) -> Self {
        Self {
            num_distributions: 500,
            support_size: 100,
            sigma: SigmaParam::new(0.9).expect("0.9 is a valid sigma"),
            seed,
            mode,
        }
    }
}

/// One bounds-experiment row: entropy, bracket, absolute/relative errors.
/// Relative errors are absent (not 0, not inf) when the entropy is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRecord {
    pub index: usize,
    pub entropy: f64,
    pub lower: f64,
    pub upper: f64,
    pub abs_err_lower: f64,
    pub abs_err_upper: f64,
    pub rel_err_lower: Option<f64>,
    pub rel_err_upper: Option<f64>,
}

impl BoundRecord {
    pub fn violates(&self) -> bool {
        self.abs_err_lower < -VIOLATION_SLACK || self.abs_err_upper < -VIOLATION_SLACK
    }
}

/// One difference-experiment row for an ordered pair (S(p) >= S(q)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffRecord {
    pub index: usize,
    pub true_diff: f64,
    pub upper_bound: f64,
    pub abs_err: f64,
    pub rel_err: Option<f64>,
}

impl DiffRecord {
    pub fn violates(&self) -> bool {
        self.abs_err < -VIOLATION_SLACK
    }
}

/// Independent RNG substream for record `index` of run `seed`.
fn record_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform point on the (n-1)-simplex: n standard-exponential draws
/// normalized by their sum (flat Dirichlet).
pub fn sample_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Distribution {
    assert!(n >= 1, "support size must be positive");
    let draws: Vec<f64> = (0..n).map(|_| rng.sample(Exp1)).collect();
    let total = kahan_sum(draws.iter().copied());
    Distribution::with_tolerance(draws.into_iter().map(|v| v / total).collect(), 1e-12)
        .expect("normalized exponentials form a distribution")
}

/// Bracket one distribution into a record.
pub fn bound_record(index: usize, p: &Distribution, sigma: SigmaParam) -> BoundRecord {
    let entropy = shannon_entropy(p);
    let bracket = entropy_bracket(p, sigma);
    let abs_err_lower = entropy - bracket.lower();
    let abs_err_upper = bracket.upper() - entropy;
    let rel = |abs: f64| (entropy != 0.0).then(|| abs / entropy);
    BoundRecord {
        index,
        entropy,
        lower: bracket.lower(),
        upper: bracket.upper(),
        abs_err_lower,
        abs_err_upper,
        rel_err_lower: rel(abs_err_lower),
        rel_err_upper: rel(abs_err_upper),
    }
}

/// Difference-bound record for a pair, ordered so S(p) >= S(q).
pub fn diff_record(
    index: usize,
    p: &Distribution,
    q: &Distribution,
    sigma: SigmaParam,
) -> DiffRecord {
    let (sp, sq) = (shannon_entropy(p), shannon_entropy(q));
    let (p, q, sp, sq) = if sp >= sq { (p, q, sp, sq) } else { (q, p, sq, sp) };
    let true_diff = sp - sq;
    let upper_bound = diff_upper_bound(p, q, sigma);
    let abs_err = upper_bound - true_diff;
    DiffRecord {
        index,
        true_diff,
        upper_bound,
        abs_err,
        rel_err: (true_diff != 0.0).then(|| abs_err / true_diff),
    }
}

/// Generate `cfg.num_distributions` distributions and bracket each one.
/// Deterministic given the seed, independent of the degree of parallelism.
pub fn run_bounds_experiment(cfg: &ExperimentConfig) -> Vec<BoundRecord> {
    (0..cfg.num_distributions)
        .into_par_iter()
        .map(|index| {
            let mut rng = record_rng(cfg.seed, index);
            let p = sample_simplex(cfg.support_size, &mut rng);
            bound_record(index, &p, cfg.sigma)
        })
        .collect()
}

/// Generate pairs, order each by entropy, and evaluate the difference bound.
pub fn run_difference_experiment(cfg: &ExperimentConfig) -> Vec<DiffRecord> {
    (0..cfg.num_distributions)
        .into_par_iter()
        .map(|index| {
            let mut rng = record_rng(cfg.seed, index);
            let p = sample_simplex(cfg.support_size, &mut rng);
            let q = sample_simplex(cfg.support_size, &mut rng);
            diff_record(index, &p, &q, cfg.sigma)
        })
        .collect()
}

/// Min/mean/max of one error column over the records where it is present.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnStats {
    pub name: &'static str,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    pub present: usize,
}

fn column_stats(name: &'static str, values: impl Iterator<Item = f64>) -> Option<ColumnStats> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut acc = 0.0;
    let mut count = 0usize;
    for v in values {
        min = min.min(v);
        max = max.max(v);
        acc += v;
        count += 1;
    }
    (count > 0).then(|| ColumnStats {
        name,
        min,
        mean: acc / count as f64,
        max,
        present: count,
    })
}

/// Error-column statistics plus the invariant-violation count (expected 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub records: usize,
    pub columns: Vec<ColumnStats>,
    pub violations: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "records: {}", self.records)?;
        for c in &self.columns {
            writeln!(
                f,
                "{}: min={} mean={} max={} ({} present)",
                c.name, c.min, c.mean, c.max, c.present
            )?;
        }
        write!(f, "violations: {}", self.violations)
    }
}

pub fn summarize_bounds(records: &[BoundRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::Empty);
    }
    let columns = [
        column_stats("abs_err_lower", records.iter().map(|r| r.abs_err_lower)),
        column_stats("abs_err_upper", records.iter().map(|r| r.abs_err_upper)),
        column_stats(
            "rel_err_lower",
            records.iter().filter_map(|r| r.rel_err_lower),
        ),
        column_stats(
            "rel_err_upper",
            records.iter().filter_map(|r| r.rel_err_upper),
        ),
    ]
    .into_iter()
    .flatten()
    .collect();
    Ok(Summary {
        records: records.len(),
        columns,
        violations: records.iter().filter(|r| r.violates()).count(),
    })
}

pub fn summarize_diffs(records: &[DiffRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::Empty);
    }
    let columns = [
        column_stats("abs_err", records.iter().map(|r| r.abs_err)),
        column_stats("rel_err", records.iter().filter_map(|r| r.rel_err)),
    ]
    .into_iter()
    .flatten()
    .collect();
    Ok(Summary {
        records: records.len(),
        columns,
        violations: records.iter().filter(|r| r.violates()).count(),
    })
}
