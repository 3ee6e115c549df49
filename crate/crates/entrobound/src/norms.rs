//! p-quasinorms and the exact Shannon-entropy oracle.

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// x^q as exp(q * ln x) with the zero base special-cased to 0.
///
/// Platform pow implementations disagree at the boundary (0^q, denormals);
/// routing everything through exp/ln keeps results reproducible.
#[inline]
pub(crate) fn pow_pos(x: f64, q: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (q * x.ln()).exp()
    }
}

/// Compensated sum of v_i^q over the nonzero entries.
pub(crate) fn power_sum(values: &[f64], q: f64) -> f64 {
    let mut acc = KahanSum::new();
    for &v in values {
        if v != 0.0 {
            acc.add(pow_pos(v, q));
        }
    }
    acc.value()
}

/// (sum_i v_i^q)^(1/q) for q > 0 on a nonnegative vector.
///
/// Zero entries are skipped and the all-zero vector maps to 0.
pub fn quasinorm(values: &[f64], q: f64) -> Result<f64> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Domain("q must be positive and finite"));
    }
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeMass { index, value });
        }
    }
    let sum = power_sum(values, q);
    if sum == 0.0 {
        return Ok(0.0);
    }
    Ok((sum.ln() / q).exp())
}

/// Shannon entropy -sum p_i log2 p_i in bits, with 0 log 0 = 0.
///
/// This is the exact oracle every bound in the crate is tested against.
pub fn shannon_entropy(p: &Distribution) -> f64 {
    let mut acc = KahanSum::new();
    for &x in p.probs() {
        if x > 0.0 {
            acc.add(-x * x.log2());
        }
    }
    // guard against -0.0 from a degenerate distribution
    acc.value().max(0.0)
}
