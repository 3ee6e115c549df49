//! Scalar logarithm-inequality kernels.
//!
//! For x in (0,1] and sigma in (0,1),
//!
//! ```text
//! C(sigma) * (1 - x^(1-sigma))  <=  -log2(x)  <=  C(sigma) * (x^(sigma-1) - 1)
//! ```
//!
//! and the x*log(x) forms obtained by multiplying through by x. All four
//! kernels are evaluated through expm1 so they stay accurate as sigma -> 1,
//! where the direct differences cancel catastrophically.

use crate::error::{Error, Result};
use crate::sigma::SigmaParam;

fn check_unit_interval(x: f64, zero_ok: bool) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain("x must be finite"));
    }
    if x > 1.0 {
        return Err(Error::Domain("x must be <= 1"));
    }
    if x < 0.0 {
        return Err(Error::Domain("x must be >= 0"));
    }
    if x == 0.0 && !zero_ok {
        return Err(Error::Domain("x must be > 0"));
    }
    Ok(())
}

/// Lower bound on -log2(x): C * (1 - x^(1-sigma)). Equals C at x = 0 and 0 at x = 1.
pub fn neg_log_lower(x: f64, sigma: SigmaParam) -> Result<f64> {
    check_unit_interval(x, true)?;
    if x == 0.0 {
        return Ok(sigma.constant());
    }
    // 1 - x^(1-s) = -expm1((1-s) * ln x)
    Ok(-sigma.constant() * ((1.0 - sigma.sigma()) * x.ln()).exp_m1() + 0.0)
}

/// Upper bound on -log2(x): C * (x^(sigma-1) - 1). Rejects x = 0 (the bound is +inf there).
pub fn neg_log_upper(x: f64, sigma: SigmaParam) -> Result<f64> {
    check_unit_interval(x, false)?;
    Ok(sigma.constant() * ((sigma.sigma() - 1.0) * x.ln()).exp_m1() + 0.0)
}

/// Lower bound on -x*log2(x): C * (x - x^(2-sigma)). Vanishes at x = 0 and x = 1.
pub fn xlog_lower(x: f64, sigma: SigmaParam) -> Result<f64> {
    check_unit_interval(x, true)?;
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    // x - x^(2-s) = -x * expm1((1-s) * ln x)
    Ok(-sigma.constant() * x * ((1.0 - sigma.sigma()) * x.ln()).exp_m1() + 0.0)
}

/// Upper bound on -x*log2(x): C * (x^sigma - x). Vanishes at x = 0 and x = 1.
pub fn xlog_upper(x: f64, sigma: SigmaParam) -> Result<f64> {
    check_unit_interval(x, true)?;
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(sigma.constant() * x * ((sigma.sigma() - 1.0) * x.ln()).exp_m1() + 0.0)
}
