//! The inequality-family parameter sigma and its optimal constant.

use crate::error::{Error, Result};

/// Smallest accepted sigma. Below this the bounds are uselessly loose and
/// the constant does not stress the arithmetic, so a hard floor is cheap.
pub const SIGMA_MIN: f64 = 1e-6;

/// Largest accepted sigma. At sigma = 1 the defining expressions are 0/0;
/// clamping construction keeps C(sigma) finite.
pub const SIGMA_MAX: f64 = 1.0 - 1e-6;

/// Validated sigma in (0,1) together with the tight constant
/// C(sigma) = 1/(ln 2 * (1 - sigma)) shared by both sides of the
/// logarithm inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaParam {
    sigma: f64,
    constant: f64,
}

impl SigmaParam {
    pub fn new(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || !(SIGMA_MIN..=SIGMA_MAX).contains(&sigma) {
            return Err(Error::InvalidSigma { value: sigma });
        }
        let constant = 1.0 / (std::f64::consts::LN_2 * (1.0 - sigma));
        Ok(Self { sigma, constant })
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// C(sigma) = 1/(ln 2 * (1 - sigma)).
    #[inline]
    pub fn constant(&self) -> f64 {
        self.constant
    }
}

/// The tight constant for a given sigma.
pub fn optimal_constant(sigma: SigmaParam) -> f64 {
    sigma.constant()
}
