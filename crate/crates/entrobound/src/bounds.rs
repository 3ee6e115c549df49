//! Two-sided entropy brackets, gap bounds, and entropy-difference bounds
//! over finite distributions.
//!
//! For a distribution p and sigma in (0,1), with C = 1/(ln 2 (1 - sigma)),
//!
//! ```text
//! C * (1 - ||p||_{2-sigma})  <=  S(p)  <=  C * (||p||_sigma - 1)
//! ```
//!
//! The aggregates are evaluated as C * expm1(ln(sum p_i^q) / q): the direct
//! form ||p||_q - 1 loses all significant digits as sigma -> 1, exactly the
//! regime where the bracket is tight enough to be useful.

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::norms::power_sum;
use crate::sigma::SigmaParam;

/// A pair of entropy bounds guaranteed to contain S(p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lower: f64,
    upper: f64,
    sigma: SigmaParam,
}

impl Bracket {
    /// Pairs two endpoints, clamping lower to upper so floating-point noise
    /// on a degenerate bracket cannot invert it. Real violations are still
    /// visible to the tests because they exceed the noise scale.
    pub(crate) fn new(lower: f64, upper: f64, sigma: SigmaParam) -> Self {
        Self {
            lower: lower.min(upper),
            upper,
            sigma,
        }
    }

    #[inline]
    pub fn lower(&self) -> f64 {
        self.lower
    }

    #[inline]
    pub fn upper(&self) -> f64 {
        self.upper
    }

    #[inline]
    pub fn sigma(&self) -> SigmaParam {
        self.sigma
    }

    /// upper - lower.
    #[inline]
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    #[inline]
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Bounds on the difference S(p) - S(q).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffBound {
    pub upper: f64,
    pub lower: f64,
    pub sigma: SigmaParam,
}

/// ln(sum p_i^q) / q, i.e. ln ||p||_q. Exactly 0 on a degenerate distribution.
#[inline]
fn log_norm(p: &Distribution, q: f64) -> f64 {
    power_sum(p.probs(), q).ln() / q
}

/// C * (1 - ||p||_{2-sigma}), computed as -C * expm1(ln ||p||_{2-sigma}).
pub fn entropy_lower_bound(p: &Distribution, sigma: SigmaParam) -> f64 {
    -sigma.constant() * log_norm(p, 2.0 - sigma.sigma()).exp_m1() + 0.0
}

/// C * (||p||_sigma - 1), computed as C * expm1(ln ||p||_sigma).
pub fn entropy_upper_bound(p: &Distribution, sigma: SigmaParam) -> f64 {
    sigma.constant() * log_norm(p, sigma.sigma()).exp_m1() + 0.0
}

/// The two bounds paired, with the degeneracy clamp applied.
pub fn entropy_bracket(p: &Distribution, sigma: SigmaParam) -> Bracket {
    Bracket::new(
        entropy_lower_bound(p, sigma),
        entropy_upper_bound(p, sigma),
        sigma,
    )
}

/// C * (||p||_sigma + ||p||_{2-sigma} - 2) = upper - lower: the worst-case
/// absolute error of using either bound as an entropy estimate.
pub fn bracket_gap(p: &Distribution, sigma: SigmaParam) -> f64 {
    let up = log_norm(p, sigma.sigma()).exp_m1();
    let down = log_norm(p, 2.0 - sigma.sigma()).exp_m1();
    sigma.constant() * (up + down) + 0.0
}

/// Bracket midpoint and half-width: |S(p) - estimate| <= half_width.
pub fn estimate_entropy(p: &Distribution, sigma: SigmaParam) -> (f64, f64) {
    let b = entropy_bracket(p, sigma);
    (b.midpoint(), 0.5 * b.width())
}

/// Upper bound on S(p) - S(q): C * (||p||_sigma + ||q||_{2-sigma} - 2).
///
/// Valid whenever S(p) >= S(q); computed unconditionally.
pub fn diff_upper_bound(p: &Distribution, q: &Distribution, sigma: SigmaParam) -> f64 {
    entropy_upper_bound(p, sigma) - entropy_lower_bound(q, sigma)
}

/// Lower bound on S(p) - S(q): C * (2 - ||p||_{2-sigma} - ||q||_sigma).
///
/// A lower bound of p's entropy minus an upper bound of q's, so it holds for
/// every sigma; it is only *nontrivial* (positive) when sigma is close
/// enough to 1, which [`find_sigma_nontrivial`] searches for.
pub fn diff_lower_bound(p: &Distribution, q: &Distribution, sigma: SigmaParam) -> f64 {
    entropy_lower_bound(p, sigma) - entropy_upper_bound(q, sigma)
}

/// Both difference bounds for one pair.
pub fn diff_bounds(p: &Distribution, q: &Distribution, sigma: SigmaParam) -> DiffBound {
    DiffBound {
        upper: diff_upper_bound(p, q, sigma),
        lower: diff_lower_bound(p, q, sigma),
        sigma,
    }
}

/// Smallest grid sigma whose difference lower bound is strictly positive,
/// or None when no grid point qualifies.
pub fn find_sigma_nontrivial(
    p: &Distribution,
    q: &Distribution,
    sigma_grid: &[f64],
) -> Result<Option<SigmaParam>> {
    if sigma_grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty"));
    }
    if sigma_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid("grid must be strictly ascending"));
    }
    let mut params = Vec::with_capacity(sigma_grid.len());
    for &s in sigma_grid {
        params.push(SigmaParam::new(s).map_err(|_| Error::InvalidGrid("grid value outside (0,1)"))?);
    }
    for sigma in params {
        if diff_lower_bound(p, q, sigma) > 0.0 {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}
