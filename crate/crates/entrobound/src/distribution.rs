//! Validated finite probability vectors.

use crate::error::{Error, Result};
use crate::kahan::kahan_sum;

/// Default tolerance for |sum - 1| at construction.
pub const SUM_TOL: f64 = 1e-9;

/// A finite probability distribution: nonnegative entries renormalized so
/// that the sum is 1 to working precision. The bound identities downstream
/// rely on the exact normalization, so acceptance always renormalizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validate with the default tolerance [`SUM_TOL`].
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(raw, SUM_TOL)
    }

    /// Accepts iff every entry >= -tol and |sum - 1| <= tol. Entries in
    /// [-tol, 0) are clamped to 0, then the vector is renormalized by its
    /// compensated sum.
    pub fn with_tolerance(mut raw: Vec<f64>, tol: f64) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < -tol {
                return Err(Error::NegativeMass { index, value });
            }
        }
        for v in raw.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum = kahan_sum(raw.iter().copied());
        if (sum - 1.0).abs() > tol {
            return Err(Error::NotNormalized { sum, tol });
        }
        for v in raw.iter_mut() {
            *v /= sum;
        }
        Ok(Self { probs: raw })
    }

    /// Point mass on the first of `n` outcomes.
    pub fn degenerate(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut probs = vec![0.0; n];
        probs[0] = 1.0;
        Ok(Self { probs })
    }

    /// Uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    #[inline]
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Free-function form of the validating constructor.
pub fn validate_distribution(raw: Vec<f64>, tol: f64) -> Result<Distribution> {
    Distribution::with_tolerance(raw, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kahan::kahan_sum;
    use proptest::prelude::*;

    #[test]
    fn accepts_fair_coin() {
        let d = validate_distribution(vec![0.5, 0.5], 1e-9).unwrap();
        assert_eq!(d.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn rejects_unnormalized() {
        let err = validate_distribution(vec![0.7, 0.4], 1e-9).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn clamps_tiny_negative_mass() {
        let d = validate_distribution(vec![1.0, -1e-12, 1e-12], 1e-9).unwrap();
        assert_eq!(d.probs()[1], 0.0);
        assert!(d.probs()[2] > 0.0);
        assert!((kahan_sum(d.probs().iter().copied()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_mass_beyond_tol() {
        let err = validate_distribution(vec![1.0, -1e-8], 1e-9).unwrap_err();
        assert!(matches!(err, Error::NegativeMass { index: 1, .. }));
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(matches!(
            validate_distribution(vec![], 1e-9).unwrap_err(),
            Error::Empty
        ));
        assert!(matches!(
            validate_distribution(vec![f64::NAN, 1.0], 1e-9).unwrap_err(),
            Error::NonFinite { index: 0, .. }
        ));
    }

    #[test]
    fn degenerate_and_uniform_helpers() {
        let d = Distribution::degenerate(3).unwrap();
        assert_eq!(d.probs(), &[1.0, 0.0, 0.0]);
        let u = Distribution::uniform(4).unwrap();
        assert_eq!(u.probs(), &[0.25; 4]);
    }

    proptest! {
        #[test]
        fn renormalized_sum_is_one(raw in proptest::collection::vec(0.0f64..1.0, 1..200)) {
            let total: f64 = raw.iter().sum();
            prop_assume!(total > 1e-3);
            let scaled: Vec<f64> = raw.iter().map(|v| v / total).collect();
            let d = Distribution::new(scaled).unwrap();
            let sum = kahan_sum(d.probs().iter().copied());
            prop_assert!((sum - 1.0).abs() < 1e-12);
            prop_assert!(d.probs().iter().all(|&p| (0.0..=1.0).contains(&p)));
        }
    }
}
