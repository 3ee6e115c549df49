//! Infinite discrete families (geometric, zipf) with closed-form or
//! tail-bounded norms, entropies, and the l^sigma finiteness criterion.
//!
//! Zipf quantities reduce to zeta values, which are evaluated by direct
//! truncation plus a two-sided integral-test tail enclosure:
//!
//! ```text
//! int_{N+1}^inf x^-a dx  <=  sum_{i>N} i^-a  <=  int_N^inf x^-a dx
//! ```
//!
//! so every reported value carries a guaranteed error bound. N doubles
//! until the propagated enclosure meets the requested tolerance.

use crate::bounds::Bracket;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::sigma::SigmaParam;

const LN_2: f64 = std::f64::consts::LN_2;

/// Truncation ladder: start here and double up to the cap.
const N_START: u64 = 1 << 12;
const N_CAP: u64 = 1 << 27;

/// An infinite discrete probability distribution with known structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParametricFamily {
    /// p_i = (1-r) r^(i-1), i >= 1, with ratio r in (0,1).
    Geometric { ratio: f64 },
    /// p_i = i^-s / zeta(s), i >= 1, with exponent s > 1.
    Zipf { exponent: f64 },
}

impl ParametricFamily {
    pub fn geometric(ratio: f64) -> Result<Self> {
        if !ratio.is_finite() || ratio <= 0.0 || ratio >= 1.0 {
            return Err(Error::InvalidParameter("geometric ratio must lie in (0,1)"));
        }
        Ok(Self::Geometric { ratio })
    }

    pub fn zipf(exponent: f64) -> Result<Self> {
        if !exponent.is_finite() || exponent <= 1.0 {
            return Err(Error::InvalidParameter("zipf exponent must exceed 1"));
        }
        Ok(Self::Zipf { exponent })
    }
}

/// A value with a guaranteed enclosure half-width: the true quantity lies
/// in [value - error_bound, value + error_bound].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBoundedValue {
    pub value: f64,
    pub error_bound: f64,
}

impl TailBoundedValue {
    fn exact(value: f64) -> Self {
        Self {
            value,
            error_bound: 0.0,
        }
    }
}

/// Closed interval [lo, hi] over positive reals; endpoint arithmetic is
/// plain f64 (rounding is ~1e-16 relative, far below the tolerances here).
#[derive(Debug, Clone, Copy)]
struct Encl {
    lo: f64,
    hi: f64,
}

impl Encl {
    fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn half_width(self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    fn to_tail_bounded(self) -> TailBoundedValue {
        TailBoundedValue {
            value: self.mid(),
            error_bound: self.half_width(),
        }
    }

    fn add(self, o: Encl) -> Encl {
        Encl {
            lo: self.lo + o.lo,
            hi: self.hi + o.hi,
        }
    }

    /// self / o for positive intervals.
    fn div(self, o: Encl) -> Encl {
        Encl {
            lo: self.lo / o.hi,
            hi: self.hi / o.lo,
        }
    }

    /// self^e for positive base and e > 0 (monotone increasing).
    fn powf(self, e: f64) -> Encl {
        Encl {
            lo: (e * self.lo.ln()).exp(),
            hi: (e * self.hi.ln()).exp(),
        }
    }

    /// c * self for c > 0.
    fn scale(self, c: f64) -> Encl {
        Encl {
            lo: c * self.lo,
            hi: c * self.hi,
        }
    }

    fn log2(self) -> Encl {
        Encl {
            lo: self.lo.log2(),
            hi: self.hi.log2(),
        }
    }
}

/// Incrementally extensible partial sums of sum i^-a and sum i^-a log2(i).
struct ZetaSums {
    a: f64,
    n: u64,
    plain: KahanSum,
    log_weighted: KahanSum,
}

impl ZetaSums {
    fn new(a: f64) -> Self {
        Self {
            a,
            n: 0,
            plain: KahanSum::new(),
            log_weighted: KahanSum::new(),
        }
    }

    fn extend_to(&mut self, n: u64) {
        while self.n < n {
            self.n += 1;
            let ln_i = (self.n as f64).ln();
            let term = (-self.a * ln_i).exp();
            self.plain.add(term);
            self.log_weighted.add(term * ln_i / LN_2);
        }
    }

    /// Enclosure of zeta(a) = sum_{i>=1} i^-a.
    fn zeta(&self) -> Encl {
        let tail = |m: f64| ((1.0 - self.a) * m.ln()).exp() / (self.a - 1.0);
        Encl {
            lo: self.plain.value() + tail(self.n as f64 + 1.0),
            hi: self.plain.value() + tail(self.n as f64),
        }
    }

    /// Enclosure of sum_{i>=1} i^-a log2(i). The integrand x^-a log2(x) is
    /// decreasing for x > e^(1/a), well inside the truncation range.
    fn zeta_log(&self) -> Encl {
        let a = self.a;
        let tail = |m: f64| {
            let head = ((1.0 - a) * m.ln()).exp() / (a - 1.0);
            (head * m.ln() + head / (a - 1.0)) / LN_2
        };
        Encl {
            lo: self.log_weighted.value() + tail(self.n as f64 + 1.0),
            hi: self.log_weighted.value() + tail(self.n as f64),
        }
    }
}

/// Runs the truncation ladder until `quantity` meets `abs_tol`.
fn refine<F: FnMut(u64) -> Encl>(abs_tol: f64, mut quantity: F) -> Result<TailBoundedValue> {
    if !abs_tol.is_finite() || abs_tol <= 0.0 {
        return Err(Error::Domain("abs_tol must be positive and finite"));
    }
    let mut n = N_START;
    loop {
        let enc = quantity(n);
        if enc.half_width() <= abs_tol {
            return Ok(enc.to_tail_bounded());
        }
        if n >= N_CAP {
            return Err(Error::TailTolerance {
                requested: abs_tol,
                achieved: enc.half_width(),
            });
        }
        n *= 2;
    }
}

/// Whether the family lies in l^sigma, i.e. sum p_i^sigma converges.
///
/// Geometric tails decay exponentially, so the criterion always holds;
/// Zipf(s) requires s * sigma > 1.
pub fn is_in_ell_sigma(family: ParametricFamily, sigma: SigmaParam) -> bool {
    match family {
        ParametricFamily::Geometric { .. } => true,
        ParametricFamily::Zipf { exponent } => exponent * sigma.sigma() > 1.0,
    }
}

/// ||p||_q of the family for q > 0.
///
/// Geometric has the closed form (1-r)/(1-r^q)^(1/q) and returns an exact
/// value. Zipf evaluates zeta(s q)^(1/q)/zeta(s) with tail enclosures and
/// returns Divergent when s * q <= 1.
pub fn family_norm(family: ParametricFamily, q: f64, abs_tol: f64) -> Result<TailBoundedValue> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Domain("q must be positive and finite"));
    }
    match family {
        ParametricFamily::Geometric { ratio } => {
            if q == 1.0 {
                // probabilities sum to 1
                return Ok(TailBoundedValue::exact(1.0));
            }
            // (1-r)/(1-r^q)^(1/q), with 1-r^q = -expm1(q ln r)
            let one_minus_rq = -(q * ratio.ln()).exp_m1();
            Ok(TailBoundedValue::exact(
                (1.0 - ratio) * (-one_minus_rq.ln() / q).exp(),
            ))
        }
        ParametricFamily::Zipf { exponent } => {
            let a = exponent * q;
            if a <= 1.0 {
                return Err(Error::Divergent { product: a });
            }
            let mut num = ZetaSums::new(a);
            let mut den = ZetaSums::new(exponent);
            refine(abs_tol, |n| {
                num.extend_to(n);
                den.extend_to(n);
                num.zeta().powf(1.0 / q).div(den.zeta())
            })
        }
    }
}

/// Entropy of the family in bits.
///
/// Geometric: S = -log2(1-r) - (r/(1-r)) log2(r), exact.
/// Zipf: S = s * (sum i^-s log2 i) / zeta(s) + log2 zeta(s), enclosed.
pub fn family_entropy(family: ParametricFamily, abs_tol: f64) -> Result<TailBoundedValue> {
    match family {
        ParametricFamily::Geometric { ratio } => {
            let log2_one_minus_r = (-ratio).ln_1p() / LN_2;
            let s = -log2_one_minus_r - (ratio / (1.0 - ratio)) * (ratio.ln() / LN_2);
            Ok(TailBoundedValue::exact(s))
        }
        ParametricFamily::Zipf { exponent } => {
            let mut sums = ZetaSums::new(exponent);
            refine(abs_tol, |n| {
                sums.extend_to(n);
                let z = sums.zeta();
                sums.zeta_log().scale(exponent).div(z).add(z.log2())
            })
        }
    }
}

/// The entropy bracket of the family at sigma, endpoints widened outward by
/// the norm error bounds so the bracket stays rigorous.
///
/// Errors with Divergent when the l^sigma criterion fails (the upper bound
/// would be infinite).
pub fn family_bracket(
    family: ParametricFamily,
    sigma: SigmaParam,
    abs_tol: f64,
) -> Result<Bracket> {
    if !abs_tol.is_finite() || abs_tol <= 0.0 {
        return Err(Error::Domain("abs_tol must be positive and finite"));
    }
    if !is_in_ell_sigma(family, sigma) {
        let product = match family {
            ParametricFamily::Zipf { exponent } => exponent * sigma.sigma(),
            ParametricFamily::Geometric { .. } => unreachable!(),
        };
        return Err(Error::Divergent { product });
    }
    let c = sigma.constant();
    // widen each endpoint by at most abs_tol
    let norm_tol = abs_tol / c;
    let norm_upper = family_norm(family, sigma.sigma(), norm_tol)?;
    let norm_lower = family_norm(family, 2.0 - sigma.sigma(), norm_tol)?;
    let upper = c * (norm_upper.value - 1.0 + norm_upper.error_bound);
    let lower = (c * (1.0 - norm_lower.value - norm_lower.error_bound)).max(0.0);
    Ok(Bracket::new(lower, upper, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{entropy_lower_bound, entropy_upper_bound};
    use crate::distribution::Distribution;
    use crate::kahan::kahan_sum;

    fn s(v: f64) -> SigmaParam {
        SigmaParam::new(v).unwrap()
    }

    fn geo(r: f64) -> ParametricFamily {
        ParametricFamily::geometric(r).unwrap()
    }

    fn zipf(e: f64) -> ParametricFamily {
        ParametricFamily::zipf(e).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(ParametricFamily::geometric(0.0).is_err());
        assert!(ParametricFamily::geometric(1.0).is_err());
        assert!(ParametricFamily::geometric(f64::NAN).is_err());
        assert!(ParametricFamily::zipf(1.0).is_err());
        assert!(ParametricFamily::zipf(0.5).is_err());
        assert!(ParametricFamily::geometric(0.99).is_ok());
        assert!(ParametricFamily::zipf(1.001).is_ok());
    }

    #[test]
    fn ell_sigma_criterion() {
        assert!(is_in_ell_sigma(zipf(2.0), s(0.6)));
        assert!(!is_in_ell_sigma(zipf(2.0), s(0.4)));
        assert!(!is_in_ell_sigma(zipf(2.0), s(0.5)));
        assert!(is_in_ell_sigma(geo(0.99), s(0.1)));
    }

    #[test]
    fn geometric_norm_at_one_is_exact() {
        for r in [0.1, 0.5, 0.9] {
            let tbv = family_norm(geo(r), 1.0, 1e-12).unwrap();
            assert_eq!(tbv.value, 1.0);
            assert_eq!(tbv.error_bound, 0.0);
        }
    }

    #[test]
    fn geometric_norm_matches_partial_sum() {
        // oracle: direct summation of ((1-r) r^(i-1))^q far past decay
        let r: f64 = 0.7;
        let q = 0.6;
        let tbv = family_norm(geo(r), q, 1e-12).unwrap();
        let sum = kahan_sum((0..2000).map(|i| ((1.0 - r) * r.powi(i)).powf(q)));
        let oracle = sum.powf(1.0 / q);
        assert!((tbv.value - oracle).abs() < 1e-12, "{} vs {oracle}", tbv.value);
    }

    #[test]
    fn zipf_norm_at_one_encloses_one() {
        let tbv = family_norm(zipf(2.0), 1.0, 1e-8).unwrap();
        assert!(tbv.error_bound <= 1e-8);
        assert!((tbv.value - 1.0).abs() <= tbv.error_bound + 1e-13);
    }

    #[test]
    fn zipf_norm_frozen_value() {
        // zeta(1.2)^(1/0.6)/zeta(2) evaluated at high precision
        let tbv = family_norm(zipf(2.0), 0.6, 1e-8).unwrap();
        assert!(tbv.error_bound <= 1e-8);
        assert!(
            (tbv.value - 10.708847295423614).abs() <= tbv.error_bound + 1e-9,
            "value = {}",
            tbv.value
        );
    }

    #[test]
    fn zipf_norm_divergent() {
        assert!(matches!(
            family_norm(zipf(2.0), 0.4, 1e-6),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(family_norm(zipf(2.0), 0.6, 0.0).is_err());
        assert!(family_entropy(zipf(2.0), -1.0).is_err());
        assert!(family_bracket(zipf(2.0), s(0.6), f64::NAN).is_err());
    }

    #[test]
    fn geometric_entropy_half_is_two_bits() {
        let tbv = family_entropy(geo(0.5), 1e-12).unwrap();
        assert_eq!(tbv.value, 2.0);
        assert_eq!(tbv.error_bound, 0.0);
        // oracle: truncated sum to N = 200
        let oracle = kahan_sum((0..200).map(|i| {
            let p = 0.5 * 0.5f64.powi(i);
            -p * p.log2()
        }));
        assert!((tbv.value - oracle).abs() < 1e-12);
    }

    #[test]
    fn geometric_entropy_vanishes_for_tiny_ratio() {
        let tbv = family_entropy(geo(1e-6), 1e-12).unwrap();
        assert!(tbv.value > 0.0);
        assert!(tbv.value < 3e-5, "value = {}", tbv.value);
    }

    #[test]
    fn zipf_entropy_against_direct_oracle() {
        // independent route: sum -p_i log2 p_i with p_i = i^-2 / (pi^2/6),
        // truncated at N = 2^23 with the same-order analytic tail allowance
        let tbv = family_entropy(zipf(2.0), 1e-6).unwrap();
        assert!(tbv.error_bound <= 1e-6);

        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let n = 1u64 << 23;
        let mut acc = KahanSum::new();
        for i in 1..=n {
            let p = (i as f64).powi(-2) / zeta2;
            if p > 0.0 {
                acc.add(-p * p.log2());
            }
        }
        // tail of the oracle is below (2 log2(N) + 4)/N
        let oracle_tail = (2.0 * (n as f64).log2() + 4.0) / n as f64;
        assert!(
            (tbv.value - acc.value()).abs() <= tbv.error_bound + oracle_tail,
            "value = {} oracle = {}",
            tbv.value,
            acc.value()
        );
        // frozen high-precision reference
        assert!((tbv.value - 2.3625895546987438).abs() <= tbv.error_bound + 1e-9);
    }

    #[test]
    fn truncation_consistency() {
        // halving the tolerance may not move the value by more than the
        // previous error bound (the enclosures are nested)
        let mut tol = 1e-3;
        let mut prev = family_entropy(zipf(2.0), tol).unwrap();
        for _ in 0..6 {
            tol /= 2.0;
            let next = family_entropy(zipf(2.0), tol).unwrap();
            assert!(
                (next.value - prev.value).abs() <= prev.error_bound * (1.0 + 1e-9) + 1e-15,
                "value moved {} > {}",
                (next.value - prev.value).abs(),
                prev.error_bound
            );
            prev = next;
        }
        let mut tol = 1e-2;
        let mut prev = family_norm(zipf(2.0), 0.7, tol).unwrap();
        for _ in 0..6 {
            tol /= 2.0;
            let next = family_norm(zipf(2.0), 0.7, tol).unwrap();
            assert!((next.value - prev.value).abs() <= prev.error_bound * (1.0 + 1e-9) + 1e-15);
            prev = next;
        }
    }

    #[test]
    fn geometric_bracket_contains_entropy() {
        let bracket = family_bracket(geo(0.5), s(0.9), 1e-10).unwrap();
        assert!(bracket.contains(2.0), "{bracket:?}");
        // frozen closed-form endpoints
        assert!((bracket.lower() - 1.656201508970316).abs() < 1e-12);
        assert!((bracket.upper() - 2.4993614365684045).abs() < 1e-12);
    }

    #[test]
    fn zipf_bracket_contains_entropy_enclosure() {
        let sigma = s(0.6);
        let bracket = family_bracket(zipf(2.0), sigma, 1e-6).unwrap();
        let entropy = family_entropy(zipf(2.0), 1e-6).unwrap();
        assert!(bracket.lower() <= entropy.value - entropy.error_bound);
        assert!(bracket.upper() >= entropy.value + entropy.error_bound);
        // frozen endpoints: C(0.6)(1 - zeta(2.8)^(1/1.4)/zeta(2)) and
        // C(0.6)(zeta(1.2)^(1/0.6)/zeta(2) - 1)
        assert!((bracket.lower() - 1.039595511090829).abs() < 1e-5);
        assert!((bracket.upper() - 35.01726461463968).abs() < 1e-4);
    }

    #[test]
    fn bracket_divergent_when_criterion_fails() {
        assert!(matches!(
            family_bracket(zipf(2.0), s(0.4), 1e-6),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn criterion_soundness() {
        let cases = [
            (zipf(2.0), 0.6),
            (zipf(2.0), 0.4),
            (zipf(2.0), 0.55),
            (zipf(1.2), 0.9),
            (zipf(1.2), 0.8),
            (zipf(3.0), 0.3),
            (geo(0.5), 0.5),
            (geo(0.99), 0.1),
        ];
        for (family, sv) in cases {
            let sigma = s(sv);
            let ok = family_bracket(family, sigma, 1e-4).is_ok();
            assert_eq!(
                ok,
                is_in_ell_sigma(family, sigma),
                "mismatch for {family:?} at sigma={sv}"
            );
        }
    }

    #[test]
    fn finite_truncation_agreement_geometric() {
        // truncating at N = 10^4 and renormalizing gives finite-dimensional
        // bounds matching the family-level ones (tail mass underflows)
        let r = 0.5f64;
        let sigma = s(0.9);
        let probs: Vec<f64> = (0..10_000).map(|i| 0.5 * r.powi(i)).collect();
        let d = Distribution::with_tolerance(probs, 1e-6).unwrap();
        let fam = family_bracket(geo(r), sigma, 1e-12).unwrap();
        assert!((entropy_lower_bound(&d, sigma) - fam.lower()).abs() < 1e-9);
        assert!((entropy_upper_bound(&d, sigma) - fam.upper()).abs() < 1e-9);
    }

    #[test]
    fn finite_truncation_agreement_zipf() {
        // tail mass after N = 10^4 is ~6.1e-5; the truncated bounds must sit
        // within tail_mass * C(sigma) * K of the family bounds. K frozen at
        // 16 from the measured ratio (~10.4 for the upper endpoint).
        let sigma = s(0.9);
        let n = 10_000u64;
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let probs: Vec<f64> = (1..=n).map(|i| (i as f64).powi(-2) / zeta2).collect();
        let tail_mass = 1.0 / (n as f64 * zeta2);
        let d = Distribution::with_tolerance(probs, 1e-4).unwrap();
        let fam = family_bracket(zipf(2.0), sigma, 1e-9).unwrap();
        let budget = tail_mass * sigma.constant() * 16.0;
        let d_up = (entropy_upper_bound(&d, sigma) - fam.upper()).abs();
        let d_lo = (entropy_lower_bound(&d, sigma) - fam.lower()).abs();
        assert!(d_up <= budget, "upper moved {d_up} > {budget}");
        assert!(d_lo <= budget, "lower moved {d_lo} > {budget}");
    }
}
