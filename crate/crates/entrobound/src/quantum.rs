//! von Neumann entropy and its norm-based bracket.
//!
//! H(rho) is the Shannon entropy of the spectrum, so everything reduces to
//! eigenvalue extraction. Complex Hermitian input is embedded into the real
//! symmetric matrix [[Re A, -Im A], [Im A, Re A]] and diagonalized with one
//! cyclic Jacobi kernel; the doubled spectrum is deduplicated by sorted
//! pairing. Fine at desk scale (dim <= 64).

use num_complex::Complex64;
use rand::Rng;

use crate::bounds::{entropy_bracket, Bracket};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::kahan::kahan_sum;
use crate::norms::shannon_entropy;
use crate::sigma::SigmaParam;

/// Max |A - A^dagger| accepted before rejecting as non-Hermitian.
pub const HERM_TOL: f64 = 1e-10;

/// |tr(A) - 1| accepted at construction.
pub const TRACE_TOL: f64 = 1e-9;

/// Eigenvalues down to -PSD_TOL are treated as numerical noise and clamped.
pub const PSD_TOL: f64 = 1e-9;

/// Convergence: off-diagonal Frobenius mass <= OFF_TOL * ||A||_F.
const OFF_TOL: f64 = 1e-13;

const MAX_SWEEPS: usize = 100;

/// Hermitian, unit-trace matrix. Positive semidefiniteness is checked after
/// diagonalization, where it is actually observable.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>, // row-major, hermitized
}

impl DensityMatrix {
    /// Validate a row-major dim x dim matrix: Hermitian within [`HERM_TOL`],
    /// trace within [`TRACE_TOL`] of 1. Accepted input is symmetrized to
    /// (A + A^dagger)/2.
    pub fn new(dim: usize, mut entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: entries.len() / dim.max(1),
            });
        }
        let mut max_dev = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let dev = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                max_dev = max_dev.max(dev);
            }
        }
        if max_dev > HERM_TOL {
            return Err(Error::NotHermitian { max_dev });
        }
        let trace: Complex64 = (0..dim).map(|i| entries[i * dim + i]).sum();
        if (trace.re - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        for i in 0..dim {
            for j in i..dim {
                let h = 0.5 * (entries[i * dim + j] + entries[j * dim + i].conj());
                entries[i * dim + j] = h;
                entries[j * dim + i] = h.conj();
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
        }
        Self::new(dim, rows.concat())
    }

    /// diag(p) for a probability distribution p.
    pub fn from_diagonal(p: &Distribution) -> Self {
        let dim = p.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &v) in p.probs().iter().enumerate() {
            entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        Self { dim, entries }
    }

    /// Parse the plain-text format: first line `dim`, then dim^2 lines
    /// `row col re im` (0-indexed, whitespace-separated). Blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, dim_line) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty file".into(),
        })?;
        let dim: usize = dim_line.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("expected dimension, got {dim_line:?}"),
        })?;
        if dim == 0 {
            return Err(Error::Parse {
                line: line_no,
                msg: "dimension must be positive".into(),
            });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `row col re im`, got {line:?}"),
                });
            }
            let parse_idx = |f: &str| -> Result<usize> {
                f.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad index {f:?}"),
                })
            };
            let parse_val = |f: &str| -> Result<f64> {
                f.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad value {f:?}"),
                })
            };
            let (row, col) = (parse_idx(fields[0])?, parse_idx(fields[1])?);
            if row >= dim || col >= dim {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("index ({row},{col}) out of range for dim {dim}"),
                });
            }
            if seen[row * dim + col] {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("duplicate entry ({row},{col})"),
                });
            }
            seen[row * dim + col] = true;
            entries[row * dim + col] = Complex64::new(parse_val(fields[2])?, parse_val(fields[3])?);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "missing entry ({},{}) (need all {} entries)",
                    missing / dim,
                    missing % dim,
                    dim * dim
                ),
            });
        }
        Self::new(dim, entries)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        kahan_sum((0..self.dim).map(|i| self.entries[i * self.dim + i].re))
    }

    fn frobenius_norm(&self) -> f64 {
        kahan_sum(self.entries.iter().map(|z| z.norm_sqr())).sqrt()
    }

    /// Conjugate by a random unitary built from complex Givens rotations,
    /// one per index pair, with uniform angles. The spectrum is preserved,
    /// which makes states with known spectra cheap to sample in tests.
    pub fn rotated_by_random_unitary<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let n = self.dim;
        let mut m = self.entries.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let phi = rng.gen_range(0.0..std::f64::consts::TAU);
                let c = theta.cos();
                let s = Complex64::from_polar(theta.sin(), phi);
                // rows: G * m
                for k in 0..n {
                    let a = m[i * n + k];
                    let b = m[j * n + k];
                    m[i * n + k] = c * a - s.conj() * b;
                    m[j * n + k] = s * a + c * b;
                }
                // columns: m * G^dagger
                for k in 0..n {
                    let a = m[k * n + i];
                    let b = m[k * n + j];
                    m[k * n + i] = c * a - s * b;
                    m[k * n + j] = s.conj() * a + c * b;
                }
            }
        }
        Self::new(n, m).expect("unitary conjugation preserves the density-matrix invariants")
    }
}

/// Free-function form of the validating constructor.
pub fn validate_density_matrix(rows: &[Vec<Complex64>]) -> Result<DensityMatrix> {
    DensityMatrix::from_rows(rows)
}

/// Cyclic Jacobi sweeps on a real symmetric matrix; returns the diagonal
/// once the off-diagonal Frobenius mass falls below `off_tol`.
fn jacobi_diagonal(mut b: Vec<f64>, n: usize, off_tol: f64) -> Result<Vec<f64>> {
    for _ in 0..MAX_SWEEPS {
        let off = kahan_sum((0..n).flat_map(|p| {
            let b = &b;
            ((p + 1)..n).map(move |q| 2.0 * b[p * n + q] * b[p * n + q])
        }))
        .sqrt();
        if off <= off_tol {
            return Ok((0..n).map(|i| b[i * n + i]).collect());
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = b[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (b[q * n + q] - b[p * n + p]) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = b[k * n + p];
                    let akq = b[k * n + q];
                    b[k * n + p] = c * akp - s * akq;
                    b[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = b[p * n + k];
                    let aqk = b[q * n + k];
                    b[p * n + k] = c * apk - s * aqk;
                    b[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(Error::NoConvergence)
}

/// All eigenvalues of the density matrix, descending.
///
/// Diagonalizes the real-symmetric embedding [[Re A, -Im A], [Im A, Re A]],
/// whose spectrum is that of A with every eigenvalue doubled; sorted
/// adjacent pairs are averaged back down to dim values.
pub fn hermitian_eigenvalues(m: &DensityMatrix) -> Result<Vec<f64>> {
    let n = m.dim;
    let nn = 2 * n;
    let mut b = vec![0.0f64; nn * nn];
    for i in 0..n {
        for j in 0..n {
            let z = m.entries[i * n + j];
            b[i * nn + j] = z.re;
            b[i * nn + (n + j)] = -z.im;
            b[(n + i) * nn + j] = z.im;
            b[(n + i) * nn + (n + j)] = z.re;
        }
    }
    let off_tol = OFF_TOL * m.frobenius_norm();
    let mut diag = jacobi_diagonal(b, nn, off_tol)?;
    diag.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    Ok(diag.chunks_exact(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// Eigenvalues clamped at zero and renormalized into a Distribution.
fn clamped_spectrum(m: &DensityMatrix) -> Result<Distribution> {
    let eigenvalues = hermitian_eigenvalues(m)?;
    let min = eigenvalues.last().copied().unwrap_or(0.0);
    if min < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let clamped: Vec<f64> = eigenvalues.iter().map(|&v| v.max(0.0)).collect();
    let total = kahan_sum(clamped.iter().copied());
    let spectrum: Vec<f64> = clamped.iter().map(|&v| v / total).collect();
    Ok(Distribution::new(spectrum).expect("renormalized spectrum is a valid distribution"))
}

/// von Neumann entropy H(rho) in bits: the Shannon entropy of the spectrum.
pub fn von_neumann_entropy(m: &DensityMatrix) -> Result<f64> {
    Ok(shannon_entropy(&clamped_spectrum(m)?))
}

/// The entropy bracket applied to the spectrum; contains H(rho).
pub fn von_neumann_bracket(m: &DensityMatrix, sigma: SigmaParam) -> Result<Bracket> {
    Ok(entropy_bracket(&clamped_spectrum(m)?, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(values: &[f64]) -> DensityMatrix {
        DensityMatrix::from_diagonal(&Distribution::new(values.to_vec()).unwrap())
    }

    #[test]
    fn validation_accepts_mixed_qubit() {
        let m = validate_density_matrix(&[
            vec![c(0.5, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        // trace 1.4
        let err = validate_density_matrix(&[
            vec![c(0.7, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.7, 0.0)],
        ])
        .unwrap_err();
        assert!(matches!(err, Error::TraceNotOne { .. }));

        // non-Hermitian off-diagonal
        let err = validate_density_matrix(&[
            vec![c(0.5, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));

        // ragged rows
        let err =
            validate_density_matrix(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0)]])
                .unwrap_err();
        assert!(matches!(err, Error::NotSquare { .. }));
    }

    #[test]
    fn hermitian_with_negative_eigenvalue_fails_only_at_psd_check() {
        // [[0.5, i], [-i, 0.5]] is Hermitian with unit trace but has
        // spectrum {1.5, -0.5}
        let rows = vec![
            vec![c(0.5, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(0.5, 0.0)],
        ];
        let m = validate_density_matrix(&rows).unwrap();
        let evs = hermitian_eigenvalues(&m).unwrap();
        assert!((evs[0] - 1.5).abs() < 1e-10);
        assert!((evs[1] + 0.5).abs() < 1e-10);
        assert!(matches!(
            von_neumann_entropy(&m),
            Err(Error::NotPsd { .. })
        ));
        let sigma = SigmaParam::new(0.9).unwrap();
        assert!(matches!(
            von_neumann_bracket(&m, sigma),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let m = diag(&[0.1, 0.5, 0.4]);
        let evs = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(evs.len(), 3);
        for (got, want) in evs.iter().zip([0.5, 0.4, 0.1]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_of_projector() {
        // [[0.5, 0.5], [0.5, 0.5]] has spectrum {1, 0}
        let m = validate_density_matrix(&[
            vec![c(0.5, 0.0), c(0.5, 0.0)],
            vec![c(0.5, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let evs = hermitian_eigenvalues(&m).unwrap();
        assert!((evs[0] - 1.0).abs() < 1e-12);
        assert!(evs[1].abs() < 1e-12);
        assert!(von_neumann_entropy(&m).unwrap() < 1e-10);
    }

    #[test]
    fn entropy_known_states() {
        assert_eq!(von_neumann_entropy(&diag(&[1.0, 0.0])).unwrap(), 0.0);
        assert!((von_neumann_entropy(&diag(&[0.5, 0.5])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_reduction_matches_shannon() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let dim = rng.gen_range(1..=12);
            let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(1e-6..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let p = Distribution::new(raw.into_iter().map(|v| v / total).collect()).unwrap();
            let h = von_neumann_entropy(&DensityMatrix::from_diagonal(&p)).unwrap();
            assert!((h - shannon_entropy(&p)).abs() < 1e-10);
        }
    }

    #[test]
    fn construct_then_recover_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2usize, 4, 8] {
            for _ in 0..10 {
                let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(1e-4..1.0)).collect();
                let total: f64 = raw.iter().sum();
                let mut expected: Vec<f64> = raw.iter().map(|v| v / total).collect();
                expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
                let p = Distribution::new(expected.clone()).unwrap();
                let rho = DensityMatrix::from_diagonal(&p).rotated_by_random_unitary(&mut rng);
                let evs = hermitian_eigenvalues(&rho).unwrap();
                for (got, want) in evs.iter().zip(&expected) {
                    assert!((got - want).abs() < 1e-9, "{got} vs {want} at dim {dim}");
                }
            }
        }
    }

    #[test]
    fn trace_is_conserved_by_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in [2usize, 5, 16] {
            let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let p = Distribution::new(raw.into_iter().map(|v| v / total).collect()).unwrap();
            let rho = DensityMatrix::from_diagonal(&p).rotated_by_random_unitary(&mut rng);
            let evs = hermitian_eigenvalues(&rho).unwrap();
            assert!((kahan_sum(evs.iter().copied()) - rho.trace()).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_invariance_of_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let p = Distribution::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let rho = DensityMatrix::from_diagonal(&p);
        let h = von_neumann_entropy(&rho).unwrap();
        let rotated = rho.rotated_by_random_unitary(&mut rng);
        assert!((von_neumann_entropy(&rotated).unwrap() - h).abs() < 1e-8);
    }

    #[test]
    fn bracket_contains_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sigma = SigmaParam::new(0.9).unwrap();
        let p = Distribution::new(vec![0.6, 0.25, 0.1, 0.05]).unwrap();
        let rho = DensityMatrix::from_diagonal(&p).rotated_by_random_unitary(&mut rng);
        let h = von_neumann_entropy(&rho).unwrap();
        let b = von_neumann_bracket(&rho, sigma).unwrap();
        assert!(b.lower() <= h + 1e-10 && h <= b.upper() + 1e-10);
        // pure state: bracket collapses to (0, 0)
        let pure = von_neumann_bracket(&diag(&[1.0, 0.0, 0.0]), sigma).unwrap();
        assert_eq!((pure.lower(), pure.upper()), (0.0, 0.0));
    }

    #[test]
    fn parse_round_trip() {
        let text = "# maximally mixed qubit\n2\n0 0 0.5 0\n0 1 0 0\n1 0 0 0\n1 1 0.5 0\n";
        let m = DensityMatrix::parse(text).unwrap();
        assert_eq!(m.dim(), 2);
        assert!((von_neumann_entropy(&m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            DensityMatrix::parse(""),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            DensityMatrix::parse("x\n"),
            Err(Error::Parse { .. })
        ));
        // missing entries
        assert!(matches!(
            DensityMatrix::parse("2\n0 0 0.5 0\n"),
            Err(Error::Parse { .. })
        ));
        // duplicate entry
        assert!(matches!(
            DensityMatrix::parse("1\n0 0 1 0\n0 0 1 0\n"),
            Err(Error::Parse { .. })
        ));
        // out-of-range index
        assert!(matches!(
            DensityMatrix::parse("1\n0 3 1 0\n"),
            Err(Error::Parse { .. })
        ));
    }
}
