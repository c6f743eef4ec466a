//! Fixed-time sampling of the drifted Hermitian ensemble and its minor
//! eigenvalue pattern.

use num_complex::Complex64;

use crate::drift::DriftSpec;
use crate::error::{Error, Result};
use crate::linalg::{eigh, HermitianMatrix};
use crate::pattern::GtPattern;
use crate::rng::RngStream;

/// Interlacing can be violated by eigensolver round-off at near-degenerate
/// minors; this slack absorbs it.
pub const INTERLACING_SLACK: f64 = 1e-9;

/// Draws `H(t)`: diagonal entries `Normal(mu_k t, t)`, off-diagonal entries
/// `(g1 + i g2)/sqrt 2` with independent `g_i ~ Normal(0, t)`.
pub fn sample_matrix(n: usize, t: f64, d: &DriftSpec, rng: &mut RngStream) -> HermitianMatrix {
    assert!(t > 0.0 && n >= 1 && n <= d.order());
    let sqrt_t = t.sqrt();
    let mut h = HermitianMatrix::zeros(n);
    for j in 0..n {
        let diag = d.drift(j + 1) * t + sqrt_t * rng.normal();
        h.set_pair(j, j, Complex64::new(diag, 0.0));
        for k in j + 1..n {
            let re = sqrt_t * rng.normal() / std::f64::consts::SQRT_2;
            let im = sqrt_t * rng.normal() / std::f64::consts::SQRT_2;
            h.set_pair(j, k, Complex64::new(re, im));
        }
    }
    h
}

/// Eigenvalues of every leading principal submatrix, assembled into a
/// Gelfand-Tsetlin pattern. Cauchy interlacing guarantees the cone up to
/// round-off; a violation beyond the slack is reported as an error.
pub fn minor_eigenvalues(h: &HermitianMatrix) -> Result<GtPattern> {
    let n = h.order();
    let mut levels = Vec::with_capacity(n);
    for m in 1..=n {
        let sub = h.leading_minor(m);
        let result = eigh(&sub)?;
        levels.push(result.eigenvalues);
    }
    let pattern = GtPattern::new_unchecked(levels)?;
    if !pattern.interlaces(INTERLACING_SLACK) {
        return Err(Error::Invalid(
            "minor eigenvalues violate interlacing beyond eigensolver slack".into(),
        ));
    }
    Ok(pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minor_eigenvalues_of_diagonal_matrix() {
        let mut h = HermitianMatrix::zeros(3);
        for (j, v) in [1.0, 2.0, 3.0].iter().enumerate() {
            h.set_pair(j, j, Complex64::new(*v, 0.0));
        }
        let pattern = minor_eigenvalues(&h).unwrap();
        assert_eq!(pattern.level(1), &[1.0]);
        assert_eq!(pattern.level(2), &[1.0, 2.0]);
        assert_eq!(pattern.level(3), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn minor_eigenvalues_of_pauli_x() {
        let mut h = HermitianMatrix::zeros(2);
        h.set_pair(0, 1, Complex64::new(1.0, 0.0));
        let pattern = minor_eigenvalues(&h).unwrap();
        assert_eq!(pattern.level(1), &[0.0]);
        assert!((pattern.level(2)[0] + 1.0).abs() < 1e-14);
        assert!((pattern.level(2)[1] - 1.0).abs() < 1e-14);
        assert!(pattern.interlaces(0.0));
    }

    #[test]
    fn random_minors_interlace() {
        let d = DriftSpec::new(vec![-1.0, -0.5, 0.0, 0.5, 1.0]).unwrap();
        let mut rng = RngStream::new(11, 0);
        for _ in 0..200 {
            let h = sample_matrix(5, 1.0, &d, &mut rng);
            let pattern = minor_eigenvalues(&h).unwrap();
            assert!(pattern.interlaces(1e-10));
        }
    }

    #[test]
    fn small_time_matrix_concentrates_on_the_drift() {
        let d = DriftSpec::new(vec![-1.0, 2.0]).unwrap();
        let mut rng = RngStream::new(3, 0);
        let t = 1e-8;
        let h = sample_matrix(2, t, &d, &mut rng);
        assert!((h.get(0, 0).re - (-t)).abs() < 1e-3);
        assert!((h.get(1, 1).re - 2.0 * t).abs() < 1e-3);
        assert!(h.get(0, 1).norm() < 1e-3);
    }

    #[test]
    fn entry_moments_match_the_definition() {
        let d = DriftSpec::new(vec![0.7, -0.2]).unwrap();
        let t = 1.3;
        let mut rng = RngStream::new(99, 0);
        let n = 100_000;
        let (mut sum11, mut sq11, mut sq_re12) = (0.0, 0.0, 0.0);
        for _ in 0..n {
            let h = sample_matrix(2, t, &d, &mut rng);
            let h11 = h.get(0, 0).re;
            sum11 += h11;
            sq11 += (h11 - 0.7 * t) * (h11 - 0.7 * t);
            let re12 = h.get(0, 1).re;
            sq_re12 += re12 * re12;
        }
        let n = n as f64;
        // 4-sigma bands around E[H_11] = mu_1 t, Var[H_11] = t, Var[Re H_12] = t/2.
        assert!((sum11 / n - 0.7 * t).abs() < 4.0 * (t / n).sqrt());
        assert!((sq11 / n - t).abs() < 4.0 * t * (2.0 / n).sqrt());
        assert!((sq_re12 / n - t / 2.0).abs() < 4.0 * (t / 2.0) * (2.0 / n).sqrt());
    }
}
