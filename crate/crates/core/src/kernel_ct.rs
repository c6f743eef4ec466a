//! The fixed-time correlation kernel of the drifted minor process and the
//! joint densities it determines.
//!
//! The kernel is
//!
//! `K_t((x,n),(x',n')) = -phi^{(n,n')}(x,x') + sum_{k=1}^{n'} Psi_{n-k}^{n,t}(x) Phi_{n'-k}^{n',t}(x')`
//!
//! with the one-sided families
//!
//! * `Psi_{n-k}^{n,t}(x) = ((-1)^{n-k} / 2 pi i) int_{iR + mu_-} e^{t z^2/2 - x z} R_{n,k}(z) dz`,
//!   `R_{n,k}(z) = (z - mu_{k+1})...(z - mu_n)` for `k <= n` and
//!   `1 / ((z - mu_{n+1})...(z - mu_k))` for `k > n`;
//! * `Phi_{n-l}^{n,t}(x) = ((-1)^{n-l} / 2 pi i) oint e^{-t w^2/2 + x w} / ((w - mu_l)...(w - mu_n)) dw`,
//!   the contour enclosing all drift poles;
//! * `phi^{(n,n')}(x,x')` the `n -> n'` transition weight, supported on `x > x'`.
//!
//! Each function has two independent evaluation routes: a closed form
//! (symmetric-polynomial representation for `Psi`, residue sums for `Phi` and
//! the transition) and contour quadrature on the defining integral. The
//! closed forms are the production path; quadrature is kept as the oracle the
//! tests compare against, and as the route for `Psi` with `k > n`, where no
//! polynomial form exists.

use num_complex::Complex64;

use crate::drift::{DriftSpec, CONFLUENCE_EPSILON, CONFLUENCE_THRESHOLD};
use crate::error::Result;
use crate::linalg::det_real;
use crate::pattern::{GtPattern, KernelPoint};
use crate::quad::{
    gaussian_truncation, integrate_circle, integrate_vertical, CircleContour,
    VerticalLineContour, DEFAULT_TOL,
};
use crate::sympoly::sym_poly_p;

/// `Psi_{n-k}^{n,t}(x)`; `k` may exceed `n`, as needed by the kernel sum for
/// `n' > n`. Uses the exact symmetric-polynomial form for `k <= n` and
/// contour quadrature otherwise.
pub fn psi(n: usize, k: usize, t: f64, x: f64, d: &DriftSpec) -> Result<f64> {
    assert!(t > 0.0, "psi requires t > 0");
    assert!(n >= 1 && k >= 1);
    if k <= n {
        Ok(psi_poly(n, k, t, x, d))
    } else {
        psi_quadrature(n, k, t, x, d, DEFAULT_TOL)
    }
}

/// Hermite-type closed form, valid for `1 <= k <= n`:
/// `Psi_{n-k}^{n,t}(x) = e^{-x^2/(2t)} / sqrt(2 pi t) * t^{-(n-k)/2}
///  * p_{n-k}((mu_{k+1} t - x)/sqrt t, ..., (mu_n t - x)/sqrt t)`.
pub fn psi_poly(n: usize, k: usize, t: f64, x: f64, d: &DriftSpec) -> f64 {
    assert!(k >= 1 && k <= n && n <= d.order());
    let sqrt_t = t.sqrt();
    let points: Vec<f64> = (k + 1..=n)
        .map(|j| (d.drift(j) * t - x) / sqrt_t)
        .collect();
    let gauss = (-x * x / (2.0 * t)).exp() / (2.0 * std::f64::consts::PI * t).sqrt();
    gauss * t.powf(-((n - k) as f64) / 2.0) * sym_poly_p(&points)
}

/// Defining vertical-line integral for `Psi`, any `k >= 1`.
pub fn psi_quadrature(n: usize, k: usize, t: f64, x: f64, d: &DriftSpec, tol: f64) -> Result<f64> {
    assert!(t > 0.0);
    let a = d.contour_abscissa();
    let mut log_prefactor = t * a * a / 2.0 - x * a;
    let (degree, scale) = if k <= n {
        let scale = (k + 1..=n)
            .map(|j| (a - d.drift(j)).abs())
            .fold(0.0f64, f64::max);
        (n - k, scale)
    } else {
        for j in n + 1..=k {
            log_prefactor -= (a - d.drift(j)).abs().ln();
        }
        (0, 1.0)
    };
    let half_extent = gaussian_truncation(t, log_prefactor, degree, scale, tol);
    let contour = VerticalLineContour::new(a, half_extent, 64)?;
    let sign = if (n as i64 - k as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let value = integrate_vertical(
        |z| {
            let mut f = (t * z * z / 2.0 - x * z).exp();
            if k <= n {
                for j in k + 1..=n {
                    f *= z - d.drift(j);
                }
            } else {
                for j in n + 1..=k {
                    f /= z - d.drift(j);
                }
            }
            f
        },
        &contour,
        tol,
    )?;
    Ok(sign * value.re)
}

/// `Phi_{n-l}^{n,t}(x)` as the finite residue sum over the simple poles
/// `mu_l, ..., mu_n`:
///
/// `Phi_{n-l}^{n,t}(x) = sum_{i=l}^{n} e^{-t mu_i^2/2 + mu_i x}
///  prod_{j in [l,n], j != i} 1/(mu_j - mu_i)`.
///
/// The denominator orientation `mu_j - mu_i` absorbs the `(-1)^{n-l}`
/// prefactor of the defining integral; biorthogonality against `Psi` pins it
/// down, and the quadrature oracle below agrees.
pub fn phi_cap(n: usize, l: usize, t: f64, x: f64, d: &DriftSpec) -> Result<f64> {
    assert!(l >= 1 && l <= n && n <= d.order());
    d.require_distinct()?;
    let mut acc = 0.0;
    for i in l..=n {
        let mu_i = d.drift(i);
        let mut term = (-t * mu_i * mu_i / 2.0 + mu_i * x).exp();
        for j in l..=n {
            if j != i {
                term /= d.drift(j) - mu_i;
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Circle-contour oracle on the defining integral of `Phi`.
pub fn phi_cap_quadrature(
    n: usize,
    l: usize,
    t: f64,
    x: f64,
    d: &DriftSpec,
    tol: f64,
) -> Result<f64> {
    let (min, max) = d
        .drifts()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &m| {
            (lo.min(m), hi.max(m))
        });
    let center = Complex64::new(0.5 * (min + max), 0.0);
    let radius = 0.5 * (max - min) + 1.0;
    let contour = CircleContour::new(center, radius, 32)?;
    let sign = if (n - l) % 2 == 0 { 1.0 } else { -1.0 };
    let value = integrate_circle(
        |w| {
            let mut f = (-t * w * w / 2.0 + x * w).exp();
            for j in l..=n {
                f /= w - d.drift(j);
            }
            f
        },
        &contour,
        tol,
    )?;
    Ok(sign * value.re)
}

/// One-step transition weight `phi_n(x, y) = e^{mu_n (y - x)} 1_{x > y}`.
pub fn phi_step(n: usize, x: f64, y: f64, d: &DriftSpec) -> f64 {
    if x > y {
        (d.drift(n) * (y - x)).exp()
    } else {
        0.0
    }
}

/// `phi^{(n,n')}(x, y)`: zero for `n >= n'`, the one-step weight for
/// `n' = n + 1`, and for larger gaps the residue sum
/// `sum_{i=n+1}^{n'} e^{mu_i (y - x)} prod_{j != i} 1/(mu_j - mu_i) 1_{x > y}`.
pub fn phi_transition(n: usize, n_prime: usize, x: f64, y: f64, d: &DriftSpec) -> Result<f64> {
    if n_prime <= n {
        return Ok(0.0);
    }
    if n_prime == n + 1 {
        return Ok(phi_step(n_prime, x, y, d));
    }
    if x <= y {
        return Ok(0.0);
    }
    d.require_distinct()?;
    let mut acc = 0.0;
    for i in n + 1..=n_prime {
        let mu_i = d.drift(i);
        let mut term = (mu_i * (y - x)).exp();
        for j in n + 1..=n_prime {
            if j != i {
                term /= d.drift(j) - mu_i;
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Contour oracle for the transition weight, `n' - n >= 2`. For `x > y` the
/// factor `e^{z(y-x)}` decays to the right, so the defining vertical-line
/// integral closes around the drift poles; the quadrature runs on that
/// positively oriented circle (the closure flips the sign once). For
/// `x <= y` the contour closes to the left around nothing.
pub fn phi_transition_quadrature(
    n: usize,
    n_prime: usize,
    x: f64,
    y: f64,
    d: &DriftSpec,
    tol: f64,
) -> Result<f64> {
    assert!(n_prime >= n + 2, "integral form needs n' - n >= 2");
    if x <= y {
        return Ok(0.0);
    }
    let (min, max) = (n + 1..=n_prime)
        .map(|j| d.drift(j))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| {
            (lo.min(m), hi.max(m))
        });
    let contour = CircleContour::new(
        Complex64::new(0.5 * (min + max), 0.0),
        0.5 * (max - min) + 1.0,
        32,
    )?;
    let gap = n_prime - n;
    let sign = if gap % 2 == 0 { -1.0 } else { 1.0 };
    let value = integrate_circle(
        |z| {
            let mut f = (z * (y - x)).exp();
            for j in n + 1..=n_prime {
                f /= z - d.drift(j);
            }
            f
        },
        &contour,
        tol,
    )?;
    Ok(sign * value.re)
}

/// The correlation kernel `K_t`.
pub fn kernel(t: f64, a: KernelPoint, b: KernelPoint, d: &DriftSpec) -> Result<f64> {
    assert!(t > 0.0, "kernel requires t > 0");
    let n = a.n;
    let n_prime = b.n;
    assert!(n <= d.order() && n_prime <= d.order());
    let mut acc = -phi_transition(n, n_prime, a.x, b.x, d)?;
    for k in 1..=n_prime {
        let psi_val = psi(n, k, t, a.x, d)?;
        if psi_val != 0.0 {
            acc += psi_val * phi_cap(n_prime, k, t, b.x, d)?;
        }
    }
    Ok(acc)
}

/// Kernel evaluation that stays defined at (near-)confluent drifts: below the
/// separation threshold the drifts are perturbed to `mu_j + j eps` and the
/// limit is recovered by two-point Richardson extrapolation in `eps`.
pub fn kernel_confluent_safe(t: f64, a: KernelPoint, b: KernelPoint, d: &DriftSpec) -> Result<f64> {
    if d.separation() >= CONFLUENCE_THRESHOLD {
        return kernel(t, a, b, d);
    }
    let coarse = kernel(t, a, b, &d.perturbed(CONFLUENCE_EPSILON)?)?;
    let fine = kernel(t, a, b, &d.perturbed(CONFLUENCE_EPSILON / 2.0)?)?;
    Ok(2.0 * fine - coarse)
}

/// `rho^m = det[K_t(p_i, p_j)]`.
pub fn correlation(t: f64, points: &[KernelPoint], d: &DriftSpec) -> Result<f64> {
    assert!(!points.is_empty());
    let m = points.len();
    let mut matrix = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            matrix[i][j] = kernel(t, points[i], points[j], d)?;
        }
    }
    Ok(det_real(&matrix))
}

/// Joint density of the full pattern, evaluated in its determinant product
/// form
///
/// `p_t(lambda) = det[Psi_{N-k}^{N,t}(lambda_l^N)] prod_n e^{-t mu_n^2/2}
///  prod_n det[phi_n(lambda_i^{n-1}, lambda_j^n)]`,
///
/// with the virtual argument convention `phi_n(virt, y) = e^{mu_n y}`. The
/// product of determinants vanishes off the interlacing cone; the explicit
/// check below just avoids returning round-off dust there.
pub fn density_full_pattern(t: f64, pattern: &GtPattern, d: &DriftSpec) -> Result<f64> {
    let n_levels = pattern.order();
    assert!(n_levels == d.order(), "pattern and drift orders must match");
    if !pattern.interlaces(0.0) {
        return Ok(0.0);
    }

    let top = pattern.level(n_levels);
    let mut psi_matrix = vec![vec![0.0; n_levels]; n_levels];
    for k in 1..=n_levels {
        for l in 1..=n_levels {
            psi_matrix[k - 1][l - 1] = psi_poly(n_levels, k, t, top[l - 1], d);
        }
    }
    let mut density = det_real(&psi_matrix);

    for level in 1..=n_levels {
        density *= (-t * d.drift(level) * d.drift(level) / 2.0).exp();
    }

    for level in 1..=n_levels {
        let mu = d.drift(level);
        let cols = pattern.level(level);
        let mut phi_matrix = vec![vec![0.0; level]; level];
        for (i, row) in phi_matrix.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = if i + 1 == level {
                    // virtual variable in the last row
                    (mu * cols[j]).exp()
                } else {
                    phi_step(level, pattern.level(level - 1)[i], cols[j], d)
                };
            }
        }
        density *= det_real(&phi_matrix);
    }
    Ok(density)
}

/// Gaussian moments `E[X^r]`, `X ~ Normal(mean, variance)`, orders `0..=max`.
fn gaussian_moments(mean: f64, variance: f64, max_order: usize) -> Vec<f64> {
    let mut m = Vec::with_capacity(max_order + 1);
    m.push(1.0);
    if max_order >= 1 {
        m.push(mean);
    }
    for r in 2..=max_order {
        let value = mean * m[r - 1] + (r - 1) as f64 * variance * m[r - 2];
        m.push(value);
    }
    m
}

/// Top-level marginal density
///
/// `p(lambda) = det[e^{-(lambda_i - t mu_j)^2 / (2t)}] Delta(lambda) / Z`,
///
/// with the normalization fixed in closed form by the Andreief identity:
/// `Z = det[ sqrt(2 pi t) m_{k-1}(t mu_j, t) ]` where `m_r(a, t)` is the
/// `r`-th moment of `Normal(a, t)`. This replaces the numeric normalization
/// the integral would otherwise need; the tests confirm it integrates to one.
pub fn density_top_level(t: f64, top: &[f64], d: &DriftSpec) -> Result<f64> {
    let n = top.len();
    assert!(n == d.order());
    d.require_distinct()?;
    debug_assert!(top.windows(2).all(|w| w[0] <= w[1]), "top level must ascend");

    let mut gauss = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let diff = top[i] - t * d.drift(j + 1);
            gauss[i][j] = (-diff * diff / (2.0 * t)).exp();
        }
    }
    let mut vandermonde = 1.0;
    for i in 0..n {
        for j in 0..i {
            vandermonde *= top[i] - top[j];
        }
    }
    let sqrt_2pi_t = (2.0 * std::f64::consts::PI * t).sqrt();
    let mut z_matrix = vec![vec![0.0; n]; n];
    for j in 0..n {
        let moments = gaussian_moments(t * d.drift(j + 1), t, n.saturating_sub(1));
        for (k, row) in moments.iter().enumerate() {
            z_matrix[j][k] = sqrt_2pi_t * row;
        }
    }
    Ok(det_real(&gauss) * vandermonde / det_real(&z_matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_real;

    const INV_SQRT_2PI: f64 = 0.3989422804014327;

    fn normal_density(x: f64, mean: f64, variance: f64) -> f64 {
        (-(x - mean) * (x - mean) / (2.0 * variance)).exp()
            / (2.0 * std::f64::consts::PI * variance).sqrt()
    }

    #[test]
    fn psi_level_one_is_the_heat_kernel() {
        let d = DriftSpec::new(vec![0.7]).unwrap();
        assert!((psi(1, 1, 1.0, 0.0, &d).unwrap() - INV_SQRT_2PI).abs() < 1e-12);
        let expected = (-0.5f64).exp() * INV_SQRT_2PI;
        assert!((psi(1, 1, 1.0, 1.0, &d).unwrap() - expected).abs() < 1e-12);
        // Independent of the drift value.
        let d2 = DriftSpec::new(vec![-2.3]).unwrap();
        assert!((psi(1, 1, 1.0, 1.0, &d2).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn psi_zero_drift_odd_polynomial_vanishes() {
        let d = DriftSpec::new(vec![0.0, 0.0]).unwrap();
        assert!(psi_poly(2, 1, 1.0, 0.0, &d).abs() < 1e-15);
        assert!(psi_quadrature(2, 1, 1.0, 0.0, &d, 1e-12).unwrap().abs() < 1e-11);
    }

    #[test]
    fn psi_quadrature_agrees_with_polynomial_path() {
        let d = DriftSpec::new(vec![-1.4, 0.3, 0.9, 1.8]).unwrap();
        for t in [0.5, 1.0, 2.0] {
            for x in [-2.0, -0.3, 0.0, 1.1, 3.0] {
                for n in 1..=4usize {
                    for k in 1..=n {
                        let exact = psi_poly(n, k, t, x, &d);
                        let quad = psi_quadrature(n, k, t, x, &d, 1e-12).unwrap();
                        assert!(
                            (exact - quad).abs() <= 1e-10 * exact.abs().max(1.0),
                            "n={n} k={k} t={t} x={x}: {exact} vs {quad}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn phi_cap_single_pole_closed_form() {
        let d = DriftSpec::new(vec![0.8]).unwrap();
        let t = 1.3;
        let x = 0.4;
        let expected = f64::exp(-t * 0.8 * 0.8 / 2.0 + 0.8 * x);
        assert!((phi_cap(1, 1, t, x, &d).unwrap() - expected).abs() < 1e-14);
        let zero_drift = DriftSpec::new(vec![0.0]).unwrap();
        assert_eq!(phi_cap(1, 1, 2.0, 0.0, &zero_drift).unwrap(), 1.0);
    }

    #[test]
    fn phi_cap_two_pole_cancellation_at_t_zero() {
        let d = DriftSpec::new(vec![0.0, 1.0]).unwrap();
        assert!(phi_cap(2, 1, 0.0, 0.0, &d).unwrap().abs() < 1e-15);
    }

    #[test]
    fn phi_cap_residues_match_contour_oracle() {
        let d = DriftSpec::new(vec![-1.0, 0.0, 1.0]).unwrap();
        let residue = phi_cap(3, 2, 1.0, 0.5, &d).unwrap();
        let oracle = phi_cap_quadrature(3, 2, 1.0, 0.5, &d, 1e-12).unwrap();
        assert!((residue - oracle).abs() < 1e-9, "{residue} vs {oracle}");
        // And across every (n, l) pair at a few evaluation points.
        for n in 1..=3usize {
            for l in 1..=n {
                for x in [-1.0, 0.0, 0.7] {
                    let r = phi_cap(n, l, 0.8, x, &d).unwrap();
                    let q = phi_cap_quadrature(n, l, 0.8, x, &d, 1e-12).unwrap();
                    assert!((r - q).abs() < 1e-9, "n={n} l={l} x={x}: {r} vs {q}");
                }
            }
        }
    }

    #[test]
    fn phi_step_cases() {
        let d = DriftSpec::new(vec![0.0, 2.0]).unwrap();
        assert_eq!(phi_step(1, 1.0, 0.0, &d), 1.0);
        assert_eq!(phi_step(1, 0.0, 1.0, &d), 0.0);
        assert!((phi_step(2, 1.0, 0.0, &d) - (-2.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn phi_transition_degenerate_cases() {
        let d = DriftSpec::new(vec![0.5, 1.0, 2.0]).unwrap();
        assert_eq!(phi_transition(2, 1, 0.0, 5.0, &d).unwrap(), 0.0);
        assert_eq!(phi_transition(2, 2, 1.0, 0.0, &d).unwrap(), 0.0);
        assert_eq!(phi_transition(1, 3, 0.0, 1.0, &d).unwrap(), 0.0); // x < y
    }

    #[test]
    fn phi_transition_two_pole_value_and_oracle() {
        // Poles mu_1 = 1, mu_2 = 2 with x - y = 1: the convolution
        // phi_1 * phi_2 gives e^{-1} - e^{-2}.
        let d = DriftSpec::new(vec![1.0, 2.0]).unwrap();
        let value = phi_transition(0, 2, 1.0, 0.0, &d).unwrap();
        let expected = (-1.0f64).exp() - (-2.0f64).exp();
        assert!((value - expected).abs() < 1e-14, "{value} vs {expected}");
        let oracle = phi_transition_quadrature(0, 2, 1.0, 0.0, &d, 1e-12).unwrap();
        assert!((value - oracle).abs() < 1e-9, "{value} vs {oracle}");
    }

    #[test]
    fn phi_transition_three_pole_oracle_agreement() {
        let d = DriftSpec::new(vec![-0.9, -0.1, 0.6, 1.4]).unwrap();
        for (n, np) in [(0usize, 2usize), (0, 3), (1, 3), (1, 4), (0, 4)] {
            for (x, y) in [(1.0, 0.0), (0.5, -0.8), (2.0, 1.9)] {
                let r = phi_transition(n, np, x, y, &d).unwrap();
                let q = phi_transition_quadrature(n, np, x, y, &d, 1e-12).unwrap();
                assert!(
                    (r - q).abs() < 1e-9,
                    "n={n} n'={np} x={x} y={y}: {r} vs {q}"
                );
            }
        }
    }

    #[test]
    fn kernel_level_one_is_the_normal_density() {
        let mu = 0.4;
        let t = 1.7;
        let d = DriftSpec::new(vec![mu]).unwrap();
        for x in [-2.0, 0.0, 0.9, 3.1] {
            let k = kernel(t, KernelPoint::new(x, 1), KernelPoint::new(x, 1), &d).unwrap();
            assert!((k - normal_density(x, mu * t, t)).abs() < 1e-12);
        }
        let zero = DriftSpec::new(vec![0.0]).unwrap();
        let k = kernel(1.0, KernelPoint::new(0.0, 1), KernelPoint::new(0.0, 1), &zero).unwrap();
        assert!((k - INV_SQRT_2PI).abs() < 1e-12);
    }

    #[test]
    fn kernel_downward_pair_has_no_transition_term() {
        let d = DriftSpec::new(vec![-0.5, 0.5]).unwrap();
        let t = 1.0;
        let (x, y) = (0.3, -0.2);
        let k = kernel(t, KernelPoint::new(x, 2), KernelPoint::new(y, 1), &d).unwrap();
        let sum = psi(2, 1, t, x, &d).unwrap() * phi_cap(1, 1, t, y, &d).unwrap();
        assert!((k - sum).abs() < 1e-13);
    }

    #[test]
    fn kernel_confluent_drifts_are_stable() {
        // Drifts (0, eps, 2 eps): Cauchy differences shrink as eps decreases.
        let t = 1.0;
        let a = KernelPoint::new(0.3, 2);
        let b = KernelPoint::new(-0.1, 2);
        let eval = |eps: f64| {
            let d = DriftSpec::new(vec![0.0, eps, 2.0 * eps]).unwrap();
            kernel_confluent_safe(t, a, b, &d).unwrap()
        };
        let v2 = eval(1e-2);
        let v3 = eval(1e-3);
        let v4 = eval(1e-4);
        let d23 = (v2 - v3).abs();
        let d34 = (v3 - v4).abs();
        assert!(d34 < d23, "differences should shrink: {d23} then {d34}");
        // The threshold path (exactly equal drifts) stays finite and close.
        let confluent = DriftSpec::new(vec![0.0, 0.0, 0.0]).unwrap();
        let v = kernel_confluent_safe(t, a, b, &confluent).unwrap();
        assert!((v - v4).abs() < 1e-2);
    }

    #[test]
    fn correlation_with_duplicated_point_vanishes() {
        let d = DriftSpec::new(vec![-1.0, 1.0]).unwrap();
        let p = KernelPoint::new(0.2, 2);
        let rho = correlation(1.0, &[p, p], &d).unwrap();
        assert!(rho.abs() < 1e-14);
    }

    #[test]
    fn density_full_pattern_level_one_is_gaussian() {
        let d = DriftSpec::new(vec![0.6]).unwrap();
        let t = 1.4;
        for x in [-1.0, 0.0, 2.0] {
            let pattern = GtPattern::new(vec![vec![x]]).unwrap();
            let density = density_full_pattern(t, &pattern, &d).unwrap();
            assert!((density - normal_density(x, 0.6 * t, t)).abs() < 1e-13);
        }
    }

    #[test]
    fn density_full_pattern_vanishes_off_the_cone() {
        let d = DriftSpec::new(vec![-1.0, 1.0]).unwrap();
        let bad = GtPattern::new_unchecked(vec![vec![5.0], vec![-1.0, 1.0]]).unwrap();
        assert_eq!(density_full_pattern(1.0, &bad, &d).unwrap(), 0.0);
    }

    #[test]
    fn density_full_pattern_normalizes_at_order_two() {
        // int over { a <= y <= b } of the density, by nested quadrature.
        let d = DriftSpec::new(vec![-1.0, 1.0]).unwrap();
        let t = 1.0;
        let outer = |aa: f64, bb: f64| {
            integrate_real(
                &|y: f64| {
                    let pattern =
                        GtPattern::new_unchecked(vec![vec![y], vec![aa, bb]]).unwrap();
                    density_full_pattern(t, &pattern, &d).unwrap()
                },
                aa,
                bb,
                1e-10,
            )
        };
        let total = integrate_real(
            &|a: f64| integrate_real(&|b: f64| if b >= a { outer(a, b) } else { 0.0 }, a, 8.0, 1e-8),
            -8.0,
            8.0,
            1e-7,
        );
        assert!((total - 1.0).abs() < 1e-3, "total mass {total}");
    }

    #[test]
    fn density_top_level_level_one_is_gaussian() {
        let d = DriftSpec::new(vec![0.6]).unwrap();
        let t = 1.4;
        for x in [-1.0, 0.0, 2.0] {
            let density = density_top_level(t, &[x], &d).unwrap();
            assert!((density - normal_density(x, 0.6 * t, t)).abs() < 1e-13);
        }
    }

    #[test]
    fn density_top_level_vanishes_on_the_diagonal() {
        let d = DriftSpec::new(vec![-1.0, 1.0]).unwrap();
        let density = density_top_level(1.0, &[0.4, 0.4], &d).unwrap();
        assert_eq!(density, 0.0);
    }

    #[test]
    fn density_top_level_normalizes_at_order_two() {
        let d = DriftSpec::new(vec![-1.0, 1.0]).unwrap();
        let t = 1.0;
        let total = integrate_real(
            &|a: f64| {
                integrate_real(
                    &|b: f64| {
                        if b >= a {
                            density_top_level(t, &[a, b], &d).unwrap()
                        } else {
                            0.0
                        }
                    },
                    a,
                    8.0,
                    1e-9,
                )
            },
            -8.0,
            8.0,
            1e-8,
        );
        assert!((total - 1.0).abs() < 1e-6, "total mass {total}");
    }

    #[test]
    fn kernel_diagonal_mass_is_the_level_size() {
        // int K((x,n),(x,n)) dx = n by biorthogonality.
        let d = DriftSpec::new(vec![-0.8, 0.4, 1.1]).unwrap();
        let t = 0.9;
        for n in 1..=3usize {
            let mass = integrate_real(
                &|x: f64| {
                    kernel(t, KernelPoint::new(x, n), KernelPoint::new(x, n), &d).unwrap()
                },
                -14.0,
                14.0,
                1e-9,
            );
            assert!((mass - n as f64).abs() < 1e-6, "level {n} mass {mass}");
        }
    }
}
