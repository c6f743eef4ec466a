//! Statistical and analytical verification: empirical correlation estimators,
//! the exact-identity suites (biorthogonality, convolution, semigroup,
//! normalization, density-as-correlation), PDE residuals, and the numerical
//! re-derivation of the biorthogonal family.

use serde::{Deserialize, Serialize};

use crate::drift::{DriftSpec, RateSpec};
use crate::error::{Error, Result};
use crate::kernel_ct::{
    self, density_full_pattern, phi_cap, phi_step, phi_transition, psi_poly,
    psi_quadrature,
};
use crate::kernel_dt::{phi_cap_d_conjugated, psi_d_conjugated};
use crate::linalg::{condition_1, invert_real};
use crate::pattern::{GtPattern, KernelPoint};
use crate::quad::integrate_real;
use crate::rng::RngStream;
use crate::runner;
use crate::sim::particles;

// ---------------------------------------------------------------------------
// Empirical one- and two-point estimators
// ---------------------------------------------------------------------------

/// Binned empirical one-point function at a fixed level, normalized so it
/// targets the kernel diagonal (which integrates to the level size).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationEstimate {
    pub level: usize,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub replicas: u64,
    pub density_estimate: Vec<f64>,
    pub std_error: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Statistic {
    L1,
    Sup,
    Chi2,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceReport {
    pub statistic: Statistic,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl DistanceReport {
    pub fn new(statistic: Statistic, value: f64, threshold: f64) -> Self {
        Self {
            statistic,
            value,
            threshold,
            pass: value <= threshold,
        }
    }
}

/// Uniform bin edges covering `[lo, hi]` with the given width.
pub fn bin_edges(lo: f64, hi: f64, width: f64) -> Vec<f64> {
    assert!(hi > lo && width > 0.0);
    let bins = ((hi - lo) / width).ceil() as usize;
    (0..=bins).map(|i| lo + i as f64 * width).collect()
}

/// Evaluation window for level `n` at time `t`: drift-induced mean spread
/// plus the semicircle edge with Gaussian slack.
pub fn level_window(n: usize, t: f64, d: &DriftSpec) -> (f64, f64) {
    let (lo, hi) = d
        .drifts()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &m| {
            (a.min(m), b.max(m))
        });
    let spread = (2.0 * (n as f64).sqrt() + 3.5) * t.sqrt();
    (t * lo - spread, t * hi + spread)
}

pub fn estimate_one_point<'a, I>(samples: I, level: usize, edges: &[f64]) -> Result<CorrelationEstimate>
where
    I: IntoIterator<Item = &'a GtPattern>,
{
    assert!(edges.len() >= 2);
    let lo = edges[0];
    let width = edges[1] - edges[0];
    let bins = edges.len() - 1;
    let mut counts = vec![0u64; bins];
    let mut replicas = 0u64;
    for pattern in samples {
        replicas += 1;
        for &x in pattern.level(level) {
            let idx = ((x - lo) / width).floor();
            if idx >= 0.0 && (idx as usize) < bins {
                counts[idx as usize] += 1;
            }
        }
    }
    if replicas == 0 {
        return Err(Error::EmptySamples);
    }
    let norm = replicas as f64 * width;
    let density_estimate: Vec<f64> = counts.iter().map(|&c| c as f64 / norm).collect();
    let std_error: Vec<f64> = counts.iter().map(|&c| (c as f64).sqrt() / norm).collect();
    Ok(CorrelationEstimate {
        level,
        bin_edges: edges.to_vec(),
        counts,
        replicas,
        density_estimate,
        std_error,
    })
}

/// Empirical two-point function across a pair of levels (coarse bins; the
/// pair count is O(replicas * n^2), so this is kept to small orders).
pub fn estimate_two_point(
    samples: &[GtPattern],
    level_a: usize,
    level_b: usize,
    edges_a: &[f64],
    edges_b: &[f64],
) -> Result<Vec<Vec<f64>>> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    assert!(samples[0].order() <= 3, "two-point estimation is desk-scale only");
    let (lo_a, w_a, bins_a) = (edges_a[0], edges_a[1] - edges_a[0], edges_a.len() - 1);
    let (lo_b, w_b, bins_b) = (edges_b[0], edges_b[1] - edges_b[0], edges_b.len() - 1);
    let mut counts = vec![vec![0u64; bins_b]; bins_a];
    for pattern in samples {
        for (i, &x) in pattern.level(level_a).iter().enumerate() {
            for (j, &y) in pattern.level(level_b).iter().enumerate() {
                if level_a == level_b && i == j {
                    continue; // pairs of distinct points only
                }
                let ia = ((x - lo_a) / w_a).floor();
                let ib = ((y - lo_b) / w_b).floor();
                if ia >= 0.0 && (ia as usize) < bins_a && ib >= 0.0 && (ib as usize) < bins_b {
                    counts[ia as usize][ib as usize] += 1;
                }
            }
        }
    }
    let norm = samples.len() as f64 * w_a * w_b;
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as f64 / norm).collect())
        .collect())
}

/// Bin average of the kernel diagonal at the estimate's level, 3-point
/// Gauss-Legendre per bin.
pub fn kernel_bin_average(est: &CorrelationEstimate, t: f64, d: &DriftSpec) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(est.counts.len());
    let a = (3.0f64 / 5.0).sqrt();
    for w in est.bin_edges.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let half = 0.5 * (w[1] - w[0]);
        let eval = |x: f64| -> Result<f64> {
            kernel_ct::kernel_confluent_safe(
                t,
                KernelPoint::new(x, est.level),
                KernelPoint::new(x, est.level),
                d,
            )
        };
        let avg = (5.0 * eval(mid - a * half)? + 8.0 * eval(mid)? + 5.0 * eval(mid + a * half)?)
            / 18.0;
        out.push(avg);
    }
    Ok(out)
}

/// Distance between the empirical estimate and the bin-averaged kernel
/// diagonal.
pub fn compare_to_kernel(
    est: &CorrelationEstimate,
    t: f64,
    d: &DriftSpec,
    statistic: Statistic,
    threshold: f64,
) -> Result<DistanceReport> {
    let reference = kernel_bin_average(est, t, d)?;
    let width = est.bin_edges[1] - est.bin_edges[0];
    let value = match statistic {
        Statistic::L1 => est
            .density_estimate
            .iter()
            .zip(&reference)
            .map(|(e, r)| (e - r).abs() * width)
            .sum(),
        Statistic::Sup => est
            .density_estimate
            .iter()
            .zip(&reference)
            .map(|(e, r)| (e - r).abs())
            .fold(0.0, f64::max),
        Statistic::Chi2 => est
            .density_estimate
            .iter()
            .zip(&reference)
            .zip(&est.std_error)
            .filter(|(_, se)| **se > 0.0)
            .map(|((e, r), se)| ((e - r) / se).powi(2))
            .sum(),
    };
    Ok(DistanceReport::new(statistic, value, threshold))
}

/// Expected L1 noise floor of the estimate plus a 3-sigma margin; a useful
/// default threshold when none is pinned externally.
pub fn suggested_l1_threshold(est: &CorrelationEstimate) -> f64 {
    let width = est.bin_edges[1] - est.bin_edges[0];
    let mean: f64 = est
        .std_error
        .iter()
        .map(|se| (2.0 / std::f64::consts::PI).sqrt() * se * width)
        .sum();
    let var: f64 = est
        .std_error
        .iter()
        .map(|se| (1.0 - 2.0 / std::f64::consts::PI) * (se * width).powi(2))
        .sum();
    mean + 3.0 * var.sqrt()
}

// ---------------------------------------------------------------------------
// Exact identity suites
// ---------------------------------------------------------------------------

/// Integration window used by the real-line identity integrals.
fn identity_window(t: f64, d: &DriftSpec) -> (f64, f64) {
    let reach = 12.0 * t.sqrt() + 2.0;
    let (lo, hi) = d
        .drifts()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &m| {
            (a.min(m), b.max(m))
        });
    ((t * lo).min(0.0) - reach, (t * hi).max(0.0) + reach)
}

/// `max_{k,l} | int Psi_{n-k} Phi_{n-l} dx - delta_{kl} |` at level `n`.
pub fn biorthogonality_error(n: usize, t: f64, d: &DriftSpec) -> Result<f64> {
    let (lo, hi) = identity_window(t, d);
    let mut worst = 0.0f64;
    for k in 1..=n {
        for l in 1..=n {
            let integral = integrate_real(
                &|x: f64| {
                    psi_poly(n, k, t, x, d) * phi_cap(n, l, t, x, d).expect("distinct drifts")
                },
                lo,
                hi,
                1e-11,
            );
            let expected = if k == l { 1.0 } else { 0.0 };
            worst = worst.max((integral - expected).abs());
        }
    }
    Ok(worst)
}

/// Convolution identity `phi_n * Psi_{n-k}^{n,t} = Psi_{n-1-k}^{n-1,t}`:
/// worst absolute error over the supplied evaluation points.
pub fn convolution_identity_error(
    n: usize,
    k: usize,
    t: f64,
    d: &DriftSpec,
    points: &[f64],
) -> Result<f64> {
    assert!(n >= 2);
    let (lo, _) = identity_window(t, d);
    let mut worst = 0.0f64;
    for &x in points {
        let mu_n = d.drift(n);
        let lhs = integrate_real(
            &|y: f64| (mu_n * (y - x)).exp() * psi_eval(n, k, t, y, d),
            lo.min(x - 1.0),
            x,
            1e-11,
        );
        let rhs = psi_eval(n - 1, k, t, x, d);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

fn psi_eval(n: usize, k: usize, t: f64, x: f64, d: &DriftSpec) -> f64 {
    if k <= n {
        psi_poly(n, k, t, x, d)
    } else {
        psi_quadrature(n, k, t, x, d, 1e-12).expect("psi quadrature")
    }
}

/// Semigroup identity `phi_{n+1} * ... * phi_{n'} = phi^{(n,n')}`, checked by
/// iterated numerical convolution of one-step weights for gaps up to 3.
pub fn semigroup_identity_error(
    n: usize,
    n_prime: usize,
    d: &DriftSpec,
    pairs: &[(f64, f64)],
) -> Result<f64> {
    assert!(n_prime > n + 1 && n_prime - n <= 3);
    let mut worst = 0.0f64;
    for &(x, y) in pairs {
        let direct = phi_transition(n, n_prime, x, y, d)?;
        let iterated = match n_prime - n {
            2 => integrate_real(
                &|z: f64| phi_step(n + 1, x, z, d) * phi_step(n + 2, z, y, d),
                y,
                x,
                1e-12,
            ),
            3 => integrate_real(
                &|z1: f64| {
                    phi_step(n + 1, x, z1, d)
                        * integrate_real(
                            &|z2: f64| phi_step(n + 2, z1, z2, d) * phi_step(n + 3, z2, y, d),
                            y,
                            z1,
                            1e-12,
                        )
                },
                y,
                x,
                1e-10,
            ),
            _ => unreachable!(),
        };
        worst = worst.max((direct - iterated).abs());
    }
    Ok(worst)
}

/// The normalization matrix `M_{kl} = (phi_k * Psi^{k,t}_{k-l})(virt)
/// = int e^{mu_k y} Psi^{k,t}_{k-l}(y) dy`, computed by real-line quadrature.
///
/// `M` is upper triangular with `M_{kk} = e^{t mu_k^2 / 2}`; the sign of the
/// diagonal exponent is fixed by this numeric oracle (the determinant then
/// matches `prod_n e^{t mu_n^2 / 2}`).
pub fn normalization_matrix(t: f64, d: &DriftSpec) -> Result<Vec<Vec<f64>>> {
    let n = d.order();
    let (lo, hi) = identity_window(t, d);
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        for l in 1..=n {
            m[k - 1][l - 1] = integrate_real(
                &|y: f64| (d.drift(k) * y).exp() * psi_eval(k, l, t, y, d),
                lo,
                hi,
                1e-12,
            );
        }
    }
    Ok(m)
}

/// Density-as-correlation: the joint density of the full pattern equals the
/// `m = N(N+1)/2`-point correlation determinant at the pattern's points
/// (sorted per level, distinct positions). Returns the worst relative error
/// over the supplied patterns.
pub fn full_pattern_identity(t: f64, d: &DriftSpec, patterns: &[GtPattern]) -> Result<f64> {
    let mut worst = 0.0f64;
    for pattern in patterns {
        let density = density_full_pattern(t, pattern, d)?;
        let rho = kernel_ct::correlation(t, &pattern.points(), d)?;
        let scale = density.abs().max(1e-12);
        worst = worst.max((rho - density).abs() / scale);
    }
    Ok(worst)
}

/// Rebuilds the biorthogonal family numerically: the Gram matrix
/// `G_{k,i} = int Psi_{n-k}(x) e^{mu_i x} dx` over the exponential basis of
/// `V_n` is inverted, giving coefficients `C` with
/// `Phi_{n-l}(x) = sum_i C[l][i] e^{mu_i x}`.
pub fn biorthogonalize_numerically(n: usize, t: f64, d: &DriftSpec) -> Result<Vec<Vec<f64>>> {
    d.require_distinct()?;
    let (lo, hi) = identity_window(t, d);
    let mut gram = vec![vec![0.0; n]; n];
    for k in 1..=n {
        for i in 1..=n {
            gram[k - 1][i - 1] = integrate_real(
                &|x: f64| psi_poly(n, k, t, x, d) * (d.drift(i) * x).exp(),
                lo,
                hi,
                1e-12,
            );
        }
    }
    let cond = condition_1(&gram);
    if cond > 1e12 {
        return Err(Error::IllConditioned { condition: cond });
    }
    // C G^T = I  =>  C = (G^T)^{-1}
    let transpose: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|k| gram[k][i]).collect())
        .collect();
    invert_real(&transpose).ok_or(Error::IllConditioned { condition: cond })
}

/// Closed-form coefficients of `Phi_{n-l}` over the exponential basis, for
/// comparison with `biorthogonalize_numerically`.
pub fn phi_cap_coefficients(n: usize, t: f64, d: &DriftSpec) -> Result<Vec<Vec<f64>>> {
    d.require_distinct()?;
    let mut coeffs = vec![vec![0.0; n]; n];
    for l in 1..=n {
        for i in l..=n {
            let mu_i = d.drift(i);
            let mut b = (-t * mu_i * mu_i / 2.0).exp();
            for j in l..=n {
                if j != i {
                    b /= d.drift(j) - mu_i;
                }
            }
            coeffs[l - 1][i - 1] = b;
        }
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// PDE properties of the full-pattern density
// ---------------------------------------------------------------------------

fn shifted_density(
    t: f64,
    pattern: &GtPattern,
    d: &DriftSpec,
    coord: Option<(usize, usize)>,
    delta: f64,
) -> Result<f64> {
    match coord {
        None => density_full_pattern(t + delta, pattern, d),
        Some((k, n)) => {
            let mut levels: Vec<Vec<f64>> = pattern.levels().to_vec();
            levels[n - 1][k - 1] += delta;
            let shifted = GtPattern::new_unchecked(levels)?;
            density_full_pattern(t, &shifted, d)
        }
    }
}

/// Central-difference residual of the Fokker-Planck equation
/// `d_t p = sum_{n,k} (1/2 d^2_{x_k^n} - mu_n d_{x_k^n}) p`
/// over the supplied interior patterns; returns the maximum absolute
/// residual.
pub fn fokker_planck_residual(
    t: f64,
    patterns: &[GtPattern],
    h: f64,
    d: &DriftSpec,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for pattern in patterns {
        let p0 = density_full_pattern(t, pattern, d)?;
        let dt = (shifted_density(t, pattern, d, None, h)?
            - shifted_density(t, pattern, d, None, -h)?)
            / (2.0 * h);
        let mut spatial = 0.0;
        for n in 1..=pattern.order() {
            for k in 1..=n {
                let plus = shifted_density(t, pattern, d, Some((k, n)), h)?;
                let minus = shifted_density(t, pattern, d, Some((k, n)), -h)?;
                let first = (plus - minus) / (2.0 * h);
                let second = (plus - 2.0 * p0 + minus) / (h * h);
                spatial += 0.5 * second - d.drift(n) * first;
            }
        }
        worst = worst.max((dt - spatial).abs());
    }
    Ok(worst)
}

/// Logarithmic-derivative identity `d log p / d x_k^n = mu_n - mu_{n+1}` for
/// every coordinate at levels `n < N`; returns the worst violation over the
/// supplied interior patterns.
pub fn boundary_condition_check(
    t: f64,
    patterns: &[GtPattern],
    h: f64,
    d: &DriftSpec,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for pattern in patterns {
        for n in 1..pattern.order() {
            for k in 1..=n {
                let plus = shifted_density(t, pattern, d, Some((k, n)), h)?;
                let minus = shifted_density(t, pattern, d, Some((k, n)), -h)?;
                if plus <= 0.0 || minus <= 0.0 {
                    return Err(Error::Invalid(
                        "pattern too close to the cone boundary for the log-derivative check"
                            .into(),
                    ));
                }
                let log_derivative = (plus.ln() - minus.ln()) / (2.0 * h);
                let expected = d.drift(n) - d.drift(n + 1);
                worst = worst.max((log_derivative - expected).abs());
            }
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Discrete identities and the scaling study
// ---------------------------------------------------------------------------

/// Truncated-sum discrete biorthogonality
/// `sum_x Psi~_{n-k}(x) Phi~_{n-l}(x) = delta_{kl}`; worst error over all
/// `(k, l)` pairs at level `n`.
pub fn discrete_biorthogonality_error(n: usize, t: f64, r: &RateSpec) -> Result<f64> {
    let max_rate = r.max_rate();
    let half_width = 12.0 * (t.max(1.0) * max_rate * n as f64).sqrt() + 20.0;
    let lo = ((t * 1.0 - half_width).floor() as i64).min(-(n as i64) - 2);
    let hi = (t * max_rate + half_width).ceil() as i64;
    let mut worst = 0.0f64;
    for k in 1..=n {
        for l in 1..=n {
            let mut sum = 0.0;
            for x in lo..=hi {
                sum += psi_d_conjugated(n, k, t, x, r)? * phi_cap_d_conjugated(n, l, t, x, r)?;
            }
            let expected = if k == l { 1.0 } else { 0.0 };
            worst = worst.max((sum - expected).abs());
        }
    }
    Ok(worst)
}

/// One ladder rung of the diffusive-scaling study.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub big_t: f64,
    /// Per-level L1 distance of the rescaled empirical one-point function to
    /// the continuous kernel diagonal.
    pub distances: Vec<f64>,
}

/// Runs the particle system at rates `v_n = 1 - mu_n / sqrt(T)` to time
/// `tau T`, rescales positions to `lambda = (tau T - x)/sqrt(T)`, and reports
/// per-level L1 distances to the continuous kernel.
pub fn scaling_study(
    tau: f64,
    t_ladder: &[f64],
    drifts: &DriftSpec,
    replicas: u64,
    seed: u64,
    workers: usize,
    bin_width: f64,
) -> Result<Vec<ScalingRow>> {
    let n = drifts.order();
    let mut rows = Vec::new();
    for &big_t in t_ladder {
        let samples = sample_rescaled_particles(tau, big_t, drifts, replicas, seed, workers)?;
        let mut distances = Vec::with_capacity(n);
        for level in 1..=n {
            let (lo, hi) = level_window(level, tau, drifts);
            let edges = bin_edges(lo, hi, bin_width);
            let est = estimate_one_point(samples.iter(), level, &edges)?;
            let report = compare_to_kernel(&est, tau, drifts, Statistic::L1, f64::INFINITY)?;
            distances.push(report.value);
        }
        rows.push(ScalingRow { big_t, distances });
    }
    Ok(rows)
}

/// Particle-system replicas under diffusive scaling, returned as rescaled
/// continuous patterns.
pub fn sample_rescaled_particles(
    tau: f64,
    big_t: f64,
    drifts: &DriftSpec,
    replicas: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<GtPattern>> {
    let rates = RateSpec::from_scaling(drifts, big_t)?;
    let n = drifts.order();
    let t_end = tau * big_t;
    let sqrt_t = big_t.sqrt();
    let patterns = runner::run_replicas(replicas, workers, seed, move |_, rng| {
        let mut state = particles::init_packed(n);
        particles::run_to(&mut state, t_end, &rates, rng).expect("particle run");
        let levels: Vec<Vec<f64>> = (1..=n)
            .map(|level| {
                let mut row: Vec<f64> = state
                    .level(level)
                    .iter()
                    .map(|&x| (t_end - x as f64) / sqrt_t)
                    .collect();
                row.sort_by(f64::total_cmp);
                row
            })
            .collect();
        GtPattern::new_unchecked(levels).expect("triangular shape")
    });
    Ok(patterns)
}

// ---------------------------------------------------------------------------
// Two-sample comparison (used by the level-restriction properties)
// ---------------------------------------------------------------------------

/// Pearson two-sample chi-square over shared categories, with sparse cells
/// pooled. Returns the statistic and the Wilson-Hilferty approximation of
/// the chi-square quantile at the requested significance.
pub fn two_sample_chi_square(a: &[u64], b: &[u64], significance: f64) -> DistanceReport {
    assert_eq!(a.len(), b.len());
    let total_a: u64 = a.iter().sum();
    let total_b: u64 = b.iter().sum();
    let ratio_ab = (total_b as f64 / total_a as f64).sqrt();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    let (mut pool_a, mut pool_b) = (0u64, 0u64);
    let add_cell = |ca: f64, cb: f64, stat: &mut f64, cells: &mut usize| {
        let denom = ca + cb;
        if denom > 0.0 {
            let term = ca * ratio_ab - cb / ratio_ab;
            *stat += term * term / denom;
            *cells += 1;
        }
    };
    for (&ca, &cb) in a.iter().zip(b) {
        if ca + cb < 10 {
            pool_a += ca;
            pool_b += cb;
        } else {
            add_cell(ca as f64, cb as f64, &mut statistic, &mut cells);
        }
    }
    add_cell(pool_a as f64, pool_b as f64, &mut statistic, &mut cells);
    let df = cells.saturating_sub(1).max(1) as f64;
    // Wilson-Hilferty: chi2_q(df) ~ df (1 - 2/(9 df) + z sqrt(2/(9 df)))^3
    let z = normal_quantile(1.0 - significance);
    let threshold = df * (1.0 - 2.0 / (9.0 * df) + z * (2.0 / (9.0 * df)).sqrt()).powi(3);
    DistanceReport::new(Statistic::Chi2, statistic, threshold)
}

/// Beasley-Springer-Moro style rational approximation, adequate for the
/// significance levels used here.
fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.5 && p < 1.0);
    let t = (-2.0 * (1.0 - p).ln()).sqrt();
    // Abramowitz-Stegun 26.2.23
    let num = 2.515517 + 0.802853 * t + 0.010328 * t * t;
    let den = 1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t;
    t - num / den
}

/// Random drift vector in `[-2, 2]^n` with pairwise separation at least
/// `min_sep`, by rejection.
pub fn random_drifts(n: usize, min_sep: f64, rng: &mut RngStream) -> DriftSpec {
    loop {
        let drifts: Vec<f64> = (0..n).map(|_| 4.0 * rng.uniform() - 2.0).collect();
        if let Ok(spec) = DriftSpec::new(drifts) {
            if spec.separation() >= min_sep {
                return spec;
            }
        }
    }
}

/// Random interlacing pattern: top level drawn wide, lower levels sampled
/// uniformly inside the interlacing polytope.
pub fn random_pattern(n: usize, spread: f64, rng: &mut RngStream) -> GtPattern {
    let mut top: Vec<f64> = (0..n).map(|_| spread * (2.0 * rng.uniform() - 1.0)).collect();
    top.sort_by(f64::total_cmp);
    let mut levels = vec![Vec::new(); n];
    levels[n - 1] = top;
    for level in (1..n).rev() {
        let upper = levels[level].clone();
        let mut row = Vec::with_capacity(level);
        for k in 0..level {
            let lo = upper[k];
            let hi = upper[k + 1];
            row.push(lo + (hi - lo) * rng.uniform());
        }
        row.sort_by(f64::total_cmp);
        levels[level - 1] = row;
    }
    GtPattern::new(levels).expect("sampled inside the cone")
}
