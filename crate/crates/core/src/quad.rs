//! Contour and real-line quadrature.
//!
//! Vertical-line integrals `(1/2pi i) int f(z) dz` over `Re z = a` and circle
//! integrals `(1/2pi i) oint f(w) dw` are evaluated with the trapezoid rule
//! under node doubling until two successive estimates agree. On a periodic
//! contour (the circle) and on a line where the integrand decays like a
//! Gaussian, the trapezoid rule converges spectrally, so doubling is cheap.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default quadrature tolerance. Leaves headroom above the 1e-7/1e-8
/// acceptance thresholds used downstream.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_DOUBLINGS: usize = 16;

/// Truncated vertical line `z = abscissa + i s`, `s` in `[-half_extent, half_extent]`.
#[derive(Debug, Clone, Copy)]
pub struct VerticalLineContour {
    pub abscissa: f64,
    pub half_extent: f64,
    pub node_count: usize,
}

impl VerticalLineContour {
    pub fn new(abscissa: f64, half_extent: f64, node_count: usize) -> Result<Self> {
        if !(half_extent > 0.0) || !half_extent.is_finite() || !abscissa.is_finite() {
            return Err(Error::Invalid(format!(
                "vertical contour needs finite abscissa and half_extent > 0, got ({abscissa}, {half_extent})"
            )));
        }
        if node_count < 2 {
            return Err(Error::Invalid(format!(
                "vertical contour needs node_count >= 2, got {node_count}"
            )));
        }
        Ok(Self {
            abscissa,
            half_extent,
            node_count,
        })
    }
}

/// Circle `w = center + radius e^{i theta}`, positively oriented.
#[derive(Debug, Clone, Copy)]
pub struct CircleContour {
    pub center: Complex64,
    pub radius: f64,
    pub node_count: usize,
}

impl CircleContour {
    pub fn new(center: Complex64, radius: f64, node_count: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Invalid(format!(
                "circle contour needs radius > 0, got {radius}"
            )));
        }
        if node_count < 4 || !node_count.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "circle node_count must be a power of two >= 4, got {node_count}"
            )));
        }
        Ok(Self {
            center,
            radius,
            node_count,
        })
    }
}

/// Truncation half-extent `S` for a vertical-line integrand bounded by
/// `exp(log_prefactor - t s^2 / 2) * (|s| + poly_scale)^poly_degree`.
///
/// Picks `S` so the bound at the endpoints falls below `tol / 100`.
pub fn gaussian_truncation(
    t: f64,
    log_prefactor: f64,
    poly_degree: usize,
    poly_scale: f64,
    tol: f64,
) -> f64 {
    let target = log_prefactor + (100.0 / tol).ln();
    let d = poly_degree as f64;
    let rho = poly_scale.max(1.0);
    let mut s = (2.0 * target.max(1.0) / t).sqrt().max(1.0);
    for _ in 0..4 {
        let rhs = 2.0 * (target + d * (s + rho).ln()).max(1.0) / t;
        s = rhs.sqrt();
    }
    s + 1.0
}

/// `(1/2pi i) int f(z) dz` along the truncated vertical line.
///
/// The caller guarantees Gaussian decay along the line and analyticity in a
/// neighborhood; the truncation must already be folded into `half_extent`.
pub fn integrate_vertical<F>(f: F, contour: &VerticalLineContour, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let s_max = contour.half_extent;
    let a = contour.abscissa;
    // dz = i ds, so (1/2pi i) int f dz = (1/2pi) int f(a + i s) ds.
    let g = |s: f64| f(Complex64::new(a, s));

    let mut n = contour.node_count.max(8);
    let mut h = 2.0 * s_max / n as f64;
    let mut sum = 0.5 * (g(-s_max) + g(s_max));
    let mut sum_abs = sum.norm();
    for j in 1..n {
        let v = g(-s_max + j as f64 * h);
        sum += v;
        sum_abs += v.norm();
    }
    let mut estimate = sum * h / (2.0 * std::f64::consts::PI);

    for _ in 0..MAX_DOUBLINGS {
        let mut mid_sum = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let v = g(-s_max + (j as f64 + 0.5) * h);
            mid_sum += v;
            sum_abs += v.norm();
        }
        sum += mid_sum;
        n *= 2;
        h *= 0.5;
        let next = sum * h / (2.0 * std::f64::consts::PI);
        let diff = (next - estimate).norm();
        estimate = next;
        // Oscillatory integrands cancel heavily; the achievable accuracy is
        // bounded by round-off on the summed magnitudes.
        let floor = 8.0 * f64::EPSILON * sum_abs * h / (2.0 * std::f64::consts::PI);
        if diff <= tol * estimate.norm().max(1.0) + floor {
            return Ok(estimate);
        }
    }
    Err(quadrature_failure(estimate, sum, h, tol, n))
}

/// `(1/2pi i) oint f(w) dw` over the circle via the equispaced trapezoid rule.
pub fn integrate_circle<F>(f: F, contour: &CircleContour, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let c = contour.center;
    let r = contour.radius;
    // w = c + r e^{i theta}, dw = i r e^{i theta} dtheta, so
    // (1/2pi i) oint f dw = (1/2pi) int_0^{2pi} f(w) r e^{i theta} dtheta.
    let g = |theta: f64| {
        let e = Complex64::new(0.0, theta).exp();
        f(c + r * e) * r * e
    };

    let mut n = contour.node_count;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_abs = 0.0;
    for j in 0..n {
        let v = g(2.0 * std::f64::consts::PI * j as f64 / n as f64);
        sum += v;
        sum_abs += v.norm();
    }
    let mut estimate = sum / n as f64;

    for _ in 0..MAX_DOUBLINGS {
        let mut mid_sum = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let v = g(2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64);
            mid_sum += v;
            sum_abs += v.norm();
        }
        sum += mid_sum;
        n *= 2;
        let next = sum / n as f64;
        let diff = (next - estimate).norm();
        estimate = next;
        let floor = 8.0 * f64::EPSILON * sum_abs / n as f64;
        if diff <= tol * estimate.norm().max(1.0) + floor {
            return Ok(estimate);
        }
    }
    Err(quadrature_failure(estimate, sum, 1.0 / n as f64, tol, n))
}

fn quadrature_failure(last: Complex64, sum: Complex64, h: f64, tol: f64, nodes: usize) -> Error {
    let previous = sum * h; // not exactly the previous estimate, but its scale
    Error::QuadratureFailure {
        last: last.re,
        previous: previous.re,
        diff: (last - previous).norm(),
        tol,
        nodes,
    }
}

const GL_ORDER: usize = 24;

fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        // Nodes are roots of P_n on (-1, 1), found by Newton iteration from
        // the Chebyshev-like initial guess; weights 2 / ((1 - x^2) P_n'(x)^2).
        let n = GL_ORDER;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gauss_legendre();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive Gauss-Legendre on `[a, b]`: panels are bisected until the
/// two-half refinement of each panel agrees with the whole-panel rule.
pub fn integrate_real<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = gl_panel(f, a, mid);
        let right = gl_panel(f, mid, b);
        let diff = (left + right - whole).abs();
        if diff <= tol || depth >= 28 {
            return left + right;
        }
        recurse(f, a, mid, left, 0.5 * tol, depth + 1)
            + recurse(f, mid, b, right, 0.5 * tol, depth + 1)
    }
    // Seed with a handful of panels so narrow features are not missed.
    let panels = 8;
    let mut acc = 0.0;
    let step = (b - a) / panels as f64;
    for i in 0..panels {
        let lo = a + i as f64 * step;
        let hi = lo + step;
        acc += recurse(f, lo, hi, gl_panel(f, lo, hi), tol / panels as f64, 0);
    }
    acc
}
