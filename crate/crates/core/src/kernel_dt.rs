//! The discrete correlation kernel of the block/push particle system and its
//! diffusive rescaling.
//!
//! With jump rates `v_1..v_N` and packed initial data, the fixed-time kernel
//! is
//!
//! `K~_t((x,n),(x',n')) = -phi~^{(n,n')}(x,x') + sum_{k=1}^{n'} Psi~_{n-k}^{n,t}(x) Phi~_{n'-k}^{n',t}(x')`
//!
//! built from the contour integrals
//!
//! * `Psi~_{n-k}^{n,t}(x) = (1/2 pi i) oint_{G_{0,v}} e^{t z} / z^{x+n+1} R_{n,k}(z) dz`,
//! * `Phi~_{n-l}^{n,t}(x) = (1/2 pi i) oint_{G_v} w^{x+n} e^{-t w} / ((w - v_l)...(w - v_n)) dw`,
//! * `phi~^{(n,n')}(x,x')` supported on `x <= x'`.
//!
//! `Psi~` and `Phi~` individually grow like `e^{t}` and `e^{-t}`; all internal
//! arithmetic therefore works with the conjugated pair `e^{-t} Psi~` and
//! `e^{t} Phi~`, whose product is unchanged, so the kernel stays finite at the
//! diffusive scale `t = tau T` where the raw factors overflow.
//!
//! The production evaluation is closed-form throughout: coefficient
//! extraction from `e^{t z}` reduces to Poisson probabilities, and the pole
//! contributions to residue sums. Contour quadrature on the defining
//! integrals is kept as the test oracle; at the diffusive scale the saddle of
//! `e^{t z} z^{-x-n-1}` collides with the rate poles and node-doubled
//! trapezoid quadrature loses relative accuracy there, which is why it is not
//! the primary route.

use num_complex::Complex64;

use crate::drift::{DriftSpec, RateSpec};
use crate::error::Result;
use crate::pattern::DiscretePoint;
use crate::quad::{integrate_circle, CircleContour};
use crate::special::{poisson_pmf, poisson_tail_ge};
use crate::sympoly::elementary_symmetric;

/// `e^{-t} Psi~_{n-k}^{n,t}(x)`, any `k >= 1`.
///
/// For `k <= n` the rational factor is the polynomial
/// `(z - v_{k+1})...(z - v_n)`, and coefficient extraction gives a finite sum
/// of Poisson probabilities. For `k > n` the factor is
/// `1/((z - v_{n+1})...(z - v_k))`; partial fractions plus the incomplete
/// `e^{tz}` series give a sum of Poisson upper tails, one per rate pole.
pub fn psi_d_conjugated(n: usize, k: usize, t: f64, x: i64, r: &RateSpec) -> Result<f64> {
    assert!(t > 0.0, "discrete kernel requires t > 0");
    assert!(n >= 1 && k >= 1);
    let m = x + n as i64 + 1; // order of the pole at z = 0
    if k <= n {
        if m <= 0 {
            return Ok(0.0); // residue-free integrand
        }
        let rates: Vec<f64> = (k + 1..=n).map(|j| r.rate(j)).collect();
        let e = elementary_symmetric(&rates);
        let d = rates.len();
        let mut acc = 0.0;
        for b in 0..=d {
            let order = m - 1 - b as i64;
            if order < 0 {
                continue;
            }
            let sign = if (d - b) % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * e[d - b] * poisson_pmf(order, t);
        }
        Ok(acc)
    } else {
        r.require_distinct()?;
        let mut acc = 0.0;
        for j in n + 1..=k {
            let v_j = r.rate(j);
            let mut partial = 1.0;
            for i in n + 1..=k {
                if i != j {
                    partial /= v_j - r.rate(i);
                }
            }
            // e^{-t} * v_j^{-m} * sum_{a >= max(m,0)} (t v_j)^a / a!
            let tail = poisson_tail_ge(m, t * v_j);
            let log_scale = -(m as f64) * v_j.ln() + t * (v_j - 1.0);
            acc += partial * log_scale.exp() * tail;
        }
        Ok(acc)
    }
}

/// `Psi~_{n-k}^{n,t}(x)` without conjugation. Overflows for `t` beyond a few
/// hundred; the kernel itself never needs the raw value.
pub fn psi_d(n: usize, k: usize, t: f64, x: i64, r: &RateSpec) -> Result<f64> {
    Ok(psi_d_conjugated(n, k, t, x, r)? * t.exp())
}

/// Contour oracle for `e^{-t} Psi~` on a circle enclosing the origin and all
/// rate poles, radius `2 max(1, max v)` grown to reach the `z = 0` saddle.
pub fn psi_d_quadrature(
    n: usize,
    k: usize,
    t: f64,
    x: i64,
    r: &RateSpec,
    tol: f64,
) -> Result<f64> {
    assert!(t > 0.0);
    let m = x + n as i64 + 1;
    let mut radius = 2.0 * r.max_rate().max(1.0);
    if m >= 1 {
        radius = radius.max(m as f64 / t);
    }
    let contour = CircleContour::new(Complex64::new(0.0, 0.0), radius, 64)?;
    // Normalize by the integrand's log-magnitude at theta = 0 so the
    // convergence test operates on an O(1) quantity.
    let log_peak = t * radius - t - m as f64 * radius.ln();
    let value = integrate_circle(
        |z| {
            let mut log_term = t * z - t - m as f64 * z.ln() - log_peak;
            if k <= n {
                let mut rational = Complex64::new(1.0, 0.0);
                for j in k + 1..=n {
                    rational *= z - r.rate(j);
                }
                log_term.re += rational.norm().ln();
                log_term.im += rational.arg();
            } else {
                for j in n + 1..=k {
                    let factor = z - r.rate(j);
                    log_term.re -= factor.norm().ln();
                    log_term.im -= factor.arg();
                }
            }
            log_term.exp()
        },
        &contour,
        tol,
    )?;
    Ok(value.re * log_peak.exp())
}

/// `e^{t} Phi~_{n-l}^{n,t}(x)` as the residue sum over the simple poles
/// `v_l, ..., v_n`.
pub fn phi_cap_d_conjugated(n: usize, l: usize, t: f64, x: i64, r: &RateSpec) -> Result<f64> {
    assert!(l >= 1 && l <= n && n <= r.order());
    r.require_distinct()?;
    let mut acc = 0.0;
    for i in l..=n {
        let v_i = r.rate(i);
        let mut term = ((x + n as i64) as f64 * v_i.ln() - t * v_i + t).exp();
        for j in l..=n {
            if j != i {
                term /= v_i - r.rate(j);
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// `Phi~_{n-l}^{n,t}(x)` without conjugation.
pub fn phi_cap_d(n: usize, l: usize, t: f64, x: i64, r: &RateSpec) -> Result<f64> {
    Ok(phi_cap_d_conjugated(n, l, t, x, r)? * (-t).exp())
}

/// Contour oracle for `Phi~` on a circle enclosing only the rate poles.
pub fn phi_cap_d_quadrature(
    n: usize,
    l: usize,
    t: f64,
    x: i64,
    r: &RateSpec,
    tol: f64,
) -> Result<f64> {
    let (min, max) = r
        .rates()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let center = 0.5 * (min + max);
    let radius = 0.5 * (max - min) + (0.4 * min).min(1.0);
    debug_assert!(center - radius > 0.0, "contour must exclude the origin");
    let contour = CircleContour::new(Complex64::new(center, 0.0), radius, 32)?;
    let value = integrate_circle(
        |w| {
            // w^{x+n} for integer exponents via the principal log; exact for
            // any branch since the exponent is an integer.
            let mut f = ((x + n as i64) as f64 * w.ln() - t * w).exp();
            for j in l..=n {
                f /= w - r.rate(j);
            }
            f
        },
        &contour,
        tol,
    )?;
    Ok(value.re)
}

/// `phi~^{(n,n')}(x, x')`: zero for `n >= n'` and for `x > x'`; otherwise the
/// residue sum
/// `sum_{i=n+1}^{n'} v_i^{(x'-x)+(n'-n)-1} prod_{j != i} 1/(v_i - v_j)`.
///
/// At `x = x'` the sum telescopes to 1 for every level gap, matching the
/// convolution of one-step weights `v^{y-x} 1_{y >= x}`.
pub fn phi_transition_d(n: usize, n_prime: usize, x: i64, y: i64, r: &RateSpec) -> Result<f64> {
    if n_prime <= n || x > y {
        return Ok(0.0);
    }
    let exponent = (y - x) + (n_prime as i64 - n as i64) - 1;
    if n_prime == n + 1 {
        return Ok((exponent as f64 * r.rate(n_prime).ln()).exp());
    }
    r.require_distinct()?;
    let mut acc = 0.0;
    for i in n + 1..=n_prime {
        let v_i = r.rate(i);
        let mut term = (exponent as f64 * v_i.ln()).exp();
        for j in n + 1..=n_prime {
            if j != i {
                term /= v_i - r.rate(j);
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Contour oracle for the transition weight on a circle enclosing the origin
/// and all rate poles (radius `2 max(1, max v)`).
pub fn phi_transition_d_quadrature(
    n: usize,
    n_prime: usize,
    x: i64,
    y: i64,
    r: &RateSpec,
    tol: f64,
) -> Result<f64> {
    assert!(n_prime > n);
    let radius = 2.0 * r.max_rate().max(1.0);
    let contour = CircleContour::new(Complex64::new(0.0, 0.0), radius, 64)?;
    let exponent = (y - x) + (n_prime as i64 - n as i64) - 1;
    let value = integrate_circle(
        |z| {
            let mut f = (exponent as f64 * z.ln()).exp();
            for j in n + 1..=n_prime {
                f /= z - r.rate(j);
            }
            f
        },
        &contour,
        tol,
    )?;
    Ok(value.re)
}

/// The discrete correlation kernel `K~_t`.
pub fn kernel_d(t: f64, a: DiscretePoint, b: DiscretePoint, r: &RateSpec) -> Result<f64> {
    assert!(t > 0.0);
    let n = a.n;
    let n_prime = b.n;
    assert!(n <= r.order() && n_prime <= r.order());
    let mut acc = -phi_transition_d(n, n_prime, a.x, b.x, r)?;
    for k in 1..=n_prime {
        let psi_val = psi_d_conjugated(n, k, t, a.x, r)?;
        if psi_val != 0.0 {
            acc += psi_val * phi_cap_d_conjugated(n_prime, k, t, b.x, r)?;
        }
    }
    Ok(acc)
}

/// Rescaled kernel under the diffusive scaling `t = tau T`,
/// `x = [tau T - xi sqrt(T)]`, `v_n = 1 - mu_n / sqrt(T)`:
///
/// `K_resc((xi,n),(xi',n')) = T^{(n-n'+1)/2} K~_{tau T}((x,n),(x',n'))`.
///
/// The level conjugation `T^{(n-n')/2}` leaves correlation determinants
/// unchanged; this orientation is the one under which the rescaled kernel
/// converges pointwise to the continuous kernel.
pub fn rescaled_kernel(
    tau: f64,
    big_t: f64,
    a: (f64, usize),
    b: (f64, usize),
    drifts: &DriftSpec,
) -> Result<f64> {
    let rates = RateSpec::from_scaling(drifts, big_t)?;
    let t = tau * big_t;
    let sqrt_t = big_t.sqrt();
    let x = (tau * big_t - a.0 * sqrt_t).floor() as i64;
    let y = (tau * big_t - b.0 * sqrt_t).floor() as i64;
    let raw = kernel_d(
        t,
        DiscretePoint::new(x, a.1),
        DiscretePoint::new(y, b.1),
        &rates,
    )?;
    let exponent = (a.1 as f64 - b.1 as f64 + 1.0) / 2.0;
    Ok(big_t.powf(exponent) * raw)
}
