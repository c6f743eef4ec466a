//! The symmetric polynomials `p_n` behind the Hermite-type representation of
//! the one-sided kernel functions.
//!
//! `p_n(x_1, ..., x_n) = ((-1)^n / i sqrt(2 pi)) int_{iR} e^{w^2/2} prod (w - x_j) dw`.
//!
//! Expanding the product into elementary symmetric polynomials and contracting
//! with the Gaussian moments `int (is)^m e^{-s^2/2} ds / sqrt(2 pi) = i^m (m-1)!!`
//! (even `m`) gives the closed form
//!
//! `p_n(x) = sum_{r >= 0} (-1)^r (2r - 1)!! e_{n - 2r}(x)`,
//!
//! so no quadrature is involved. `p_n(x, ..., x)` reduces to the probabilists'
//! Hermite polynomial `He_n(x)`, which the tests use as a cross-check.

/// Elementary symmetric polynomials `e_0, ..., e_n` of the given points.
pub fn elementary_symmetric(points: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; points.len() + 1];
    e[0] = 1.0;
    for (j, &x) in points.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    e
}

/// `p_n` evaluated at the given points (`n` is the number of points; `n = 0`
/// returns 1).
pub fn sym_poly_p(points: &[f64]) -> f64 {
    let n = points.len();
    let e = elementary_symmetric(points);
    let mut acc = 0.0;
    let mut sign = 1.0;
    let mut double_factorial = 1.0; // (2r - 1)!! with (-1)!! = 1
    let mut r = 0;
    while 2 * r <= n {
        acc += sign * double_factorial * e[n - 2 * r];
        r += 1;
        sign = -sign;
        double_factorial *= (2 * r - 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{gaussian_truncation, integrate_vertical, VerticalLineContour};
    use num_complex::Complex64;

    /// Defining integral evaluated by quadrature, independent of the closed form.
    fn quadrature_oracle(points: &[f64]) -> f64 {
        let n = points.len();
        let scale = points.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let s = gaussian_truncation(1.0, 0.0, n, scale, 1e-12);
        let contour = VerticalLineContour::new(0.0, s, 64).unwrap();
        let integral = integrate_vertical(
            |w| {
                let mut prod = Complex64::new(1.0, 0.0);
                for &x in points {
                    prod *= w - x;
                }
                (w * w / 2.0).exp() * prod
            },
            &contour,
            1e-13,
        )
        .unwrap();
        // ((-1)^n / i sqrt(2 pi)) int = (-1)^n sqrt(2 pi) * (1/2 pi i) int
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * (2.0 * std::f64::consts::PI).sqrt() * integral.re
    }

    #[test]
    fn p0_is_one() {
        assert_eq!(sym_poly_p(&[]), 1.0);
    }

    #[test]
    fn p1_is_identity() {
        assert_eq!(sym_poly_p(&[3.25]), 3.25);
        assert!((sym_poly_p(&[3.25]) - quadrature_oracle(&[3.25])).abs() < 1e-10);
    }

    #[test]
    fn p2_at_origin() {
        // ((-1)^2 / i sqrt(2 pi)) int e^{w^2/2} w^2 dw = -1
        assert_eq!(sym_poly_p(&[0.0, 0.0]), -1.0);
        assert!((quadrature_oracle(&[0.0, 0.0]) + 1.0).abs() < 1e-10);
    }

    #[test]
    fn equal_arguments_reduce_to_hermite() {
        // He_4(x) = x^4 - 6x^2 + 3
        let x = 1.37f64;
        let he4 = x.powi(4) - 6.0 * x * x + 3.0;
        assert!((sym_poly_p(&[x, x, x, x]) - he4).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_quadrature_oracle_up_to_degree_8() {
        // Deterministic spread of points in [-5, 5].
        let pool = [
            -4.7, 3.1, 0.4, -1.9, 2.6, -0.3, 4.9, -3.4, 1.1, 0.0, -2.2, 3.8,
        ];
        for n in 0..=8 {
            let points = &pool[..n];
            let exact = sym_poly_p(points);
            let oracle = quadrature_oracle(points);
            assert!(
                (exact - oracle).abs() <= 1e-10 * exact.abs().max(1.0),
                "n={n}: closed {exact} vs oracle {oracle}"
            );
        }
    }
}
