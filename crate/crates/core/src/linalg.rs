//! Small dense linear algebra: a cyclic-Jacobi Hermitian eigensolver, real
//! determinants via partially pivoted elimination, and the Gauss-Jordan
//! inverse used by the Gram-matrix checks. Everything here targets desk-scale
//! orders (n <= 64), where O(n^3) with no blocking is plenty.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermitian matrix stored densely, row major.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![Complex64::new(0.0, 0.0); order * order],
        }
    }

    /// Builds from full entries, enforcing exact conjugate symmetry and real
    /// diagonal.
    pub fn from_entries(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Invalid(format!(
                "expected {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        for j in 0..order {
            if entries[j * order + j].im != 0.0 {
                return Err(Error::Invalid(format!(
                    "diagonal entry {j} has nonzero imaginary part"
                )));
            }
            for k in 0..j {
                if entries[j * order + k] != entries[k * order + j].conj() {
                    return Err(Error::Invalid(format!(
                        "entries ({j},{k}) and ({k},{j}) are not conjugates"
                    )));
                }
            }
        }
        let m = Self { order, entries };
        m.assert_finite()?;
        Ok(m)
    }

    fn assert_finite(&self) -> Result<()> {
        if self
            .entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Invalid("non-finite matrix entry".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.order + k]
    }

    /// Sets entry (j, k) and its conjugate mirror.
    pub fn set_pair(&mut self, j: usize, k: usize, value: Complex64) {
        let n = self.order;
        if j == k {
            self.entries[j * n + j] = Complex64::new(value.re, 0.0);
        } else {
            self.entries[j * n + k] = value;
            self.entries[k * n + j] = value.conj();
        }
    }

    /// Leading principal submatrix of the given order.
    pub fn leading_minor(&self, order: usize) -> Self {
        let mut sub = Self::zeros(order);
        for j in 0..order {
            for k in 0..order {
                sub.entries[j * order + k] = self.get(j, k);
            }
        }
        sub
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Solver output: ascending eigenvalues plus the accuracy report.
#[derive(Debug, Clone)]
pub struct EighResult {
    pub eigenvalues: Vec<f64>,
    /// Eigenvector columns, aligned with `eigenvalues`.
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub report: EighReport,
}

#[derive(Debug, Clone, Copy)]
pub struct EighReport {
    /// max_j ||H v_j - lambda_j v_j||_2
    pub max_residual: f64,
    pub sweeps: usize,
    pub matrix_norm: f64,
}

const MAX_SWEEPS: usize = 64;

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
/// rotations. Residuals are checked against the original matrix.
pub fn eigh(h: &HermitianMatrix) -> Result<EighResult> {
    let n = h.order;
    if n == 0 {
        return Err(Error::Invalid("empty matrix".into()));
    }
    let mut a = h.entries.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        v[j * n + j] = Complex64::new(1.0, 0.0);
    }

    let norm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = 1e-14 * norm;
    let mut sweeps = 0;
    loop {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[p * n + q].norm_sqr();
                }
            }
            (2.0 * s).sqrt()
        };
        if off <= target {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::EighFailure {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let m = apq.norm();
                if m <= 1e-300 {
                    continue;
                }
                let phase = apq / m; // e^{i phi}
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * m);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Diagonal block update.
                a[p * n + p] = Complex64::new(app - t * m, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * m, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);

                // Remaining rows/columns: columns p, q mix through
                // J_pp = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi}, J_qq = c.
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * phase.conj() * arq;
                    let new_rq = s * phase * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp.conj();
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq.conj();
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * phase.conj() * vrq;
                    v[r * n + q] = s * phase * vrp + c * vrq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
    let eigenvectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&col| (0..n).map(|r| v[r * n + col]).collect())
        .collect();

    let mut max_residual = 0.0f64;
    for (lambda, vec) in eigenvalues.iter().zip(&eigenvectors) {
        let mut res = 0.0;
        for r in 0..n {
            let mut hv = Complex64::new(0.0, 0.0);
            for k in 0..n {
                hv += h.entries[r * n + k] * vec[k];
            }
            res += (hv - lambda * vec[r]).norm_sqr();
        }
        max_residual = max_residual.max(res.sqrt());
    }

    Ok(EighResult {
        eigenvalues,
        eigenvectors,
        report: EighReport {
            max_residual,
            sweeps,
            matrix_norm: norm,
        },
    })
}

/// Determinant by partially pivoted Gaussian elimination, sign tracked exactly.
pub fn det_real(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    if n == 0 {
        return 1.0;
    }
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    let mut a: Vec<f64> = matrix.iter().flatten().copied().collect();
    let mut det = 1.0f64;
    for col in 0..n {
        let mut pivot = col;
        for r in (col + 1)..n {
            if a[r * n + col].abs() > a[pivot * n + col].abs() {
                pivot = r;
            }
        }
        let p = a[pivot * n + col];
        if p == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        det *= p;
        for r in (col + 1)..n {
            let factor = a[r * n + col] / p;
            if factor != 0.0 {
                for k in col..n {
                    a[r * n + k] -= factor * a[col * n + k];
                }
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when a pivot vanishes.
pub fn invert_real(matrix: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<f64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a_, &b_| {
            aug[a_][col].abs().total_cmp(&aug[b_][col].abs())
        })?;
        if aug[pivot][col] == 0.0 {
            return None;
        }
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = aug[r][col];
            if factor != 0.0 {
                for k in 0..2 * n {
                    let base = aug[col][k];
                    aug[r][k] -= factor * base;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// 1-norm condition estimate from the explicit inverse.
pub fn condition_1(matrix: &[Vec<f64>]) -> f64 {
    fn norm_1(m: &[Vec<f64>]) -> f64 {
        let n = m.len();
        (0..n)
            .map(|j| m.iter().map(|row| row[j].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
    match invert_real(matrix) {
        Some(inv) => norm_1(matrix) * norm_1(&inv),
        None => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(values: &[f64]) -> HermitianMatrix {
        let mut h = HermitianMatrix::zeros(values.len());
        for (j, &v) in values.iter().enumerate() {
            h.set_pair(j, j, Complex64::new(v, 0.0));
        }
        h
    }

    #[test]
    fn eigh_diagonal_matrix() {
        let result = eigh(&diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(result.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn eigh_pauli_x() {
        let mut h = HermitianMatrix::zeros(2);
        h.set_pair(0, 1, Complex64::new(1.0, 0.0));
        let result = eigh(&h).unwrap();
        assert!((result.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((result.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_pauli_y() {
        let mut h = HermitianMatrix::zeros(2);
        h.set_pair(0, 1, Complex64::new(0.0, -1.0));
        let result = eigh(&h).unwrap();
        assert!((result.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((result.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_shift_invariance() {
        let mut h = HermitianMatrix::zeros(4);
        let vals = [
            (0, 0, 0.7, 0.0),
            (1, 1, -0.2, 0.0),
            (2, 2, 1.4, 0.0),
            (3, 3, 0.1, 0.0),
            (0, 1, 0.3, -0.5),
            (0, 2, -0.8, 0.2),
            (0, 3, 0.05, 0.9),
            (1, 2, 0.6, 0.1),
            (1, 3, -0.4, -0.3),
            (2, 3, 0.2, 0.7),
        ];
        for (j, k, re, im) in vals {
            h.set_pair(j, k, Complex64::new(re, im));
        }
        let base = eigh(&h).unwrap();
        let c = 2.5;
        let mut shifted = h.clone();
        for j in 0..4 {
            let d = shifted.get(j, j).re + c;
            shifted.set_pair(j, j, Complex64::new(d, 0.0));
        }
        let moved = eigh(&shifted).unwrap();
        for (a, b) in base.eigenvalues.iter().zip(&moved.eigenvalues) {
            assert!((a + c - b).abs() < 1e-12);
        }
        assert!(base.report.max_residual <= 1e-10 * base.report.matrix_norm.max(1.0));
    }

    #[test]
    fn eigh_residual_bound_on_dense_matrix() {
        // Deterministic pseudo-random Hermitian matrix of order 16.
        let n = 16;
        let mut h = HermitianMatrix::zeros(n);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for j in 0..n {
            for k in j..n {
                if j == k {
                    h.set_pair(j, k, Complex64::new(next(), 0.0));
                } else {
                    h.set_pair(j, k, Complex64::new(next(), next()));
                }
            }
        }
        let result = eigh(&h).unwrap();
        assert!(result.report.max_residual <= 1e-10 * result.report.matrix_norm);
        for w in result.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn det_small_cases() {
        let eye4: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        assert_eq!(det_real(&eye4), 1.0);
        assert_eq!(det_real(&[vec![1.0, 2.0], vec![3.0, 4.0]]), -2.0);
        // Vandermonde of (0, 1, 2): det = (1-0)(2-0)(2-1) = 2.
        let vandermonde = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 1.0],
            vec![1.0, 2.0, 4.0],
        ];
        assert!((det_real(&vandermonde) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn det_of_product_is_product_of_dets() {
        let n = 8;
        let mut state = 123456789u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| next() + if i == j { 2.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        let b: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| next() + if i == j { 2.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        let ab: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect();
        let lhs = det_real(&ab);
        let rhs = det_real(&a) * det_real(&b);
        assert!((lhs - rhs).abs() / rhs.abs() < 1e-10);
    }

    #[test]
    fn inverse_and_condition() {
        let m = vec![vec![4.0, 1.0], vec![2.0, 3.0]];
        let inv = invert_real(&m).unwrap();
        // m * inv = I
        for i in 0..2 {
            for j in 0..2 {
                let v: f64 = (0..2).map(|k| m[i][k] * inv[k][j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-14);
            }
        }
        assert!(condition_1(&m).is_finite());
    }
}
