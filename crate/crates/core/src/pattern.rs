//! Interlaced triangular arrays (continuous and integer-valued) and the
//! (position, level) points indexing kernel arguments.

use crate::error::{Error, Result};

/// Kernel argument `(x, n)` with `1 <= n <= N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub x: f64,
    pub n: usize,
}

impl KernelPoint {
    pub fn new(x: f64, n: usize) -> Self {
        assert!(n >= 1, "levels are 1-based");
        Self { x, n }
    }
}

/// Discrete kernel argument `(x, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscretePoint {
    pub x: i64,
    pub n: usize,
}

impl DiscretePoint {
    pub fn new(x: i64, n: usize) -> Self {
        assert!(n >= 1, "levels are 1-based");
        Self { x, n }
    }
}

/// Continuous Gelfand-Tsetlin pattern: level `n` holds `n` ascending reals,
/// consecutive levels interlace.
#[derive(Debug, Clone, PartialEq)]
pub struct GtPattern {
    levels: Vec<Vec<f64>>,
}

impl GtPattern {
    /// Validates shape and interlacing (with `slack = 0`).
    pub fn new(levels: Vec<Vec<f64>>) -> Result<Self> {
        let pattern = Self::new_unchecked(levels)?;
        if !pattern.interlaces(0.0) {
            return Err(Error::Invalid("pattern violates interlacing".into()));
        }
        Ok(pattern)
    }

    /// Validates only the triangular shape.
    pub fn new_unchecked(levels: Vec<Vec<f64>>) -> Result<Self> {
        for (i, level) in levels.iter().enumerate() {
            if level.len() != i + 1 {
                return Err(Error::Invalid(format!(
                    "level {} must hold {} values, got {}",
                    i + 1,
                    i + 1,
                    level.len()
                )));
            }
        }
        Ok(Self { levels })
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    /// Entries of level `n` (1-based), ascending.
    pub fn level(&self, n: usize) -> &[f64] {
        &self.levels[n - 1]
    }

    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }

    /// `lambda_k^{n+1} <= lambda_k^n <= lambda_{k+1}^{n+1}` for all valid
    /// `(k, n)`, allowing `slack` to absorb eigensolver round-off.
    pub fn interlaces(&self, slack: f64) -> bool {
        for n in 1..self.order() {
            let upper = &self.levels[n]; // level n+1
            let lower = &self.levels[n - 1]; // level n
            for k in 0..n {
                if upper[k] > lower[k] + slack || lower[k] > upper[k + 1] + slack {
                    return false;
                }
            }
        }
        true
    }

    /// All `(value, level)` points of the pattern.
    pub fn points(&self) -> Vec<KernelPoint> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, level)| level.iter().map(move |&x| KernelPoint::new(x, i + 1)))
            .collect()
    }
}

/// Integer-valued pattern with the strict-weak interlacing
/// `x_k^{n+1} < x_k^n <= x_{k+1}^{n+1}` preserved by the particle dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteGtPattern {
    levels: Vec<Vec<i64>>,
    pub time: f64,
}

impl DiscreteGtPattern {
    pub fn new(levels: Vec<Vec<i64>>, time: f64) -> Result<Self> {
        for (i, level) in levels.iter().enumerate() {
            if level.len() != i + 1 {
                return Err(Error::Invalid(format!(
                    "level {} must hold {} values, got {}",
                    i + 1,
                    i + 1,
                    level.len()
                )));
            }
        }
        let pattern = Self { levels, time };
        if !pattern.interlaces() {
            return Err(Error::Invalid(
                "pattern violates discrete interlacing".into(),
            ));
        }
        Ok(pattern)
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, n: usize) -> &[i64] {
        &self.levels[n - 1]
    }

    /// Position of particle `(k, n)`, both 1-based.
    pub fn position(&self, k: usize, n: usize) -> i64 {
        self.levels[n - 1][k - 1]
    }

    pub(crate) fn position_mut(&mut self, k: usize, n: usize) -> &mut i64 {
        &mut self.levels[n - 1][k - 1]
    }

    pub fn interlaces(&self) -> bool {
        for n in 1..self.order() {
            let upper = &self.levels[n];
            let lower = &self.levels[n - 1];
            for k in 0..n {
                if !(upper[k] < lower[k] && lower[k] <= upper[k + 1]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interlacing_accepts_valid_pattern() {
        let p = GtPattern::new(vec![vec![0.3], vec![-1.0, 1.2]]).unwrap();
        assert!(p.interlaces(0.0));
        assert_eq!(p.points().len(), 3);
    }

    #[test]
    fn interlacing_rejects_violation() {
        assert!(GtPattern::new(vec![vec![5.0], vec![-1.0, 1.2]]).is_err());
    }

    #[test]
    fn shape_is_enforced() {
        assert!(GtPattern::new_unchecked(vec![vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn discrete_interlacing_is_strict_weak() {
        // x_1^2 < x_1^1 <= x_2^2
        assert!(DiscreteGtPattern::new(vec![vec![-1], vec![-2, -1]], 0.0).is_ok());
        assert!(DiscreteGtPattern::new(vec![vec![-1], vec![-1, 0]], 0.0).is_err());
    }
}
