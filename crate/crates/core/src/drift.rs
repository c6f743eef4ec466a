//! Drift and jump-rate parameter sets.
//!
//! Level indices in this crate are 1-based everywhere, matching the
//! triangular-array labelling `1 <= k <= n <= N`; the accessors take 1-based
//! indices and panic on 0.

use crate::error::{Error, Result};

/// Residue formulas are only used when parameters are at least this far
/// apart; below it, callers fall back to perturbed evaluation.
pub const CONFLUENCE_THRESHOLD: f64 = 1e-6;

/// Perturbation size for near-confluent evaluation (paired with two-point
/// Richardson extrapolation).
pub const CONFLUENCE_EPSILON: f64 = 1e-4;

/// Drift vector `mu_1..mu_N` with the derived contour abscissa `mu_-`.
#[derive(Debug, Clone)]
pub struct DriftSpec {
    drifts: Vec<f64>,
    contour_abscissa: f64,
    separation: f64,
}

fn min_separation(values: &[f64]) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..values.len() {
        for j in 0..i {
            sep = sep.min((values[i] - values[j]).abs());
        }
    }
    sep
}

impl DriftSpec {
    /// Contour abscissa defaults to `min mu - 1`.
    pub fn new(drifts: Vec<f64>) -> Result<Self> {
        let min = drifts.iter().copied().fold(f64::INFINITY, f64::min);
        Self::with_abscissa(drifts, min - 1.0)
    }

    pub fn with_abscissa(drifts: Vec<f64>, contour_abscissa: f64) -> Result<Self> {
        if drifts.is_empty() {
            return Err(Error::Invalid("empty drift vector".into()));
        }
        if drifts.iter().any(|m| !m.is_finite()) {
            return Err(Error::Invalid("non-finite drift".into()));
        }
        let min = drifts.iter().copied().fold(f64::INFINITY, f64::min);
        if !(contour_abscissa < min) {
            return Err(Error::Invalid(format!(
                "contour abscissa {contour_abscissa} must lie strictly below min drift {min}"
            )));
        }
        let separation = min_separation(&drifts);
        Ok(Self {
            drifts,
            contour_abscissa,
            separation,
        })
    }

    pub fn order(&self) -> usize {
        self.drifts.len()
    }

    /// `mu_level`, 1-based.
    pub fn drift(&self, level: usize) -> f64 {
        self.drifts[level - 1]
    }

    pub fn drifts(&self) -> &[f64] {
        &self.drifts
    }

    pub fn contour_abscissa(&self) -> f64 {
        self.contour_abscissa
    }

    /// Minimum pairwise separation; infinite for a single drift.
    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn max_abs_drift(&self) -> f64 {
        self.drifts.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn require_distinct(&self) -> Result<()> {
        if self.separation < CONFLUENCE_THRESHOLD {
            return Err(Error::Confluence {
                separation: self.separation,
                threshold: CONFLUENCE_THRESHOLD,
            });
        }
        Ok(())
    }

    /// Perturbed copy `mu_j + j * epsilon`, used near confluence.
    pub fn perturbed(&self, epsilon: f64) -> Result<Self> {
        let drifts: Vec<f64> = self
            .drifts
            .iter()
            .enumerate()
            .map(|(i, m)| m + (i + 1) as f64 * epsilon)
            .collect();
        Self::new(drifts)
    }
}

/// Jump rates `v_1..v_N` for the discrete particle system.
#[derive(Debug, Clone)]
pub struct RateSpec {
    rates: Vec<f64>,
    separation: f64,
    /// Populated when the rates come from the diffusive scaling
    /// `v_n = 1 - mu_n / sqrt(T)`.
    derived_from: Option<(DriftSpec, f64)>,
}

impl RateSpec {
    pub fn new(rates: Vec<f64>) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::Invalid("empty rate vector".into()));
        }
        if rates.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::Invalid("rates must be positive and finite".into()));
        }
        let separation = min_separation(&rates);
        Ok(Self {
            rates,
            separation,
            derived_from: None,
        })
    }

    /// Diffusive scaling: `v_n = 1 - mu_n / sqrt(T)`. Fails unless `T` is
    /// large enough that every rate stays positive.
    pub fn from_scaling(drifts: &DriftSpec, big_t: f64) -> Result<Self> {
        if !(big_t > 0.0) {
            return Err(Error::Invalid(format!("scaling parameter T={big_t} must be positive")));
        }
        let sqrt_t = big_t.sqrt();
        let rates: Vec<f64> = drifts.drifts().iter().map(|m| 1.0 - m / sqrt_t).collect();
        let mut spec = Self::new(rates)?;
        spec.derived_from = Some((drifts.clone(), big_t));
        Ok(spec)
    }

    pub fn order(&self) -> usize {
        self.rates.len()
    }

    /// `v_level`, 1-based.
    pub fn rate(&self, level: usize) -> f64 {
        self.rates[level - 1]
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn max_rate(&self) -> f64 {
        self.rates.iter().copied().fold(0.0, f64::max)
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn derived_from(&self) -> Option<(&DriftSpec, f64)> {
        self.derived_from.as_ref().map(|(d, t)| (d, *t))
    }

    pub fn require_distinct(&self) -> Result<()> {
        if self.separation < CONFLUENCE_THRESHOLD {
            return Err(Error::Confluence {
                separation: self.separation,
                threshold: CONFLUENCE_THRESHOLD,
            });
        }
        Ok(())
    }
}
