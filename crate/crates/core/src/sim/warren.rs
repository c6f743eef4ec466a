//! Discrete-time simulation of the interlaced reflected Brownian system:
//! level-n motions carry drift `mu_n` and are reflected off level `n - 1`.
//!
//! Reflection is realized as the one-step discretization of the Skorokhod
//! map: after the free Euler proposal of a level, each coordinate is clamped
//! from below by its down-left neighbor and from above by its down-right
//! neighbor on the already-updated previous level. Interlacing therefore
//! holds after every step by construction.

use crate::drift::DriftSpec;
use crate::error::Result;
use crate::pattern::GtPattern;
use crate::rng::RngStream;
use crate::runner;
use crate::verify::{self, Statistic};

/// Euler-Maruyama with per-step Skorokhod clamping; all coordinates start at
/// the origin. `t_end` is resolved to a whole number of steps by rounding.
pub fn simulate(n: usize, t_end: f64, delta: f64, d: &DriftSpec, rng: &mut RngStream) -> GtPattern {
    assert!(n >= 1 && n <= d.order());
    assert!(delta > 0.0 && t_end >= 0.0);
    let steps = (t_end / delta).round().max(0.0) as usize;
    let dt = if steps > 0 { t_end / steps as f64 } else { 0.0 };
    let sqrt_dt = dt.sqrt();

    let mut levels: Vec<Vec<f64>> = (1..=n).map(|m| vec![0.0; m]).collect();
    for _ in 0..steps {
        for level in 0..n {
            let mu = d.drift(level + 1);
            for k in 0..=level {
                levels[level][k] += mu * dt + sqrt_dt * rng.normal();
            }
            if level > 0 {
                // Lower pushing barrier, then upper, against the already
                // updated level below.
                for k in 1..=level {
                    let barrier = levels[level - 1][k - 1];
                    if levels[level][k] < barrier {
                        levels[level][k] = barrier;
                    }
                }
                for k in 0..level {
                    let barrier = levels[level - 1][k];
                    if levels[level][k] > barrier {
                        levels[level][k] = barrier;
                    }
                }
            }
        }
        debug_assert!(
            GtPattern::new_unchecked(levels.clone())
                .map(|p| p.interlaces(0.0))
                .unwrap_or(false),
            "clamping must preserve interlacing"
        );
    }
    GtPattern::new_unchecked(levels).expect("triangular shape")
}

/// One rung of the step-size ladder.
#[derive(Debug, Clone)]
pub struct LadderRow {
    pub delta: f64,
    /// Per-level L1 distance of the empirical one-point function to the
    /// continuous kernel diagonal.
    pub distances: Vec<f64>,
}

/// Distances between simulated one-point histograms and the kernel
/// prediction, one row per step size. The same seed is reused across step
/// sizes so the Monte Carlo noise is common to all rungs.
pub fn convergence_ladder(
    n: usize,
    t_end: f64,
    deltas: &[f64],
    d: &DriftSpec,
    replicas: u64,
    seed: u64,
    workers: usize,
    bin_width: f64,
) -> Result<Vec<LadderRow>> {
    let mut rows = Vec::new();
    for &delta in deltas {
        let mut distances = Vec::with_capacity(n);
        if replicas > 0 {
            let d_inner = d.clone();
            let samples = runner::run_replicas(replicas, workers, seed, move |_, rng| {
                simulate(n, t_end, delta, &d_inner, rng)
            });
            for level in 1..=n {
                let (lo, hi) = verify::level_window(level, t_end, d);
                let edges = verify::bin_edges(lo, hi, bin_width);
                let est = verify::estimate_one_point(samples.iter(), level, &edges)?;
                let report =
                    verify::compare_to_kernel(&est, t_end, d, Statistic::L1, f64::INFINITY)?;
                distances.push(report.value);
            }
        }
        rows.push(LadderRow { delta, distances });
    }
    Ok(rows)
}
