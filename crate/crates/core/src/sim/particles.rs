//! Event-driven simulation of the 2+1 dimensional block/push particle system
//! on discrete Gelfand-Tsetlin patterns.
//!
//! Each particle `(k, n)` jumps right at rate `v_n`. A jump of `(k, n)` is
//! suppressed when the particle directly above-left sits at `x_k^{n-1} - 1`
//! (blocking); a successful jump drags the maximal diagonal string
//! `x_k^n = x_{k+1}^{n+1} = ...` along with it (pushing). Both rules together
//! keep the configuration inside the strict-weak interlacing cone.
//!
//! Scheduling is the Gillespie direct method over the flat particle list:
//! waiting times are exponential with the total rate `sum_n n v_n`, and the
//! jumping particle is chosen proportionally to its rate. Suppressed rings
//! are kept as null events, which leaves the embedded jump chain exact.

use crate::drift::RateSpec;
use crate::error::Result;
use crate::pattern::DiscreteGtPattern;
use crate::rng::RngStream;

/// What a single clock ring did.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRecord {
    pub time: f64,
    /// The particle whose clock rang, as (k, n).
    pub particle: (usize, usize),
    /// True when the jump was suppressed by the level below.
    pub blocked: bool,
    /// Particles moved by the event (the ringing one plus the pushed string).
    pub moved: Vec<(usize, usize)>,
}

/// Packed initial condition `x_k^n(0) = k - n - 1`.
pub fn init_packed(n: usize) -> DiscreteGtPattern {
    assert!(n >= 1);
    let levels: Vec<Vec<i64>> = (1..=n)
        .map(|level| {
            (1..=level)
                .map(|k| k as i64 - level as i64 - 1)
                .collect()
        })
        .collect();
    DiscreteGtPattern::new(levels, 0.0).expect("packed pattern interlaces")
}

/// One Gillespie step: advances time and applies a single clock ring.
pub fn step(
    state: &mut DiscreteGtPattern,
    rates: &RateSpec,
    rng: &mut RngStream,
) -> Result<EventRecord> {
    let n_levels = state.order();
    assert!(n_levels <= rates.order());
    let total_rate: f64 = (1..=n_levels).map(|n| n as f64 * rates.rate(n)).sum();
    let wait = rng.exponential(total_rate);
    state.time += wait;

    // Pick the level proportionally to n * v_n, then the particle uniformly
    // within the level (same rate per particle).
    let mut target = rng.uniform() * total_rate;
    let mut level = n_levels;
    for n in 1..=n_levels {
        let band = n as f64 * rates.rate(n);
        if target < band {
            level = n;
            break;
        }
        target -= band;
    }
    let k = rng.below(level) + 1;

    let record = apply_jump(state, k, level);
    debug_assert!(state.interlaces(), "interlacing broken by event {record:?}");
    Ok(record)
}

fn apply_jump(state: &mut DiscreteGtPattern, k: usize, n: usize) -> EventRecord {
    let x_old = state.position(k, n);
    // Blocked: the particle sits immediately left of its upper-left neighbor.
    if k < n && x_old == state.position(k, n - 1) - 1 {
        return EventRecord {
            time: state.time,
            particle: (k, n),
            blocked: true,
            moved: Vec::new(),
        };
    }
    let mut moved = vec![(k, n)];
    *state.position_mut(k, n) += 1;
    // Push the maximal diagonal string that sat at the same position.
    let mut kk = k + 1;
    let mut nn = n + 1;
    while nn <= state.order() && state.position(kk, nn) == x_old {
        *state.position_mut(kk, nn) += 1;
        moved.push((kk, nn));
        kk += 1;
        nn += 1;
    }
    EventRecord {
        time: state.time,
        particle: (k, n),
        blocked: false,
        moved,
    }
}

/// Runs the dynamics until `t_end`; the final event that would overshoot is
/// discarded and the clock set to `t_end` exactly.
pub fn run_to(
    state: &mut DiscreteGtPattern,
    t_end: f64,
    rates: &RateSpec,
    rng: &mut RngStream,
) -> Result<()> {
    assert!(t_end >= state.time);
    let n_levels = state.order();
    let total_rate: f64 = (1..=n_levels).map(|n| n as f64 * rates.rate(n)).sum();
    loop {
        let wait = rng.exponential(total_rate);
        if state.time + wait > t_end {
            state.time = t_end;
            return Ok(());
        }
        state.time += wait;
        let mut target = rng.uniform() * total_rate;
        let mut level = n_levels;
        for n in 1..=n_levels {
            let band = n as f64 * rates.rate(n);
            if target < band {
                level = n;
                break;
            }
            target -= band;
        }
        let k = rng.below(level) + 1;
        let record = apply_jump(state, k, level);
        debug_assert!(state.interlaces(), "interlacing broken by {record:?}");
        let _ = record;
    }
}
