//! Fixed-time statistics of the drifted Hermitian minor process.
//!
//! The crate evaluates the determinantal correlation kernel of the process in
//! its continuous and discrete forms, simulates the three stochastic models
//! that share its fixed-time law (matrix diffusion minors, interlaced
//! reflected Brownian motions, and a 2+1 dimensional block/push particle
//! system), and provides the verification harness that ties the simulators to
//! the kernels.

pub mod drift;
pub mod error;
pub mod kernel_ct;
pub mod kernel_dt;
pub mod linalg;
pub mod pattern;
pub mod quad;
pub mod report;
pub mod rng;
pub mod runner;
pub mod sim;
pub mod special;
pub mod sympoly;
pub mod verify;

pub use drift::{DriftSpec, RateSpec};
pub use error::{Error, Result};
pub use pattern::{DiscreteGtPattern, DiscretePoint, GtPattern, KernelPoint};
pub use rng::RngStream;
