//! The three stochastic models sharing the fixed-time minor-process law.

pub mod matrix;
pub mod particles;
pub mod warren;
