use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone)]
pub enum Error {
    /// Node doubling stopped making progress before reaching the tolerance.
    #[error("quadrature failed to converge: last two estimates {last} and {previous} differ by {diff} (tol {tol}, {nodes} nodes)")]
    QuadratureFailure {
        last: f64,
        previous: f64,
        diff: f64,
        tol: f64,
        nodes: usize,
    },

    /// Residue formulas need pairwise-distinct drifts or rates.
    #[error("parameters too close for residue evaluation: min separation {separation:.3e} < threshold {threshold:.3e}")]
    Confluence { separation: f64, threshold: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EighFailure { sweeps: usize, off_norm: f64 },

    #[error("Gram matrix too ill-conditioned: estimated condition {condition:.3e}")]
    IllConditioned { condition: f64 },

    #[error("empty sample stream")]
    EmptySamples,

    #[error("invalid input: {0}")]
    Invalid(String),
}
