//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A beamsplitter or channel transmission outside its valid range.
    #[error("transmission {value} outside [{min}, {max}]")]
    TransmissionOutOfRange { value: f64, min: f64, max: f64 },

    /// Channel noise violating the uncertainty relation V_N+ * V_N- >= 1.
    #[error("unphysical channel noise: V_N+ = {plus}, V_N- = {minus} violates V_N+ * V_N- >= 1")]
    UnphysicalNoise { plus: f64, minus: f64 },

    /// Source squeezing violating V_sqz+ * V_sqz- >= 1.
    #[error(
        "unphysical squeezing: V_sqz+ = {plus}, V_sqz- = {minus} violates V_sqz+ * V_sqz- >= 1"
    )]
    UnphysicalSqueezing { plus: f64, minus: f64 },

    /// Second moments that no joint distribution can have.
    #[error(
        "inconsistent moments: cov^2 = {cov_squared} exceeds V_target * V_estimator = {bound}"
    )]
    InconsistentMoments { cov_squared: f64, bound: f64 },

    /// Estimator variance too small to condition on.
    #[error("degenerate estimator: variance {variance} below {min}")]
    DegenerateEstimator { variance: f64, min: f64 },

    /// Feed-forward gain diverges when the tap transmits everything.
    #[error("feed-forward gain is singular at epsilon = 1")]
    SingularGain,

    /// No undetectable attack configuration exists.
    #[error("no undetectable attack: the feasibility window is empty")]
    AttackInfeasible,

    /// Structural problem in a linear network description.
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    /// Optimizer ran out of iterations; carries the final bracket.
    #[error("optimizer did not converge on [{lower}, {upper}] after {iterations} iterations")]
    OptimizerStalled {
        lower: f64,
        upper: f64,
        iterations: usize,
    },

    /// Any other parameter-domain violation.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
