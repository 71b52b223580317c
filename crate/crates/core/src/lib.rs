//! Simulator and key-rate calculator for the no-switching
//! (simultaneous quadrature measurement) continuous-variable QKD
//! protocol.
//!
//! The crate provides three routes to every protocol quantity and keeps
//! them in agreement:
//!
//! * closed-form conditional variances and secret-key-rate bounds
//!   ([`keyrate`]), for the heterodyne protocol and the single-quadrature
//!   comparison protocol;
//! * a feed-forward eavesdropping attack with its undetectability
//!   (feasibility) window and a numerical minimization of Eve's
//!   conditional variance ([`attack`]);
//! * a seeded Monte Carlo engine over explicit linear-optics networks,
//!   with exact covariance propagation as the analytic reference
//!   ([`network`], [`montecarlo`]).
//!
//! All variances are in shot-noise units (vacuum variance 1).

pub mod attack;
pub mod error;
pub mod gaussian;
pub mod keyrate;
pub mod moments;
pub mod montecarlo;
pub mod network;
pub mod quad;
pub mod search;

pub use attack::{
    bob_variance_under_attack, eve_conditional_variance, eve_variance, feasibility_window,
    optimize_attack, required_gain, AttackConfig, AttackReport, FeasibleWindow,
};
pub use error::{Error, Result};
pub use gaussian::{beamsplitter_mix, heterodyne_detect, lossy_channel, ModeStat};
pub use keyrate::{
    absolute_rate, alice_conditional_variance, bob_variance, conditional_variance,
    conditional_variance_pair, eve_min_conditional_variance, heterodyne_rate_lower_bound,
    secret_key_rate_heterodyne, secret_key_rate_homodyne, shannon_rate, ChannelParams,
    InferenceGain, Protocol, RateReport, SourceParams,
};
pub use montecarlo::{
    concordance_report, run, run_parallel, sample_table, ConcordanceReport, ConcordanceRow,
    EmpiricalMoments, RunSpec, Scenario, TapKind,
};
pub use network::{LinearNetwork, NetworkMoments, SampleTable, SlotId, TapId};
pub use quad::QuadPair;
