//! The feed-forward eavesdropping attack on the simultaneous-quadrature
//! protocol.
//!
//! Eve replaces the lossy channel with her own apparatus: a tap
//! beamsplitter of transmission epsilon, a simultaneous measurement of
//! the tapped beam, and an electronic feed-forward that re-displaces the
//! transmitted beam so the signal Bob receives keeps the magnitude the
//! honest channel would have delivered. Camouflage Gaussian noise tops
//! the line up to the channel noise Bob expects. The window of epsilon
//! values for which that disguise closes exactly, and Eve's best choice
//! inside it, determine the key rate under attack.
//!
//! Eve's conditional variance on Bob has no closed form here; it is
//! obtained by covariance propagation through the attack network, with
//! the Monte Carlo engine as the independent check.

use crate::error::{Error, Result};
use crate::keyrate::{
    alice_conditional_variance, conditional_variance_pair, ChannelParams, SourceParams,
};
use crate::network::{LinearNetwork, TapId};
use crate::quad::QuadPair;
use crate::search::{bisect_root, golden_section_min};

const WINDOW_TOL: f64 = 1e-12;
/// Slack for camouflage budgets that are only negative through the window
/// solver's own tolerance.
const BUDGET_SLACK: f64 = 1e-9;

/// A concrete attack setting: tap transmission, electronic feed-forward
/// gains, and camouflage noise variances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackConfig {
    pub epsilon: f64,
    pub gain: QuadPair,
    pub excess_noise: QuadPair,
}

impl AttackConfig {
    pub fn new(epsilon: f64, gain: QuadPair, excess_noise: QuadPair) -> Result<Self> {
        if !epsilon.is_finite() || !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::TransmissionOutOfRange {
                value: epsilon,
                min: 0.0,
                max: 1.0,
            });
        }
        if !gain.is_finite() {
            return Err(Error::Domain(format!(
                "feed-forward gain {gain} must be finite"
            )));
        }
        if !excess_noise.is_finite() || !excess_noise.is_non_negative() {
            return Err(Error::Domain(format!(
                "camouflage noise {excess_noise} must be finite and non-negative"
            )));
        }
        Ok(Self {
            epsilon,
            gain,
            excess_noise,
        })
    }

    /// The undetectable configuration at a given tap transmission: the
    /// gain that keeps Bob's signal magnitude invariant and the camouflage
    /// noise that restores the expected channel noise exactly. Fails if
    /// the required camouflage would be negative (Eve cannot hide there).
    pub fn undetectable(channel: &ChannelParams, epsilon: f64) -> Result<Self> {
        let gain = required_gain(channel.transmission(), epsilon)?;
        let budget = camouflage_budget(channel, epsilon)?;
        if budget.plus < -BUDGET_SLACK || budget.minus < -BUDGET_SLACK {
            return Err(Error::AttackInfeasible);
        }
        Self::new(epsilon, gain, budget.map(|b| b.max(0.0)))
    }

    /// Check the gain against the channel it claims to imitate:
    /// `sqrt(eps) + g sqrt((1 - eps) / 2) = sqrt(eta)` per quadrature.
    pub fn gain_matches_channel(&self, eta: f64, tol: f64) -> bool {
        let carry = (0.5 * (1.0 - self.epsilon)).sqrt();
        let target = eta.sqrt();
        let residual = |g: f64| (self.epsilon.sqrt() + g * carry - target).abs();
        residual(self.gain.plus) <= tol && residual(self.gain.minus) <= tol
    }
}

/// Interval of tap transmissions for which the disguise can be closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleWindow {
    pub epsilon_min: f64,
    pub epsilon_max: f64,
    pub empty: bool,
}

impl FeasibleWindow {
    /// Empty-window sentinel: `epsilon_min > epsilon_max`.
    pub const EMPTY: Self = Self {
        epsilon_min: 1.0,
        epsilon_max: 0.0,
        empty: true,
    };

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn width(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            self.epsilon_max - self.epsilon_min
        }
    }

    pub fn contains(&self, epsilon: f64) -> bool {
        !self.empty && (self.epsilon_min..=self.epsilon_max).contains(&epsilon)
    }
}

/// Result of the attack optimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackReport {
    /// Tap transmission minimizing Eve's conditional variance product.
    pub epsilon_star: f64,
    /// Eve's measured variances at `epsilon_star`.
    pub eve_variance: QuadPair,
    /// Eve's conditional variance of Bob's record at `epsilon_star`.
    pub eve_conditional: QuadPair,
    /// Secret key rate under the attack, bits/symbol.
    pub delta_i: f64,
    pub window: FeasibleWindow,
}

/// Eve's measured variances after heterodyning her tapped beam:
/// `V_E = ((1 - eps) V_A + eps + 1) / 2` per quadrature.
pub fn eve_variance(source: &SourceParams, epsilon: f64) -> Result<QuadPair> {
    if !epsilon.is_finite() || !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::TransmissionOutOfRange {
            value: epsilon,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(source
        .alice_variance()
        .map(|va| 0.5 * ((1.0 - epsilon) * va + epsilon + 1.0)))
}

/// The electronic gain that keeps Bob's signal magnitude invariant:
/// `g = sqrt(2) (sqrt(eta) - sqrt(eps)) / sqrt(1 - eps)`, same in both
/// quadratures. Singular at `eps = 1`.
pub fn required_gain(eta: f64, epsilon: f64) -> Result<QuadPair> {
    if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
        return Err(Error::TransmissionOutOfRange {
            value: eta,
            min: 0.0,
            max: 1.0,
        });
    }
    if !epsilon.is_finite() || !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::TransmissionOutOfRange {
            value: epsilon,
            min: 0.0,
            max: 1.0,
        });
    }
    if epsilon >= 1.0 {
        return Err(Error::SingularGain);
    }
    let g = std::f64::consts::SQRT_2 * (eta.sqrt() - epsilon.sqrt()) / (1.0 - epsilon).sqrt();
    Ok(QuadPair::symmetric(g))
}

/// Variance of Bob's heterodyne record under the attack, per quadrature:
///
/// ```text
/// V_B = ( (sqrt(eps) + g sqrt((1-eps)/2))^2 V_A   signal
///       + 1                                       Bob's heterodyne vacuum
///       + V_noise                                 camouflage
///       + g^2 / 2                                 Eve's measurement vacuum
///       + (sqrt(1-eps) - g sqrt(eps/2))^2 ) / 2   tap vacuum after feed-forward
/// ```
///
/// The feed-forward that reinforces the signal partially cancels the tap
/// vacuum, hence the minus sign in the interference term (the tap
/// beamsplitter's outputs are orthogonal combinations of its inputs).
pub fn bob_variance_under_attack(source: &SourceParams, config: &AttackConfig) -> QuadPair {
    let eps = config.epsilon;
    let carry = (0.5 * (1.0 - eps)).sqrt();
    let back = (0.5 * eps).sqrt();
    let va = source.alice_variance();
    let terms = |va: f64, g: f64, vn: f64| {
        let signal = (eps.sqrt() + g * carry).powi(2) * va;
        let tap = ((1.0 - eps).sqrt() - g * back).powi(2);
        0.5 * (signal + 1.0 + vn + 0.5 * g * g + tap)
    };
    QuadPair::new(
        terms(va.plus, config.gain.plus, config.excess_noise.plus),
        terms(va.minus, config.gain.minus, config.excess_noise.minus),
    )
}

/// Camouflage noise required per quadrature for the disguise to close at
/// a given tap transmission (negative values mean the attack is already
/// noisier than the channel and cannot hide).
pub fn camouflage_budget(channel: &ChannelParams, epsilon: f64) -> Result<QuadPair> {
    let eta = channel.transmission();
    let excess = intrinsic_excess(eta, epsilon)?;
    Ok(channel.noise().map(|vn| (1.0 - eta) * (vn - 1.0) - excess))
}

/// Noise the attack adds beyond a vacuum-noise channel of the same
/// transmission, with the signal-preserving gain in place.
fn intrinsic_excess(eta: f64, epsilon: f64) -> Result<f64> {
    let g = required_gain(eta, epsilon)?.plus;
    let tap = ((1.0 - epsilon).sqrt() - g * (0.5 * epsilon).sqrt()).powi(2);
    Ok(0.5 * g * g + tap - (1.0 - eta))
}

/// Maximal interval of tap transmissions with non-negative camouflage
/// budget in both quadratures. Endpoints are located by bisection on the
/// budget shortfall; the excess-noise profile falls monotonically to zero
/// at `eps = eta` and rises monotonically past it.
pub fn feasibility_window(channel: &ChannelParams) -> FeasibleWindow {
    let eta = channel.transmission();
    if eta >= 1.0 {
        // A lossless channel leaves Eve no noise to hide in.
        return FeasibleWindow::EMPTY;
    }
    let noise = channel.noise();
    let allowance = (1.0 - eta) * (noise.plus.min(noise.minus) - 1.0);
    if allowance < 0.0 {
        return FeasibleWindow::EMPTY;
    }
    if allowance == 0.0 {
        return FeasibleWindow {
            epsilon_min: eta,
            epsilon_max: eta,
            empty: false,
        };
    }
    let shortfall = |eps: f64| intrinsic_excess(eta, eps).expect("eps inside (0,1)") - allowance;

    let epsilon_min = if shortfall(0.0) <= 0.0 {
        0.0
    } else {
        bisect_root(shortfall, 0.0, eta, WINDOW_TOL, 200).expect("bracketed by construction")
    };

    // The excess diverges as eps -> 1, so a bracket exists unless the
    // noise allowance swallows every representable eps below 1.
    let ceiling = 1.0 - f64::EPSILON;
    let mut hi = eta + 0.5 * (1.0 - eta);
    while shortfall(hi) <= 0.0 {
        hi += 0.5 * (1.0 - hi);
        if hi >= ceiling {
            hi = ceiling;
            break;
        }
    }
    let epsilon_max = if shortfall(hi) <= 0.0 {
        hi
    } else {
        bisect_root(shortfall, eta, hi, WINDOW_TOL, 200).expect("bracketed by construction")
    };

    FeasibleWindow {
        epsilon_min,
        epsilon_max,
        empty: false,
    }
}

/// Tap labels of the attack network.
#[derive(Debug, Clone, Copy)]
pub struct AttackTaps {
    pub signal: TapId,
    pub alice: TapId,
    pub eve: TapId,
    pub bob: TapId,
}

/// Build the attack topology: Alice's modulated mode, Eve's tap and
/// simultaneous measurement, the electronic feed-forward onto the
/// transmitted beam, camouflage noise, and Bob's heterodyne detector.
pub fn feedforward_network(
    source: &SourceParams,
    config: &AttackConfig,
) -> Result<(LinearNetwork, AttackTaps)> {
    let mut net = LinearNetwork::new();
    let signal = net.source(crate::gaussian::ModeStat::zero_mean(source.modulation())?)?;
    let alice_noise = net.source(crate::gaussian::ModeStat::zero_mean(source.squeezing())?)?;
    let tap_vac = net.vacuum()?;
    let meas_vac = net.vacuum()?;
    let bob_vac = net.vacuum()?;

    // Alice's prepared mode: signal displacement on top of the state noise.
    let sent = net.feed_forward(signal, alice_noise, QuadPair::symmetric(1.0))?;

    // Eve's tap; she keeps the reflected output.
    let (to_bob, eve_beam) = net.beamsplitter(sent, tap_vac, config.epsilon)?;

    // Eve's simultaneous measurement of the tapped beam: amplitude read
    // from one output, phase from the other.
    let (eve_plus, eve_minus) = net.beamsplitter(eve_beam, meas_vac, 0.5)?;

    // Electronic feed-forward. The reflected tap output carries -X_A in
    // the amplitude record and +X_A (after the measurement splitter's own
    // reflection) in the phase record, so the electronic signs differ
    // while both quadratures reinforce Bob's signal by +g.
    let ff_plus = net.feed_forward(eve_plus, to_bob, QuadPair::new(-config.gain.plus, 0.0))?;
    let ff_both = net.feed_forward(eve_minus, ff_plus, QuadPair::new(0.0, config.gain.minus))?;
    let disguised = net.inject_noise(ff_both, config.excess_noise)?;

    let (bob_plus, bob_minus) = net.beamsplitter(disguised, bob_vac, 0.5)?;

    let taps = AttackTaps {
        signal: net.tap("s", signal, signal)?,
        alice: net.tap("x_a", sent, sent)?,
        eve: net.tap("x_e", eve_plus, eve_minus)?,
        bob: net.tap("x_b", bob_plus, bob_minus)?,
    };
    Ok((net, taps))
}

/// Eve's conditional variance of Bob's record, by covariance propagation
/// through the attack network and optimal linear estimation.
pub fn eve_conditional_variance(source: &SourceParams, config: &AttackConfig) -> Result<QuadPair> {
    let (net, taps) = feedforward_network(source, config)?;
    let moments = net.propagate();
    let (conditional, _) = conditional_variance_pair(
        moments.tap_variance(taps.bob),
        moments.tap_variance(taps.eve),
        moments.tap_covariance(taps.bob, taps.eve),
    )?;
    Ok(conditional)
}

/// Minimize Eve's conditional variance product over the feasibility
/// window and report the resulting key rate.
///
/// The objective `V_E|B+ * V_E|B-` is what the key rate depends on; for
/// symmetric quadratures it reduces to the scalar case. A coarse grid
/// scan brackets the minimum before golden-section refinement to `tol`
/// in epsilon.
pub fn optimize_attack(
    source: &SourceParams,
    channel: &ChannelParams,
    tol: f64,
) -> Result<AttackReport> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let window = feasibility_window(channel);
    if window.is_empty() {
        return Err(Error::AttackInfeasible);
    }

    let objective = |eps: f64| -> f64 {
        let config = AttackConfig::undetectable(channel, eps)
            .expect("window membership guarantees feasibility");
        eve_conditional_variance(source, &config)
            .expect("undetectable config has consistent moments")
            .product()
    };

    let epsilon_star = if window.width() <= tol {
        0.5 * (window.epsilon_min + window.epsilon_max)
    } else {
        // Grid pre-scan to bracket the global minimum.
        const GRID: usize = 64;
        let step = window.width() / (GRID - 1) as f64;
        let mut best = (0usize, f64::INFINITY);
        for i in 0..GRID {
            let eps = window.epsilon_min + step * i as f64;
            let v = objective(eps);
            if v < best.1 {
                best = (i, v);
            }
        }
        let lo = window.epsilon_min + step * best.0.saturating_sub(1) as f64;
        let hi = (window.epsilon_min + step * (best.0 + 1) as f64).min(window.epsilon_max);
        let (refined, refined_value) = golden_section_min(objective, lo, hi, tol, 400)?;
        // Golden-section iterates stay interior; the objective has a
        // sqrt(eps) cusp at a zero lower endpoint, so check the exact
        // window endpoints as candidates.
        let mut best = (refined, refined_value);
        for endpoint in [window.epsilon_min, window.epsilon_max] {
            let value = objective(endpoint);
            if value < best.1 {
                best = (endpoint, value);
            }
        }
        best.0
    };

    let config = AttackConfig::undetectable(channel, epsilon_star)?;
    let eve_conditional = eve_conditional_variance(source, &config)?;
    let alice_conditional = alice_conditional_variance(source, channel);
    let delta_i = 0.5 * (eve_conditional.product() / alice_conditional.product()).log2();

    Ok(AttackReport {
        epsilon_star,
        eve_variance: eve_variance(source, epsilon_star)?,
        eve_conditional,
        delta_i,
        window,
    })
}
