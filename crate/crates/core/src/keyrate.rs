//! Closed-form conditional variances, mutual informations, and secret key
//! rates for the simultaneous-quadrature (heterodyne) protocol and the
//! single-quadrature (homodyne) comparison protocol, both under reverse
//! reconciliation.
//!
//! All variances are in shot-noise units. Conventions:
//!
//! * Alice sends `X_A = S + v`, with a classical Gaussian signal `S` of
//!   variance `V_S` per quadrature and transmitted-state noise `v` of
//!   variance `V_sqz` (1 for coherent states), so `V_A = V_S + V_sqz`.
//! * Alice's inference of Bob conditions on the signal realisation `S`
//!   she actually knows; the covariance entering the conditional-variance
//!   formula is then `sqrt(eta/2) * V_S` with estimator variance `V_S`.
//! * Eve's minimum conditional variance pairs her inference of one
//!   quadrature against Alice's conjugate quadrature, so the channel
//!   noise enters with swapped quadrature roles. For symmetric noise the
//!   pairing is invisible; it is what keeps the joint uncertainty product
//!   `V_E|B(+/-) * V_A|B(-/+) >= 1` valid for asymmetric channels.

use crate::error::{Error, Result};
use crate::quad::QuadPair;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Alice's state preparation: modulation variance and transmitted-state
/// quadrature noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceParams {
    modulation: QuadPair,
    squeezing: QuadPair,
}

impl SourceParams {
    /// A general (possibly squeezed, possibly asymmetric) source.
    pub fn new(modulation: QuadPair, squeezing: QuadPair) -> Result<Self> {
        if !modulation.is_finite() || !modulation.is_non_negative() {
            return Err(Error::Domain(format!(
                "modulation variance {modulation} must be finite and non-negative"
            )));
        }
        if !squeezing.is_finite() || !squeezing.is_positive() {
            return Err(Error::Domain(format!(
                "squeezing variance {squeezing} must be finite and positive"
            )));
        }
        if squeezing.product() < 1.0 {
            return Err(Error::UnphysicalSqueezing {
                plus: squeezing.plus,
                minus: squeezing.minus,
            });
        }
        Ok(Self {
            modulation,
            squeezing,
        })
    }

    /// Coherent-state source with total quadrature variance `alice_variance`
    /// in both quadratures.
    pub fn coherent(alice_variance: f64) -> Result<Self> {
        if !alice_variance.is_finite() || alice_variance < 1.0 {
            return Err(Error::Domain(format!(
                "coherent-state variance {alice_variance} must be >= 1 (vacuum floor)"
            )));
        }
        Self::new(QuadPair::symmetric(alice_variance - 1.0), QuadPair::VACUUM)
    }

    /// Modulation variance V_S per quadrature.
    pub fn modulation(&self) -> QuadPair {
        self.modulation
    }

    /// Transmitted-state quadrature noise V_sqz (1 for coherent states).
    pub fn squeezing(&self) -> QuadPair {
        self.squeezing
    }

    /// Total variance of the prepared state, V_A = V_S + V_sqz.
    pub fn alice_variance(&self) -> QuadPair {
        self.modulation + self.squeezing
    }
}

/// A lossy Gaussian channel: transmission eta and noise variances V_N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    transmission: f64,
    noise: QuadPair,
}

impl ChannelParams {
    pub fn new(transmission: f64, noise: QuadPair) -> Result<Self> {
        if !transmission.is_finite() || transmission <= 0.0 || transmission > 1.0 {
            return Err(Error::TransmissionOutOfRange {
                value: transmission,
                min: 0.0,
                max: 1.0,
            });
        }
        if !noise.is_finite() || !noise.is_positive() {
            return Err(Error::Domain(format!(
                "channel noise {noise} must be finite and positive"
            )));
        }
        if noise.product() < 1.0 {
            return Err(Error::UnphysicalNoise {
                plus: noise.plus,
                minus: noise.minus,
            });
        }
        Ok(Self {
            transmission,
            noise,
        })
    }

    /// Symmetric-noise channel.
    pub fn symmetric(transmission: f64, noise: f64) -> Result<Self> {
        Self::new(transmission, QuadPair::symmetric(noise))
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    pub fn noise(&self) -> QuadPair {
        self.noise
    }
}

/// Optimal linear estimation gain per quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InferenceGain {
    pub gain: QuadPair,
}

/// Which measurement protocol a rate report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    /// Both quadratures measured simultaneously on a 50/50 beamsplitter.
    Heterodyne,
    /// One quadrature measured per run (randomly switched basis).
    Homodyne,
}

/// Per-quadrature mutual informations and the net secret key rate.
///
/// `delta_i` is in bits per symbol. For the heterodyne protocol it is the
/// sum of both quadrature contributions; for the homodyne protocol it is
/// the per-run average over the randomly selected quadrature (half the
/// sum), which equals the single-quadrature rate when the parameters are
/// symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub protocol: Protocol,
    /// Variance of Bob's measurement record.
    pub bob_variance: QuadPair,
    /// Alice's conditional variance of Bob's record.
    pub alice_conditional: QuadPair,
    /// Eve's minimum conditional variance of Bob's record.
    pub eve_conditional: QuadPair,
    /// I(Bob; Alice) per quadrature, bits/symbol.
    pub rate_bob_alice: QuadPair,
    /// I(Bob; Eve) per quadrature, bits/symbol.
    pub rate_bob_eve: QuadPair,
    /// Net secret key rate, bits/symbol.
    pub delta_i: f64,
    /// Symbol rate, symbols/second (set by [`absolute_rate`]).
    pub bandwidth: Option<f64>,
    /// delta_i * bandwidth, bits/second (set by [`absolute_rate`]).
    pub delta_i_abs: Option<f64>,
}

// ---------------------------------------------------------------------------
// Conditional variances
// ---------------------------------------------------------------------------

/// Variance of Bob's heterodyne record over the honest channel:
/// `V_B = (eta V_A + (1 - eta) V_N + 1) / 2` per quadrature.
pub fn bob_variance(source: &SourceParams, channel: &ChannelParams) -> QuadPair {
    let eta = channel.transmission();
    source.alice_variance().zip(channel.noise(), |va, vn| {
        0.5 * (eta * va + (1.0 - eta) * vn + 1.0)
    })
}

/// Residual variance of a target after optimal linear estimation from an
/// estimator: `V_target - cov^2 / V_estimator`, along with the optimal
/// gain `cov / V_estimator`.
pub fn conditional_variance(
    v_target: f64,
    v_estimator: f64,
    covariance: f64,
) -> Result<(f64, f64)> {
    if !v_estimator.is_finite() || v_estimator <= 0.0 {
        return Err(Error::DegenerateEstimator {
            variance: v_estimator,
            min: 0.0,
        });
    }
    let cov_squared = covariance * covariance;
    let bound = v_target * v_estimator;
    if cov_squared > bound {
        return Err(Error::InconsistentMoments { cov_squared, bound });
    }
    let gain = covariance / v_estimator;
    Ok((v_target - covariance * gain, gain))
}

/// Per-quadrature [`conditional_variance`].
pub fn conditional_variance_pair(
    v_target: QuadPair,
    v_estimator: QuadPair,
    covariance: QuadPair,
) -> Result<(QuadPair, InferenceGain)> {
    let (vp, gp) = conditional_variance(v_target.plus, v_estimator.plus, covariance.plus)?;
    let (vm, gm) = conditional_variance(v_target.minus, v_estimator.minus, covariance.minus)?;
    Ok((
        QuadPair::new(vp, vm),
        InferenceGain {
            gain: QuadPair::new(gp, gm),
        },
    ))
}

/// Alice's conditional variance of Bob's heterodyne record, conditioning
/// on the signal realisation she sent:
/// `V_A|B = (eta V_sqz + (1 - eta) V_N + 1) / 2` per quadrature.
pub fn alice_conditional_variance(source: &SourceParams, channel: &ChannelParams) -> QuadPair {
    let eta = channel.transmission();
    source.squeezing().zip(channel.noise(), |vs, vn| {
        0.5 * (eta * vs + (1.0 - eta) * vn + 1.0)
    })
}

/// Lower bound on Eve's conditional variance of Bob's heterodyne record.
///
/// Eve's inference of one quadrature is Heisenberg-limited by the best
/// inference Alice could have arranged for the conjugate quadrature, so
/// the channel noise enters with swapped quadrature roles:
/// `V_E|B(+/-) = ((eta / V_A(+/-) + (1 - eta) V_N(-/+))^-1 + 1) / 2`.
pub fn eve_min_conditional_variance(source: &SourceParams, channel: &ChannelParams) -> QuadPair {
    let eta = channel.transmission();
    source
        .alice_variance()
        .zip(channel.noise().swapped(), |va, vn_conj| {
            0.5 * (1.0 / (eta / va + (1.0 - eta) * vn_conj) + 1.0)
        })
}

// ---------------------------------------------------------------------------
// Information rates
// ---------------------------------------------------------------------------

/// Shannon rate of a Gaussian channel, `log2(1 + S/N) / 2` bits/symbol.
pub fn shannon_rate(signal: f64, noise: f64) -> Result<f64> {
    if !noise.is_finite() || noise <= 0.0 {
        return Err(Error::Domain(format!(
            "noise variance {noise} must be positive"
        )));
    }
    if !signal.is_finite() || signal < 0.0 {
        return Err(Error::Domain(format!(
            "signal variance {signal} must be non-negative"
        )));
    }
    Ok(0.5 * (1.0 + signal / noise).log2())
}

fn quadrature_rate(v_total: f64, v_conditional: f64) -> f64 {
    // 0.5 log2(V / V_cond), written as a Shannon rate with signal V - V_cond.
    0.5 * (v_total / v_conditional).log2()
}

/// Secret key rate of the simultaneous-quadrature protocol.
///
/// `delta_i = sum over quadratures of I(B;A) - I(B;E)`, with
/// `I(B;A) = log2(V_B / V_A|B) / 2` and `I(B;E) = log2(V_B / V_E|B) / 2`.
pub fn secret_key_rate_heterodyne(source: &SourceParams, channel: &ChannelParams) -> RateReport {
    let vb = bob_variance(source, channel);
    let vab = alice_conditional_variance(source, channel);
    let veb = eve_min_conditional_variance(source, channel);
    let i_ba = vb.zip(vab, quadrature_rate);
    let i_be = vb.zip(veb, quadrature_rate);
    let delta = (i_ba - i_be).plus + (i_ba - i_be).minus;
    RateReport {
        protocol: Protocol::Heterodyne,
        bob_variance: vb,
        alice_conditional: vab,
        eve_conditional: veb,
        rate_bob_alice: i_ba,
        rate_bob_eve: i_be,
        delta_i: delta,
        bandwidth: None,
        delta_i_abs: None,
    }
}

/// Secret key rate of the single-quadrature comparison protocol.
///
/// Bob homodynes the incoming mode directly (no vacuum penalty):
/// `V_B = eta V_A + (1 - eta) V_N`, `V_A|B = eta V_sqz + (1 - eta) V_N`,
/// and Eve is bounded by `V_E|B(+/-) >= (eta / V_A(+/-) + (1 - eta) V_N(-/+))^-1`.
/// The reported `delta_i` is the per-run rate with a randomly selected
/// quadrature, i.e. the average of the two quadrature rates.
pub fn secret_key_rate_homodyne(source: &SourceParams, channel: &ChannelParams) -> RateReport {
    let eta = channel.transmission();
    let va = source.alice_variance();
    let vn = channel.noise();
    let vb = va.zip(vn, |va, vn| eta * va + (1.0 - eta) * vn);
    let vab = source
        .squeezing()
        .zip(vn, |vs, vn| eta * vs + (1.0 - eta) * vn);
    let veb = va.zip(vn.swapped(), |va, vn_conj| {
        1.0 / (eta / va + (1.0 - eta) * vn_conj)
    });
    let i_ba = vb.zip(vab, quadrature_rate);
    let i_be = vb.zip(veb, quadrature_rate);
    let delta = 0.5 * ((i_ba - i_be).plus + (i_ba - i_be).minus);
    RateReport {
        protocol: Protocol::Homodyne,
        bob_variance: vb,
        alice_conditional: vab,
        eve_conditional: veb,
        rate_bob_alice: i_ba,
        rate_bob_eve: i_be,
        delta_i: delta,
        bandwidth: None,
        delta_i_abs: None,
    }
}

/// Closed-form lower bound on the heterodyne secret key rate for
/// symmetric quadratures and a coherent source:
/// `log2(((eta / V_A + (1 - eta) V_N)^-1 + 1) / (eta + (1 - eta) V_N + 1))`.
///
/// Agrees with [`secret_key_rate_heterodyne`] to floating-point accuracy
/// on symmetric inputs; kept as an independent single-expression route.
pub fn heterodyne_rate_lower_bound(eta: f64, v_n: f64, v_a: f64) -> Result<f64> {
    if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
        return Err(Error::TransmissionOutOfRange {
            value: eta,
            min: 0.0,
            max: 1.0,
        });
    }
    if !v_n.is_finite() || v_n < 1.0 {
        return Err(Error::UnphysicalNoise {
            plus: v_n,
            minus: v_n,
        });
    }
    if !v_a.is_finite() || v_a < 1.0 {
        return Err(Error::Domain(format!("alice variance {v_a} must be >= 1")));
    }
    let inferred = eta / v_a + (1.0 - eta) * v_n;
    Ok(((1.0 / inferred + 1.0) / (eta + (1.0 - eta) * v_n + 1.0)).log2())
}

/// Scale a per-symbol rate report to bits/second at the given symbol rate.
pub fn absolute_rate(report: &RateReport, bandwidth: f64) -> Result<RateReport> {
    if !bandwidth.is_finite() || bandwidth <= 0.0 {
        return Err(Error::Domain(format!(
            "bandwidth {bandwidth} must be positive"
        )));
    }
    let mut out = *report;
    out.bandwidth = Some(bandwidth);
    out.delta_i_abs = Some(bandwidth * report.delta_i);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn coherent(va: f64) -> SourceParams {
        SourceParams::coherent(va).unwrap()
    }

    fn channel(eta: f64, vn: f64) -> ChannelParams {
        ChannelParams::symmetric(eta, vn).unwrap()
    }

    #[test]
    fn param_validation() {
        assert!(matches!(
            ChannelParams::symmetric(0.0, 1.0),
            Err(Error::TransmissionOutOfRange { .. })
        ));
        assert!(matches!(
            ChannelParams::symmetric(1.1, 1.0),
            Err(Error::TransmissionOutOfRange { .. })
        ));
        assert!(matches!(
            ChannelParams::symmetric(0.5, 0.5),
            Err(Error::UnphysicalNoise { .. })
        ));
        // Asymmetric noise is fine as long as the product stays physical.
        assert!(ChannelParams::new(0.5, QuadPair::new(2.0, 0.5)).is_ok());
        assert!(matches!(
            SourceParams::new(QuadPair::ZERO, QuadPair::new(0.5, 0.5)),
            Err(Error::UnphysicalSqueezing { .. })
        ));
        assert!(SourceParams::coherent(0.5).is_err());
        assert_eq!(coherent(100.0).alice_variance(), QuadPair::symmetric(100.0));
    }

    #[test]
    fn bob_variance_matches_closed_form() {
        // Vacuum in, shot noise out.
        let v = bob_variance(&coherent(1.0), &channel(1.0, 1.0));
        assert!((v.plus - 1.0).abs() < TOL);
        // (0.5 * 100 + 0.5 * 1 + 1) / 2 = 25.75
        let v = bob_variance(&coherent(100.0), &channel(0.5, 1.0));
        assert!((v.plus - 25.75).abs() < TOL);
        assert!((v.minus - 25.75).abs() < TOL);
        // Noise term vanishes at eta = 1 for any V_N.
        let v = bob_variance(&coherent(100.0), &channel(1.0, 7.3));
        assert!((v.plus - 50.5).abs() < TOL);
    }

    #[test]
    fn conditional_variance_basics() {
        let (v, g) = conditional_variance(3.0, 2.0, 0.0).unwrap();
        assert_eq!(v, 3.0);
        assert_eq!(g, 0.0);
        // Perfect correlation drives the residual to zero.
        let (v, g) = conditional_variance(2.0, 2.0, 2.0).unwrap();
        assert!(v.abs() < TOL);
        assert!((g - 1.0).abs() < TOL);
        assert!(matches!(
            conditional_variance(1.0, 1.0, 1.5),
            Err(Error::InconsistentMoments { .. })
        ));
        assert!(matches!(
            conditional_variance(1.0, 0.0, 0.0),
            Err(Error::DegenerateEstimator { .. })
        ));
    }

    #[test]
    fn conditioning_convention_reconciles_both_readings() {
        // Bob at eta = 0.5, V_N = 1, V_A = 100: V_B = 25.75 and the
        // signal covariance is sqrt(eta/2) * V_S = 49.5.
        let cov = (0.5f64 / 2.0).sqrt() * 99.0;
        assert!((cov - 49.5).abs() < TOL);
        // Estimating from the full noisy quadrature (variance V_A = 100)
        // leaves 1.2475; estimating from the known signal (variance
        // V_S = 99) leaves exactly the protocol value 1.
        let (v_xa, _) = conditional_variance(25.75, 100.0, cov).unwrap();
        assert!((v_xa - 1.2475).abs() < TOL);
        let (v_s, gain) = conditional_variance(25.75, 99.0, cov).unwrap();
        assert!((v_s - 1.0).abs() < TOL);
        let expected = alice_conditional_variance(&coherent(100.0), &channel(0.5, 1.0));
        assert!((v_s - expected.plus).abs() < TOL);
        // Residual is uncorrelated with the estimator: cov - gain * V_S = 0.
        assert!((cov - gain * 99.0).abs() < TOL);
    }

    #[test]
    fn alice_conditional_variance_examples() {
        let v = alice_conditional_variance(&coherent(100.0), &channel(0.5, 1.0));
        assert!((v.plus - 1.0).abs() < TOL);
        let v = alice_conditional_variance(&coherent(100.0), &channel(1.0, 5.0));
        assert!((v.plus - 1.0).abs() < TOL);
        // eta -> 0 limit with vacuum noise.
        let v = alice_conditional_variance(&coherent(100.0), &channel(1e-12, 1.0));
        assert!((v.plus - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eve_min_conditional_variance_examples() {
        let v = eve_min_conditional_variance(&coherent(100.0), &channel(0.5, 1.0));
        let expected = 0.5 * (1.0 / 0.505 + 1.0);
        assert!((v.plus - expected).abs() < TOL);
        let v = eve_min_conditional_variance(&coherent(100.0), &channel(1.0, 1.0));
        assert!((v.plus - 50.5).abs() < TOL);
        // eta -> 0: Eve is limited only by Bob's heterodyne vacuum.
        let v = eve_min_conditional_variance(&coherent(100.0), &channel(1e-12, 1.0));
        assert!((v.plus - 1.0).abs() < 1e-9);
    }

    #[test]
    fn heterodyne_rate_examples() {
        let r = secret_key_rate_heterodyne(&coherent(100.0), &channel(0.5, 1.0));
        let expected = (1.0f64 / 0.505 + 1.0).log2() - 1.0;
        assert!((r.delta_i - expected).abs() < TOL);
        let r = secret_key_rate_heterodyne(&coherent(100.0), &channel(1.0, 1.0));
        assert!((r.delta_i - 50.5f64.log2()).abs() < TOL);
        // Positive even at very small channel efficiency.
        let r = secret_key_rate_heterodyne(&coherent(100.0), &channel(0.01, 1.0));
        assert!(r.delta_i > 0.0);
        assert!((r.delta_i - heterodyne_rate_lower_bound(0.01, 1.0, 100.0).unwrap()).abs() < TOL);
    }

    #[test]
    fn homodyne_rate_examples() {
        let r = secret_key_rate_homodyne(&coherent(100.0), &channel(0.5, 1.0));
        let expected = 0.5 * (1.0f64 / 0.505).log2();
        assert!((r.delta_i - expected).abs() < TOL);
        let r = secret_key_rate_homodyne(&coherent(100.0), &channel(1.0, 1.0));
        assert!((r.delta_i - 0.5 * 100.0f64.log2()).abs() < TOL);
    }

    #[test]
    fn heterodyne_beats_homodyne_at_vacuum_noise() {
        let src = coherent(100.0);
        let ch = channel(0.5, 1.0);
        let het = secret_key_rate_heterodyne(&src, &ch).delta_i;
        let hom = secret_key_rate_homodyne(&src, &ch).delta_i;
        assert!(het > hom);
    }

    #[test]
    fn report_rate_identity() {
        let r = secret_key_rate_heterodyne(&coherent(80.0), &channel(0.7, 1.3));
        assert!(r.rate_bob_alice.is_non_negative());
        assert!(r.rate_bob_eve.is_non_negative());
        let sum =
            (r.rate_bob_alice - r.rate_bob_eve).plus + (r.rate_bob_alice - r.rate_bob_eve).minus;
        assert!((r.delta_i - sum).abs() < TOL);
    }

    #[test]
    fn shannon_rate_examples() {
        assert_eq!(shannon_rate(0.0, 1.0).unwrap(), 0.0);
        assert!((shannon_rate(2.0, 2.0).unwrap() - 0.5).abs() < TOL);
        assert!((shannon_rate(3.0, 1.0).unwrap() - 1.0).abs() < TOL);
        assert!(shannon_rate(1.0, 0.0).is_err());
        // I(B;A) written as a Shannon rate matches the variance-ratio form.
        let r = secret_key_rate_heterodyne(&coherent(100.0), &channel(0.5, 1.0));
        let s = shannon_rate(
            r.bob_variance.plus - r.alice_conditional.plus,
            r.alice_conditional.plus,
        )
        .unwrap();
        assert!((s - r.rate_bob_alice.plus).abs() < TOL);
    }

    #[test]
    fn absolute_rate_scaling() {
        let r = secret_key_rate_heterodyne(&coherent(100.0), &channel(0.5, 1.0));
        let abs = absolute_rate(&r, 1e6).unwrap();
        assert!((abs.delta_i_abs.unwrap() - 1e6 * r.delta_i).abs() < 1e-6);
        let doubled = absolute_rate(&r, 2e6).unwrap();
        assert!((doubled.delta_i_abs.unwrap() - 2.0 * abs.delta_i_abs.unwrap()).abs() < 1e-9);
        assert!(absolute_rate(&r, 0.0).is_err());
        assert!(absolute_rate(&r, -1.0).is_err());
    }

    #[test]
    fn lower_bound_matches_composed_rate_on_symmetric_inputs() {
        for &eta in &[0.05, 0.3, 0.5, 0.9, 1.0] {
            for &vn in &[1.0, 1.2, 2.0] {
                let composed =
                    secret_key_rate_heterodyne(&coherent(100.0), &channel(eta, vn)).delta_i;
                let bound = heterodyne_rate_lower_bound(eta, vn, 100.0).unwrap();
                let denom = bound.abs().max(1.0);
                assert!(
                    ((composed - bound) / denom).abs() < 1e-12,
                    "eta={eta} vn={vn}: {composed} vs {bound}"
                );
            }
        }
    }

    #[test]
    fn lower_bound_domain_checks() {
        assert!(matches!(
            heterodyne_rate_lower_bound(0.0, 1.0, 100.0),
            Err(Error::TransmissionOutOfRange { .. })
        ));
        assert!(matches!(
            heterodyne_rate_lower_bound(1.1, 1.0, 100.0),
            Err(Error::TransmissionOutOfRange { .. })
        ));
        assert!(matches!(
            heterodyne_rate_lower_bound(0.5, 0.5, 100.0),
            Err(Error::UnphysicalNoise { .. })
        ));
        assert!(heterodyne_rate_lower_bound(0.5, 1.0, 0.5).is_err());
        assert!(heterodyne_rate_lower_bound(f64::NAN, 1.0, 100.0).is_err());
    }

    #[test]
    fn joint_uncertainty_product_holds_for_asymmetric_channels() {
        // Strongly asymmetric but physical noise with a squeezed source;
        // the conjugate-quadrature pairing keeps both products >= 1.
        let src = SourceParams::new(QuadPair::new(99.9, 0.0), QuadPair::new(0.1, 10.0)).unwrap();
        let ch = ChannelParams::new(0.25, QuadPair::new(3.0, 1.0 / 3.0)).unwrap();
        let veb = eve_min_conditional_variance(&src, &ch);
        let vab = alice_conditional_variance(&src, &ch);
        assert!(veb.plus * vab.minus >= 1.0 - 1e-12);
        assert!(veb.minus * vab.plus >= 1.0 - 1e-12);
    }
}
