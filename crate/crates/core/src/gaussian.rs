//! Shot-noise-normalized second-moment algebra for Gaussian modes.
//!
//! A mode is summarised by its quadrature means and variances; amplitude
//! and phase quadratures never mix under the phase-insensitive elements
//! used here (beamsplitters, loss, displacement), so each quadrature is
//! propagated independently.

use crate::error::{Error, Result};
use crate::keyrate::ChannelParams;
use crate::quad::QuadPair;

/// First and second moments of a single Gaussian mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeStat {
    pub mean: QuadPair,
    pub variance: QuadPair,
}

impl ModeStat {
    pub fn new(mean: QuadPair, variance: QuadPair) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain(format!("mode mean {mean} must be finite")));
        }
        if !variance.is_finite() || !variance.is_non_negative() {
            return Err(Error::Domain(format!(
                "mode variance {variance} must be finite and non-negative"
            )));
        }
        Ok(Self { mean, variance })
    }

    /// Vacuum mode: zero mean, unit variance in both quadratures.
    pub fn vacuum() -> Self {
        Self {
            mean: QuadPair::ZERO,
            variance: QuadPair::VACUUM,
        }
    }

    /// Zero-mean mode with the given variance. A variance of zero models a
    /// purely classical placeholder (e.g. an unmodulated signal register).
    pub fn zero_mean(variance: QuadPair) -> Result<Self> {
        Self::new(QuadPair::ZERO, variance)
    }
}

/// Mix two independent modes on a beamsplitter of the given transmission.
///
/// Outputs per quadrature, with the reflected first-input path carrying
/// the minus sign:
///
/// ```text
/// out1 =  sqrt(t) a + sqrt(1-t) b
/// out2 = -sqrt(1-t) a + sqrt(t) b
/// ```
///
/// so variances mix as `t V_a + (1-t) V_b` and `(1-t) V_a + t V_b`.
/// `t = 0` and `t = 1` are allowed and exact.
pub fn beamsplitter_mix(
    a: &ModeStat,
    b: &ModeStat,
    transmission: f64,
) -> Result<(ModeStat, ModeStat)> {
    if !transmission.is_finite() || !(0.0..=1.0).contains(&transmission) {
        return Err(Error::TransmissionOutOfRange {
            value: transmission,
            min: 0.0,
            max: 1.0,
        });
    }
    let ct = transmission.sqrt();
    let cr = (1.0 - transmission).sqrt();
    let mean1 = a.mean.zip(b.mean, |ma, mb| ct * ma + cr * mb);
    let mean2 = a.mean.zip(b.mean, |ma, mb| -cr * ma + ct * mb);
    let var1 = a.variance.zip(b.variance, |va, vb| {
        transmission * va + (1.0 - transmission) * vb
    });
    let var2 = a.variance.zip(b.variance, |va, vb| {
        (1.0 - transmission) * va + transmission * vb
    });
    Ok((
        ModeStat {
            mean: mean1,
            variance: var1,
        },
        ModeStat {
            mean: mean2,
            variance: var2,
        },
    ))
}

/// Propagate a mode through a lossy channel: mixing with an independent
/// noise mode of variance V_N on a beamsplitter of transmission eta.
///
/// `V_out = eta V_in + (1 - eta) V_N`, `mean_out = sqrt(eta) mean_in`.
pub fn lossy_channel(input: &ModeStat, channel: &ChannelParams) -> ModeStat {
    let eta = channel.transmission();
    ModeStat {
        mean: input.mean * eta.sqrt(),
        variance: input
            .variance
            .zip(channel.noise(), |v, vn| eta * v + (1.0 - eta) * vn),
    }
}

/// Simultaneous measurement of both quadratures: the mode is split on a
/// 50/50 beamsplitter against vacuum, the amplitude quadrature is read
/// from one output and the phase quadrature from the other.
///
/// Measured variance per quadrature is `(V_in + 1) / 2`; the mean scales
/// by `1/sqrt(2)`.
pub fn heterodyne_detect(input: &ModeStat) -> ModeStat {
    ModeStat {
        mean: input.mean * std::f64::consts::FRAC_1_SQRT_2,
        variance: input.variance.map(|v| 0.5 * (v + 1.0)),
    }
}
