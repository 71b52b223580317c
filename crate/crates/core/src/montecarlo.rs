//! End-to-end sampled protocol runs and the analytic-vs-empirical
//! comparison harness.
//!
//! A run draws every mode of the honest or attacked topology shot by
//! shot, streams the tap records into moment accumulators, and reports
//! empirical variances and covariances with Gaussian standard errors.
//! The concordance report lines the estimates up against the exact
//! covariance propagation (and the closed forms where they apply) as
//! z-scores with a pass threshold of |z| <= 5.

use crate::attack::{bob_variance_under_attack, feedforward_network, AttackConfig};
use crate::error::{Error, Result};
use crate::gaussian::ModeStat;
use crate::keyrate::{alice_conditional_variance, bob_variance, ChannelParams, SourceParams};
use crate::moments::MomentAccumulator;
use crate::network::{LinearNetwork, NetworkMoments, SampleTable, TapId};
use crate::quad::QuadPair;

/// Concordance pass threshold: |z| <= 5 keeps the false-failure rate
/// negligible across the hundreds of checks in a full validation run.
pub const Z_THRESHOLD: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Lossy channel with declared noise.
    Honest,
    /// Eve's feed-forward apparatus in place of the channel.
    FeedForward,
}

/// Measurement records of a protocol run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TapKind {
    /// Alice's signal realisations.
    Signal,
    /// Alice's prepared quadratures.
    Alice,
    /// Eve's measurement records (feed-forward runs only).
    Eve,
    /// Bob's measurement records.
    Bob,
}

impl TapKind {
    fn label(self) -> &'static str {
        match self {
            TapKind::Signal => "s",
            TapKind::Alice => "x_a",
            TapKind::Eve => "x_e",
            TapKind::Bob => "x_b",
        }
    }
}

/// A fully specified sampled run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSpec {
    pub scenario: Scenario,
    pub source: SourceParams,
    pub channel: ChannelParams,
    pub attack: Option<AttackConfig>,
    pub samples: u64,
    pub seed: u64,
}

impl RunSpec {
    pub fn new(
        scenario: Scenario,
        source: SourceParams,
        channel: ChannelParams,
        attack: Option<AttackConfig>,
        samples: u64,
        seed: u64,
    ) -> Result<Self> {
        match (scenario, attack.is_some()) {
            (Scenario::Honest, true) => {
                return Err(Error::Domain("honest runs take no attack config".into()))
            }
            (Scenario::FeedForward, false) => {
                return Err(Error::Domain(
                    "feed-forward runs need an attack config".into(),
                ))
            }
            _ => {}
        }
        if samples < 2 {
            return Err(Error::Domain(format!(
                "sample count {samples} must be at least 2"
            )));
        }
        Ok(Self {
            scenario,
            source,
            channel,
            attack,
            samples,
            seed,
        })
    }

    pub fn honest(
        source: SourceParams,
        channel: ChannelParams,
        samples: u64,
        seed: u64,
    ) -> Result<Self> {
        Self::new(Scenario::Honest, source, channel, None, samples, seed)
    }

    pub fn feedforward(
        source: SourceParams,
        channel: ChannelParams,
        attack: AttackConfig,
        samples: u64,
        seed: u64,
    ) -> Result<Self> {
        Self::new(
            Scenario::FeedForward,
            source,
            channel,
            Some(attack),
            samples,
            seed,
        )
    }
}

/// The honest topology: modulated source, lossy channel, heterodyne
/// detection, with the signal register tapped separately.
pub fn honest_network(
    source: &SourceParams,
    channel: &ChannelParams,
) -> Result<(LinearNetwork, Vec<(TapKind, TapId)>)> {
    let mut net = LinearNetwork::new();
    let signal = net.source(ModeStat::zero_mean(source.modulation())?)?;
    let alice_noise = net.source(ModeStat::zero_mean(source.squeezing())?)?;
    let chan_noise = net.source(ModeStat::zero_mean(channel.noise())?)?;
    let bob_vac = net.vacuum()?;
    let sent = net.feed_forward(signal, alice_noise, QuadPair::symmetric(1.0))?;
    let (to_bob, _) = net.beamsplitter(sent, chan_noise, channel.transmission())?;
    let (bob_plus, bob_minus) = net.beamsplitter(to_bob, bob_vac, 0.5)?;
    let taps = vec![
        (TapKind::Signal, net.tap("s", signal, signal)?),
        (TapKind::Alice, net.tap("x_a", sent, sent)?),
        (TapKind::Bob, net.tap("x_b", bob_plus, bob_minus)?),
    ];
    Ok((net, taps))
}

fn build_network(spec: &RunSpec) -> Result<(LinearNetwork, Vec<(TapKind, TapId)>)> {
    match spec.scenario {
        Scenario::Honest => honest_network(&spec.source, &spec.channel),
        Scenario::FeedForward => {
            let attack = spec.attack.as_ref().expect("validated at construction");
            let (net, taps) = feedforward_network(&spec.source, attack)?;
            Ok((
                net,
                vec![
                    (TapKind::Signal, taps.signal),
                    (TapKind::Alice, taps.alice),
                    (TapKind::Eve, taps.eve),
                    (TapKind::Bob, taps.bob),
                ],
            ))
        }
    }
}

/// Empirical variances and covariances of the tap records, with Gaussian
/// standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMoments {
    taps: Vec<TapKind>,
    acc: MomentAccumulator,
}

impl EmpiricalMoments {
    pub fn samples(&self) -> u64 {
        self.acc.count()
    }

    pub fn taps(&self) -> &[TapKind] {
        &self.taps
    }

    fn base(&self, tap: TapKind) -> Result<usize> {
        self.taps
            .iter()
            .position(|&t| t == tap)
            .map(|i| 2 * i)
            .ok_or_else(|| Error::Domain(format!("tap {tap:?} not recorded in this run")))
    }

    pub fn mean(&self, tap: TapKind) -> Result<QuadPair> {
        let b = self.base(tap)?;
        Ok(QuadPair::new(self.acc.mean(b), self.acc.mean(b + 1)))
    }

    /// Sample variance per quadrature with its standard error
    /// `V * sqrt(2 / (n - 1))` (Gaussian data).
    pub fn variance(&self, tap: TapKind) -> Result<(QuadPair, QuadPair)> {
        let b = self.base(tap)?;
        let n = self.acc.count() as f64;
        let v = QuadPair::new(self.acc.variance(b), self.acc.variance(b + 1));
        Ok((v, v.map(|v| v.abs() * (2.0 / (n - 1.0)).sqrt())))
    }

    /// Same-quadrature sample covariance between two taps with standard
    /// error `sqrt((V_a V_b + cov^2) / (n - 1))`.
    pub fn covariance(&self, a: TapKind, b: TapKind) -> Result<(QuadPair, QuadPair)> {
        let ba = self.base(a)?;
        let bb = self.base(b)?;
        let n = self.acc.count() as f64;
        let mut value = [0.0; 2];
        let mut se = [0.0; 2];
        for q in 0..2 {
            let c = self.acc.covariance(ba + q, bb + q);
            let va = self.acc.variance(ba + q);
            let vb = self.acc.variance(bb + q);
            value[q] = c;
            se[q] = ((va * vb + c * c) / (n - 1.0)).sqrt();
        }
        Ok((
            QuadPair::new(value[0], value[1]),
            QuadPair::new(se[0], se[1]),
        ))
    }

    /// Residual variance of `target` after optimal linear estimation from
    /// `estimator`, per quadrature: `V_t - cov^2 / V_e`.
    ///
    /// First-order error propagation with Gaussian fourth-moment
    /// identities collapses to `V_residual * sqrt(2 / (n - 1))`, the same
    /// form as a plain variance estimate of the residual.
    pub fn conditional_variance(
        &self,
        target: TapKind,
        estimator: TapKind,
    ) -> Result<(QuadPair, QuadPair)> {
        let bt = self.base(target)?;
        let be = self.base(estimator)?;
        let n = self.acc.count() as f64;
        let mut value = [0.0; 2];
        let mut se = [0.0; 2];
        for q in 0..2 {
            let ve = self.acc.variance(be + q);
            if ve.is_nan() || ve <= 1e-12 {
                return Err(Error::DegenerateEstimator {
                    variance: ve,
                    min: 1e-12,
                });
            }
            let vt = self.acc.variance(bt + q);
            let c = self.acc.covariance(bt + q, be + q);
            let residual = vt - c * c / ve;
            value[q] = residual;
            se[q] = residual.abs() * (2.0 / (n - 1.0)).sqrt();
        }
        Ok((
            QuadPair::new(value[0], value[1]),
            QuadPair::new(se[0], se[1]),
        ))
    }

    /// Full covariance matrix over all recorded scalars (both quadratures
    /// of every tap), with column labels.
    pub fn covariance_matrix(&self) -> (Vec<String>, Vec<Vec<f64>>) {
        let dim = self.acc.dim();
        let labels = self
            .taps
            .iter()
            .flat_map(|t| {
                [
                    format!("{}_plus", t.label()),
                    format!("{}_minus", t.label()),
                ]
            })
            .collect();
        let mut m = vec![vec![0.0; dim]; dim];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.acc.covariance(i, j);
            }
        }
        (labels, m)
    }
}

/// Run a sampled protocol and stream the records into moments.
/// Deterministic: identical specs give bit-identical moments.
pub fn run(spec: &RunSpec) -> Result<EmpiricalMoments> {
    let (net, taps) = build_network(spec)?;
    let acc = net.sample_moments(spec.samples, spec.seed)?;
    Ok(EmpiricalMoments {
        taps: taps.into_iter().map(|(k, _)| k).collect(),
        acc,
    })
}

/// [`run`] with chunks distributed over a rayon pool; bit-identical to
/// the sequential path for any worker count.
pub fn run_parallel(spec: &RunSpec) -> Result<EmpiricalMoments> {
    let (net, taps) = build_network(spec)?;
    let acc = net.sample_moments_parallel(spec.samples, spec.seed)?;
    Ok(EmpiricalMoments {
        taps: taps.into_iter().map(|(k, _)| k).collect(),
        acc,
    })
}

/// Materialize the full per-shot record table (for raw export).
pub fn sample_table(spec: &RunSpec) -> Result<SampleTable> {
    let (net, _) = build_network(spec)?;
    net.sample_table(spec.samples, spec.seed)
}

/// One analytic-vs-empirical comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcordanceRow {
    pub label: String,
    pub analytic: f64,
    pub empirical: f64,
    pub std_error: f64,
    pub z: f64,
    pub pass: bool,
}

impl ConcordanceRow {
    fn new(label: String, analytic: f64, empirical: f64, std_error: f64) -> Self {
        let z = if std_error > 0.0 {
            (empirical - analytic) / std_error
        } else if (empirical - analytic).abs() < 1e-12 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            label,
            analytic,
            empirical,
            std_error,
            z,
            pass: z.abs() <= Z_THRESHOLD,
        }
    }
}

/// The full comparison table for a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcordanceReport {
    pub rows: Vec<ConcordanceRow>,
}

impl ConcordanceReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn max_abs_z(&self) -> f64 {
        self.rows.iter().map(|r| r.z.abs()).fold(0.0, f64::max)
    }
}

/// Compare every tap variance, same-quadrature covariance, and the
/// protocol conditional variances against the exact propagation (plus
/// the closed-form channel values where they apply).
pub fn concordance_report(spec: &RunSpec) -> Result<ConcordanceReport> {
    concordance_report_with(spec, false)
}

/// Harness-sanity variant: when `corrupt_fixture` is set, the first
/// analytic value is deliberately shifted by 25 standard errors, which
/// must fail the report at any sample count.
pub fn concordance_report_with(spec: &RunSpec, corrupt_fixture: bool) -> Result<ConcordanceReport> {
    let (net, taps) = build_network(spec)?;
    let analytic: NetworkMoments = net.propagate();
    let empirical = EmpiricalMoments {
        taps: taps.iter().map(|&(k, _)| k).collect(),
        acc: net.sample_moments(spec.samples, spec.seed)?,
    };

    let mut rows = Vec::new();
    let quad_rows =
        |label: String, a: QuadPair, e: QuadPair, se: QuadPair, rows: &mut Vec<ConcordanceRow>| {
            rows.push(ConcordanceRow::new(
                format!("{label}+"),
                a.plus,
                e.plus,
                se.plus,
            ));
            rows.push(ConcordanceRow::new(
                format!("{label}-"),
                a.minus,
                e.minus,
                se.minus,
            ));
        };

    for &(kind, tap) in &taps {
        let (e, se) = empirical.variance(kind)?;
        quad_rows(
            format!("var({})", kind.label()),
            analytic.tap_variance(tap),
            e,
            se,
            &mut rows,
        );
    }
    for (i, &(ka, ta)) in taps.iter().enumerate() {
        for &(kb, tb) in taps.iter().skip(i + 1) {
            let (e, se) = empirical.covariance(ka, kb)?;
            quad_rows(
                format!("cov({}, {})", ka.label(), kb.label()),
                analytic.tap_covariance(ta, tb),
                e,
                se,
                &mut rows,
            );
        }
    }

    // Conditional variances against the protocol closed forms. Under an
    // undetectable attack these coincide with the honest-channel values.
    let closed_forms_apply = match spec.scenario {
        Scenario::Honest => true,
        Scenario::FeedForward => {
            let attack = spec.attack.as_ref().expect("validated");
            let vb = bob_variance_under_attack(&spec.source, attack);
            let honest = bob_variance(&spec.source, &spec.channel);
            attack.gain_matches_channel(spec.channel.transmission(), 1e-9)
                && (vb - honest).map(f64::abs).plus < 1e-9
                && (vb - honest).map(f64::abs).minus < 1e-9
        }
    };
    if closed_forms_apply {
        let (e, se) = empirical.variance(TapKind::Bob)?;
        quad_rows(
            "var(x_b) vs channel form".into(),
            bob_variance(&spec.source, &spec.channel),
            e,
            se,
            &mut rows,
        );
        if spec.source.modulation().is_positive() {
            let (e, se) = empirical.conditional_variance(TapKind::Bob, TapKind::Signal)?;
            quad_rows(
                "var(x_b | s) vs inference form".into(),
                alice_conditional_variance(&spec.source, &spec.channel),
                e,
                se,
                &mut rows,
            );
        }
    }
    if spec.scenario == Scenario::FeedForward {
        // Eve's conditional variance against the propagated prediction.
        let (tb, te) = (
            taps.iter().find(|t| t.0 == TapKind::Bob).unwrap().1,
            taps.iter().find(|t| t.0 == TapKind::Eve).unwrap().1,
        );
        let vb = analytic.tap_variance(tb);
        let ve = analytic.tap_variance(te);
        let cov = analytic.tap_covariance(tb, te);
        let predicted = vb - cov.zip(ve, |c, e| c * c / e);
        let (e, se) = empirical.conditional_variance(TapKind::Bob, TapKind::Eve)?;
        quad_rows("var(x_b | x_e)".into(), predicted, e, se, &mut rows);
    }

    if corrupt_fixture {
        if let Some(first) = rows.first_mut() {
            let shifted = ConcordanceRow::new(
                format!("{} [corrupted fixture]", first.label),
                first.analytic + 25.0 * first.std_error.max(1e-12),
                first.empirical,
                first.std_error,
            );
            *first = shifted;
        }
    }

    Ok(ConcordanceReport { rows })
}
