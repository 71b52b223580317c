//! Subcommand implementations, split from argument parsing so the
//! integration tests can drive them directly.

use std::fmt::Write as _;
use std::path::Path;

use noswitch_core::attack::{optimize_attack, AttackConfig, AttackReport};
use noswitch_core::keyrate::{
    absolute_rate, secret_key_rate_heterodyne, secret_key_rate_homodyne, Protocol, RateReport,
};
use noswitch_core::montecarlo::{
    concordance_report_with, sample_table, ConcordanceReport, RunSpec,
};
use noswitch_core::{Error, FeasibleWindow};

use crate::config::Resolved;
use crate::error::{CliError, CliResult};
use crate::format::{sig12, sig12_pair};

// ---------------------------------------------------------------------------
// rate
// ---------------------------------------------------------------------------

pub fn rate(
    resolved: &Resolved,
    protocol: Protocol,
    bandwidth: Option<f64>,
) -> CliResult<RateReport> {
    let report = match protocol {
        Protocol::Heterodyne => secret_key_rate_heterodyne(&resolved.source, &resolved.channel),
        Protocol::Homodyne => secret_key_rate_homodyne(&resolved.source, &resolved.channel),
    };
    match bandwidth {
        Some(w) => Ok(absolute_rate(&report, w)?),
        None => Ok(report),
    }
}

pub fn render_rate(resolved: &Resolved, report: &RateReport) -> String {
    let mut s = String::new();
    let name = match report.protocol {
        Protocol::Heterodyne => "heterodyne (simultaneous quadratures)",
        Protocol::Homodyne => "homodyne (single quadrature per run)",
    };
    let _ = writeln!(s, "protocol: {name}");
    let _ = writeln!(
        s,
        "eta: {}  va: {}  vn: {}  vsqz: {}",
        sig12(resolved.channel.transmission()),
        sig12_pair(resolved.source.alice_variance()),
        sig12_pair(resolved.channel.noise()),
        sig12_pair(resolved.source.squeezing()),
    );
    let _ = writeln!(s, "V_B:    {}", sig12_pair(report.bob_variance));
    let _ = writeln!(s, "V_A|B:  {}", sig12_pair(report.alice_conditional));
    let _ = writeln!(s, "V_E|B:  {}", sig12_pair(report.eve_conditional));
    let _ = writeln!(
        s,
        "I_BA (bits/symbol): {}",
        sig12_pair(report.rate_bob_alice)
    );
    let _ = writeln!(s, "I_BE (bits/symbol): {}", sig12_pair(report.rate_bob_eve));
    let _ = writeln!(s, "delta_I (bits/symbol): {}", sig12(report.delta_i));
    if let (Some(w), Some(abs)) = (report.bandwidth, report.delta_i_abs) {
        let _ = writeln!(s, "bandwidth (symbols/s): {}", sig12(w));
        let _ = writeln!(s, "delta_I_abs (bits/s): {}", sig12(abs));
    }
    s
}

// ---------------------------------------------------------------------------
// attack
// ---------------------------------------------------------------------------

pub enum AttackOutcome {
    Feasible {
        report: AttackReport,
        lower_bound: f64,
    },
    /// A valid physical result, not an error: the channel leaves Eve no
    /// room to hide.
    Infeasible { window: FeasibleWindow },
}

pub fn attack(resolved: &Resolved, tol: f64) -> CliResult<AttackOutcome> {
    match optimize_attack(&resolved.source, &resolved.channel, tol) {
        Ok(report) => {
            let lower_bound =
                secret_key_rate_heterodyne(&resolved.source, &resolved.channel).delta_i;
            Ok(AttackOutcome::Feasible {
                report,
                lower_bound,
            })
        }
        Err(Error::AttackInfeasible) => Ok(AttackOutcome::Infeasible {
            window: FeasibleWindow::EMPTY,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn render_attack(outcome: &AttackOutcome, bandwidth: Option<f64>) -> String {
    let mut s = String::new();
    match outcome {
        AttackOutcome::Infeasible { .. } => {
            let _ = writeln!(
                s,
                "attack infeasible: no undetectable tap transmission exists"
            );
            let _ = writeln!(s, "feasibility window: empty");
        }
        AttackOutcome::Feasible {
            report,
            lower_bound,
        } => {
            let _ = writeln!(
                s,
                "feasibility window: [{}, {}]",
                sig12(report.window.epsilon_min),
                sig12(report.window.epsilon_max)
            );
            let _ = writeln!(s, "epsilon_star: {}", sig12(report.epsilon_star));
            let _ = writeln!(s, "V_E:       {}", sig12_pair(report.eve_variance));
            let _ = writeln!(s, "V_E|B_ff:  {}", sig12_pair(report.eve_conditional));
            let _ = writeln!(s, "delta_I_ff (bits/symbol): {}", sig12(report.delta_i));
            let _ = writeln!(
                s,
                "lower-bound delta_I (bits/symbol): {}",
                sig12(*lower_bound)
            );
            let _ = writeln!(
                s,
                "gap (bits/symbol): {}",
                sig12(report.delta_i - lower_bound)
            );
            if let Some(w) = bandwidth {
                let _ = writeln!(s, "delta_I_ff_abs (bits/s): {}", sig12(w * report.delta_i));
            }
        }
    }
    s
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScenarioChoice {
    Honest,
    #[value(name = "feedforward")]
    FeedForward,
    Both,
}

pub struct ValidateOptions {
    pub scenario: ScenarioChoice,
    pub samples: u64,
    pub seed: u64,
    /// Tap transmission for the feed-forward run; defaults to the
    /// optimizer's choice.
    pub epsilon: Option<f64>,
    pub corrupt_fixture: bool,
}

pub struct ValidateOutput {
    pub sections: Vec<(String, ConcordanceReport)>,
}

impl ValidateOutput {
    pub fn all_pass(&self) -> bool {
        self.sections.iter().all(|(_, r)| r.all_pass())
    }
}

fn feedforward_spec(resolved: &Resolved, opts: &ValidateOptions) -> CliResult<RunSpec> {
    let epsilon = match opts.epsilon {
        Some(e) => e,
        None => optimize_attack(&resolved.source, &resolved.channel, 1e-8)?.epsilon_star,
    };
    let config = AttackConfig::undetectable(&resolved.channel, epsilon)?;
    Ok(RunSpec::feedforward(
        resolved.source,
        resolved.channel,
        config,
        opts.samples,
        opts.seed,
    )?)
}

pub fn validate(resolved: &Resolved, opts: &ValidateOptions) -> CliResult<ValidateOutput> {
    let mut sections = Vec::new();
    if matches!(opts.scenario, ScenarioChoice::Honest | ScenarioChoice::Both) {
        let spec = RunSpec::honest(resolved.source, resolved.channel, opts.samples, opts.seed)?;
        sections.push((
            "honest".to_string(),
            concordance_report_with(&spec, opts.corrupt_fixture)?,
        ));
    }
    if matches!(
        opts.scenario,
        ScenarioChoice::FeedForward | ScenarioChoice::Both
    ) {
        let spec = feedforward_spec(resolved, opts)?;
        sections.push((
            "feedforward".to_string(),
            concordance_report_with(&spec, opts.corrupt_fixture)?,
        ));
    }
    Ok(ValidateOutput { sections })
}

pub fn render_validate(out: &ValidateOutput, samples: u64, seed: u64) -> String {
    let mut s = String::new();
    for (name, report) in &out.sections {
        let _ = writeln!(s, "scenario: {name}  samples: {samples}  seed: {seed}");
        let _ = writeln!(
            s,
            "{:<34} {:>15} {:>15} {:>12} {:>8}  status",
            "quantity", "analytic", "empirical", "std_error", "z"
        );
        for row in &report.rows {
            let _ = writeln!(
                s,
                "{:<34} {:>15.6e} {:>15.6e} {:>12.3e} {:>8.2}  {}",
                row.label,
                row.analytic,
                row.empirical,
                row.std_error,
                row.z,
                if row.pass { "ok" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            s,
            "{}: {} (max |z| = {:.2}, threshold {})",
            name,
            if report.all_pass() { "PASS" } else { "FAIL" },
            report.max_abs_z(),
            noswitch_core::montecarlo::Z_THRESHOLD
        );
        let _ = writeln!(s);
    }
    s
}

/// Raw per-shot export: `s_plus,s_minus,xb_plus,xb_minus[,xe_plus,xe_minus]`.
pub fn export_samples(resolved: &Resolved, opts: &ValidateOptions, path: &Path) -> CliResult<u64> {
    if opts.scenario == ScenarioChoice::Both {
        return Err(CliError::Usage(
            "--export needs a single scenario (honest or feedforward)".into(),
        ));
    }
    let spec = match opts.scenario {
        ScenarioChoice::Honest => {
            RunSpec::honest(resolved.source, resolved.channel, opts.samples, opts.seed)?
        }
        ScenarioChoice::FeedForward => feedforward_spec(resolved, opts)?,
        ScenarioChoice::Both => unreachable!(),
    };
    let table = sample_table(&spec)?;
    let wanted: &[(&str, &str)] = if opts.scenario == ScenarioChoice::Honest {
        &[
            ("s_plus", "s_plus"),
            ("s_minus", "s_minus"),
            ("x_b_plus", "xb_plus"),
            ("x_b_minus", "xb_minus"),
        ]
    } else {
        &[
            ("s_plus", "s_plus"),
            ("s_minus", "s_minus"),
            ("x_b_plus", "xb_plus"),
            ("x_b_minus", "xb_minus"),
            ("x_e_plus", "xe_plus"),
            ("x_e_minus", "xe_minus"),
        ]
    };
    let indices: Vec<usize> = wanted
        .iter()
        .map(|(col, _)| {
            table
                .column_index(col)
                .ok_or_else(|| CliError::Domain(format!("missing column {col}")))
        })
        .collect::<CliResult<_>>()?;

    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    use std::io::Write;
    let header: Vec<&str> = wanted.iter().map(|&(_, name)| name).collect();
    writeln!(w, "{}", header.join(","))?;
    for row in 0..table.rows {
        let cells: Vec<String> = indices
            .iter()
            .map(|&i| sig12(table.value(row, i)))
            .collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()?;
    Ok(table.rows as u64)
}
