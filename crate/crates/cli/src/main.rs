use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use noswitch_cli::commands::{self, ScenarioChoice, ValidateOptions};
use noswitch_cli::config::{FileConfig, ParamFlags, Resolved, DEFAULT_VA, DEFAULT_VSQZ};
use noswitch_cli::error::{CliError, CliResult};
use noswitch_cli::sweep::{ProtocolChoice, RangeSpec, SweepSpec, VnGrid};
use noswitch_core::keyrate::Protocol;

/// Key-rate calculator and simulator for the no-switching
/// (simultaneous quadrature measurement) CV-QKD protocol.
#[derive(Parser)]
#[command(name = "noswitch", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Secret-key-rate report at a single parameter point.
    Rate(RateArgs),
    /// 2-D (eta, V_N) parameter sweep written as CSV.
    Sweep(SweepArgs),
    /// Feed-forward attack: feasibility window and optimized key rate.
    Attack(AttackArgs),
    /// Monte Carlo validation of the closed forms; exit 1 on any failure.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Channel transmission efficiency, 0 < eta <= 1.
    #[arg(long)]
    eta: Option<f64>,
    /// Channel noise variance, both quadratures (shot-noise units).
    #[arg(long)]
    vn: Option<f64>,
    /// Amplitude-quadrature channel noise (overrides --vn).
    #[arg(long)]
    vn_plus: Option<f64>,
    /// Phase-quadrature channel noise (overrides --vn).
    #[arg(long)]
    vn_minus: Option<f64>,
    /// Alice's total state variance V_A.
    #[arg(long)]
    va: Option<f64>,
    /// Transmitted-state quadrature noise V_sqz (1 = coherent states).
    #[arg(long)]
    vsqz: Option<f64>,
    /// TOML config file; flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ParamArgs {
    fn resolve(&self) -> CliResult<(Resolved, FileConfig)> {
        let file = FileConfig::load(self.config.as_deref())?;
        let flags = ParamFlags {
            eta: self.eta,
            vn: self.vn,
            vn_plus: self.vn_plus,
            vn_minus: self.vn_minus,
            va: self.va,
            vsqz: self.vsqz,
        };
        Ok((noswitch_cli::config::resolve(&flags, &file)?, file))
    }
}

#[derive(Args)]
struct RateArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Which measurement protocol to report.
    #[arg(long, value_enum)]
    protocol: Option<RateProtocol>,
    /// Symbol rate in symbols/second; adds a bits/second line.
    #[arg(long)]
    bandwidth: Option<f64>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum RateProtocol {
    Heterodyne,
    Homodyne,
}

#[derive(Args)]
struct SweepArgs {
    /// Transmission grid as start:stop:steps (inclusive).
    #[arg(long, value_name = "START:STOP:STEPS")]
    eta_range: RangeSpec,
    /// Channel-noise grid as start:stop:steps (inclusive).
    #[arg(long, value_name = "START:STOP:STEPS", conflicts_with = "vn_list")]
    vn_range: Option<RangeSpec>,
    /// Channel-noise values as an explicit comma-separated list.
    #[arg(long, value_delimiter = ',')]
    vn_list: Option<Vec<f64>>,
    /// Alice's total state variance V_A.
    #[arg(long)]
    va: Option<f64>,
    /// Transmitted-state quadrature noise V_sqz (1 = coherent states).
    #[arg(long)]
    vsqz: Option<f64>,
    /// Protocol columns to fill.
    #[arg(long, alias = "protocol", value_enum, value_delimiter = ',', default_values_t = [ProtocolChoice::Heterodyne, ProtocolChoice::Homodyne])]
    protocols: Vec<ProtocolChoice>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Optimizer tolerance on epsilon.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Symbol rate in symbols/second; adds a bits/second line.
    #[arg(long)]
    bandwidth: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Shots per scenario.
    #[arg(long)]
    samples: Option<u64>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Which scenario(s) to validate.
    #[arg(long, value_enum, default_value = "honest")]
    scenario: ScenarioChoice,
    /// Tap transmission for the feed-forward scenario (default: optimizer's choice).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Write the raw per-shot records to this path.
    #[arg(long)]
    export: Option<PathBuf>,
    /// Harness self-test: corrupt one analytic value; validation must fail.
    #[arg(long, hide = true)]
    corrupt_fixture: bool,
}

fn cmd_rate(args: &RateArgs) -> CliResult<ExitCode> {
    let (resolved, file) = args.params.resolve()?;
    let protocol = match args.protocol {
        Some(RateProtocol::Heterodyne) => Protocol::Heterodyne,
        Some(RateProtocol::Homodyne) => Protocol::Homodyne,
        None => match file.protocol.as_deref() {
            Some("heterodyne") | None => Protocol::Heterodyne,
            Some("homodyne") => Protocol::Homodyne,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "unknown protocol `{other}` in config"
                )))
            }
        },
    };
    let bandwidth = args.bandwidth.or(file.bandwidth);
    let report = commands::rate(&resolved, protocol, bandwidth)?;
    print!("{}", commands::render_rate(&resolved, &report));
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<ExitCode> {
    let file = FileConfig::load(args.config.as_deref())?;
    let vn = match (&args.vn_range, &args.vn_list) {
        (Some(r), None) => VnGrid::Range(*r),
        (None, Some(l)) => VnGrid::List(l.clone()),
        (None, None) => match file.vn {
            Some(v) => VnGrid::List(vec![v]),
            None => return Err(CliError::Usage("missing --vn-range or --vn-list".into())),
        },
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let out = args
        .out
        .clone()
        .or(file.out.clone())
        .ok_or_else(|| CliError::Usage("missing --out (or `out` in the config file)".into()))?;
    let spec = SweepSpec {
        eta: args.eta_range,
        vn,
        va: args.va.or(file.va).unwrap_or(DEFAULT_VA),
        vsqz: args.vsqz.or(file.vsqz).unwrap_or(DEFAULT_VSQZ),
        protocols: args.protocols.clone(),
    };
    let rows = noswitch_cli::sweep::run_to_file(&spec, &out)?;
    eprintln!("wrote {rows} rows to {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_attack(args: &AttackArgs) -> CliResult<ExitCode> {
    let (resolved, file) = args.params.resolve()?;
    let outcome = commands::attack(&resolved, args.tol)?;
    print!(
        "{}",
        commands::render_attack(&outcome, args.bandwidth.or(file.bandwidth))
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: &ValidateArgs) -> CliResult<ExitCode> {
    let (resolved, file) = args.params.resolve()?;
    let opts = ValidateOptions {
        scenario: args.scenario,
        samples: args.samples.or(file.samples).unwrap_or(1_000_000),
        seed: args.seed.or(file.seed).unwrap_or(42),
        epsilon: args.epsilon,
        corrupt_fixture: args.corrupt_fixture,
    };
    if let Some(path) = &args.export {
        let rows = commands::export_samples(&resolved, &opts, path)?;
        eprintln!("exported {rows} raw shots to {}", path.display());
    }
    let output = commands::validate(&resolved, &opts)?;
    print!(
        "{}",
        commands::render_validate(&output, opts.samples, opts.seed)
    );
    if output.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Rate(args) => cmd_rate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Attack(args) => cmd_attack(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
