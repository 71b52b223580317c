//! 2-D parameter sweeps over (eta, V_N) with deterministic CSV output.
//!
//! Rows are emitted in row-major order, V_N outer and eta inner, with a
//! fixed header and 12-significant-digit cells, so identical sweep
//! specifications produce byte-identical files.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use noswitch_core::attack::optimize_attack;
use noswitch_core::keyrate::{secret_key_rate_heterodyne, secret_key_rate_homodyne, ChannelParams};
use noswitch_core::{Error, SourceParams};

use crate::config::source_params;
use crate::error::{CliError, CliResult};
use crate::format::sig12;

pub const CSV_HEADER: &str =
    "eta,vn_plus,vn_minus,va,delta_i_het,delta_i_hom,delta_i_ff,epsilon_star,window_min,window_max";

/// Inclusive linear range: `start:stop:steps` with `steps` grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.start + step * i as f64)
            .collect()
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:steps, got `{s}`"));
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("start: {e}"))?;
        let stop: f64 = parts[1].parse().map_err(|e| format!("stop: {e}"))?;
        let steps: usize = parts[2].parse().map_err(|e| format!("steps: {e}"))?;
        if steps < 1 {
            return Err("steps must be at least 1".into());
        }
        if steps == 1 && start != stop {
            return Err("a single-step range needs start == stop".into());
        }
        Ok(RangeSpec { start, stop, steps })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProtocolChoice {
    Heterodyne,
    Homodyne,
    #[value(name = "feedforward")]
    FeedForward,
}

/// Grid of channel-noise values: a range or an explicit list.
#[derive(Debug, Clone, PartialEq)]
pub enum VnGrid {
    Range(RangeSpec),
    List(Vec<f64>),
}

impl VnGrid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            VnGrid::Range(r) => r.values(),
            VnGrid::List(l) => l.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub eta: RangeSpec,
    pub vn: VnGrid,
    pub va: f64,
    pub vsqz: f64,
    pub protocols: Vec<ProtocolChoice>,
}

/// One grid cell; `None` entries render as empty CSV cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub eta: f64,
    pub vn: f64,
    pub va: f64,
    pub delta_i_het: Option<f64>,
    pub delta_i_hom: Option<f64>,
    pub feedforward: Option<FeedForwardCell>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedForwardCell {
    pub delta_i: f64,
    pub epsilon_star: f64,
    pub window_min: f64,
    pub window_max: f64,
}

pub fn compute_cell(
    source: &SourceParams,
    eta: f64,
    vn: f64,
    va: f64,
    protocols: &[ProtocolChoice],
) -> CliResult<SweepCell> {
    let channel = ChannelParams::symmetric(eta, vn)?;
    let delta_i_het = protocols
        .contains(&ProtocolChoice::Heterodyne)
        .then(|| secret_key_rate_heterodyne(source, &channel).delta_i);
    let delta_i_hom = protocols
        .contains(&ProtocolChoice::Homodyne)
        .then(|| secret_key_rate_homodyne(source, &channel).delta_i);
    let feedforward = if protocols.contains(&ProtocolChoice::FeedForward) {
        match optimize_attack(source, &channel, 1e-8) {
            Ok(report) => Some(FeedForwardCell {
                delta_i: report.delta_i,
                epsilon_star: report.epsilon_star,
                window_min: report.window.epsilon_min,
                window_max: report.window.epsilon_max,
            }),
            Err(Error::AttackInfeasible) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    Ok(SweepCell {
        eta,
        vn,
        va,
        delta_i_het,
        delta_i_hom,
        feedforward,
    })
}

/// Compute the full grid. Cells are evaluated in parallel and collected
/// in deterministic row order (vn outer, eta inner).
pub fn compute_cells(spec: &SweepSpec) -> CliResult<Vec<SweepCell>> {
    let source = source_params(spec.va, spec.vsqz)?;
    let etas = spec.eta.values();
    let mut points = Vec::new();
    for &vn in &spec.vn.values() {
        for &eta in &etas {
            points.push((eta, vn));
        }
    }
    points
        .par_iter()
        .map(|&(eta, vn)| compute_cell(&source, eta, vn, spec.va, &spec.protocols))
        .collect()
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(sig12).unwrap_or_default()
}

pub fn write_csv(cells: &[SweepCell], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for c in cells {
        let ff = c.feedforward;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            sig12(c.eta),
            sig12(c.vn),
            sig12(c.vn),
            sig12(c.va),
            opt_cell(c.delta_i_het),
            opt_cell(c.delta_i_hom),
            opt_cell(ff.map(|f| f.delta_i)),
            opt_cell(ff.map(|f| f.epsilon_star)),
            opt_cell(ff.map(|f| f.window_min)),
            opt_cell(ff.map(|f| f.window_max)),
        )?;
    }
    Ok(())
}

/// Run the sweep and write the CSV file.
pub fn run_to_file(spec: &SweepSpec, path: &std::path::Path) -> CliResult<usize> {
    let cells = compute_cells(spec)?;
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    write_csv(&cells, &mut w)?;
    use std::io::Write as _;
    w.flush()?;
    Ok(cells.len())
}
