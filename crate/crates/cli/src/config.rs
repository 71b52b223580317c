//! Optional TOML configuration and parameter resolution.
//!
//! Config keys mirror the flag names (dashes become underscores); flags
//! always override file values, and the file fills in anything unset.
//! Defaults: V_A = 100, V_N = 1, coherent states (V_sqz = 1).

use std::path::{Path, PathBuf};

use serde::Deserialize;

use noswitch_core::{ChannelParams, QuadPair, SourceParams};

use crate::error::{CliError, CliResult};

pub const DEFAULT_VA: f64 = 100.0;
pub const DEFAULT_VN: f64 = 1.0;
pub const DEFAULT_VSQZ: f64 = 1.0;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub eta: Option<f64>,
    pub vn: Option<f64>,
    pub vn_plus: Option<f64>,
    pub vn_minus: Option<f64>,
    pub va: Option<f64>,
    pub vsqz: Option<f64>,
    pub protocol: Option<String>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub bandwidth: Option<f64>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Physical-parameter flags shared by the subcommands, pre-merge.
#[derive(Debug, Clone, Default)]
pub struct ParamFlags {
    pub eta: Option<f64>,
    pub vn: Option<f64>,
    pub vn_plus: Option<f64>,
    pub vn_minus: Option<f64>,
    pub va: Option<f64>,
    pub vsqz: Option<f64>,
}

/// Fully resolved protocol parameters.
#[derive(Debug, Clone, Copy)]
pub struct Resolved {
    pub source: SourceParams,
    pub channel: ChannelParams,
}

pub fn resolve(flags: &ParamFlags, config: &FileConfig) -> CliResult<Resolved> {
    let eta = flags
        .eta
        .or(config.eta)
        .ok_or_else(|| CliError::Usage("missing --eta (or `eta` in the config file)".into()))?;
    let vn_base = flags.vn.or(config.vn).unwrap_or(DEFAULT_VN);
    let vn = QuadPair::new(
        flags.vn_plus.or(config.vn_plus).unwrap_or(vn_base),
        flags.vn_minus.or(config.vn_minus).unwrap_or(vn_base),
    );
    let va = flags.va.or(config.va).unwrap_or(DEFAULT_VA);
    let vsqz = flags.vsqz.or(config.vsqz).unwrap_or(DEFAULT_VSQZ);

    let source = source_params(va, vsqz)?;
    let channel = ChannelParams::new(eta, vn)?;
    Ok(Resolved { source, channel })
}

pub fn source_params(va: f64, vsqz: f64) -> CliResult<SourceParams> {
    if va.is_nan() || va < vsqz {
        return Err(CliError::Domain(format!(
            "va = {va} must be at least vsqz = {vsqz} (V_A = V_S + V_sqz with V_S >= 0)"
        )));
    }
    Ok(SourceParams::new(
        QuadPair::symmetric(va - vsqz),
        QuadPair::symmetric(vsqz),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_unset_values() {
        let flags = ParamFlags {
            eta: Some(0.5),
            ..Default::default()
        };
        let r = resolve(&flags, &FileConfig::default()).unwrap();
        assert_eq!(r.source.alice_variance(), QuadPair::symmetric(100.0));
        assert_eq!(r.channel.noise(), QuadPair::symmetric(1.0));
    }

    #[test]
    fn flags_override_config() {
        let config: FileConfig = toml::from_str("eta = 0.3\nvn = 2.0\nva = 50.0").unwrap();
        let flags = ParamFlags {
            eta: Some(0.5),
            ..Default::default()
        };
        let r = resolve(&flags, &config).unwrap();
        assert_eq!(r.channel.transmission(), 0.5);
        assert_eq!(r.channel.noise(), QuadPair::symmetric(2.0));
        assert_eq!(r.source.alice_variance(), QuadPair::symmetric(50.0));
    }

    #[test]
    fn quadrature_overrides() {
        let flags = ParamFlags {
            eta: Some(0.5),
            vn: Some(1.5),
            vn_minus: Some(2.5),
            ..Default::default()
        };
        let r = resolve(&flags, &FileConfig::default()).unwrap();
        assert_eq!(r.channel.noise(), QuadPair::new(1.5, 2.5));
    }

    #[test]
    fn missing_eta_is_a_usage_error() {
        let err = resolve(&ParamFlags::default(), &FileConfig::default()).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }

    #[test]
    fn unphysical_noise_is_a_domain_error() {
        let flags = ParamFlags {
            eta: Some(0.5),
            vn: Some(0.5),
            ..Default::default()
        };
        let err = resolve(&flags, &FileConfig::default()).unwrap_err();
        assert!(matches!(err, CliError::Domain(_)));
        assert!(err.to_string().contains("V_N+ * V_N- >= 1"));
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let text = "etaa = 0.5";
        let parsed: Result<FileConfig, _> = toml::from_str(text);
        assert!(parsed.is_err());
    }
}
