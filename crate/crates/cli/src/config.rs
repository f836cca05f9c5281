//! Flat `key = value` experiment configuration.
//!
//! One key per line, `#` starts a comment, lists are comma-separated.
//! Overrides given on the command line replace file values.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use qdmod_core::channel::ChannelModel;
use qdmod_core::doppler::SweepConfig;
use qdmod_core::modulation::PskConfig;
use qdmod_core::{ArrayConfig, WaveConfig};

use crate::error::CliError;

const KEYS: &[&str] = &[
    "wavelength_m",
    "n_elements",
    "aperture_m",
    "psk_order_x",
    "psk_order_y",
    "symbol_energy",
    "snr_grid_db",
    "n_symbols",
    "seed",
    "residence_time_s",
    "oversample",
    "repeats",
    "fft_length",
    "theta_grid_deg",
    "channel_model",
    "receiver_range_m",
    "output_path",
    "threads",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Plane,
    Spherical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub wavelength_m: f64,
    pub n_elements: usize,
    /// Defaults to two wavelengths.
    pub aperture_m: Option<f64>,
    pub psk_order_x: usize,
    pub psk_order_y: usize,
    pub symbol_energy: f64,
    pub snr_grid_db: Vec<f64>,
    pub n_symbols: u64,
    pub seed: u64,
    pub residence_time_s: f64,
    pub oversample: usize,
    pub repeats: usize,
    /// 0 means one bin per sample.
    pub fft_length: usize,
    pub theta_grid_deg: Vec<f64>,
    pub channel_model: ModelKind,
    pub receiver_range_m: f64,
    pub output_path: PathBuf,
    /// 0 lets rayon decide.
    pub threads: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            wavelength_m: 1.0,
            n_elements: 16,
            aperture_m: None,
            psk_order_x: 4,
            psk_order_y: 4,
            symbol_energy: 1.0,
            snr_grid_db: vec![0.0, 4.0, 8.0],
            n_symbols: 100_000,
            seed: 1,
            residence_time_s: 1e-3,
            oversample: 8,
            repeats: 8,
            fft_length: 0,
            theta_grid_deg: (0..=18).map(|i| i as f64 * 5.0).collect(),
            channel_model: ModelKind::Plane,
            receiver_range_m: 1000.0,
            output_path: PathBuf::from("out.csv"),
            threads: 0,
        }
    }
}

fn invalid(field: &str, reason: impl Into<String>) -> CliError {
    CliError::Invalid {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn parse_f64(field: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| invalid(field, format!("`{v}` is not a number")))?;
    if x.is_nan() {
        return Err(invalid(field, "NaN is not allowed"));
    }
    Ok(x)
}

fn parse_uint<T: std::str::FromStr>(field: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| invalid(field, format!("`{v}` is not a non-negative integer")))
}

fn parse_list(field: &str, v: &str) -> Result<Vec<f64>, CliError> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|item| parse_f64(field, item)).collect()
}

/// Parses the text of a config file into raw key/value pairs.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Syntax {
            line: lineno + 1,
            reason: format!("expected `key = value`, got `{line}`"),
        })?;
        out.insert(normalize_key(k), v.trim().to_string());
    }
    Ok(out)
}

fn normalize_key(k: &str) -> String {
    k.trim().trim_start_matches("--").replace('-', "_")
}

/// Turns `["--key", "value", ...]` into pairs.
pub fn parse_overrides(args: &[String]) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        if !flag.starts_with("--") {
            return Err(invalid(flag, "overrides must look like `--key value`"));
        }
        let key = normalize_key(flag);
        let value = it
            .next()
            .ok_or_else(|| invalid(&key, "override is missing its value"))?;
        out.push((key, value.clone()));
    }
    Ok(out)
}

impl ExperimentConfig {
    pub fn load(path: &Path, overrides: &[(String, String)]) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut pairs = parse_pairs(&text)?;
        for (k, v) in overrides {
            pairs.insert(k.clone(), v.clone());
        }
        Self::from_pairs(&pairs)
    }

    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let mut c = Self::default();
        if !pairs.contains_key("output_path") {
            return Err(invalid("output_path", "required"));
        }
        for (k, v) in pairs {
            match k.as_str() {
                "wavelength_m" => c.wavelength_m = parse_f64(k, v)?,
                "n_elements" => c.n_elements = parse_uint(k, v)?,
                "aperture_m" => c.aperture_m = Some(parse_f64(k, v)?),
                "psk_order_x" => c.psk_order_x = parse_uint(k, v)?,
                "psk_order_y" => c.psk_order_y = parse_uint(k, v)?,
                "symbol_energy" => c.symbol_energy = parse_f64(k, v)?,
                "snr_grid_db" => c.snr_grid_db = parse_list(k, v)?,
                "n_symbols" => c.n_symbols = parse_uint(k, v)?,
                "seed" => c.seed = parse_uint(k, v)?,
                "residence_time_s" => c.residence_time_s = parse_f64(k, v)?,
                "oversample" => c.oversample = parse_uint(k, v)?,
                "repeats" => c.repeats = parse_uint(k, v)?,
                "fft_length" => c.fft_length = parse_uint(k, v)?,
                "theta_grid_deg" => c.theta_grid_deg = parse_list(k, v)?,
                "channel_model" => {
                    c.channel_model = match v.as_str() {
                        "plane" => ModelKind::Plane,
                        "spherical" => ModelKind::Spherical,
                        other => return Err(invalid(k, format!("`{other}` is not plane|spherical"))),
                    }
                }
                "receiver_range_m" => c.receiver_range_m = parse_f64(k, v)?,
                "output_path" => {
                    if v.is_empty() {
                        return Err(invalid(k, "must not be empty"));
                    }
                    c.output_path = PathBuf::from(v)
                }
                "threads" => c.threads = parse_uint(k, v)?,
                other => {
                    debug_assert!(!KEYS.contains(&other));
                    return Err(invalid(other, "unknown key"));
                }
            }
        }
        c.validate()?;
        Ok(c)
    }

    /// Checks every field against the owning model's preconditions.
    pub fn validate(&self) -> Result<(), CliError> {
        self.array()?;
        self.psk_x()?;
        self.psk_y()?;
        self.sweep()?;
        if self.n_symbols == 0 {
            return Err(invalid("n_symbols", "must be at least 1"));
        }
        if self.snr_grid_db.iter().any(|&db| db == f64::NEG_INFINITY) {
            return Err(invalid("snr_grid_db", "-inf is not a valid SNR"));
        }
        if let Some(t) = self.theta_grid_deg.iter().find(|t| !(0.0..=90.0).contains(*t)) {
            return Err(invalid("theta_grid_deg", format!("{t} outside [0, 90]")));
        }
        if !(self.receiver_range_m.is_finite() && self.receiver_range_m > 0.0) {
            return Err(invalid("receiver_range_m", "must be positive and finite"));
        }
        if self.fft_length != 0 && self.fft_length < self.sweep()?.n_samples() {
            return Err(invalid("fft_length", "shorter than the sweep"));
        }
        Ok(())
    }

    pub fn wave(&self) -> Result<WaveConfig, CliError> {
        WaveConfig::new(self.wavelength_m).map_err(|e| invalid("wavelength_m", e.to_string()))
    }

    pub fn array(&self) -> Result<ArrayConfig, CliError> {
        let wave = self.wave()?;
        let aperture = self.aperture_m.unwrap_or(2.0 * self.wavelength_m);
        ArrayConfig::with_aperture(wave, self.n_elements, aperture).map_err(|e| {
            let field = if self.n_elements == 0 { "n_elements" } else { "aperture_m" };
            invalid(field, e.to_string())
        })
    }

    pub fn psk_x(&self) -> Result<PskConfig, CliError> {
        psk(self.psk_order_x, self.symbol_energy, "psk_order_x")
    }

    pub fn psk_y(&self) -> Result<PskConfig, CliError> {
        psk(self.psk_order_y, self.symbol_energy, "psk_order_y")
    }

    pub fn sweep(&self) -> Result<SweepConfig, CliError> {
        SweepConfig::new(self.array()?, self.residence_time_s, self.oversample, self.repeats).map_err(|e| {
            let field = match e {
                qdmod_core::Error::InvalidOversample(_) => "oversample",
                qdmod_core::Error::InvalidRepeats => "repeats",
                _ => "residence_time_s",
            };
            invalid(field, e.to_string())
        })
    }

    pub fn model(&self) -> ChannelModel {
        match self.channel_model {
            ModelKind::Plane => ChannelModel::PlaneWave,
            ModelKind::Spherical => ChannelModel::Spherical {
                range_m: self.receiver_range_m,
                normalize_amplitude: true,
            },
        }
    }
}

fn psk(order: usize, es: f64, field: &str) -> Result<PskConfig, CliError> {
    PskConfig::new(order, es).map_err(|e| {
        let field = if matches!(e, qdmod_core::Error::InvalidSymbolEnergy(_)) {
            "symbol_energy"
        } else {
            field
        };
        invalid(field, e.to_string())
    })
}
