//! Experiment runner behind the `qdmod` binary.

pub mod config;
pub mod error;
mod report;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use config::ExperimentConfig;
pub use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    SerSweep,
    DopplerSpectrum,
    LeakageScan,
    QuantizationReport,
    TransmitDemo,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::SerSweep => "ser-sweep",
            Subcommand::DopplerSpectrum => "doppler-spectrum",
            Subcommand::LeakageScan => "leakage-scan",
            Subcommand::QuantizationReport => "quantization-report",
            Subcommand::TransmitDemo => "transmit-demo",
        }
    }
}

/// Loads the config, runs `sub`, writes the CSV and prints a summary to
/// `stdout`. Nothing is left at `output_path` when any step fails.
pub fn run(
    sub: Subcommand,
    config_path: &Path,
    overrides: &[(String, String)],
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = ExperimentConfig::load(config_path, overrides)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Invalid {
            field: "threads".into(),
            reason: e.to_string(),
        })?;
    let out = pool.install(|| report::produce(sub, &cfg))?;
    write_atomically(&cfg.output_path, out.csv.as_bytes())?;
    stdout
        .write_all(out.summary.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    Ok(())
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| {
        let _ = fs::remove_file(path);
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    })
}
