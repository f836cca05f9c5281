use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand as ClapSubcommand};
use qdmod_cli::config::parse_overrides;
use qdmod_cli::{run, Subcommand};

/// Quasi-Doppler directional modulation experiments.
#[derive(Parser)]
#[command(name = "qdmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Args {
    /// Flat `key = value` config file
    config: PathBuf,
    /// `--key value` pairs overriding the config file
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    overrides: Vec<String>,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Monte Carlo SER of both streams over an SNR grid
    SerSweep(Args),
    /// Periodogram of the switched-element sweep against ideal motion
    DopplerSpectrum(Args),
    /// Phase spread and stream-y SER at receivers off broadside
    LeakageScan(Args),
    /// PhD quantization statistics of the element grid
    QuantizationReport(Args),
    /// Per-symbol trace of a short transmission
    TransmitDemo(Args),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (sub, args) = match cli.command {
        Command::SerSweep(a) => (Subcommand::SerSweep, a),
        Command::DopplerSpectrum(a) => (Subcommand::DopplerSpectrum, a),
        Command::LeakageScan(a) => (Subcommand::LeakageScan, a),
        Command::QuantizationReport(a) => (Subcommand::QuantizationReport, a),
        Command::TransmitDemo(a) => (Subcommand::TransmitDemo, a),
    };
    let result = parse_overrides(&args.overrides)
        .and_then(|o| run(sub, &args.config, &o, &mut std::io::stdout().lock()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdmod {}: {e}", sub.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
