use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use qdmod_core::analysis::{
    leakage_scan, quantization_report, ser_sweep, transmit_trace, SerSweepConfig, Targets,
};
use qdmod_core::channel::ChannelModel;
use qdmod_core::doppler::{
    bin_frequency, convergence_gap, estimate_doppler_shift, ideal_doppler_waveform, periodogram,
    stepped_sweep_waveform, sweep_at_angle, Window,
};

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::Subcommand;

pub(crate) struct Output {
    pub csv: String,
    pub summary: String,
}

const MAX_DEMO_SYMBOLS: u64 = 100;

pub(crate) fn produce(sub: Subcommand, cfg: &ExperimentConfig) -> Result<Output, CliError> {
    match sub {
        Subcommand::SerSweep => ser(cfg),
        Subcommand::DopplerSpectrum => doppler(cfg),
        Subcommand::LeakageScan => leakage(cfg),
        Subcommand::QuantizationReport => quantization(cfg),
        Subcommand::TransmitDemo => demo(cfg),
    }
}

fn sweep_config(cfg: &ExperimentConfig) -> Result<SerSweepConfig, CliError> {
    Ok(SerSweepConfig {
        array: cfg.array()?,
        psk_x: cfg.psk_x()?,
        psk_y: cfg.psk_y()?,
        snr_grid_db: cfg.snr_grid_db.clone(),
        n_symbols: cfg.n_symbols,
        seed: cfg.seed,
        model: cfg.model(),
    })
}

fn ser(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let points = ser_sweep(&sweep_config(cfg)?)?;
    let mut csv = String::from("es_over_n0_db,ser_rx,ser_ry,n_symbols,errors_rx,errors_ry\n");
    let mut summary = String::new();
    for p in &points {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            p.es_over_n0_db, p.ser_rx, p.ser_ry, p.n_symbols, p.errors_rx, p.errors_ry
        )
        .unwrap();
        writeln!(
            summary,
            "es_over_n0_db={} ser_rx={} ser_ry={}",
            p.es_over_n0_db, p.ser_rx, p.ser_ry
        )
        .unwrap();
    }
    Ok(Output { csv, summary })
}

fn doppler(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let sweep = cfg.sweep()?;
    let stepped = stepped_sweep_waveform(&sweep)?;
    let ideal = ideal_doppler_waveform(
        stepped.emulated_speed_m_per_s,
        &sweep.array().wave(),
        stepped.sample_rate_hz,
        stepped.len(),
    )?;
    let broadside = sweep_at_angle(&sweep, 0.0, &cfg.model())?;
    let len = if cfg.fft_length == 0 {
        stepped.len()
    } else {
        cfg.fft_length
    };
    let p_stepped = periodogram(&stepped, len, Window::Rectangular)?;
    let p_ideal = periodogram(&ideal, len, Window::Rectangular)?;
    let p_broad = periodogram(&broadside, len, Window::Rectangular)?;

    let mut csv = String::from("frequency_hz,power_stepped,power_ideal,power_broadside\n");
    // ascending frequency: negative bins first
    for k in (len / 2 + 1..len).chain(0..=len / 2) {
        writeln!(
            csv,
            "{},{},{},{}",
            bin_frequency(k, len, stepped.sample_rate_hz),
            p_stepped[k],
            p_ideal[k],
            p_broad[k]
        )
        .unwrap();
    }

    let est = estimate_doppler_shift(&stepped, len)?;
    let est_ideal = estimate_doppler_shift(&ideal, len)?;
    let est_broad = estimate_doppler_shift(&broadside, len)?;
    let mut summary = String::new();
    writeln!(summary, "expected_shift_hz={}", est.expected_hz).unwrap();
    writeln!(summary, "estimated_shift_hz={}", est.shift_hz).unwrap();
    writeln!(summary, "ideal_estimated_shift_hz={}", est_ideal.shift_hz).unwrap();
    writeln!(summary, "broadside_estimated_shift_hz={}", est_broad.shift_hz).unwrap();
    writeln!(summary, "bin_width_hz={}", est.bin_width_hz).unwrap();
    writeln!(summary, "convergence_gap_rad={}", convergence_gap(sweep.array())).unwrap();
    writeln!(summary, "aliased={}", stepped.aliased).unwrap();
    Ok(Output { csv, summary })
}

fn leakage(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let thetas: Vec<f64> = cfg
        .theta_grid_deg
        .iter()
        .map(|d| if *d == 90.0 { FRAC_PI_2 } else { d.to_radians() })
        .collect();
    let points = leakage_scan(&cfg.array()?, cfg.psk_x()?, cfg.psk_y()?, &thetas, &cfg.model())?;
    let mut csv = String::from("theta_deg,theta_rad,phase_spread_rad,path_phase_extent_rad,ser_y\n");
    for (deg, p) in cfg.theta_grid_deg.iter().zip(&points) {
        writeln!(
            csv,
            "{},{},{},{},{}",
            deg, p.theta_rad, p.phase_spread_rad, p.path_phase_extent_rad, p.ser_y
        )
        .unwrap();
    }
    let model = match cfg.model() {
        ChannelModel::PlaneWave => "plane".to_string(),
        ChannelModel::Spherical { range_m, .. } => format!("spherical range_m={range_m}"),
    };
    let summary = format!("model={model} angles={}\n", points.len());
    Ok(Output { csv, summary })
}

fn quantization(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let r = quantization_report(&cfg.array()?, &Targets::Psk(cfg.psk_order_x))?;
    let mut csv = String::from("target_rad,element_index,achieved_phd_rad,error_rad\n");
    for e in &r.entries {
        writeln!(csv, "{},{},{},{}", e.target, e.element_index, e.achieved, e.error_rad).unwrap();
    }
    let mut summary = String::new();
    writeln!(summary, "n_distinct={}", r.n_distinct_phases).unwrap();
    writeln!(summary, "max_gap_rad={}", r.max_gap_rad).unwrap();
    writeln!(summary, "max_error_rad={}", r.max_error_rad).unwrap();
    writeln!(summary, "mean_error_rad={}", r.mean_error_rad).unwrap();
    for b in &r.histogram {
        writeln!(summary, "bin [{}, {}) count={}", b.lower_rad, b.upper_rad, b.count).unwrap();
    }
    Ok(Output { csv, summary })
}

fn demo(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    if cfg.n_symbols > MAX_DEMO_SYMBOLS {
        return Err(CliError::Invalid {
            field: "n_symbols".into(),
            reason: format!("transmit-demo traces at most {MAX_DEMO_SYMBOLS} symbols"),
        });
    }
    let db = cfg.snr_grid_db.first().copied().unwrap_or(f64::INFINITY);
    let rows = transmit_trace(&sweep_config(cfg)?, db)?;
    let mut csv = String::from(
        "symbol,sym_x,sym_y,element_index,source_phase_rad,achieved_phi_d_rad,achieved_phi_x_rad,\
         quantization_error_rad,rx_re,rx_im,ry_re,ry_im,decided_x,decided_y\n",
    );
    let mut summary = format!("es_over_n0_db={db}\n");
    writeln!(
        summary,
        "{:>4} {:>4} {:>4} {:>4} {:>10} {:>10} {:>10} {:>10} {:>4} {:>4}",
        "k", "sx", "sy", "elem", "phi_y", "phi_d", "phi_x", "q_err", "dx", "dy"
    )
    .unwrap();
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.symbol,
            r.sym_x,
            r.sym_y,
            r.tx.element_index,
            r.tx.source_phase,
            r.tx.achieved_phi_d,
            r.tx.achieved_phi_x,
            r.tx.quantization_error,
            r.rx.at_rx.re,
            r.rx.at_rx.im,
            r.rx.at_ry.re,
            r.rx.at_ry.im,
            r.decided_x,
            r.decided_y
        )
        .unwrap();
        writeln!(
            summary,
            "{:>4} {:>4} {:>4} {:>4} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>4} {:>4}",
            r.symbol,
            r.sym_x,
            r.sym_y,
            r.tx.element_index,
            r.tx.source_phase.radians(),
            r.tx.achieved_phi_d.radians(),
            r.tx.achieved_phi_x.radians(),
            r.tx.quantization_error,
            r.decided_x,
            r.decided_y
        )
        .unwrap();
    }
    Ok(Output { csv, summary })
}
