//! Monte Carlo symbol error rates for both streams.
//!
//! Symbol `k` draws its joint symbol from stream `k` of the symbol domain and
//! its two noise samples from draws `2k` and `2k + 1` of the noise domain, so
//! results do not depend on how symbols are spread across threads.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rayon::prelude::*;

use super::demod::coherent_demod_psk;
use crate::channel::{received_at, ChannelGain, ChannelModel, NoiseModel, RxSamplePair};
use crate::error::{Error, Result};
use crate::geometry::ArrayConfig;
use crate::modulation::{JointModulator, PskConfig, TxAssignment};
use crate::phase::Phase;
use crate::rng::{self, Domain};

/// Measured error rates at one SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SerPoint {
    pub es_over_n0_db: f64,
    pub ser_rx: f64,
    pub ser_ry: f64,
    pub n_symbols: u64,
    pub errors_rx: u64,
    pub errors_ry: u64,
}

impl SerPoint {
    fn from_counts(es_over_n0_db: f64, n_symbols: u64, errors_rx: u64, errors_ry: u64) -> Self {
        Self {
            es_over_n0_db,
            ser_rx: errors_rx as f64 / n_symbols as f64,
            ser_ry: errors_ry as f64 / n_symbols as f64,
            n_symbols,
            errors_rx,
            errors_ry,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SerSweepConfig {
    pub array: ArrayConfig,
    pub psk_x: PskConfig,
    /// Its symbol energy sets the source power seen by both receivers.
    pub psk_y: PskConfig,
    /// `+∞` entries run noiseless.
    pub snr_grid_db: Vec<f64>,
    pub n_symbols: u64,
    pub seed: u64,
    pub model: ChannelModel,
}

/// Per-element gains toward the axial (`θ = π/2`) and broadside receivers.
struct Links {
    modulator: JointModulator,
    to_rx: Vec<ChannelGain>,
    to_ry: Vec<ChannelGain>,
    es: f64,
}

impl Links {
    fn new(array: &ArrayConfig, psk_x: PskConfig, psk_y: PskConfig, model: &ChannelModel) -> Result<Self> {
        let wave = array.wave();
        let gains = |theta: f64| -> Result<Vec<ChannelGain>> {
            array
                .positions()
                .into_iter()
                .map(|x| model.element_gain(x, theta, &wave))
                .collect()
        };
        Ok(Self {
            modulator: JointModulator::new(psk_x, psk_y, array),
            to_rx: gains(FRAC_PI_2)?,
            to_ry: gains(0.0)?,
            es: psk_y.symbol_energy(),
        })
    }

    fn receive(&self, tx: &TxAssignment, noise: Option<&NoiseModel>, k: u64) -> RxSamplePair {
        let slot = tx.element_index - 1;
        RxSamplePair {
            at_rx: received_at(tx.source_phase, self.to_rx[slot], self.es, noise, 2 * k),
            at_ry: received_at(tx.source_phase, self.to_ry[slot], self.es, noise, 2 * k + 1),
        }
    }

    fn decide(&self, rx: &RxSamplePair) -> (usize, usize) {
        let dx = coherent_demod_psk(rx.at_rx, self.modulator.psk_x(), Phase::ZERO);
        let dy = coherent_demod_psk(rx.at_ry, self.modulator.psk_y(), Phase::ZERO);
        (dx.index, dy.index)
    }

    /// Transmits one joint symbol and returns the two hard decisions.
    fn run(&self, tx: &TxAssignment, noise: Option<&NoiseModel>, k: u64) -> (usize, usize) {
        self.decide(&self.receive(tx, noise, k))
    }
}

fn draw_symbols(seed: u64, k: u64, mx: usize, my: usize) -> (usize, usize) {
    let mut r = rng::stream(seed, Domain::Symbols, k);
    (r.random_range(0..mx), r.random_range(0..my))
}

/// Runs the joint link at every SNR in the grid.
///
/// Uses rayon's current pool; counts are integer sums and therefore identical
/// for any thread count.
pub fn ser_sweep(cfg: &SerSweepConfig) -> Result<Vec<SerPoint>> {
    if cfg.n_symbols == 0 {
        return Err(Error::NoSymbols);
    }
    let links = Links::new(&cfg.array, cfg.psk_x, cfg.psk_y, &cfg.model)?;
    let (mx, my) = (cfg.psk_x.order(), cfg.psk_y.order());
    cfg.snr_grid_db
        .iter()
        .map(|&db| {
            let noise = NoiseModel::new(db, cfg.seed)?;
            let noise = (!noise.is_disabled()).then_some(noise);
            let (ex, ey) = (0..cfg.n_symbols)
                .into_par_iter()
                .map(|k| {
                    let (sx, sy) = draw_symbols(cfg.seed, k, mx, my);
                    let tx = links.modulator.modulate(sx, sy).expect("drawn symbols are in range");
                    let (dx, dy) = links.run(&tx, noise.as_ref(), k);
                    (u64::from(dx != sx), u64::from(dy != sy))
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            Ok(SerPoint::from_counts(db, cfg.n_symbols, ex, ey))
        })
        .collect()
}

/// One symbol of a transmit trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub symbol: u64,
    pub sym_x: usize,
    pub sym_y: usize,
    pub tx: TxAssignment,
    pub rx: RxSamplePair,
    pub decided_x: usize,
    pub decided_y: usize,
}

/// The first `cfg.n_symbols` symbols at one SNR, drawn exactly as
/// [`ser_sweep`] draws them.
pub fn transmit_trace(cfg: &SerSweepConfig, es_over_n0_db: f64) -> Result<Vec<TraceRow>> {
    let links = Links::new(&cfg.array, cfg.psk_x, cfg.psk_y, &cfg.model)?;
    let noise = NoiseModel::new(es_over_n0_db, cfg.seed)?;
    let noise = (!noise.is_disabled()).then_some(noise);
    (0..cfg.n_symbols)
        .map(|k| {
            let (sx, sy) = draw_symbols(cfg.seed, k, cfg.psk_x.order(), cfg.psk_y.order());
            let tx = links.modulator.modulate(sx, sy)?;
            let rx = links.receive(&tx, noise.as_ref(), k);
            let (dx, dy) = links.decide(&rx);
            Ok(TraceRow {
                symbol: k,
                sym_x: sx,
                sym_y: sy,
                tx,
                rx,
                decided_x: dx,
                decided_y: dy,
            })
        })
        .collect()
}

/// Error counts over every joint symbol, transmitted once without noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JointErrorCount {
    pub n_symbols: u64,
    pub errors_rx: u64,
    pub errors_ry: u64,
}

/// Sends all `M_x·M_y` joint symbols noiselessly and counts decision errors.
pub fn exhaustive_noiseless(
    array: &ArrayConfig,
    psk_x: PskConfig,
    psk_y: PskConfig,
    model: &ChannelModel,
) -> Result<JointErrorCount> {
    let links = Links::new(array, psk_x, psk_y, model)?;
    let mut count = JointErrorCount {
        n_symbols: 0,
        errors_rx: 0,
        errors_ry: 0,
    };
    for sx in 0..psk_x.order() {
        for sy in 0..psk_y.order() {
            let tx = links.modulator.modulate(sx, sy)?;
            let (dx, dy) = links.run(&tx, None, 0);
            count.n_symbols += 1;
            count.errors_rx += u64::from(dx != sx);
            count.errors_ry += u64::from(dy != sy);
        }
    }
    Ok(count)
}
