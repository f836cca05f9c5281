//! Joint two-stream phase modulation.
//!
//! The source phase carries the broadside stream (`φ_y`) directly. The axial
//! stream (`φ_x`) is produced by choosing which element radiates: element `n`
//! adds a Phase-Doppler term `φ_D = K·x_n` toward the array axis and nothing
//! toward broadside. Only `N` positions exist, so `φ_D` is quantized to the
//! achievable set `{K·x_n mod 2π}` and the residual is reported per symbol.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{ArrayConfig, WaveConfig};
use crate::phase::{wrap_finite, Phase};

/// Circular distances closer than this are treated as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Uniform M-PSK constellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PskConfig {
    order: usize,
    symbol_energy: f64,
}

impl PskConfig {
    pub fn new(order: usize, symbol_energy: f64) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::InvalidPskOrder(order));
        }
        if !(symbol_energy.is_finite() && symbol_energy > 0.0) {
            return Err(Error::InvalidSymbolEnergy(symbol_energy));
        }
        Ok(Self {
            order,
            symbol_energy,
        })
    }

    /// Unit-energy constellation.
    pub fn unit(order: usize) -> Result<Self> {
        Self::new(order, 1.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn symbol_energy(&self) -> f64 {
        self.symbol_energy
    }

    /// Half-width of each decision sector, `π/M`.
    pub fn half_sector(&self) -> f64 {
        std::f64::consts::PI / self.order as f64
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.order.trailing_zeros()
    }
}

/// Phase of constellation point `symbol_index`: `2π·i/M`.
pub fn psk_map(symbol_index: usize, cfg: &PskConfig) -> Result<Phase> {
    if symbol_index >= cfg.order {
        return Err(Error::SymbolOutOfRange {
            index: symbol_index,
            order: cfg.order,
        });
    }
    Ok(wrap_finite(TAU * symbol_index as f64 / cfg.order as f64))
}

/// Symbol index whose Gray code is `bits`, so neighbouring constellation
/// points differ in one bit.
pub fn gray_to_symbol(bits: usize) -> usize {
    let mut v = bits;
    let mut shift = 1;
    while (bits >> shift) > 0 {
        v ^= bits >> shift;
        shift += 1;
    }
    v
}

/// Inverse of [`gray_to_symbol`].
pub fn symbol_to_gray(symbol_index: usize) -> usize {
    symbol_index ^ (symbol_index >> 1)
}

/// Phase-Doppler term `K·x` toward the axial receiver.
pub fn phd_of_position(x_m: f64, wave: &WaveConfig) -> Result<Phase> {
    if !x_m.is_finite() {
        return Err(Error::NonFinite(x_m));
    }
    if x_m <= 0.0 {
        return Err(Error::NonPositivePosition(x_m));
    }
    Ok(wrap_finite(wave.wavenumber() * x_m))
}

/// PhD needed so that `φ_y + φ_D ≡ φ_x (mod 2π)`.
pub fn required_phd(phi_x: Phase, phi_y: Phase) -> Phase {
    phi_x - phi_y
}

/// The pair of desired phases and the PhD that links them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPhaseSymbol {
    pub phi_x: Phase,
    pub phi_y: Phase,
    pub phi_d: Phase,
}

impl JointPhaseSymbol {
    pub fn new(phi_x: Phase, phi_y: Phase) -> Self {
        Self {
            phi_x,
            phi_y,
            phi_d: required_phd(phi_x, phi_y),
        }
    }
}

/// PhD of every element, in element order (index `n` at slot `n - 1`).
pub fn achievable_phds(cfg: &ArrayConfig) -> Vec<Phase> {
    let k = cfg.wave().wavenumber();
    (1..=cfg.n_elements())
        .map(|n| wrap_finite(k * cfg.position(n)))
        .collect()
}

/// Outcome of choosing the element closest to a target PhD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementChoice {
    /// 1-based element index.
    pub index: usize,
    pub achieved_phd: Phase,
    /// Circular distance between achieved and target PhD.
    pub error: f64,
}

/// Element whose PhD is circularly closest to `target`; the smallest index
/// wins ties.
pub fn select_element(target: Phase, cfg: &ArrayConfig) -> ElementChoice {
    select_from(target, &achievable_phds(cfg))
}

pub(crate) fn select_from(target: Phase, phds: &[Phase]) -> ElementChoice {
    let mut best = ElementChoice {
        index: 1,
        achieved_phd: phds[0],
        error: phds[0].distance(target),
    };
    for (slot, &phd) in phds.iter().enumerate().skip(1) {
        let err = phd.distance(target);
        if err < best.error - TIE_TOLERANCE {
            best = ElementChoice {
                index: slot + 1,
                achieved_phd: phd,
                error: err,
            };
        }
    }
    best
}

/// Every element that ties the best choice for `target`. With a `2λ`
/// aperture and even `N`, elements `n` and `n + N/2` alias onto the same PhD.
pub fn equivalent_elements(target: Phase, cfg: &ArrayConfig) -> Vec<usize> {
    let phds = achievable_phds(cfg);
    let best = select_from(target, &phds);
    phds.iter()
        .enumerate()
        .filter(|(_, p)| p.distance(target) <= best.error + TIE_TOLERANCE)
        .map(|(slot, _)| slot + 1)
        .collect()
}

/// Transmit-side state for one joint symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TxAssignment {
    /// 1-based index of the radiating element.
    pub element_index: usize,
    /// Phase applied at the source; this is `φ_y`.
    pub source_phase: Phase,
    pub achieved_phi_d: Phase,
    /// What the axial receiver actually sees: `source_phase + achieved_phi_d`.
    pub achieved_phi_x: Phase,
    pub quantization_error: f64,
}

/// Reusable modulator that caches the array's achievable PhD set.
#[derive(Debug, Clone)]
pub struct JointModulator {
    psk_x: PskConfig,
    psk_y: PskConfig,
    phds: Vec<Phase>,
}

impl JointModulator {
    pub fn new(psk_x: PskConfig, psk_y: PskConfig, array: &ArrayConfig) -> Self {
        Self {
            psk_x,
            psk_y,
            phds: achievable_phds(array),
        }
    }

    pub fn psk_x(&self) -> &PskConfig {
        &self.psk_x
    }

    pub fn psk_y(&self) -> &PskConfig {
        &self.psk_y
    }

    pub fn modulate(&self, sym_x: usize, sym_y: usize) -> Result<TxAssignment> {
        let phi_x = psk_map(sym_x, &self.psk_x)?;
        let phi_y = psk_map(sym_y, &self.psk_y)?;
        let target = JointPhaseSymbol::new(phi_x, phi_y);
        let choice = select_from(target.phi_d, &self.phds);
        Ok(TxAssignment {
            element_index: choice.index,
            source_phase: phi_y,
            achieved_phi_d: choice.achieved_phd,
            achieved_phi_x: phi_y + choice.achieved_phd,
            quantization_error: choice.error,
        })
    }
}

/// Modulates one `(sym_x, sym_y)` pair onto the array.
pub fn modulate_joint(
    sym_x: usize,
    sym_y: usize,
    psk_x: &PskConfig,
    psk_y: &PskConfig,
    array: &ArrayConfig,
) -> Result<TxAssignment> {
    JointModulator::new(*psk_x, *psk_y, array).modulate(sym_x, sym_y)
}
