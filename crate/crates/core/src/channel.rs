//! Line-of-sight channels and thermal noise.
//!
//! Two propagation models are provided. The plane-wave model is the far-field
//! idealization: an element at `x` contributes phase `K·x·sin θ` toward a
//! receiver `θ` off broadside, so broadside sees no element dependence at all.
//! The spherical model evaluates the exact path length to a receiver at a
//! finite range and measures how far the idealization holds. Both report
//! phases relative to the origin-to-receiver path.

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{ReceiverPosition, WaveConfig};
use crate::modulation::TxAssignment;
use crate::phase::{wrap_finite, Phase};
use crate::rng::{self, Domain};

/// Complex gain of one line-of-sight path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGain {
    pub amplitude: f64,
    pub phase: Phase,
}

impl ChannelGain {
    pub const UNIT: ChannelGain = ChannelGain {
        amplitude: 1.0,
        phase: Phase::ZERO,
    };

    pub fn new(amplitude: f64, phase: Phase) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::NonFinite(amplitude));
        }
        if amplitude < 0.0 {
            return Err(Error::InvalidRange(amplitude));
        }
        Ok(Self { amplitude, phase })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.amplitude, self.phase.radians())
    }
}

/// Far-field gain of an element at `x_element` toward a receiver `theta_rad`
/// off broadside (measured from the y-axis toward +x).
pub fn plane_wave_gain(x_element: f64, theta_rad: f64, wave: &WaveConfig) -> Result<ChannelGain> {
    if !x_element.is_finite() {
        return Err(Error::NonFinite(x_element));
    }
    if !(theta_rad.abs() <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::AngleOutOfRange(theta_rad));
    }
    Ok(ChannelGain {
        amplitude: 1.0,
        phase: wrap_finite(wave.wavenumber() * x_element * theta_rad.sin()),
    })
}

/// Exact spherical-wave gain from an element at `(x_element, 0)` to `rx`.
///
/// Phase is `-K·(r - r0)` with `r0` the origin-to-receiver distance. The
/// amplitude is 1 when `normalize_amplitude` is set, else `r0 / r`.
pub fn spherical_gain(
    x_element: f64,
    rx: &ReceiverPosition,
    wave: &WaveConfig,
    normalize_amplitude: bool,
) -> Result<ChannelGain> {
    if !x_element.is_finite() {
        return Err(Error::NonFinite(x_element));
    }
    let dx = rx.x_m() - x_element;
    let r = dx.hypot(rx.y_m());
    if r == 0.0 {
        return Err(Error::ZeroDistance);
    }
    let r0 = rx.range_m();
    // r - r0 = (r² - r0²)/(r + r0), free of cancellation at long range
    let excess = x_element * (x_element - 2.0 * rx.x_m()) / (r + r0);
    Ok(ChannelGain {
        amplitude: if normalize_amplitude { 1.0 } else { r0 / r },
        phase: wrap_finite(-wave.wavenumber() * excess),
    })
}

/// Propagation model used when a link is built from element positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    PlaneWave,
    Spherical {
        range_m: f64,
        normalize_amplitude: bool,
    },
}

impl ChannelModel {
    /// Unwrapped path phase from an element to a receiver `theta_rad` off
    /// broadside, relative to the origin path.
    pub fn path_phase(&self, x_element: f64, theta_rad: f64, wave: &WaveConfig) -> Result<f64> {
        if !x_element.is_finite() {
            return Err(Error::NonFinite(x_element));
        }
        if !(theta_rad.abs() <= std::f64::consts::FRAC_PI_2) {
            return Err(Error::AngleOutOfRange(theta_rad));
        }
        match *self {
            ChannelModel::PlaneWave => Ok(wave.wavenumber() * x_element * theta_rad.sin()),
            ChannelModel::Spherical { range_m, .. } => {
                let rx = ReceiverPosition::at_angle(range_m, theta_rad)?;
                let r = (rx.x_m() - x_element).hypot(rx.y_m());
                if r == 0.0 {
                    return Err(Error::ZeroDistance);
                }
                Ok(-wave.wavenumber() * x_element * (x_element - 2.0 * rx.x_m()) / (r + rx.range_m()))
            }
        }
    }

    /// Gain from an element to a receiver `theta_rad` off broadside.
    pub fn element_gain(&self, x_element: f64, theta_rad: f64, wave: &WaveConfig) -> Result<ChannelGain> {
        match *self {
            ChannelModel::PlaneWave => plane_wave_gain(x_element, theta_rad, wave),
            ChannelModel::Spherical {
                range_m,
                normalize_amplitude,
            } => {
                if !(theta_rad.abs() <= std::f64::consts::FRAC_PI_2) {
                    return Err(Error::AngleOutOfRange(theta_rad));
                }
                let rx = ReceiverPosition::at_angle(range_m, theta_rad)?;
                spherical_gain(x_element, &rx, wave, normalize_amplitude)
            }
        }
    }
}

/// Additive white Gaussian noise at a fixed per-symbol SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    /// `+∞` disables noise.
    pub es_over_n0_db: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(es_over_n0_db: f64, seed: u64) -> Result<Self> {
        if es_over_n0_db.is_nan() || es_over_n0_db == f64::NEG_INFINITY {
            return Err(Error::NonFinite(es_over_n0_db));
        }
        Ok(Self {
            es_over_n0_db,
            seed,
        })
    }

    pub fn disabled(seed: u64) -> Self {
        Self {
            es_over_n0_db: f64::INFINITY,
            seed,
        }
    }

    pub fn is_disabled(&self) -> bool {
        self.es_over_n0_db == f64::INFINITY
    }

    /// Total complex noise variance for symbol energy `es`.
    pub fn n0(&self, es: f64) -> f64 {
        if self.is_disabled() {
            0.0
        } else {
            es / 10f64.powf(self.es_over_n0_db / 10.0)
        }
    }

    /// The noise sample for `draw_index`.
    pub fn draw(&self, es: f64, draw_index: u64) -> Complex64 {
        if self.is_disabled() {
            return Complex64::new(0.0, 0.0);
        }
        let sigma = (self.n0(es) / 2.0).sqrt();
        let mut rng = rng::stream(self.seed, Domain::Noise, draw_index);
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(sigma * re, sigma * im)
    }
}

/// `sample + n`, with `n` fully determined by `(noise.seed, draw_index)`.
pub fn add_awgn(sample: Complex64, es: f64, noise: &NoiseModel, draw_index: u64) -> Complex64 {
    sample + noise.draw(es, draw_index)
}

/// Baseband samples seen by the axial and broadside receivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RxSamplePair {
    pub at_rx: Complex64,
    pub at_ry: Complex64,
}

/// Noiseless-or-noisy sample `a·√Es·e^{j(φ + φ_ch)} + n`.
pub fn received_at(
    phase: Phase,
    gain: ChannelGain,
    es: f64,
    noise: Option<&NoiseModel>,
    draw_index: u64,
) -> Complex64 {
    let clean = Complex64::from_polar(gain.amplitude * es.sqrt(), (phase + gain.phase).radians());
    match noise {
        Some(n) => add_awgn(clean, es, n, draw_index),
        None => clean,
    }
}

/// Received samples for one transmitted symbol.
///
/// `gain_x` and `gain_y` are the common (element-independent) responses of
/// the two links; the element-dependent axial phase is already inside
/// `assignment.achieved_phi_x`. The two receivers draw noise at indices
/// `2·draw_index` and `2·draw_index + 1`.
pub fn received_baseband(
    assignment: &TxAssignment,
    es: f64,
    gain_x: ChannelGain,
    gain_y: ChannelGain,
    noise: Option<&NoiseModel>,
    draw_index: u64,
) -> RxSamplePair {
    RxSamplePair {
        at_rx: received_at(assignment.achieved_phi_x, gain_x, es, noise, 2 * draw_index),
        at_ry: received_at(assignment.source_phase, gain_y, es, noise, 2 * draw_index + 1),
    }
}
