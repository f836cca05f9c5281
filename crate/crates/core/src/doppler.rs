//! Quasi-Doppler emulation by sequential element switching.
//!
//! Dwelling for `T` seconds on each element in turn moves the radiating point
//! by `d` every `T`, which toward the axial receiver looks like a transmitter
//! moving at `v_x = d/T`: a staircase phase ramp whose slope matches the
//! Doppler shift `v_x/λ`. After element `N` the sweep wraps back to element 1.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::channel::ChannelModel;
use crate::error::{Error, Result};
use crate::geometry::{ArrayConfig, WaveConfig};
use crate::modulation::phd_of_position;
use crate::phase::circular_distance;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    array: ArrayConfig,
    residence_time_s: f64,
    oversample: usize,
    repeats: usize,
}

impl SweepConfig {
    pub fn new(array: ArrayConfig, residence_time_s: f64, oversample: usize, repeats: usize) -> Result<Self> {
        if !(residence_time_s.is_finite() && residence_time_s > 0.0) {
            return Err(Error::InvalidResidenceTime(residence_time_s));
        }
        if oversample < 2 {
            return Err(Error::InvalidOversample(oversample));
        }
        if repeats == 0 {
            return Err(Error::InvalidRepeats);
        }
        Ok(Self {
            array,
            residence_time_s,
            oversample,
            repeats,
        })
    }

    pub fn array(&self) -> &ArrayConfig {
        &self.array
    }

    pub fn residence_time_s(&self) -> f64 {
        self.residence_time_s
    }

    pub fn oversample(&self) -> usize {
        self.oversample
    }

    pub fn repeats(&self) -> usize {
        self.repeats
    }

    /// `v_x = d/T`.
    pub fn emulated_speed(&self) -> f64 {
        self.array.spacing_m() / self.residence_time_s
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.oversample as f64 / self.residence_time_s
    }

    pub fn n_samples(&self) -> usize {
        self.array.n_elements() * self.oversample * self.repeats
    }

    /// True when the per-dwell phase step `K·d` reaches π, where the
    /// direction of the emulated motion becomes ambiguous.
    pub fn is_aliased(&self) -> bool {
        convergence_gap(&self.array) >= PI
    }
}

/// Sampled complex baseband series.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepWaveform {
    pub samples: Vec<Complex64>,
    pub sample_rate_hz: f64,
    pub emulated_speed_m_per_s: f64,
    pub wavelength_m: f64,
    /// Set when the generating sweep violates `K·d < π`.
    pub aliased: bool,
}

impl SweepWaveform {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Doppler shift `v_x/λ` this waveform is meant to carry.
    pub fn expected_shift_hz(&self) -> f64 {
        self.emulated_speed_m_per_s / self.wavelength_m
    }
}

/// Staircase waveform seen by the axial receiver: dwell `m` carries
/// `e^{jK·x_{(m mod N)+1}}`.
pub fn stepped_sweep_waveform(cfg: &SweepConfig) -> Result<SweepWaveform> {
    let wave = cfg.array.wave();
    let dwell: Vec<Complex64> = cfg
        .array
        .positions()
        .into_iter()
        .map(|x| phd_of_position(x, &wave).map(|p| p.to_unit()))
        .collect::<Result<_>>()?;
    Ok(expand(cfg, &dwell))
}

/// The same sweep observed by a receiver `theta_rad` off broadside.
pub fn sweep_at_angle(cfg: &SweepConfig, theta_rad: f64, model: &ChannelModel) -> Result<SweepWaveform> {
    let wave = cfg.array.wave();
    let dwell: Vec<Complex64> = cfg
        .array
        .positions()
        .into_iter()
        .map(|x| model.element_gain(x, theta_rad, &wave).map(|g| g.to_complex()))
        .collect::<Result<_>>()?;
    let mut w = expand(cfg, &dwell);
    let axial = (theta_rad.abs() - FRAC_PI_2).abs() < f64::EPSILON;
    w.emulated_speed_m_per_s *= if axial { 1.0 } else { theta_rad.sin() };
    Ok(w)
}

fn expand(cfg: &SweepConfig, dwell: &[Complex64]) -> SweepWaveform {
    let samples = dwell
        .iter()
        .cycle()
        .take(dwell.len() * cfg.repeats)
        .flat_map(|&s| std::iter::repeat_n(s, cfg.oversample))
        .collect();
    SweepWaveform {
        samples,
        sample_rate_hz: cfg.sample_rate_hz(),
        emulated_speed_m_per_s: cfg.emulated_speed(),
        wavelength_m: cfg.array.wave().wavelength_m(),
        aliased: cfg.is_aliased(),
    }
}

/// Continuous-motion reference `e^{jK·v_x·i/F_s}` for `i = 0..n_samples`.
pub fn ideal_doppler_waveform(
    v_x: f64,
    wave: &WaveConfig,
    sample_rate_hz: f64,
    n_samples: usize,
) -> Result<SweepWaveform> {
    if !v_x.is_finite() {
        return Err(Error::NonFinite(v_x));
    }
    if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
        return Err(Error::InvalidSampleRate(sample_rate_hz));
    }
    let shift_hz = v_x / wave.wavelength_m();
    if sample_rate_hz <= 2.0 * shift_hz.abs() {
        return Err(Error::NyquistViolation {
            sample_rate_hz,
            shift_hz,
        });
    }
    let step = wave.wavenumber() * v_x / sample_rate_hz;
    let samples = (0..n_samples)
        .map(|i| Complex64::from_polar(1.0, step * i as f64))
        .collect();
    Ok(SweepWaveform {
        samples,
        sample_rate_hz,
        emulated_speed_m_per_s: v_x,
        wavelength_m: wave.wavelength_m(),
        aliased: false,
    })
}

/// Largest per-sample phase discrepancy between a stepped sweep and the
/// continuous motion it emulates: `K·d`.
pub fn convergence_gap(array: &ArrayConfig) -> f64 {
    array.wave().wavenumber() * array.spacing_m()
}

/// Largest circular phase distance between two equally long series.
pub fn phase_linf_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x * y.conj();
            circular_distance(d.im.atan2(d.re), 0.0)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    #[default]
    Rectangular,
    Hann,
}

impl Window {
    fn coefficient(self, i: usize, len: usize) -> f64 {
        match self {
            Window::Rectangular => 1.0,
            Window::Hann if len < 2 => 1.0,
            Window::Hann => 0.5 - 0.5 * (TAU * i as f64 / (len - 1) as f64).cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerEstimate {
    pub shift_hz: f64,
    pub bin_width_hz: f64,
    pub expected_hz: f64,
}

impl DopplerEstimate {
    pub fn error_hz(&self) -> f64 {
        (self.shift_hz - self.expected_hz).abs()
    }

    pub fn error_bins(&self) -> f64 {
        self.error_hz() / self.bin_width_hz
    }
}

/// Zero-padded periodogram, `|X[k]|²` for `k = 0..fft_length`.
pub fn periodogram(w: &SweepWaveform, fft_length: usize, window: Window) -> Result<Vec<f64>> {
    if w.is_empty() {
        return Err(Error::EmptyWaveform);
    }
    if fft_length < w.len() {
        return Err(Error::FftTooShort {
            fft_length,
            samples: w.len(),
        });
    }
    let len = w.len();
    let mut buf: Vec<Complex64> = w
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| s * window.coefficient(i, len))
        .collect();
    buf.resize(fft_length, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(fft_length).process(&mut buf);
    Ok(buf.iter().map(|z| z.norm_sqr()).collect())
}

/// Signed frequency of bin `k`, in `(-F_s/2, F_s/2]`.
pub fn bin_frequency(k: usize, fft_length: usize, sample_rate_hz: f64) -> f64 {
    let signed = if 2 * k <= fft_length {
        k as f64
    } else {
        k as f64 - fft_length as f64
    };
    signed * sample_rate_hz / fft_length as f64
}

/// Periodogram-peak estimate of the Doppler shift, rectangular window.
pub fn estimate_doppler_shift(w: &SweepWaveform, fft_length: usize) -> Result<DopplerEstimate> {
    estimate_doppler_shift_windowed(w, fft_length, Window::Rectangular)
}

pub fn estimate_doppler_shift_windowed(
    w: &SweepWaveform,
    fft_length: usize,
    window: Window,
) -> Result<DopplerEstimate> {
    let power = periodogram(w, fft_length, window)?;
    // first maximum wins
    let peak = power
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (k, &p)| if p > best.1 { (k, p) } else { best })
        .0;
    Ok(DopplerEstimate {
        shift_hz: bin_frequency(peak, fft_length, w.sample_rate_hz),
        bin_width_hz: w.sample_rate_hz / fft_length as f64,
        expected_hz: w.expected_shift_hz(),
    })
}
