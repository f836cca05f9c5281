//! Carrier and array geometry.
//!
//! The array lies on the x-axis. Element `n` (1-based) sits at `x_n = n·d`
//! with `d = aperture / N`, so positions fill `(0, aperture]` and no element
//! sits at the origin.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// `K = 2π/λ` in rad/m.
pub fn wavenumber(wavelength_m: f64) -> Result<f64> {
    if !(wavelength_m.is_finite() && wavelength_m > 0.0) {
        return Err(Error::InvalidWavelength(wavelength_m));
    }
    Ok(TAU / wavelength_m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveConfig {
    wavelength_m: f64,
    wavenumber_rad_per_m: f64,
}

impl WaveConfig {
    pub fn new(wavelength_m: f64) -> Result<Self> {
        let k = wavenumber(wavelength_m)?;
        Ok(Self {
            wavelength_m,
            wavenumber_rad_per_m: k,
        })
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber_rad_per_m
    }
}

/// Uniform linear array of switchable elements.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    wave: WaveConfig,
    n_elements: usize,
    aperture_m: f64,
    spacing_m: f64,
}

impl ArrayConfig {
    /// Array with the default aperture of two wavelengths.
    pub fn new(wave: WaveConfig, n_elements: usize) -> Result<Self> {
        Self::with_aperture(wave, n_elements, 2.0 * wave.wavelength_m())
    }

    pub fn with_aperture(wave: WaveConfig, n_elements: usize, aperture_m: f64) -> Result<Self> {
        if n_elements == 0 {
            return Err(Error::NoElements);
        }
        if !(aperture_m.is_finite() && aperture_m > 0.0) {
            return Err(Error::InvalidAperture(aperture_m));
        }
        Ok(Self {
            wave,
            n_elements,
            aperture_m,
            spacing_m: aperture_m / n_elements as f64,
        })
    }

    pub fn wave(&self) -> WaveConfig {
        self.wave
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn aperture_m(&self) -> f64 {
        self.aperture_m
    }

    pub fn spacing_m(&self) -> f64 {
        self.spacing_m
    }

    /// Position of element `index` (1-based). Panics on an out-of-range index.
    pub fn position(&self, index: usize) -> f64 {
        assert!(
            (1..=self.n_elements).contains(&index),
            "element index {index} outside 1..={}",
            self.n_elements
        );
        index as f64 * self.spacing_m
    }

    pub fn positions(&self) -> Vec<f64> {
        element_positions(self)
    }
}

/// `[n·d for n in 1..=N]`.
pub fn element_positions(cfg: &ArrayConfig) -> Vec<f64> {
    (1..=cfg.n_elements).map(|n| cfg.position(n)).collect()
}

/// Receiver location in the array plane, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverPosition {
    x_m: f64,
    y_m: f64,
}

impl ReceiverPosition {
    pub fn new(x_m: f64, y_m: f64) -> Result<Self> {
        for v in [x_m, y_m] {
            if !v.is_finite() {
                return Err(Error::NonFinite(v));
            }
        }
        if x_m == 0.0 && y_m == 0.0 {
            return Err(Error::ZeroDistance);
        }
        Ok(Self { x_m, y_m })
    }

    /// Point at `range_m` from the origin, `theta_rad` off broadside (the
    /// y-axis) toward the array axis.
    pub fn at_angle(range_m: f64, theta_rad: f64) -> Result<Self> {
        if !(range_m.is_finite() && range_m > 0.0) {
            return Err(Error::InvalidRange(range_m));
        }
        if !theta_rad.is_finite() {
            return Err(Error::NonFinite(theta_rad));
        }
        Self::new(range_m * theta_rad.sin(), range_m * theta_rad.cos())
    }

    pub fn x_m(&self) -> f64 {
        self.x_m
    }

    pub fn y_m(&self) -> f64 {
        self.y_m
    }

    pub fn range_m(&self) -> f64 {
        self.x_m.hypot(self.y_m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wavenumber_examples() {
        assert!((wavenumber(1.0).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((wavenumber(0.5).unwrap() - 4.0 * PI).abs() < 1e-15);
        assert!((wavenumber(0.1).unwrap() - 20.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn wavenumber_rejects_bad_wavelength() {
        assert_eq!(wavenumber(0.0), Err(Error::InvalidWavelength(0.0)));
        assert!(wavenumber(-1.0).is_err());
        assert!(wavenumber(f64::NAN).is_err());
    }

    #[test]
    fn wavenumber_times_wavelength_over_six_decades() {
        for exp in -30..=30 {
            let lambda = 10f64.powf(exp as f64 / 10.0);
            let k = wavenumber(lambda).unwrap();
            assert!((k * lambda - TAU).abs() / TAU < 1e-12, "lambda = {lambda}");
        }
    }

    #[test]
    fn position_examples() {
        let wave = WaveConfig::new(1.0).unwrap();
        let a = ArrayConfig::new(wave, 4).unwrap();
        assert_eq!(a.positions(), vec![0.5, 1.0, 1.5, 2.0]);
        let a = ArrayConfig::new(wave, 1).unwrap();
        assert_eq!(a.positions(), vec![2.0]);
        let a = ArrayConfig::with_aperture(WaveConfig::new(0.1).unwrap(), 16, 0.2).unwrap();
        assert!((a.positions()[0] - 0.0125).abs() < 1e-15);
    }

    #[test]
    fn default_aperture_is_two_wavelengths() {
        let a = ArrayConfig::new(WaveConfig::new(0.3).unwrap(), 8).unwrap();
        assert!((a.aperture_m() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_array() {
        let wave = WaveConfig::new(1.0).unwrap();
        assert_eq!(ArrayConfig::new(wave, 0), Err(Error::NoElements));
        assert!(ArrayConfig::with_aperture(wave, 4, 0.0).is_err());
        assert!(ArrayConfig::with_aperture(wave, 4, f64::INFINITY).is_err());
    }

    #[test]
    fn positions_span_aperture() {
        for n in 1..200 {
            for &ap in &[0.01, 1.0, 2.0, 37.5] {
                let a = ArrayConfig::with_aperture(WaveConfig::new(1.0).unwrap(), n, ap).unwrap();
                let p = a.positions();
                assert_eq!(p.len(), n);
                assert!((p[n - 1] - ap).abs() / ap < 1e-12);
                assert!((p[0] - ap / n as f64).abs() / ap < 1e-12);
                assert!(p.iter().all(|&x| x > 0.0 && x <= ap * (1.0 + 1e-12)));
                for w in p.windows(2) {
                    assert!(w[1] > w[0]);
                    assert!(((w[1] - w[0]) - a.spacing_m()).abs() < 1e-12 * ap);
                }
            }
        }
    }

    #[test]
    fn receiver_validation() {
        assert_eq!(ReceiverPosition::new(0.0, 0.0), Err(Error::ZeroDistance));
        let r = ReceiverPosition::at_angle(10.0, 0.0).unwrap();
        assert_eq!((r.x_m(), r.y_m()), (0.0, 10.0));
        assert!(ReceiverPosition::at_angle(-1.0, 0.0).is_err());
    }
}
