//! How much element-dependent phase leaks into a receiver off broadside.

use std::f64::consts::FRAC_PI_2;

use super::demod::coherent_demod_psk;
use crate::channel::{received_at, ChannelModel};
use crate::error::{Error, Result};
use crate::geometry::ArrayConfig;
use crate::modulation::{JointModulator, PskConfig};
use crate::phase::{circular_spread, Phase};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeakagePoint {
    pub theta_rad: f64,
    /// Shortest arc holding the received phase of every element.
    pub phase_spread_rad: f64,
    /// Unwrapped max-minus-min of the element path phases. Unlike the
    /// circular spread this keeps growing after the phases wrap the circle.
    pub path_phase_extent_rad: f64,
    /// Noiseless stream-y SER with PhD hopping driven by stream x.
    pub ser_y: f64,
}

/// Probes a receiver at each angle of `theta_grid` (radians off broadside).
///
/// `ser_y` is the exact average over all `M_x·M_y` equiprobable joint
/// symbols, which is what uniform random stream-x traffic converges to.
pub fn leakage_scan(
    array: &ArrayConfig,
    psk_x: PskConfig,
    psk_y: PskConfig,
    theta_grid: &[f64],
    model: &ChannelModel,
) -> Result<Vec<LeakagePoint>> {
    let wave = array.wave();
    let positions = array.positions();
    let modulator = JointModulator::new(psk_x, psk_y, array);
    theta_grid
        .iter()
        .map(|&theta| {
            if !(0.0..=FRAC_PI_2).contains(&theta) {
                return Err(Error::AngleOutOfRange(theta));
            }
            let raw: Vec<f64> = positions
                .iter()
                .map(|&x| model.path_phase(x, theta, &wave))
                .collect::<Result<_>>()?;
            let gains = positions
                .iter()
                .map(|&x| model.element_gain(x, theta, &wave))
                .collect::<Result<Vec<_>>>()?;
            let wrapped: Vec<Phase> = gains.iter().map(|g| g.phase).collect();
            let (lo, hi) = raw
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| (lo.min(p), hi.max(p)));

            let mut errors = 0u64;
            let total = (psk_x.order() * psk_y.order()) as u64;
            for sx in 0..psk_x.order() {
                for sy in 0..psk_y.order() {
                    let tx = modulator.modulate(sx, sy)?;
                    let g = gains[tx.element_index - 1];
                    let s = received_at(tx.source_phase, g, psk_y.symbol_energy(), None, 0);
                    errors += u64::from(coherent_demod_psk(s, &psk_y, Phase::ZERO).index != sy);
                }
            }
            Ok(LeakagePoint {
                theta_rad: theta,
                phase_spread_rad: circular_spread(&wrapped),
                path_phase_extent_rad: hi - lo,
                ser_y: errors as f64 / total as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::WaveConfig;
    use crate::modulation::achievable_phds;

    fn setup() -> (ArrayConfig, PskConfig, PskConfig) {
        (
            ArrayConfig::new(WaveConfig::new(1.0).unwrap(), 16).unwrap(),
            PskConfig::unit(4).unwrap(),
            PskConfig::unit(4).unwrap(),
        )
    }

    #[test]
    fn broadside_is_clean() {
        let (a, px, py) = setup();
        let p = leakage_scan(&a, px, py, &[0.0], &ChannelModel::PlaneWave).unwrap();
        assert_eq!(p[0].phase_spread_rad, 0.0);
        assert_eq!(p[0].path_phase_extent_rad, 0.0);
        assert_eq!(p[0].ser_y, 0.0);
    }

    #[test]
    fn axial_spread_equals_phd_spread() {
        let (a, px, py) = setup();
        let p = leakage_scan(&a, px, py, &[FRAC_PI_2], &ChannelModel::PlaneWave).unwrap();
        let want = circular_spread(&achievable_phds(&a));
        assert!((p[0].phase_spread_rad - want).abs() < 1e-12);
        assert!(p[0].ser_y > 0.0);
    }

    #[test]
    fn extent_is_monotone_and_spread_too_until_wrap() {
        let (a, px, py) = setup();
        let k = a.wave().wavenumber();
        let span = a.aperture_m() - a.spacing_m();
        let grid: Vec<f64> = (1..400).map(|i| i as f64 * FRAC_PI_2 / 400.0).collect();
        let pts = leakage_scan(&a, px, py, &grid, &ChannelModel::PlaneWave).unwrap();
        for (p, &theta) in pts.iter().zip(&grid) {
            assert!((p.path_phase_extent_rad - k * span * theta.sin()).abs() < 1e-12);
        }
        for w in pts.windows(2) {
            assert!(w[1].path_phase_extent_rad >= w[0].path_phase_extent_rad);
            if w[1].path_phase_extent_rad < std::f64::consts::PI {
                assert!(w[1].phase_spread_rad >= w[0].phase_spread_rad);
                assert!((w[1].phase_spread_rad - w[1].path_phase_extent_rad).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spherical_broadside_leakage_is_small() {
        let (a, px, py) = setup();
        let model = ChannelModel::Spherical {
            range_m: 100.0 * a.aperture_m(),
            normalize_amplitude: true,
        };
        let p = leakage_scan(&a, px, py, &[0.0], &model).unwrap();
        let bound = 1.05 * a.wave().wavenumber() * a.aperture_m() / (2.0 * 100.0);
        assert!(p[0].phase_spread_rad > 0.0 && p[0].phase_spread_rad <= bound);
        assert_eq!(p[0].ser_y, 0.0);
    }

    #[test]
    fn rejects_out_of_range_angle() {
        let (a, px, py) = setup();
        assert_eq!(
            leakage_scan(&a, px, py, &[-0.1], &ChannelModel::PlaneWave),
            Err(Error::AngleOutOfRange(-0.1))
        );
    }
}
