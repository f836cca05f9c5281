use std::f64::consts::PI;

use qdmod_core::analysis::{exhaustive_noiseless, quantization_report, ser_sweep, SerSweepConfig, Targets};
use qdmod_core::channel::ChannelModel;
use qdmod_core::modulation::{modulate_joint, psk_map, required_phd, PskConfig};
use qdmod_core::{wrap_phase, ArrayConfig, Phase, WaveConfig};

fn array(n: usize) -> ArrayConfig {
    ArrayConfig::new(WaveConfig::new(1.0).unwrap(), n).unwrap()
}

#[test]
fn zero_interference_whenever_quantization_fits_the_decision_region() {
    let mut checked = 0;
    for n in [4usize, 6, 8, 12, 16, 17, 24, 32, 33, 64] {
        for mx in [2usize, 4, 8, 16] {
            for my in [2usize, 4, 8, 16] {
                let px = PskConfig::unit(mx).unwrap();
                let py = PskConfig::unit(my).unwrap();
                let a = array(n);
                let worst = (0..mx)
                    .flat_map(|sx| (0..my).map(move |sy| (sx, sy)))
                    .map(|(sx, sy)| modulate_joint(sx, sy, &px, &py, &a).unwrap().quantization_error)
                    .fold(0.0, f64::max);
                let c = exhaustive_noiseless(&a, px, py, &ChannelModel::PlaneWave).unwrap();
                assert_eq!(c.n_symbols, (mx * my) as u64);
                assert_eq!(c.errors_ry, 0, "N={n} Mx={mx} My={my}");
                if worst < px.half_sector() - 1e-9 {
                    assert_eq!(c.errors_rx, 0, "N={n} Mx={mx} My={my}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn wraparound_branch_matches_modular_difference() {
    // φ_D = φ_a + φ_x with φ_y + φ_a = 2π
    let steps = 500;
    for i in 0..steps {
        for j in 0..steps {
            let phi_x = Phase::new(i as f64 * 2.0 * PI / steps as f64).unwrap();
            let phi_y = Phase::new(j as f64 * 2.0 * PI / steps as f64 + 1e-3).unwrap();
            let phi_a = 2.0 * PI - phi_y.radians();
            let branch = wrap_phase(phi_a + phi_x.radians()).unwrap();
            assert!(branch.distance(required_phd(phi_x, phi_y)) <= 1e-12);
        }
    }
}

#[test]
fn far_spherical_links_reproduce_the_plane_wave_result() {
    let a = array(16);
    let q = PskConfig::unit(4).unwrap();
    let model = ChannelModel::Spherical {
        range_m: 1e6,
        normalize_amplitude: false,
    };
    let c = exhaustive_noiseless(&a, q, q, &model).unwrap();
    assert_eq!((c.errors_rx, c.errors_ry), (0, 0));
}

#[test]
fn near_broadside_receiver_sees_fresnel_leakage_only() {
    // QPSK pairs only ever select elements 2, 4, 6, 8 (x ≤ λ); at a 3λ
    // broadside range the element at x = λ lags by 2π(√10 - 3) ≈ 1.02 rad,
    // beyond the π/4 decision half-width
    let a = array(16);
    let q = PskConfig::unit(4).unwrap();
    let near = ChannelModel::Spherical {
        range_m: 1.5 * a.aperture_m(),
        normalize_amplitude: true,
    };
    let c = exhaustive_noiseless(&a, q, q, &near).unwrap();
    assert!(c.errors_ry > 0);
}

#[test]
fn quantized_grid_penalizes_only_the_axial_stream() {
    let a = array(12);
    let r = quantization_report(&a, &Targets::Psk(4)).unwrap();
    assert!((r.max_error_rad - PI / 6.0).abs() < 1e-12);
    let cfg = SerSweepConfig {
        array: a,
        psk_x: PskConfig::unit(4).unwrap(),
        psk_y: PskConfig::unit(4).unwrap(),
        snr_grid_db: vec![0.0, 4.0, 8.0, 12.0, f64::INFINITY],
        n_symbols: 50_000,
        seed: 7,
        model: ChannelModel::PlaneWave,
    };
    let pts = ser_sweep(&cfg).unwrap();
    for p in &pts {
        assert!(p.ser_rx >= p.ser_ry, "{p:?}");
    }
    let clean = pts.last().unwrap();
    assert_eq!((clean.errors_rx, clean.errors_ry), (0, 0));
}

#[test]
fn source_phase_is_the_broadside_symbol() {
    let a = array(16);
    let px = PskConfig::unit(16).unwrap();
    let py = PskConfig::unit(8).unwrap();
    for sx in 0..16 {
        for sy in 0..8 {
            let t = modulate_joint(sx, sy, &px, &py, &a).unwrap();
            assert_eq!(t.source_phase, psk_map(sy, &py).unwrap());
            assert!((1..=16).contains(&t.element_index));
        }
    }
}
