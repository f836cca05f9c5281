use std::f64::consts::{PI, SQRT_2};

/// Gaussian tail probability `Q(x) = P(Z > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

fn linear_snr(es_over_n0_db: f64) -> f64 {
    10f64.powf(es_over_n0_db / 10.0)
}

/// Exact symbol error rate of coherent M-PSK on AWGN.
///
/// BPSK and QPSK use their closed forms; higher orders integrate Craig's
/// expression `(1/π)∫₀^{(M-1)π/M} exp(-γ·sin²(π/M)/sin²θ) dθ`.
pub fn theoretical_psk_ser(order: usize, es_over_n0_db: f64) -> f64 {
    assert!(order >= 2, "PSK order must be at least 2");
    if es_over_n0_db == f64::INFINITY {
        return 0.0;
    }
    let gamma = linear_snr(es_over_n0_db);
    let p = match order {
        2 => q_function((2.0 * gamma).sqrt()),
        4 => {
            let q = q_function(gamma.sqrt());
            2.0 * q - q * q
        }
        m => craig_integral(m, gamma),
    };
    p.clamp(0.0, 1.0)
}

/// The high-SNR approximation `2Q(√(2γ)·sin(π/M))` (exact `Q(√(2γ))` for
/// BPSK). It overstates the error rate at low SNR.
pub fn psk_ser_approx(order: usize, es_over_n0_db: f64) -> f64 {
    assert!(order >= 2, "PSK order must be at least 2");
    let arg = (2.0 * linear_snr(es_over_n0_db)).sqrt();
    let p = if order == 2 {
        q_function(arg)
    } else {
        2.0 * q_function(arg * (PI / order as f64).sin())
    };
    p.clamp(0.0, 1.0)
}

fn craig_integral(order: usize, gamma: f64) -> f64 {
    // integrand and all its derivatives vanish at θ = 0, so composite
    // Simpson converges quickly
    const INTERVALS: usize = 4096;
    let s2 = (PI / order as f64).sin().powi(2);
    let upper = PI * (order - 1) as f64 / order as f64;
    let h = upper / INTERVALS as f64;
    let f = |theta: f64| {
        let s = theta.sin();
        if s == 0.0 {
            0.0
        } else {
            (-gamma * s2 / (s * s)).exp()
        }
    };
    let mut sum = f(0.0) + f(upper);
    for i in 1..INTERVALS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    sum * h / 3.0 / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: Q(x) = ∫ₓ^∞ φ(t) dt by Simpson on [x, x + 40].
    fn q_quadrature(x: f64) -> f64 {
        let n = 200_000;
        let h = 40.0 / n as f64;
        let pdf = |t: f64| (-t * t / 2.0).exp() / (2.0 * PI).sqrt();
        let mut s = pdf(x) + pdf(x + 40.0);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * pdf(x + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn q_function_matches_quadrature() {
        for x in [0.0, 0.5, 1.0, 2.0_f64.sqrt(), 3.0, 10f64.sqrt(), 5.0] {
            let want = q_quadrature(x);
            assert!((q_function(x) - want).abs() <= 1e-12 + 1e-9 * want, "x = {x}");
        }
    }

    #[test]
    fn frozen_examples() {
        // Q(√2) and 2Q(√10) evaluated with q_quadrature
        assert!((theoretical_psk_ser(2, 0.0) - 0.078_649_603_525_142).abs() < 1e-12);
        assert!((psk_ser_approx(4, 10.0) - 1.565_402_258e-3).abs() < 1e-11);
        // exact QPSK subtracts Q(√10)²
        let q = q_quadrature(10f64.sqrt());
        assert!((theoretical_psk_ser(4, 10.0) - (2.0 * q - q * q)).abs() < 1e-12);
        assert_eq!(theoretical_psk_ser(2, f64::INFINITY), 0.0);
        assert!(theoretical_psk_ser(2, 60.0) < 1e-100);
    }

    #[test]
    fn craig_form_agrees_with_closed_forms() {
        for db in [-5.0, 0.0, 4.0, 8.0, 12.0] {
            let g = linear_snr(db);
            assert!((craig_integral(2, g) - theoretical_psk_ser(2, db)).abs() < 1e-10, "M=2 {db}");
            assert!((craig_integral(4, g) - theoretical_psk_ser(4, db)).abs() < 1e-10, "M=4 {db}");
        }
    }

    #[test]
    fn approximation_is_tight_at_high_snr_only() {
        for m in [4, 8, 16] {
            let hi = (psk_ser_approx(m, 20.0) - theoretical_psk_ser(m, 20.0)).abs();
            assert!(hi <= 1e-6 * theoretical_psk_ser(m, 20.0).max(1e-300) + 1e-30);
            assert!(psk_ser_approx(m, 0.0) > theoretical_psk_ser(m, 0.0));
        }
    }

    #[test]
    fn ser_is_monotone_and_bounded() {
        for m in [2, 4, 8, 16, 64] {
            let mut prev = 1.0;
            for k in -20..=40 {
                let p = theoretical_psk_ser(m, k as f64 * 0.5);
                assert!((0.0..=1.0).contains(&p));
                assert!(p <= prev + 1e-15);
                prev = p;
            }
            // below the uniform-guess ceiling (M-1)/M
            assert!(theoretical_psk_ser(m, -30.0) < (m - 1) as f64 / m as f64);
        }
    }
}
