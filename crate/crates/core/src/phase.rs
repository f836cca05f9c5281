//! Canonical phase arithmetic.
//!
//! Every phase quantity in the crate lives on the branch `[0, 2π)`. Sums and
//! differences of [`Phase`] values are re-wrapped, so modular identities such
//! as `φ_y + φ_D ≡ φ_x` hold without branch bookkeeping at call sites.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A phase in radians, always in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Phase(f64);

impl Phase {
    pub const ZERO: Phase = Phase(0.0);

    /// Wraps a finite angle onto `[0, 2π)`.
    pub fn new(radians: f64) -> Result<Self> {
        wrap_phase(radians)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `e^{jφ}`.
    pub fn to_unit(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }

    /// Argument of a complex sample. The zero sample maps to phase 0.
    pub fn of_complex(z: Complex64) -> Self {
        wrap_finite(z.im.atan2(z.re))
    }

    /// Shortest angular distance to `other`, in `[0, π]`.
    pub fn distance(self, other: Phase) -> f64 {
        circular_distance(self.0, other.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        wrap_finite(self.0 + rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        wrap_finite(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        wrap_finite(-self.0)
    }
}

/// Reduces `radians` modulo 2π onto `[0, 2π)`.
pub fn wrap_phase(radians: f64) -> Result<Phase> {
    if !radians.is_finite() {
        return Err(Error::NonFinite(radians));
    }
    Ok(wrap_finite(radians))
}

// Caller guarantees `radians` is finite.
pub(crate) fn wrap_finite(radians: f64) -> Phase {
    let r = radians.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly 2π
    if r >= TAU {
        Phase(0.0)
    } else {
        Phase(r)
    }
}

/// Shortest angular distance between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        TAU - d
    } else {
        d
    }
}

/// Length of the shortest arc that contains every angle in `phases`.
///
/// Equals `2π` minus the largest gap between circularly adjacent angles; zero
/// for an empty or single-valued set.
pub fn circular_spread(phases: &[Phase]) -> f64 {
    if phases.len() < 2 {
        return 0.0;
    }
    let mut sorted: Vec<f64> = phases.iter().map(|p| p.0).collect();
    sorted.sort_by(f64::total_cmp);
    let wrap_gap = sorted[0] + TAU - sorted[sorted.len() - 1];
    let max_gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(wrap_gap, f64::max);
    (TAU - max_gap).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wrap_examples() {
        assert_eq!(wrap_phase(TAU).unwrap().radians(), 0.0);
        assert!((wrap_phase(-PI / 2.0).unwrap().radians() - 1.5 * PI).abs() < 1e-15);
        assert!((wrap_phase(5.0 * PI).unwrap().radians() - PI).abs() < 1e-14);
        assert_eq!(wrap_phase(-1e-18).unwrap().radians(), 0.0);
    }

    #[test]
    fn wrap_rejects_non_finite() {
        assert!(wrap_phase(f64::NAN).is_err());
        assert!(wrap_phase(f64::INFINITY).is_err());
        assert!(wrap_phase(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn distance_is_shortest_arc() {
        assert!((circular_distance(0.1, TAU - 0.1) - 0.2).abs() < 1e-15);
        assert!((circular_distance(0.0, PI) - PI).abs() < 1e-15);
        assert_eq!(circular_distance(1.0, 1.0), 0.0);
    }

    #[test]
    fn spread_of_simple_sets() {
        let p = |x: f64| Phase::new(x).unwrap();
        assert_eq!(circular_spread(&[]), 0.0);
        assert_eq!(circular_spread(&[p(1.0), p(1.0)]), 0.0);
        // straddles the branch cut
        assert!((circular_spread(&[p(-0.2), p(0.3)]) - 0.5).abs() < 1e-12);
        let grid: Vec<Phase> = (0..8).map(|k| p(k as f64 * PI / 4.0)).collect();
        assert!((circular_spread(&grid) - 1.75 * PI).abs() < 1e-12);
    }

    #[test]
    fn complex_roundtrip() {
        let ph = Phase::new(2.5).unwrap();
        assert!(Phase::of_complex(ph.to_unit()).distance(ph) < 1e-15);
        assert_eq!(Phase::of_complex(Complex64::new(0.0, 0.0)), Phase::ZERO);
    }

    #[test]
    fn wrap_is_idempotent_over_many_draws() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let x: f64 = rng.random_range(-100.0..100.0);
            let once = wrap_phase(x).unwrap();
            assert!(once.radians() >= 0.0 && once.radians() < TAU);
            assert_eq!(wrap_phase(once.radians()).unwrap(), once);
        }
    }

    proptest! {
        #[test]
        fn add_sub_inverse(a in -50.0f64..50.0, b in -50.0f64..50.0) {
            let pa = Phase::new(a).unwrap();
            let pb = Phase::new(b).unwrap();
            prop_assert!(((pa + pb) - pb).distance(pa) < 1e-12);
        }

        #[test]
        fn distance_bounded(a in -50.0f64..50.0, b in -50.0f64..50.0) {
            let d = circular_distance(a, b);
            prop_assert!((0.0..=PI).contains(&d));
        }
    }
}
