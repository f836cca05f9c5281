use num_complex::Complex64;

use crate::modulation::{psk_map, PskConfig, TIE_TOLERANCE};
use crate::phase::Phase;

/// Hard decision of a coherent PSK receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub index: usize,
    /// The sample was exactly zero and carried no phase; `index` is 0.
    pub degenerate: bool,
}

/// Nearest constellation point to `arg(sample) - reference_phase`; ties go
/// to the smaller index.
pub fn coherent_demod_psk(sample: Complex64, cfg: &PskConfig, reference_phase: Phase) -> Decision {
    if sample.re == 0.0 && sample.im == 0.0 {
        return Decision {
            index: 0,
            degenerate: true,
        };
    }
    let rotated = Phase::of_complex(sample) - reference_phase;
    let mut best = (0, f64::INFINITY);
    for i in 0..cfg.order() {
        let point = psk_map(i, cfg).expect("index below order");
        let d = point.distance(rotated);
        if d < best.1 - TIE_TOLERANCE {
            best = (i, d);
        }
    }
    Decision {
        index: best.0,
        degenerate: false,
    }
}
