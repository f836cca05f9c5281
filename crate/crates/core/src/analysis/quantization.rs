//! Statistics of the PhD quantization imposed by the element grid.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::ArrayConfig;
use crate::modulation::{achievable_phds, select_from, PskConfig, TIE_TOLERANCE};
use crate::phase::{wrap_finite, Phase};

const HISTOGRAM_BINS: usize = 8;

/// Target PhDs to quantize.
#[derive(Debug, Clone, PartialEq)]
pub enum Targets {
    /// The `M` points of an M-PSK constellation.
    Psk(usize),
    Phases(Vec<Phase>),
}

impl Targets {
    fn phases(&self) -> Result<Vec<Phase>> {
        let v = match self {
            Targets::Psk(m) => {
                PskConfig::unit(*m)?;
                (0..*m).map(|i| wrap_finite(TAU * i as f64 / *m as f64)).collect()
            }
            Targets::Phases(p) => p.clone(),
        };
        if v.is_empty() {
            return Err(Error::NoTargets);
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationEntry {
    pub target: Phase,
    pub element_index: usize,
    pub achieved: Phase,
    pub error_rad: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lower_rad: f64,
    pub upper_rad: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationReport {
    pub n_distinct_phases: usize,
    /// Largest circular gap between adjacent achievable PhDs.
    pub max_gap_rad: f64,
    pub max_error_rad: f64,
    pub mean_error_rad: f64,
    /// Errors binned uniformly over `[0, max_gap/2]`.
    pub histogram: Vec<HistogramBin>,
    pub entries: Vec<QuantizationEntry>,
}

/// Distinct achievable PhDs (merged within the tie tolerance), ascending.
fn distinct_phases(phds: &[Phase]) -> Vec<f64> {
    let mut v: Vec<f64> = phds.iter().map(|p| p.radians()).collect();
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= TIE_TOLERANCE);
    // 2π - ε and 0 are the same phase
    if v.len() > 1 && v[0] + TAU - v[v.len() - 1] <= TIE_TOLERANCE {
        v.pop();
    }
    v
}

pub fn quantization_report(array: &ArrayConfig, targets: &Targets) -> Result<QuantizationReport> {
    let phds = achievable_phds(array);
    let distinct = distinct_phases(&phds);
    let max_gap = if distinct.len() == 1 {
        TAU
    } else {
        let wrap = distinct[0] + TAU - distinct[distinct.len() - 1];
        distinct.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max)
    };

    let entries: Vec<QuantizationEntry> = targets
        .phases()?
        .into_iter()
        .map(|t| {
            let c = select_from(t, &phds);
            QuantizationEntry {
                target: t,
                element_index: c.index,
                achieved: c.achieved_phd,
                error_rad: c.error,
            }
        })
        .collect();

    let max_error = entries.iter().map(|e| e.error_rad).fold(0.0, f64::max);
    let mean_error = entries.iter().map(|e| e.error_rad).sum::<f64>() / entries.len() as f64;

    let span = max_gap / 2.0;
    let width = span / HISTOGRAM_BINS as f64;
    let mut histogram: Vec<HistogramBin> = (0..HISTOGRAM_BINS)
        .map(|b| HistogramBin {
            lower_rad: b as f64 * width,
            upper_rad: (b + 1) as f64 * width,
            count: 0,
        })
        .collect();
    for e in &entries {
        let b = ((e.error_rad / width) as usize).min(HISTOGRAM_BINS - 1);
        histogram[b].count += 1;
    }

    Ok(QuantizationReport {
        n_distinct_phases: distinct.len(),
        max_gap_rad: max_gap,
        max_error_rad: max_error,
        mean_error_rad: mean_error,
        histogram,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::WaveConfig;
    use std::f64::consts::PI;

    fn array(n: usize) -> ArrayConfig {
        ArrayConfig::new(WaveConfig::new(1.0).unwrap(), n).unwrap()
    }

    #[test]
    fn sixteen_elements_give_eight_phases() {
        let r = quantization_report(&array(16), &Targets::Psk(4096)).unwrap();
        assert_eq!(r.n_distinct_phases, 8);
        assert!((r.max_gap_rad - PI / 4.0).abs() < 1e-12);
        assert!((r.max_error_rad - PI / 8.0).abs() < 1e-12);
        // uniform targets over a π/4 grid: mean error is a quarter step
        assert!((r.mean_error_rad - PI / 16.0).abs() < 1e-3);
        assert_eq!(r.histogram.iter().map(|b| b.count).sum::<usize>(), 4096);
        assert_eq!(r.entries.len(), 4096);
    }

    #[test]
    fn odd_count_avoids_aliasing() {
        let r = quantization_report(&array(17), &Targets::Psk(2)).unwrap();
        assert_eq!(r.n_distinct_phases, 17);
    }

    #[test]
    fn qpsk_lies_on_the_grid() {
        let r = quantization_report(&array(16), &Targets::Psk(4)).unwrap();
        assert!(r.max_error_rad < 1e-12);
        assert_eq!(r.histogram[0].count, 4);
    }

    #[test]
    fn explicit_targets_and_bounds() {
        let t = Targets::Phases(vec![Phase::new(PI / 3.0).unwrap()]);
        let r = quantization_report(&array(16), &t).unwrap();
        assert_eq!(r.entries[0].element_index, 1);
        assert!((r.max_error_rad - PI / 12.0).abs() < 1e-12);
        for n in 1..40 {
            let r = quantization_report(&array(n), &Targets::Psk(64)).unwrap();
            assert!(r.n_distinct_phases <= n);
            assert!(r.max_error_rad <= PI);
            assert!(r.max_error_rad <= r.max_gap_rad / 2.0 + 1e-12);
        }
        assert_eq!(
            quantization_report(&array(4), &Targets::Phases(vec![])),
            Err(Error::NoTargets)
        );
        assert!(quantization_report(&array(4), &Targets::Psk(3)).is_err());
    }
}
