//! Receivers and experiments built on the transmit and channel models.

mod demod;
mod leakage;
mod quantization;
mod ser;
mod theory;

pub use demod::{coherent_demod_psk, Decision};
pub use leakage::{leakage_scan, LeakagePoint};
pub use quantization::{quantization_report, HistogramBin, QuantizationEntry, QuantizationReport, Targets};
pub use ser::{exhaustive_noiseless, ser_sweep, transmit_trace, JointErrorCount, SerPoint, SerSweepConfig, TraceRow};
pub use theory::{psk_ser_approx, q_function, theoretical_psk_ser};
