//! Complex-baseband simulation of quasi-Doppler directional modulation.
//!
//! A single source is switched among the elements of a uniform linear array.
//! Toward the array axis each element position adds a Phase-Doppler (PhD)
//! term `K·x_n`; toward broadside it adds nothing. One transmitted symbol
//! therefore carries two independent PSK streams: the source phase reaches
//! both receivers, and the element choice steers the axial phase only.
//!
//! Modules:
//! - [`phase`], [`geometry`]: canonical phases, carrier and array layout
//! - [`modulation`]: PSK mapping, PhD computation, element selection
//! - [`channel`]: plane-wave and spherical LOS links, AWGN
//! - [`doppler`]: switched-element sweeps and periodogram shift estimates
//! - [`analysis`]: demodulation, SER experiments, leakage and quantization

pub mod analysis;
pub mod channel;
pub mod doppler;
pub mod error;
pub mod geometry;
pub mod modulation;
pub mod phase;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{element_positions, wavenumber, ArrayConfig, ReceiverPosition, WaveConfig};
pub use phase::{circular_distance, wrap_phase, Phase};
