use thiserror::Error;

/// Errors raised when an input violates a model precondition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("wavelength must be positive and finite, got {0}")]
    InvalidWavelength(f64),
    #[error("aperture must be positive and finite, got {0}")]
    InvalidAperture(f64),
    #[error("array needs at least one element")]
    NoElements,
    #[error("value must be finite, got {0}")]
    NonFinite(f64),
    #[error("element position must be positive, got {0}")]
    NonPositivePosition(f64),
    #[error("PSK order must be a power of two >= 2, got {0}")]
    InvalidPskOrder(usize),
    #[error("symbol energy must be positive and finite, got {0}")]
    InvalidSymbolEnergy(f64),
    #[error("symbol index {index} out of range for {order}-PSK")]
    SymbolOutOfRange { index: usize, order: usize },
    #[error("angle {0} rad outside the allowed range")]
    AngleOutOfRange(f64),
    #[error("receiver coincides with the radiating point")]
    ZeroDistance,
    #[error("residence time must be positive and finite, got {0}")]
    InvalidResidenceTime(f64),
    #[error("oversample must be at least 2, got {0}")]
    InvalidOversample(usize),
    #[error("repeats must be at least 1")]
    InvalidRepeats,
    #[error("sample rate {sample_rate_hz} Hz does not exceed twice the Doppler shift {shift_hz} Hz")]
    NyquistViolation { sample_rate_hz: f64, shift_hz: f64 },
    #[error("sample rate must be positive and finite, got {0}")]
    InvalidSampleRate(f64),
    #[error("waveform is empty")]
    EmptyWaveform,
    #[error("FFT length {fft_length} shorter than waveform length {samples}")]
    FftTooShort { fft_length: usize, samples: usize },
    #[error("symbol count must be at least 1")]
    NoSymbols,
    #[error("target list is empty")]
    NoTargets,
    #[error("receiver range must be positive and finite, got {0}")]
    InvalidRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
