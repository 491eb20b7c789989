//! Error type shared by all toolkit operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence length must be odd, got {0}")]
    EvenLength(u64),
    #[error("root index {p} outside (0, {n})")]
    RootOutOfRange { p: u64, n: u64 },
    #[error("{a} and {b} are not coprime (gcd {g})")]
    NotCoprime { a: u64, b: u64, g: u64 },
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("slope {a} exceeds floor(r/m) = {max}")]
    SlopeTooLarge { a: u64, max: u64 },
    #[error("phase table has {got} entries, expected {expected}")]
    BadTableLength { got: usize, expected: usize },
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("delay {tau} outside [0, {n})")]
    DelayOutOfRange { tau: i64, n: usize },
    #[error("empty sequence")]
    EmptySequence,
    #[error("region of interest contains no sidelobe lags (n_max {0})")]
    EmptyRoi(f64),
    #[error("worst-case Doppler must be positive (perfect-autocorrelation case is saturated)")]
    ZeroDoppler,
    #[error("normalized Doppler assumption violated: |v|*N = {0} >= 1")]
    DopplerAssumption(f64),
    #[error("requirement field {0} must be positive")]
    NonPositiveRequirement(&'static str),
    #[error("PSLR threshold below unity: {0}")]
    ThresholdBelowUnity(f64),
    #[error("empty search or threshold grid")]
    EmptyGrid,
    #[error("DFT size {k0} smaller than profile count {k}")]
    FftSizeTooSmall { k0: usize, k: usize },
    #[error("scenario invalid: {0}")]
    InvalidScenario(String),
    #[error("malformed {format} data: {detail}")]
    Format {
        format: &'static str,
        detail: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
