use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = StegoError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum StegoError {
    #[error("odd dimensions {width}x{height}: both must be even")]
    OddDimensions { width: usize, height: usize },

    #[error("dimensions {width}x{height} must be multiples of {multiple}")]
    DimensionsNotMultiple {
        width: usize,
        height: usize,
        multiple: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty plane")]
    EmptyPlane,

    #[error("sample count {actual} does not match {width}x{height}")]
    SampleCount {
        width: usize,
        height: usize,
        actual: usize,
    },

    #[error("non-integer sample {value} at index {index}")]
    NonIntegerSample { index: usize, value: f64 },

    #[error("sample {value} at index {index} out of range for target type")]
    SampleOutOfRange { index: usize, value: f64 },

    #[error("address out of range: entry {entry} at slot {slot}, cover has {n_c} blocks")]
    AddressOutOfRange {
        slot: usize,
        entry: usize,
        n_c: usize,
    },

    #[error("bit length mismatch: expected {expected} bits, got {actual}")]
    BitLength { expected: usize, actual: usize },

    #[error("nonzero padding bits after key data")]
    NonZeroPadding,

    #[error("cipher key must not be empty")]
    EmptyCipherKey,

    #[error("malformed run-length stream: {0}")]
    MalformedRle(&'static str),

    #[error("bad header: {0}")]
    BadHeader(String),

    #[error("key too large for cover: need {needed} bits, capacity is {capacity}")]
    CapacityExceeded { needed: usize, capacity: usize },

    #[error("embedding pushed sample {index} to {value}, outside [0, 255]; cover plane was not pre-clamped")]
    PixelOverflow { index: usize, value: i64 },

    #[error("decode failure: {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("wrong channel count in {path}: expected {expected}, found {found}")]
    WrongChannelCount {
        path: PathBuf,
        expected: usize,
        found: usize,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("encode failure: {path}: {reason}")]
    Encode { path: PathBuf, reason: String },

    #[error("config error: {0}")]
    Config(String),
}
