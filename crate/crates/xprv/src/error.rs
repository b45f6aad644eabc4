//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Invalid configuration or arguments (bad flag combinations, out-of-range
    /// parameters, inconsistent element lists handed to the serializer).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Malformed input file: bad magic, unsupported version, unparseable
    /// headers, truncated frame payloads.
    #[error("format error: {0}")]
    Format(String),

    /// Bitstream or element-level decode failure: truncated stream, grammar
    /// violation, strict-mode QP out of range, malformed element order.
    #[error("decode error: {0}")]
    Decode(String),

    /// An AES-masked dQP value left the 6-bit field range at serialization
    /// time. Mirrors the decoder crash a standard codec would suffer.
    #[error("dqp field overflow at macroblock {macroblock}: masked value {value} does not fit 6 bits")]
    FieldOverflow { macroblock: usize, value: u8 },

    /// Frame or plane geometry violation (dimensions not multiples of 16,
    /// mismatched plane sizes, raw file size not a whole number of frames).
    #[error("dimension error: {0}")]
    Dimension(String),
}
