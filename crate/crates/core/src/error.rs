use thiserror::Error;

/// Failure while decoding one of the binary formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("bad magic: expected {expected:?}")]
    BadMagic { expected: &'static str },
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("unexpected object tag 0x{found:02x} (expected 0x{expected:02x})")]
    UnexpectedTag { expected: u8, found: u8 },
    #[error("input truncated: needed {needed} more bytes")]
    Truncated { needed: usize },
    #[error("{0} trailing bytes after object")]
    TrailingBytes(usize),
    #[error("invalid {0} encoding")]
    InvalidElement(&'static str),
    #[error("invalid field: {0}")]
    InvalidField(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bit-length mismatch: {left} vs {right}")]
    BitLengthMismatch { left: u8, right: u8 },
    #[error("client index {index} out of range 1..={max}")]
    ClientOutOfRange { index: u32, max: u32 },
    #[error("a comparison key needs two distinct clients (got {0} twice)")]
    SameClient(u32),
    #[error("ciphertexts belong to different clients ({left} vs {right}); a comparison key is required")]
    ClientMismatch { left: u32, right: u32 },
    #[error("comparison key binds clients ({key_j}, {key_k}) but ciphertexts are from ({left}, {right})")]
    OrientationMismatch {
        key_j: u32,
        key_k: u32,
        left: u32,
        right: u32,
    },
    #[error("integrity failure at index {index}: neither direction check holds")]
    Integrity { index: usize },
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
