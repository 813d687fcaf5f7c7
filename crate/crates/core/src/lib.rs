pub mod basic;
pub mod cli;
pub mod encoding;
pub mod enhanced;
pub mod eore;
pub mod error;
pub mod leakage;
pub mod ore;
pub mod pairing;
pub mod range;
pub mod wire;

pub use encoding::{CmpOutcome, Plaintext};
pub use error::{DecodeError, Error, Result};
pub use pairing::PairingStats;
pub use wire::WireFormat;
