//! Container framing shared by every serialized object.
//!
//! ```text
//! "MCOR" | version (1) | tag (1) | body
//! ```
//!
//! The low nibble of the tag names the scheme (1 basic, 2 encrypted ORE,
//! 3 single-client ORE, 4 enhanced), the high nibble the object kind
//! (0 ciphertext, 1 public parameters, 2 master key, 3 client secret key,
//! 4 comparison key). Ciphertext tags are therefore 0x01..0x04. All integers
//! are big-endian.

use crate::error::DecodeError;
use crate::pairing::{G1Element, G2Element, Scalar, G1_BYTES, G2_BYTES, SCALAR_BYTES};

pub const MAGIC: &[u8; 4] = b"MCOR";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 6;

pub mod tag {
    pub const BASIC_CIPHERTEXT: u8 = 0x01;
    pub const EORE_CIPHERTEXT: u8 = 0x02;
    pub const ORE_CIPHERTEXT: u8 = 0x03;
    pub const ENHANCED_CIPHERTEXT: u8 = 0x04;
    pub const BASIC_PARAMS: u8 = 0x11;
    pub const EORE_PARAMS: u8 = 0x12;
    pub const BASIC_MASTER_KEY: u8 = 0x21;
    pub const EORE_MASTER_KEY: u8 = 0x22;
    pub const CLIENT_KEY: u8 = 0x31;
    pub const ORE_KEY: u8 = 0x33;
    pub const ENHANCED_CLIENT_KEY: u8 = 0x34;
    pub const BASIC_CMP_KEY: u8 = 0x41;
    pub const EORE_CMP_KEY: u8 = 0x42;
}

/// Binary (de)serialization in the frozen container format.
pub trait WireFormat: Sized {
    const TAG: u8;

    fn write_body(&self, w: &mut Writer);
    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError>;

    fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::with_header(Self::TAG);
        self.write_body(&mut w);
        w.into_inner()
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader::new(bytes);
        r.header(Self::TAG)?;
        let v = Self::read_body(&mut r)?;
        r.finish()?;
        Ok(v)
    }
}

/// Validates magic and version and returns the tag byte.
pub fn peek_tag(bytes: &[u8]) -> Result<u8, DecodeError> {
    let mut r = Reader::new(bytes);
    r.magic_and_version()?;
    r.u8()
}

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn with_header(tag: u8) -> Self {
        let mut buf = Vec::with_capacity(256);
        buf.extend_from_slice(MAGIC);
        buf.push(VERSION);
        buf.push(tag);
        Writer { buf }
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    pub fn g1(&mut self, e: &G1Element) {
        self.buf.extend_from_slice(&e.to_bytes());
    }

    pub fn g2(&mut self, e: &G2Element) {
        self.buf.extend_from_slice(&e.to_bytes());
    }

    pub fn scalar(&mut self, s: &Scalar) {
        self.buf.extend_from_slice(&s.to_bytes());
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn magic_and_version(&mut self) -> Result<(), DecodeError> {
        if self.take(4)? != MAGIC {
            return Err(DecodeError::BadMagic { expected: "MCOR" });
        }
        match self.u8()? {
            VERSION => Ok(()),
            v => Err(DecodeError::UnsupportedVersion(v)),
        }
    }

    pub fn header(&mut self, expected: u8) -> Result<(), DecodeError> {
        self.magic_and_version()?;
        let found = self.u8()?;
        if found != expected {
            return Err(DecodeError::UnexpectedTag { expected, found });
        }
        Ok(())
    }

    pub fn take(&mut self, len: usize) -> Result<&'a [u8], DecodeError> {
        let rest = self.buf.len() - self.pos;
        if rest < len {
            return Err(DecodeError::Truncated { needed: len - rest });
        }
        let out = &self.buf[self.pos..self.pos + len];
        self.pos += len;
        Ok(out)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N], DecodeError> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    pub fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    pub fn u16(&mut self) -> Result<u16, DecodeError> {
        Ok(u16::from_be_bytes(self.array()?))
    }

    pub fn u32(&mut self) -> Result<u32, DecodeError> {
        Ok(u32::from_be_bytes(self.array()?))
    }

    pub fn g1(&mut self) -> Result<G1Element, DecodeError> {
        G1Element::from_bytes(&self.array::<G1_BYTES>()?)
    }

    pub fn g2(&mut self) -> Result<G2Element, DecodeError> {
        G2Element::from_bytes(&self.array::<G2_BYTES>()?)
    }

    pub fn scalar(&mut self) -> Result<Scalar, DecodeError> {
        Scalar::from_bytes(&self.array::<SCALAR_BYTES>()?)
    }

    /// Secret exponents must be invertible.
    pub fn nonzero_scalar(&mut self) -> Result<Scalar, DecodeError> {
        let s = self.scalar()?;
        if s.is_zero() {
            return Err(DecodeError::InvalidField("zero secret scalar".into()));
        }
        Ok(s)
    }

    /// Plaintext bit-length field (`1..=64`).
    pub fn bit_length(&mut self) -> Result<u8, DecodeError> {
        let n = self.u16()?;
        if n == 0 || n > crate::encoding::MAX_BITS as u16 {
            return Err(DecodeError::InvalidField(format!("bit-length {n}")));
        }
        Ok(n as u8)
    }

    /// Client index field (1-based, nonzero).
    pub fn client_index(&mut self) -> Result<u32, DecodeError> {
        let j = self.u32()?;
        if j == 0 {
            return Err(DecodeError::InvalidField("client index 0".into()));
        }
        Ok(j)
    }

    pub fn finish(&self) -> Result<(), DecodeError> {
        match self.buf.len() - self.pos {
            0 => Ok(()),
            extra => Err(DecodeError::TrailingBytes(extra)),
        }
    }
}
