//! Single-client ORE from a PRF over plaintext prefixes.
//!
//! Each bit is encrypted as `u_i = F(k, (i, x_1..x_{i-1})) + x_i mod 3`. Two
//! ciphertexts agree up to the most significant differing bit, where the
//! smaller plaintext's digit is exactly one less (mod 3) than the other's.
//! Leakage per pair is the comparison bit and the differing-bit index.
//!
//! `F` is HMAC-SHA256 reduced to a uniform digit in `{0, 1, 2}` by rejection
//! sampling over the output bytes.

use hmac::{Hmac, Mac};
use rand::{CryptoRng, RngCore};
use sha2::Sha256;

use crate::encoding::{prefix_bytes, CmpOutcome, Plaintext};
use crate::error::{DecodeError, Error, Result};
use crate::wire::{tag, Reader, WireFormat, Writer};

type HmacSha256 = Hmac<Sha256>;

pub const KEY_BYTES: usize = 32;
pub const MIN_KEY_BYTES: usize = 16;

/// Interface of a single-client ORE usable as the first part of the enhanced
/// scheme.
pub trait SingleClientOre {
    type Key;
    type Ciphertext;

    fn setup<R: RngCore + CryptoRng>(rng: &mut R) -> Self::Key;
    fn encrypt(m: &Plaintext, key: &Self::Key) -> Result<Self::Ciphertext>;
    fn compare(ct: &Self::Ciphertext, ct2: &Self::Ciphertext) -> Result<CmpOutcome>;
}

/// The prefix-PRF construction of this module.
pub struct PrefixPrfOre;

impl SingleClientOre for PrefixPrfOre {
    type Key = OreSecretKey;
    type Ciphertext = OreCiphertext;

    fn setup<R: RngCore + CryptoRng>(rng: &mut R) -> OreSecretKey {
        ore_setup(rng)
    }

    fn encrypt(m: &Plaintext, key: &OreSecretKey) -> Result<OreCiphertext> {
        ore_encrypt(m, key)
    }

    fn compare(ct: &OreCiphertext, ct2: &OreCiphertext) -> Result<CmpOutcome> {
        ore_compare(ct, ct2)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct OreSecretKey {
    key: Vec<u8>,
}

impl OreSecretKey {
    pub fn from_bytes_raw(key: &[u8]) -> Result<Self> {
        if key.len() < MIN_KEY_BYTES {
            return Err(Error::InvalidParameter(format!(
                "ORE key must be at least {MIN_KEY_BYTES} bytes"
            )));
        }
        Ok(OreSecretKey { key: key.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.key.is_empty()
    }

    fn mac(&self) -> HmacSha256 {
        HmacSha256::new_from_slice(&self.key).expect("HMAC accepts any key length")
    }

    /// Uniform digit in `{0, 1, 2}`.
    fn prf_trit(&self, input: &[u8]) -> u8 {
        for counter in 0u8..=u8::MAX {
            let mut mac = self.mac();
            mac.update(input);
            if counter > 0 {
                mac.update(&[counter]);
            }
            let out = mac.finalize().into_bytes();
            // 255 = 3 * 85; bytes below it reduce without bias.
            if let Some(b) = out.iter().find(|&&b| b < 255) {
                return b % 3;
            }
        }
        unreachable!("256 consecutive all-0xff HMAC outputs")
    }
}

impl std::fmt::Debug for OreSecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OreSecretKey({} bytes)", self.key.len())
    }
}

impl WireFormat for OreSecretKey {
    const TAG: u8 = tag::ORE_KEY;

    fn write_body(&self, w: &mut Writer) {
        w.u16(self.key.len() as u16);
        w.bytes(&self.key);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let len = r.u16()? as usize;
        if len < MIN_KEY_BYTES {
            return Err(DecodeError::InvalidField(format!("ORE key of {len} bytes")));
        }
        Ok(OreSecretKey { key: r.take(len)?.to_vec() })
    }
}

/// `n` digits in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OreCiphertext {
    n: u8,
    trits: Vec<u8>,
}

impl OreCiphertext {
    pub fn bits(&self) -> u8 {
        self.n
    }

    pub fn trits(&self) -> &[u8] {
        &self.trits
    }
}

impl WireFormat for OreCiphertext {
    const TAG: u8 = tag::ORE_CIPHERTEXT;

    fn write_body(&self, w: &mut Writer) {
        w.u16(self.n as u16);
        for chunk in self.trits.chunks(4) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, t)| acc | (t << (6 - 2 * k)));
            w.u8(byte);
        }
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let n = r.bit_length()?;
        let packed = r.take((n as usize).div_ceil(4))?;
        let mut trits = Vec::with_capacity(n as usize);
        for (idx, byte) in packed.iter().enumerate() {
            for k in 0..4 {
                let t = (byte >> (6 - 2 * k)) & 0b11;
                if idx * 4 + k < n as usize {
                    if t > 2 {
                        return Err(DecodeError::InvalidField("digit outside {0,1,2}".into()));
                    }
                    trits.push(t);
                } else if t != 0 {
                    return Err(DecodeError::InvalidField("nonzero padding".into()));
                }
            }
        }
        Ok(OreCiphertext { n, trits })
    }
}

pub fn ore_setup<R: RngCore + CryptoRng>(rng: &mut R) -> OreSecretKey {
    let mut key = vec![0u8; KEY_BYTES];
    rng.fill_bytes(&mut key);
    OreSecretKey { key }
}

pub fn ore_encrypt(m: &Plaintext, sk: &OreSecretKey) -> Result<OreCiphertext> {
    let n = m.bits();
    let trits = (1..=n as usize)
        .map(|i| Ok((sk.prf_trit(&prefix_bytes(i, m)?) + m.bit(i) as u8) % 3))
        .collect::<Result<_>>()?;
    Ok(OreCiphertext { n, trits })
}

/// Both ciphertexts must come from the same key; that is not checkable.
pub fn ore_compare(ct: &OreCiphertext, ct2: &OreCiphertext) -> Result<CmpOutcome> {
    if ct.n != ct2.n {
        return Err(Error::BitLengthMismatch { left: ct.n, right: ct2.n });
    }
    match ct.trits.iter().zip(&ct2.trits).position(|(a, b)| a != b) {
        None => Ok(CmpOutcome::equal(ct.n)),
        Some(pos) => Ok(CmpOutcome {
            less: ct2.trits[pos] == (ct.trits[pos] + 1) % 3,
            msdb: pos + 1,
        }),
    }
}
