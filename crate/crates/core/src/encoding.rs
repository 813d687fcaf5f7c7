//! Plaintext bit handling and the prefix encodings hashed during encryption.
//!
//! Bits are numbered `x_1 .. x_n` with `x_1` the most significant bit. For an
//! index `i` the encodings are
//!
//! ```text
//! E_0(i, m) = x_1 .. x_{i-1} || 0 x_i
//! E_1(i, m) = x_1 .. x_{i-1} || (0 x_i + 1)      (00 -> 01, 01 -> 10)
//! ```
//!
//! so two plaintexts share `E_0` exactly on the indices before their most
//! significant differing bit, and at that bit `E_1` of the smaller one equals
//! `E_0` of the larger one.
//!
//! The byte form of an encoding is `tag || i (u16 BE) || n (u16 BE) || bits`,
//! bits packed MSB-first and zero-padded to a byte boundary.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_BITS: u8 = 32;
pub const MAX_BITS: u8 = 64;

/// Leading byte of a serialized [`EncodedPrefix`].
pub const ENCODING_TAG: u8 = 0x45;
/// Leading byte of a serialized bare prefix (PRF input of the single-client ORE).
pub const PREFIX_TAG: u8 = 0x50;

/// An `n`-bit unsigned plaintext.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Plaintext {
    value: u64,
    bits: u8,
}

impl Plaintext {
    pub fn new(value: u64, bits: u8) -> Result<Self> {
        if bits == 0 || bits > MAX_BITS {
            return Err(Error::InvalidParameter(format!(
                "bit-length must be in 1..={MAX_BITS}, got {bits}"
            )));
        }
        if bits < 64 && value >> bits != 0 {
            return Err(Error::InvalidParameter(format!(
                "value {value} does not fit in {bits} bits"
            )));
        }
        Ok(Plaintext { value, bits })
    }

    /// A 32-bit plaintext.
    pub fn u32(value: u32) -> Self {
        Plaintext { value: value as u64, bits: 32 }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    /// Bit `x_i`, `1 <= i <= n`, counted from the most significant end.
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.bits as usize);
        (self.value >> (self.bits as usize - i)) & 1 == 1
    }
}

/// Short bit string (at most 128 bits), first bit most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    value: u128,
    len: u8,
}

impl BitString {
    pub fn empty() -> Self {
        BitString { value: 0, len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn push_bits(self, value: u128, count: u8) -> Self {
        debug_assert!(self.len + count <= 128);
        BitString { value: (self.value << count) | value, len: self.len + count }
    }

    /// MSB-first packing, zero-padded on the right.
    pub fn packed(&self) -> Vec<u8> {
        let nbytes = (self.len as usize).div_ceil(8);
        let pad = nbytes * 8 - self.len as usize;
        let aligned = self.value << pad;
        (0..nbytes).rev().map(|k| (aligned >> (8 * k)) as u8).collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..self.len).rev() {
            f.write_str(if (self.value >> k) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// `E_b(i, m)` together with the index and bit-length it was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EncodedPrefix {
    pub index: usize,
    pub n: u8,
    pub bits: BitString,
}

impl EncodedPrefix {
    /// Canonical bytes fed to hash-to-curve.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(5 + self.bits.len().div_ceil(8));
        out.push(ENCODING_TAG);
        out.extend_from_slice(&(self.index as u16).to_be_bytes());
        out.extend_from_slice(&(self.n as u16).to_be_bytes());
        out.extend_from_slice(&self.bits.packed());
        out
    }
}

/// Result of comparing two ciphertexts.
///
/// `less` is the comparison bit (`m < m2`); `msdb` is the most significant
/// differing bit index, `n + 1` when the plaintexts are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CmpOutcome {
    pub less: bool,
    pub msdb: usize,
}

impl CmpOutcome {
    pub fn equal(n: u8) -> Self {
        CmpOutcome { less: false, msdb: n as usize + 1 }
    }

    pub fn is_equal(&self, n: u8) -> bool {
        self.msdb == n as usize + 1
    }

    /// Plaintext-side ground truth.
    pub fn of_plaintexts(m: &Plaintext, m2: &Plaintext) -> Result<Self> {
        Ok(CmpOutcome { less: cmp(m, m2)?, msdb: ind(m, m2)? })
    }
}

fn same_length(m: &Plaintext, m2: &Plaintext) -> Result<()> {
    if m.bits != m2.bits {
        return Err(Error::BitLengthMismatch { left: m.bits, right: m2.bits });
    }
    Ok(())
}

fn check_index(m: &Plaintext, i: usize) -> Result<()> {
    if i == 0 || i > m.bits as usize {
        return Err(Error::InvalidParameter(format!(
            "bit index {i} outside 1..={}",
            m.bits
        )));
    }
    Ok(())
}

/// `true` iff `m < m2`.
pub fn cmp(m: &Plaintext, m2: &Plaintext) -> Result<bool> {
    same_length(m, m2)?;
    Ok(m.value < m2.value)
}

/// Index of the most significant differing bit, `n + 1` when equal.
pub fn ind(m: &Plaintext, m2: &Plaintext) -> Result<usize> {
    same_length(m, m2)?;
    let diff = m.value ^ m2.value;
    if diff == 0 {
        return Ok(m.bits as usize + 1);
    }
    let highest = 63 - diff.leading_zeros() as usize;
    Ok(m.bits as usize - highest)
}

/// The `i - 1` leading bits of `m`.
pub fn prefix(m: &Plaintext, i: usize) -> Result<BitString> {
    check_index(m, i)?;
    let len = i - 1;
    let value = if len == 0 {
        0
    } else {
        (m.value >> (m.bits as usize - len)) as u128
    };
    Ok(BitString { value, len: len as u8 })
}

/// `E_b(i, m)`.
pub fn encode(i: usize, m: &Plaintext, b: bool) -> Result<EncodedPrefix> {
    let p = prefix(m, i)?;
    let code = m.bit(i) as u128 + b as u128;
    Ok(EncodedPrefix { index: i, n: m.bits, bits: p.push_bits(code, 2) })
}

/// Canonical bytes of `(i, prefix(m, i))`, the PRF input of the single-client ORE.
pub(crate) fn prefix_bytes(i: usize, m: &Plaintext) -> Result<Vec<u8>> {
    let p = prefix(m, i)?;
    let mut out = Vec::with_capacity(5 + p.len().div_ceil(8));
    out.push(PREFIX_TAG);
    out.extend_from_slice(&(i as u16).to_be_bytes());
    out.extend_from_slice(&(m.bits as u16).to_be_bytes());
    out.extend_from_slice(&p.packed());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn pt(v: u64, n: u8) -> Plaintext {
        Plaintext::new(v, n).unwrap()
    }

    // Independent reference: walk bits as characters of a binary string.
    fn oracle_ind(a: u64, b: u64, n: u8) -> usize {
        let sa = format!("{a:0width$b}", width = n as usize);
        let sb = format!("{b:0width$b}", width = n as usize);
        sa.chars()
            .zip(sb.chars())
            .position(|(x, y)| x != y)
            .map(|p| p + 1)
            .unwrap_or(n as usize + 1)
    }

    #[test]
    fn plaintext_range_checked() {
        assert!(Plaintext::new(16, 4).is_err());
        assert!(Plaintext::new(15, 4).is_ok());
        assert!(Plaintext::new(0, 0).is_err());
        assert!(Plaintext::new(u64::MAX, 64).is_ok());
        assert!(Plaintext::new(1, 65).is_err());
    }

    #[test]
    fn cmp_examples() {
        assert!(cmp(&pt(5, 32), &pt(7, 32)).unwrap());
        assert!(!cmp(&pt(7, 32), &pt(7, 32)).unwrap());
        assert!(cmp(&pt(1, 8), &pt(1, 9)).is_err());
    }

    #[test]
    fn cmp_and_ind_exhaustive_6_bit() {
        for a in 0..64u64 {
            for b in 0..64u64 {
                assert_eq!(cmp(&pt(a, 6), &pt(b, 6)).unwrap(), a < b);
                assert_eq!(ind(&pt(a, 6), &pt(b, 6)).unwrap(), oracle_ind(a, b, 6));
            }
        }
    }

    #[test]
    fn ind_examples() {
        assert_eq!(ind(&pt(0b0101, 4), &pt(0b0111, 4)).unwrap(), 3);
        assert_eq!(ind(&pt(9, 4), &pt(9, 4)).unwrap(), 5);
        assert_eq!(ind(&pt(0, 32), &pt(1 << 31, 32)).unwrap(), 1);
        assert!(ind(&pt(0, 4), &pt(0, 5)).is_err());
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(prefix(&pt(0b101, 3), 3).unwrap().to_string(), "10");
        assert_eq!(prefix(&pt(0b101, 3), 1).unwrap().to_string(), "");
        assert_eq!(prefix(&pt(0b1111, 4), 4).unwrap().to_string(), "111");
        assert!(prefix(&pt(1, 4), 0).is_err());
        assert!(prefix(&pt(1, 4), 5).is_err());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(3, &pt(0b101, 3), false).unwrap().bits.to_string(), "1001");
        assert_eq!(encode(3, &pt(0b101, 3), true).unwrap().bits.to_string(), "1010");
        assert_eq!(encode(1, &pt(0, 8), false).unwrap().bits.to_string(), "00");
        assert_eq!(encode(1, &pt(0, 8), true).unwrap().bits.to_string(), "01");
    }

    #[test]
    fn encoding_bytes_layout() {
        let e = encode(3, &pt(0b101, 3), false).unwrap();
        assert_eq!(e.to_bytes(), vec![ENCODING_TAG, 0, 3, 0, 3, 0b1001_0000]);
        let e = encode(64, &pt(u64::MAX, 64), true).unwrap();
        assert_eq!(e.bits.len(), 65);
        assert_eq!(e.to_bytes().len(), 5 + 9);
    }

    #[test]
    fn ordering_structure_exhaustive_6_bit() {
        let n = 6u8;
        for a in 0..64u64 {
            for b in 0..64u64 {
                let (m, m2) = (pt(a, n), pt(b, n));
                if a == b {
                    for i in 1..=n as usize {
                        assert_eq!(encode(i, &m, false).unwrap(), encode(i, &m2, false).unwrap());
                    }
                    continue;
                }
                if a > b {
                    continue;
                }
                let star = ind(&m, &m2).unwrap();
                for i in 1..=n as usize {
                    let e0 = encode(i, &m, false).unwrap();
                    let e0b = encode(i, &m2, false).unwrap();
                    assert_eq!(e0 == e0b, i < star, "a={a} b={b} i={i}");
                }
                assert_eq!(encode(star, &m, true).unwrap(), encode(star, &m2, false).unwrap());
            }
        }
    }

    #[test]
    fn serialization_injective_over_8_bit_domain() {
        let mut seen = HashSet::new();
        let mut distinct = HashSet::new();
        for v in 0..256u64 {
            let m = pt(v, 8);
            for i in 1..=8 {
                for b in [false, true] {
                    let e = encode(i, &m, b).unwrap();
                    distinct.insert((e.index, e.bits));
                    seen.insert(e.to_bytes());
                }
            }
        }
        assert_eq!(seen.len(), distinct.len());
    }

    #[test]
    fn prefix_bytes_distinguish_index() {
        let m = pt(0, 8);
        assert_ne!(prefix_bytes(1, &m).unwrap(), prefix_bytes(2, &m).unwrap());
        assert_eq!(prefix_bytes(3, &pt(0b0100_0000, 8)).unwrap(), prefix_bytes(3, &pt(0b0101_1111, 8)).unwrap());
    }
}
