//! Type-3 pairing backend over BLS12-381.
//!
//! The scheme code only sees the newtypes defined here: [`Scalar`], the two
//! source groups [`G1Element`] / [`G2Element`], the target group
//! [`GtElement`], hashing into both source groups, and an instrumented
//! pairing. Target-group elements are written multiplicatively, matching the
//! way the comparison identities are usually stated.
//!
//! Encodings are the standard compressed BLS12-381 point formats (48 bytes for
//! G1, 96 bytes for G2) and 32-byte big-endian scalars. Decoding always runs
//! the on-curve and prime-order subgroup checks.

use std::fmt;
use std::ops::{AddAssign, Div, Mul};

use blstrs::{Bls12, G1Affine, G1Projective, G2Affine, G2Prepared, G2Projective, Gt};
use ff::{Field, PrimeField};
use group::prime::PrimeCurveAffine;
use group::{Curve, Group};
use pairing::{MillerLoopResult, MultiMillerLoop};
use rand::{CryptoRng, RngCore};

use crate::error::DecodeError;

/// Domain-separation tag for hashing prefix encodings into the first group.
pub const H1_DST: &[u8] = b"MCORE-H1-v1";
/// Domain-separation tag for hashing client pairs into the second group.
pub const H2_DST: &[u8] = b"MCORE-H2-v1";

/// Name of the reference curve, recorded in public parameters.
pub const CURVE_NAME: &str = "BLS12-381";
/// One-byte curve identifier used in serialized public parameters.
pub const CURVE_ID: u8 = 0x01;

pub const SCALAR_BYTES: usize = 32;
pub const G1_BYTES: usize = 48;
pub const G2_BYTES: usize = 96;

/// An integer modulo the prime group order.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Scalar(pub(crate) blstrs::Scalar);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(blstrs::Scalar::ZERO)
    }

    pub fn one() -> Self {
        Scalar(blstrs::Scalar::ONE)
    }

    pub fn from_u64(v: u64) -> Self {
        Scalar(blstrs::Scalar::from(v))
    }

    /// Uniform element of Z_p^*.
    pub fn random_nonzero<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        loop {
            let s = blstrs::Scalar::random(&mut *rng);
            if !bool::from(s.is_zero()) {
                return Scalar(s);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        bool::from(self.0.is_zero())
    }

    pub fn invert(&self) -> Option<Self> {
        Option::from(self.0.invert()).map(Scalar)
    }

    /// Canonical 32-byte big-endian encoding.
    pub fn to_bytes(&self) -> [u8; SCALAR_BYTES] {
        self.0.to_bytes_be()
    }

    /// Rejects non-canonical encodings (values `>= p`).
    pub fn from_bytes(bytes: &[u8; SCALAR_BYTES]) -> Result<Self, DecodeError> {
        Option::from(blstrs::Scalar::from_bytes_be(bytes))
            .map(Scalar)
            .ok_or(DecodeError::InvalidElement("scalar"))
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl fmt::Debug for Scalar {
    // Secret material: never print the value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Scalar(..)")
    }
}

fn short_hex(bytes: &[u8]) -> String {
    bytes[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Element of the first source group G.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct G1Element(pub(crate) G1Affine);

impl G1Element {
    pub fn generator() -> Self {
        G1Element(G1Affine::generator())
    }

    pub fn identity() -> Self {
        G1Element(G1Affine::identity())
    }

    pub fn is_identity(&self) -> bool {
        bool::from(self.0.is_identity())
    }

    pub fn pow(&self, e: &Scalar) -> Self {
        G1Element((G1Projective::from(self.0) * e.0).to_affine())
    }

    /// Group operation (written multiplicatively).
    pub fn combine(&self, other: &G1Element) -> Self {
        G1Element((G1Projective::from(self.0) + other.0).to_affine())
    }

    pub fn inverse(&self) -> Self {
        G1Element(-self.0)
    }

    pub fn to_bytes(&self) -> [u8; G1_BYTES] {
        self.0.to_compressed()
    }

    pub fn from_bytes(bytes: &[u8; G1_BYTES]) -> Result<Self, DecodeError> {
        Option::from(G1Affine::from_compressed(bytes))
            .map(G1Element)
            .ok_or(DecodeError::InvalidElement("G1"))
    }
}

impl fmt::Debug for G1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G1({}..)", short_hex(&self.to_bytes()))
    }
}

/// Element of the second source group Ĝ.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct G2Element(pub(crate) G2Affine);

impl G2Element {
    pub fn generator() -> Self {
        G2Element(G2Affine::generator())
    }

    pub fn identity() -> Self {
        G2Element(G2Affine::identity())
    }

    pub fn is_identity(&self) -> bool {
        bool::from(self.0.is_identity())
    }

    pub fn pow(&self, e: &Scalar) -> Self {
        G2Element((G2Projective::from(self.0) * e.0).to_affine())
    }

    pub fn to_bytes(&self) -> [u8; G2_BYTES] {
        self.0.to_compressed()
    }

    pub fn from_bytes(bytes: &[u8; G2_BYTES]) -> Result<Self, DecodeError> {
        Option::from(G2Affine::from_compressed(bytes))
            .map(G2Element)
            .ok_or(DecodeError::InvalidElement("G2"))
    }

    pub fn prepare(&self) -> PreparedG2 {
        PreparedG2(G2Prepared::from(self.0))
    }
}

impl fmt::Debug for G2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G2({}..)", short_hex(&self.to_bytes()))
    }
}

/// Line-function precomputation for a fixed second-group argument.
///
/// Comparison keys are paired against many ciphertext elements, so the
/// comparison routines prepare them once per call or per query.
#[derive(Clone, Debug)]
pub struct PreparedG2(G2Prepared);

/// Element of the target group G_T.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct GtElement(pub(crate) Gt);

impl GtElement {
    pub fn identity() -> Self {
        GtElement(Gt::identity())
    }

    pub fn is_identity(&self) -> bool {
        bool::from(self.0.is_identity())
    }

    pub fn pow(&self, e: &Scalar) -> Self {
        GtElement(self.0 * e.0)
    }
}

impl Mul for GtElement {
    type Output = GtElement;
    fn mul(self, rhs: GtElement) -> GtElement {
        GtElement(self.0 + rhs.0)
    }
}

impl Div for GtElement {
    type Output = GtElement;
    fn div(self, rhs: GtElement) -> GtElement {
        GtElement(self.0 - rhs.0)
    }
}

impl fmt::Debug for GtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_identity() { "Gt(1)" } else { "Gt(..)" })
    }
}

/// Operation counters for one instrumented scope.
///
/// Each concurrent scope owns its own handle; merge them with `+=`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingStats {
    pub pairings: u64,
    pub g1_exps: u64,
    pub g2_exps: u64,
    pub hashes_to_curve: u64,
}

impl PairingStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

impl AddAssign for PairingStats {
    fn add_assign(&mut self, rhs: Self) {
        self.pairings += rhs.pairings;
        self.g1_exps += rhs.g1_exps;
        self.g2_exps += rhs.g2_exps;
        self.hashes_to_curve += rhs.hashes_to_curve;
    }
}

/// Bilinear map e: G × Ĝ → G_T.
pub fn pair(a: &G1Element, b: &G2Element, stats: &mut PairingStats) -> GtElement {
    stats.pairings += 1;
    GtElement(blstrs::pairing(&a.0, &b.0))
}

/// Same map with a prepared second argument.
pub fn pair_prepared(a: &G1Element, b: &PreparedG2, stats: &mut PairingStats) -> GtElement {
    stats.pairings += 1;
    GtElement(Bls12::multi_miller_loop(&[(&a.0, &b.0)]).final_exponentiation())
}

/// Hash-to-curve into G (SSWU with expand_message_xmd/SHA-256).
pub fn hash_to_g1(domain_tag: &[u8], msg: &[u8]) -> G1Element {
    debug_assert!(!domain_tag.is_empty());
    G1Element(G1Projective::hash_to_curve(msg, domain_tag, &[]).to_affine())
}

/// Hash-to-curve into Ĝ.
pub fn hash_to_g2(domain_tag: &[u8], msg: &[u8]) -> G2Element {
    debug_assert!(!domain_tag.is_empty());
    G2Element(G2Projective::hash_to_curve(msg, domain_tag, &[]).to_affine())
}

/// `H(msg)^e` for every message, normalized in one batch.
pub(crate) fn hash_pow_g1_batch<M: AsRef<[u8]>>(
    domain_tag: &[u8],
    msgs: &[M],
    e: &Scalar,
    stats: &mut PairingStats,
) -> Vec<G1Element> {
    let proj: Vec<G1Projective> = msgs
        .iter()
        .map(|m| G1Projective::hash_to_curve(m.as_ref(), domain_tag, &[]) * e.0)
        .collect();
    stats.hashes_to_curve += msgs.len() as u64;
    stats.g1_exps += msgs.len() as u64;
    let mut out = vec![G1Affine::identity(); proj.len()];
    G1Projective::batch_normalize(&proj, &mut out);
    out.into_iter().map(G1Element).collect()
}

/// Scalar field modulus bit size, for documentation and sanity checks.
pub fn scalar_bits() -> u32 {
    blstrs::Scalar::NUM_BITS
}
