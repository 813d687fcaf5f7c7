//! The basic multi-client ORE scheme.
//!
//! A client with secret exponent `s_j` encrypts `m` as the `2n` first-group
//! elements `C_{i,b} = H(E_b(i, m))^{s_j}`. Ciphertexts of one client compare
//! publicly by element equality. Ciphertexts of two clients `j`, `k` compare
//! through a key `(K_0, K_1) = (ĝ^{r s_j}, ĝ^{r s_k})`, because
//! `e(C_{i,b}, K_1) = e(H(E_b(i, m)), ĝ)^{r s_j s_k}` no longer depends on
//! which client produced the element.
//!
//! Besides the center-issued keys, comparison keys can be produced without a
//! trusted center (two hash-based shares, see
//! [`gen_cmp_key_share_centerless`]) or by a center that only sees the
//! registrations `ĝ^{s_j}` ([`gen_cmp_key_from_registrations`]).

use rand::{CryptoRng, RngCore};

use crate::encoding::{encode, CmpOutcome, Plaintext};
use crate::error::{DecodeError, Error, Result};
use crate::pairing::{
    hash_pow_g1_batch, hash_to_g2, pair_prepared, G1Element, G2Element, GtElement, PairingStats,
    PreparedG2, Scalar, CURVE_ID, H1_DST, H2_DST,
};
use crate::wire::{tag, Reader, WireFormat, Writer};

/// Public parameters: bit-length, client bound and the group generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicParams {
    pub(crate) n: u8,
    pub(crate) clients: u32,
    pub(crate) g: G1Element,
    pub(crate) g_hat: G2Element,
}

impl PublicParams {
    pub fn bits(&self) -> u8 {
        self.n
    }

    pub fn clients(&self) -> u32 {
        self.clients
    }

    pub fn g(&self) -> &G1Element {
        &self.g
    }

    pub fn g_hat(&self) -> &G2Element {
        &self.g_hat
    }

    pub(crate) fn new(clients: u32, n: u8) -> Result<Self> {
        if clients == 0 {
            return Err(Error::InvalidParameter("at least one client required".into()));
        }
        if n == 0 || n > crate::encoding::MAX_BITS {
            return Err(Error::InvalidParameter(format!("unsupported bit-length {n}")));
        }
        Ok(PublicParams {
            n,
            clients,
            g: G1Element::generator(),
            g_hat: G2Element::generator(),
        })
    }

    pub(crate) fn check_client(&self, j: u32) -> Result<()> {
        if j == 0 || j > self.clients {
            return Err(Error::ClientOutOfRange { index: j, max: self.clients });
        }
        Ok(())
    }

    pub(crate) fn check_plaintext(&self, m: &Plaintext) -> Result<()> {
        if m.bits() != self.n {
            return Err(Error::BitLengthMismatch { left: m.bits(), right: self.n });
        }
        Ok(())
    }

    pub(crate) fn write_fields(&self, w: &mut Writer) {
        w.u8(CURVE_ID);
        w.u32(self.clients);
        w.u16(self.n as u16);
        w.g1(&self.g);
        w.g2(&self.g_hat);
    }

    pub(crate) fn read_fields(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let curve = r.u8()?;
        if curve != CURVE_ID {
            return Err(DecodeError::InvalidField(format!("unknown curve id {curve}")));
        }
        let clients = r.u32()?;
        if clients == 0 {
            return Err(DecodeError::InvalidField("zero clients".into()));
        }
        let n = r.bit_length()?;
        let g = r.g1()?;
        let g_hat = r.g2()?;
        if g.is_identity() || g_hat.is_identity() {
            return Err(DecodeError::InvalidField("identity generator".into()));
        }
        Ok(PublicParams { n, clients, g, g_hat })
    }
}

impl WireFormat for PublicParams {
    const TAG: u8 = tag::BASIC_PARAMS;

    fn write_body(&self, w: &mut Writer) {
        self.write_fields(w);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        Self::read_fields(r)
    }
}

/// The center's exponents `s_1 .. s_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterKey {
    pub(crate) s: Vec<Scalar>,
}

impl MasterKey {
    /// Builds a master key from explicit exponents (fixtures, key import).
    pub fn from_scalars(s: Vec<Scalar>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidParameter("empty master key".into()));
        }
        if s.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidParameter("zero exponent in master key".into()));
        }
        Ok(MasterKey { s })
    }

    pub fn clients(&self) -> u32 {
        self.s.len() as u32
    }

    pub fn exponent(&self, j: u32) -> Option<&Scalar> {
        (j as usize).checked_sub(1).and_then(|i| self.s.get(i))
    }

    pub(crate) fn random<R: RngCore + CryptoRng>(clients: u32, rng: &mut R) -> Self {
        MasterKey { s: (0..clients).map(|_| Scalar::random_nonzero(rng)).collect() }
    }

    pub(crate) fn lookup(&self, j: u32) -> Result<Scalar> {
        self.exponent(j)
            .copied()
            .ok_or(Error::ClientOutOfRange { index: j, max: self.clients() })
    }
}

impl WireFormat for MasterKey {
    const TAG: u8 = tag::BASIC_MASTER_KEY;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.s.len() as u32);
        self.s.iter().for_each(|s| w.scalar(s));
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let count = r.u32()?;
        if count == 0 {
            return Err(DecodeError::InvalidField("empty master key".into()));
        }
        let s = (0..count).map(|_| r.nonzero_scalar()).collect::<Result<_, _>>()?;
        Ok(MasterKey { s })
    }
}

/// Secret key `SK_j = s_j` of client `j`. Shared by the basic and encrypted schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClientSecretKey {
    pub(crate) j: u32,
    pub(crate) s: Scalar,
}

impl ClientSecretKey {
    pub fn new(j: u32, s: Scalar) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidParameter("client indices start at 1".into()));
        }
        if s.is_zero() {
            return Err(Error::InvalidParameter("zero client exponent".into()));
        }
        Ok(ClientSecretKey { j, s })
    }

    pub fn client(&self) -> u32 {
        self.j
    }

    pub fn exponent(&self) -> &Scalar {
        &self.s
    }
}

impl WireFormat for ClientSecretKey {
    const TAG: u8 = tag::CLIENT_KEY;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.j);
        w.scalar(&self.s);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        Ok(ClientSecretKey { j: r.client_index()?, s: r.nonzero_scalar()? })
    }
}

/// `2n` first-group elements `(C_{i,0}, C_{i,1})`, `i = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCiphertext {
    pub(crate) j: u32,
    pub(crate) n: u8,
    pub(crate) elements: Vec<[G1Element; 2]>,
}

impl BasicCiphertext {
    pub fn client(&self) -> u32 {
        self.j
    }

    pub fn bits(&self) -> u8 {
        self.n
    }

    /// `C_{i,b}` for `1 <= i <= n`.
    pub fn element(&self, i: usize, b: bool) -> &G1Element {
        &self.elements[i - 1][b as usize]
    }

    pub fn element_count(&self) -> usize {
        2 * self.elements.len()
    }
}

impl WireFormat for BasicCiphertext {
    const TAG: u8 = tag::BASIC_CIPHERTEXT;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.j);
        w.u16(self.n as u16);
        for pair in &self.elements {
            w.g1(&pair[0]);
            w.g1(&pair[1]);
        }
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let j = r.client_index()?;
        let n = r.bit_length()?;
        let elements = (0..n)
            .map(|_| Ok([r.g1()?, r.g1()?]))
            .collect::<Result<_, DecodeError>>()?;
        Ok(BasicCiphertext { j, n, elements })
    }
}

/// `CK_{j,k} = (K_0, K_1) = (ĝ^{r s_j}, ĝ^{r s_k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicComparisonKey {
    pub(crate) j: u32,
    pub(crate) k: u32,
    pub(crate) k0: G2Element,
    pub(crate) k1: G2Element,
}

impl BasicComparisonKey {
    pub fn clients(&self) -> (u32, u32) {
        (self.j, self.k)
    }

    pub fn elements(&self) -> (&G2Element, &G2Element) {
        (&self.k0, &self.k1)
    }

    /// The same key viewed from the other client: `CK_{k,j}`.
    pub fn swapped(&self) -> Self {
        BasicComparisonKey { j: self.k, k: self.j, k0: self.k1, k1: self.k0 }
    }

    /// Pairing keys `(left, right)` for a comparison whose first ciphertext
    /// belongs to `left` and second to `right`.
    fn orient(&self, left: u32, right: u32) -> Result<(&G2Element, &G2Element)> {
        if left == self.j && right == self.k {
            Ok((&self.k1, &self.k0))
        } else if left == self.k && right == self.j {
            Ok((&self.k0, &self.k1))
        } else {
            Err(Error::OrientationMismatch { key_j: self.j, key_k: self.k, left, right })
        }
    }

    /// Prepares the key for a series of comparisons of `left`-client
    /// ciphertexts against `right`-client ciphertexts.
    pub fn prepare(&self, left: u32, right: u32) -> Result<PreparedComparisonKey> {
        let (l, r) = self.orient(left, right)?;
        Ok(PreparedComparisonKey { left, right, left_key: l.prepare(), right_key: r.prepare() })
    }
}

impl WireFormat for BasicComparisonKey {
    const TAG: u8 = tag::BASIC_CMP_KEY;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.j);
        w.u32(self.k);
        w.g2(&self.k0);
        w.g2(&self.k1);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let j = r.client_index()?;
        let k = r.client_index()?;
        if j == k {
            return Err(DecodeError::InvalidField("comparison key for a single client".into()));
        }
        let k0 = r.g2()?;
        let k1 = r.g2()?;
        if k0.is_identity() || k1.is_identity() {
            return Err(DecodeError::InvalidField("identity key element".into()));
        }
        Ok(BasicComparisonKey { j, k, k0, k1 })
    }
}

/// A comparison key fixed to one orientation with precomputed pairing lines.
#[derive(Clone, Debug)]
pub struct PreparedComparisonKey {
    left: u32,
    right: u32,
    left_key: PreparedG2,
    right_key: PreparedG2,
}

impl PreparedComparisonKey {
    pub(crate) fn check(&self, ct: &BasicCiphertext, ct2: &BasicCiphertext) -> Result<()> {
        if ct.j != self.left || ct2.j != self.right {
            return Err(Error::OrientationMismatch {
                key_j: self.left,
                key_k: self.right,
                left: ct.j,
                right: ct2.j,
            });
        }
        if ct.n != ct2.n {
            return Err(Error::BitLengthMismatch { left: ct.n, right: ct2.n });
        }
        Ok(())
    }

    /// `e(C_{i,b}, K_left)` for the first operand.
    pub(crate) fn left(&self, ct: &BasicCiphertext, i: usize, b: bool, stats: &mut PairingStats) -> GtElement {
        pair_prepared(ct.element(i, b), &self.left_key, stats)
    }

    /// `e(C'_{i,b}, K_right)` for the second operand.
    pub(crate) fn right(&self, ct: &BasicCiphertext, i: usize, b: bool, stats: &mut PairingStats) -> GtElement {
        pair_prepared(ct.element(i, b), &self.right_key, stats)
    }

    /// Direction check at the first differing index `i`, given the already
    /// computed `e(C_{i,0}, K_left)` and `e(C'_{i,0}, K_right)`. Costs two pairings.
    pub(crate) fn direction(
        &self,
        ct: &BasicCiphertext,
        ct2: &BasicCiphertext,
        i: usize,
        left0: &GtElement,
        right0: &GtElement,
        stats: &mut PairingStats,
    ) -> Result<CmpOutcome> {
        let left1 = self.left(ct, i, true, stats);
        let right1 = self.right(ct2, i, true, stats);
        match (left1 == *right0, *left0 == right1) {
            (true, false) => Ok(CmpOutcome { less: true, msdb: i }),
            (false, true) => Ok(CmpOutcome { less: false, msdb: i }),
            _ => Err(Error::Integrity { index: i }),
        }
    }
}

/// Samples `N` nonzero exponents.
pub fn setup<R: RngCore + CryptoRng>(rng: &mut R, clients: u32, n: u8) -> Result<(MasterKey, PublicParams)> {
    let pp = PublicParams::new(clients, n)?;
    Ok((MasterKey::random(clients, rng), pp))
}

pub fn gen_key(j: u32, mk: &MasterKey, pp: &PublicParams) -> Result<ClientSecretKey> {
    pp.check_client(j)?;
    Ok(ClientSecretKey { j, s: mk.lookup(j)? })
}

/// Hash inputs `E_b(i, m)` in ciphertext element order.
pub(crate) fn encoding_inputs(m: &Plaintext) -> Vec<Vec<u8>> {
    let n = m.bits() as usize;
    let mut msgs = Vec::with_capacity(2 * n);
    for i in 1..=n {
        for b in [false, true] {
            msgs.push(encode(i, m, b).expect("index in range").to_bytes());
        }
    }
    msgs
}

/// `H(E_b(i, m))^{s}` for all `i`, `b`.
pub(crate) fn prefix_elements(m: &Plaintext, s: &Scalar, stats: &mut PairingStats) -> Vec<[G1Element; 2]> {
    let flat = hash_pow_g1_batch(H1_DST, &encoding_inputs(m), s, stats);
    flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect()
}

/// Deterministic encryption.
pub fn encrypt(m: &Plaintext, sk: &ClientSecretKey, pp: &PublicParams) -> Result<BasicCiphertext> {
    encrypt_with_stats(m, sk, pp, &mut PairingStats::new())
}

pub fn encrypt_with_stats(
    m: &Plaintext,
    sk: &ClientSecretKey,
    pp: &PublicParams,
    stats: &mut PairingStats,
) -> Result<BasicCiphertext> {
    pp.check_plaintext(m)?;
    pp.check_client(sk.j)?;
    Ok(BasicCiphertext { j: sk.j, n: m.bits(), elements: prefix_elements(m, &sk.s, stats) })
}

/// Public comparison of two ciphertexts of the same client.
pub fn compare(ct: &BasicCiphertext, ct2: &BasicCiphertext, pp: &PublicParams) -> Result<CmpOutcome> {
    if ct.j != ct2.j {
        return Err(Error::ClientMismatch { left: ct.j, right: ct2.j });
    }
    if ct.n != ct2.n || ct.n != pp.n {
        return Err(Error::BitLengthMismatch { left: ct.n, right: ct2.n });
    }
    let first_diff = ct.elements.iter().zip(&ct2.elements).position(|(a, b)| a[0] != b[0]);
    let Some(pos) = first_diff else {
        return Ok(CmpOutcome::equal(ct.n));
    };
    let (a, b) = (&ct.elements[pos], &ct2.elements[pos]);
    match (a[1] == b[0], a[0] == b[1]) {
        (true, false) => Ok(CmpOutcome { less: true, msdb: pos + 1 }),
        (false, true) => Ok(CmpOutcome { less: false, msdb: pos + 1 }),
        _ => Err(Error::Integrity { index: pos + 1 }),
    }
}

fn check_pair(j: u32, k: u32, pp: &PublicParams) -> Result<()> {
    pp.check_client(j)?;
    pp.check_client(k)?;
    if j == k {
        return Err(Error::SameClient(j));
    }
    Ok(())
}

/// Center-issued comparison key with a fresh `r`.
pub fn gen_cmp_key<R: RngCore + CryptoRng>(
    j: u32,
    k: u32,
    mk: &MasterKey,
    pp: &PublicParams,
    rng: &mut R,
) -> Result<BasicComparisonKey> {
    check_pair(j, k, pp)?;
    let r = Scalar::random_nonzero(rng);
    let (sj, sk) = (mk.lookup(j)?, mk.lookup(k)?);
    Ok(BasicComparisonKey { j, k, k0: pp.g_hat.pow(&(r * sj)), k1: pp.g_hat.pow(&(r * sk)) })
}

/// Hash base `H(min(j,k) || max(j,k))` shared by both clients of a pair.
pub fn centerless_base(j: u32, k: u32) -> G2Element {
    let (lo, hi) = if j < k { (j, k) } else { (k, j) };
    let mut msg = [0u8; 8];
    msg[..4].copy_from_slice(&lo.to_be_bytes());
    msg[4..].copy_from_slice(&hi.to_be_bytes());
    hash_to_g2(H2_DST, &msg)
}

/// One client's half of a centerless comparison key: `H(j || k)^{s}`.
pub fn gen_cmp_key_share_centerless(j: u32, k: u32, sk: &ClientSecretKey) -> Result<G2Element> {
    if j == k {
        return Err(Error::SameClient(j));
    }
    if sk.j != j && sk.j != k {
        return Err(Error::InvalidParameter(format!(
            "client {} cannot issue a share for pair ({j}, {k})",
            sk.j
        )));
    }
    Ok(centerless_base(j, k).pow(&sk.s))
}

/// Assembles `CK_{j,k}` from the share of `j` and the share of `k`.
pub fn assemble_centerless_key(j: u32, k: u32, share_j: G2Element, share_k: G2Element) -> Result<BasicComparisonKey> {
    if j == k {
        return Err(Error::SameClient(j));
    }
    if share_j.is_identity() || share_k.is_identity() {
        return Err(Error::InvalidParameter("identity key share".into()));
    }
    Ok(BasicComparisonKey { j, k, k0: share_j, k1: share_k })
}

/// Registration a client submits to a reduced-trust center: `ĝ^{s_j}`.
pub fn register_client(sk: &ClientSecretKey, pp: &PublicParams) -> G2Element {
    pp.g_hat.pow(&sk.s)
}

/// Reduced-trust center: raises both registrations to a fresh `r`.
pub fn gen_cmp_key_from_registrations<R: RngCore + CryptoRng>(
    j: u32,
    k: u32,
    reg_j: &G2Element,
    reg_k: &G2Element,
    pp: &PublicParams,
    rng: &mut R,
) -> Result<BasicComparisonKey> {
    check_pair(j, k, pp)?;
    if reg_j.is_identity() || reg_k.is_identity() {
        return Err(Error::InvalidParameter("identity registration".into()));
    }
    let r = Scalar::random_nonzero(rng);
    Ok(BasicComparisonKey { j, k, k0: reg_j.pow(&r), k1: reg_k.pow(&r) })
}

/// Keyed comparison of ciphertexts from two different clients.
///
/// Scans `i = 1..n` for the first index where `e(C_{i,0}, K_1) ≠ e(C'_{i,0}, K_0)`
/// and then runs both direction checks. Uses `2 i* + 2` pairings when the
/// plaintexts differ at `i*`, `2n` when they are equal. The key may be given in
/// either orientation.
pub fn compare_mc(
    ct: &BasicCiphertext,
    ct2: &BasicCiphertext,
    ck: &BasicComparisonKey,
    pp: &PublicParams,
    stats: &mut PairingStats,
) -> Result<CmpOutcome> {
    if ct.n != pp.n {
        return Err(Error::BitLengthMismatch { left: ct.n, right: pp.n });
    }
    let prepared = ck.prepare(ct.j, ct2.j)?;
    compare_mc_prepared(ct, ct2, &prepared, stats)
}

/// [`compare_mc`] with a key prepared once for many comparisons.
pub fn compare_mc_prepared(
    ct: &BasicCiphertext,
    ct2: &BasicCiphertext,
    key: &PreparedComparisonKey,
    stats: &mut PairingStats,
) -> Result<CmpOutcome> {
    key.check(ct, ct2)?;
    for i in 1..=ct.n as usize {
        let left0 = key.left(ct, i, false, stats);
        let right0 = key.right(ct2, i, false, stats);
        if left0 != right0 {
            return key.direction(ct, ct2, i, &left0, &right0, stats);
        }
    }
    Ok(CmpOutcome::equal(ct.n))
}
