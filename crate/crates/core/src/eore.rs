//! Encrypted ORE: basic ciphertext elements under an ElGamal-style mask.
//!
//! Every `F_{i,b} = H(E_b(i, m))^{s_j}` is published as
//! `(F_{i,b} · h_j^t, g^t)` with a fresh `t`, so ciphertexts reveal nothing
//! until a comparison key is issued. The four-element key
//! `(ĝ^{r s_j}, ĥ_k^{r s_j}, ĝ^{r s_k}, ĥ_j^{r s_k})` strips the mask inside
//! the pairing:
//!
//! ```text
//! e(F h_j^t, ĝ^{r s_k}) / e(g^t, ĥ_j^{r s_k}) = e(F, ĝ)^{r s_k}
//! ```
//!
//! There is deliberately no keyless comparison in this module.

use rand::{CryptoRng, RngCore};

use crate::basic::{prefix_elements, ClientSecretKey, PublicParams};
use crate::encoding::{CmpOutcome, Plaintext};
use crate::error::{DecodeError, Error, Result};
use crate::pairing::{pair_prepared, G1Element, G2Element, GtElement, PairingStats, PreparedG2, Scalar};
use crate::wire::{tag, Reader, WireFormat, Writer};

/// Basic public parameters plus the mask bases `h_j = g^{a_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EorePublicParams {
    pub(crate) base: PublicParams,
    pub(crate) h: Vec<G1Element>,
}

impl EorePublicParams {
    pub fn base(&self) -> &PublicParams {
        &self.base
    }

    pub fn bits(&self) -> u8 {
        self.base.n
    }

    pub fn clients(&self) -> u32 {
        self.base.clients
    }

    pub fn mask_base(&self, j: u32) -> Option<&G1Element> {
        (j as usize).checked_sub(1).and_then(|i| self.h.get(i))
    }
}

impl WireFormat for EorePublicParams {
    const TAG: u8 = tag::EORE_PARAMS;

    fn write_body(&self, w: &mut Writer) {
        self.base.write_fields(w);
        self.h.iter().for_each(|h| w.g1(h));
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let base = PublicParams::read_fields(r)?;
        let h = (0..base.clients)
            .map(|_| {
                let h = r.g1()?;
                if h.is_identity() {
                    return Err(DecodeError::InvalidField("identity mask base".into()));
                }
                Ok(h)
            })
            .collect::<Result<_, _>>()?;
        Ok(EorePublicParams { base, h })
    }
}

/// Exponents `s_j` and the second-group mask bases `ĥ_j = ĝ^{a_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoreMasterKey {
    pub(crate) s: Vec<Scalar>,
    pub(crate) h_hat: Vec<G2Element>,
}

impl EoreMasterKey {
    pub fn clients(&self) -> u32 {
        self.s.len() as u32
    }

    pub fn exponent(&self, j: u32) -> Option<&Scalar> {
        (j as usize).checked_sub(1).and_then(|i| self.s.get(i))
    }

    pub fn mask_base(&self, j: u32) -> Option<&G2Element> {
        (j as usize).checked_sub(1).and_then(|i| self.h_hat.get(i))
    }

    fn lookup(&self, j: u32) -> Result<(Scalar, G2Element)> {
        match (self.exponent(j), self.mask_base(j)) {
            (Some(s), Some(h)) => Ok((*s, *h)),
            _ => Err(Error::ClientOutOfRange { index: j, max: self.clients() }),
        }
    }
}

impl WireFormat for EoreMasterKey {
    const TAG: u8 = tag::EORE_MASTER_KEY;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.s.len() as u32);
        self.s.iter().for_each(|s| w.scalar(s));
        self.h_hat.iter().for_each(|h| w.g2(h));
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let count = r.u32()?;
        if count == 0 {
            return Err(DecodeError::InvalidField("empty master key".into()));
        }
        let s = (0..count).map(|_| r.nonzero_scalar()).collect::<Result<_, _>>()?;
        let h_hat = (0..count).map(|_| r.g2()).collect::<Result<_, _>>()?;
        Ok(EoreMasterKey { s, h_hat })
    }
}

/// `4n` first-group elements: `(C_{i,b,0}, C_{i,b,1})` for every `i`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoreCiphertext {
    pub(crate) j: u32,
    pub(crate) n: u8,
    pub(crate) elements: Vec<[[G1Element; 2]; 2]>,
}

impl EoreCiphertext {
    pub fn client(&self) -> u32 {
        self.j
    }

    pub fn bits(&self) -> u8 {
        self.n
    }

    /// `(C_{i,b,0}, C_{i,b,1})` for `1 <= i <= n`.
    pub fn element(&self, i: usize, b: bool) -> &[G1Element; 2] {
        &self.elements[i - 1][b as usize]
    }

    pub fn element_count(&self) -> usize {
        4 * self.elements.len()
    }
}

impl WireFormat for EoreCiphertext {
    const TAG: u8 = tag::EORE_CIPHERTEXT;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.j);
        w.u16(self.n as u16);
        for per_index in &self.elements {
            for masked in per_index {
                w.g1(&masked[0]);
                w.g1(&masked[1]);
            }
        }
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let j = r.client_index()?;
        let n = r.bit_length()?;
        let elements = (0..n)
            .map(|_| Ok([[r.g1()?, r.g1()?], [r.g1()?, r.g1()?]]))
            .collect::<Result<_, DecodeError>>()?;
        Ok(EoreCiphertext { j, n, elements })
    }
}

/// `CK_{j,k} = (K_{0,0}, K_{0,1}, K_{1,0}, K_{1,1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoreComparisonKey {
    pub(crate) j: u32,
    pub(crate) k: u32,
    pub(crate) keys: [[G2Element; 2]; 2],
}

impl EoreComparisonKey {
    pub fn clients(&self) -> (u32, u32) {
        (self.j, self.k)
    }

    /// `K_{b,c}`.
    pub fn element(&self, b: usize, c: usize) -> &G2Element {
        &self.keys[b][c]
    }

    pub fn swapped(&self) -> Self {
        EoreComparisonKey { j: self.k, k: self.j, keys: [self.keys[1], self.keys[0]] }
    }

    fn prepare(&self, left: u32, right: u32) -> Result<PreparedEoreKey> {
        let prep = |pair: &[G2Element; 2]| [pair[0].prepare(), pair[1].prepare()];
        // A ciphertext of client j is unmasked with (K_{1,0}, K_{1,1}); one of k with (K_{0,0}, K_{0,1}).
        let (l, r) = if left == self.j && right == self.k {
            (&self.keys[1], &self.keys[0])
        } else if left == self.k && right == self.j {
            (&self.keys[0], &self.keys[1])
        } else {
            return Err(Error::OrientationMismatch { key_j: self.j, key_k: self.k, left, right });
        };
        Ok(PreparedEoreKey { left_key: prep(l), right_key: prep(r) })
    }
}

impl WireFormat for EoreComparisonKey {
    const TAG: u8 = tag::EORE_CMP_KEY;

    fn write_body(&self, w: &mut Writer) {
        w.u32(self.j);
        w.u32(self.k);
        self.keys.iter().flatten().for_each(|k| w.g2(k));
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let j = r.client_index()?;
        let k = r.client_index()?;
        if j == k {
            return Err(DecodeError::InvalidField("comparison key for a single client".into()));
        }
        let keys = [[r.g2()?, r.g2()?], [r.g2()?, r.g2()?]];
        if keys.iter().flatten().any(G2Element::is_identity) {
            return Err(DecodeError::InvalidField("identity key element".into()));
        }
        Ok(EoreComparisonKey { j, k, keys })
    }
}

struct PreparedEoreKey {
    left_key: [PreparedG2; 2],
    right_key: [PreparedG2; 2],
}

/// `e(C_0, K_0) / e(C_1, K_1)`: the pairing value of one masked element.
fn unmasked(masked: &[G1Element; 2], key: &[PreparedG2; 2], stats: &mut PairingStats) -> GtElement {
    pair_prepared(&masked[0], &key[0], stats) / pair_prepared(&masked[1], &key[1], stats)
}

pub fn eore_setup<R: RngCore + CryptoRng>(rng: &mut R, clients: u32, n: u8) -> Result<(EoreMasterKey, EorePublicParams)> {
    PublicParams::new(clients, n)?;
    let s = (0..clients).map(|_| Scalar::random_nonzero(rng)).collect();
    let a = (0..clients).map(|_| Scalar::random_nonzero(rng)).collect();
    setup_from_exponents(s, a, n)
}

/// Deterministic setup from explicit `s_j` and mask exponents `a_j`.
pub fn setup_from_exponents(s: Vec<Scalar>, a: Vec<Scalar>, n: u8) -> Result<(EoreMasterKey, EorePublicParams)> {
    if s.len() != a.len() {
        return Err(Error::InvalidParameter("exponent lists differ in length".into()));
    }
    if s.iter().chain(&a).any(Scalar::is_zero) {
        return Err(Error::InvalidParameter("zero exponent".into()));
    }
    let base = PublicParams::new(s.len() as u32, n)?;
    let h = a.iter().map(|a| base.g.pow(a)).collect();
    let h_hat = a.iter().map(|a| base.g_hat.pow(a)).collect();
    Ok((EoreMasterKey { s, h_hat }, EorePublicParams { base, h }))
}

pub fn gen_key(j: u32, mk: &EoreMasterKey, pp: &EorePublicParams) -> Result<ClientSecretKey> {
    pp.base.check_client(j)?;
    Ok(ClientSecretKey { j, s: mk.lookup(j)?.0 })
}

/// Randomized encryption; a fresh mask exponent per element.
pub fn eore_encrypt<R: RngCore + CryptoRng>(
    m: &Plaintext,
    sk: &ClientSecretKey,
    pp: &EorePublicParams,
    rng: &mut R,
) -> Result<EoreCiphertext> {
    eore_encrypt_with_stats(m, sk, pp, rng, &mut PairingStats::new())
}

pub fn eore_encrypt_with_stats<R: RngCore + CryptoRng>(
    m: &Plaintext,
    sk: &ClientSecretKey,
    pp: &EorePublicParams,
    rng: &mut R,
    stats: &mut PairingStats,
) -> Result<EoreCiphertext> {
    pp.base.check_plaintext(m)?;
    pp.base.check_client(sk.j)?;
    let h = pp.h[sk.j as usize - 1];
    let plain = prefix_elements(m, &sk.s, stats);
    let mut mask = |f: &G1Element| {
        let t = Scalar::random_nonzero(rng);
        stats.g1_exps += 2;
        [f.combine(&h.pow(&t)), pp.base.g.pow(&t)]
    };
    let elements = plain.iter().map(|[f0, f1]| [mask(f0), mask(f1)]).collect();
    Ok(EoreCiphertext { j: sk.j, n: m.bits(), elements })
}

pub fn eore_gen_cmp_key<R: RngCore + CryptoRng>(
    j: u32,
    k: u32,
    mk: &EoreMasterKey,
    pp: &EorePublicParams,
    rng: &mut R,
) -> Result<EoreComparisonKey> {
    pp.base.check_client(j)?;
    pp.base.check_client(k)?;
    if j == k {
        return Err(Error::SameClient(j));
    }
    let (sj, hj) = mk.lookup(j)?;
    let (sk, hk) = mk.lookup(k)?;
    let r = Scalar::random_nonzero(rng);
    let (rsj, rsk) = (r * sj, r * sk);
    let g_hat = &pp.base.g_hat;
    Ok(EoreComparisonKey {
        j,
        k,
        keys: [[g_hat.pow(&rsj), hk.pow(&rsj)], [g_hat.pow(&rsk), hj.pow(&rsk)]],
    })
}

/// Keyed comparison; `4 i* + 4` pairings when the plaintexts differ at `i*`,
/// `4n` when equal.
pub fn eore_compare_mc(
    ct: &EoreCiphertext,
    ct2: &EoreCiphertext,
    ck: &EoreComparisonKey,
    pp: &EorePublicParams,
    stats: &mut PairingStats,
) -> Result<CmpOutcome> {
    let key = ck.prepare(ct.j, ct2.j)?;
    if ct.n != ct2.n || ct.n != pp.bits() {
        return Err(Error::BitLengthMismatch { left: ct.n, right: ct2.n });
    }
    // Indices run 1..=n.
    for i in 1..=ct.n as usize {
        let left0 = unmasked(ct.element(i, false), &key.left_key, stats);
        let right0 = unmasked(ct2.element(i, false), &key.right_key, stats);
        if left0 == right0 {
            continue;
        }
        let left1 = unmasked(ct.element(i, true), &key.left_key, stats);
        let right1 = unmasked(ct2.element(i, true), &key.right_key, stats);
        return match (left1 == right0, left0 == right1) {
            (true, false) => Ok(CmpOutcome { less: true, msdb: i }),
            (false, true) => Ok(CmpOutcome { less: false, msdb: i }),
            _ => Err(Error::Integrity { index: i }),
        };
    }
    Ok(CmpOutcome::equal(ct.n))
}
