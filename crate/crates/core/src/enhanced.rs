//! Composed scheme: a single-client ORE ciphertext next to an EORE ciphertext.
//!
//! Within one client the ORE part compares without any key. Across clients
//! only the EORE part is used, and only with a comparison key, so nothing
//! crosses clients before a key is revealed.

use rand::{CryptoRng, RngCore};

use crate::basic::ClientSecretKey;
use crate::encoding::{CmpOutcome, Plaintext};
use crate::eore::{self, EoreCiphertext, EoreComparisonKey, EoreMasterKey, EorePublicParams};
use crate::error::{DecodeError, Error, Result};
use crate::ore::{ore_compare, ore_encrypt, ore_setup, OreCiphertext, OreSecretKey};
use crate::pairing::PairingStats;
use crate::wire::{tag, Reader, WireFormat, Writer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedSecretKey {
    pub(crate) ore: OreSecretKey,
    pub(crate) eore: ClientSecretKey,
}

impl EnhancedSecretKey {
    pub fn new(ore: OreSecretKey, eore: ClientSecretKey) -> Self {
        EnhancedSecretKey { ore, eore }
    }

    pub fn client(&self) -> u32 {
        self.eore.client()
    }

    pub fn ore_key(&self) -> &OreSecretKey {
        &self.ore
    }

    pub fn eore_key(&self) -> &ClientSecretKey {
        &self.eore
    }
}

impl WireFormat for EnhancedSecretKey {
    const TAG: u8 = tag::ENHANCED_CLIENT_KEY;

    fn write_body(&self, w: &mut Writer) {
        self.eore.write_body(w);
        self.ore.write_body(w);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let eore = ClientSecretKey::read_body(r)?;
        let ore = OreSecretKey::read_body(r)?;
        Ok(EnhancedSecretKey { ore, eore })
    }
}

/// `(OC_j, EC_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedCiphertext {
    pub(crate) oc: OreCiphertext,
    pub(crate) ec: EoreCiphertext,
}

impl EnhancedCiphertext {
    pub fn new(oc: OreCiphertext, ec: EoreCiphertext) -> Result<Self> {
        if oc.bits() != ec.bits() {
            return Err(Error::BitLengthMismatch { left: oc.bits(), right: ec.bits() });
        }
        Ok(EnhancedCiphertext { oc, ec })
    }

    pub fn client(&self) -> u32 {
        self.ec.client()
    }

    pub fn bits(&self) -> u8 {
        self.ec.bits()
    }

    pub fn ore_part(&self) -> &OreCiphertext {
        &self.oc
    }

    pub fn eore_part(&self) -> &EoreCiphertext {
        &self.ec
    }
}

impl WireFormat for EnhancedCiphertext {
    const TAG: u8 = tag::ENHANCED_CIPHERTEXT;

    fn write_body(&self, w: &mut Writer) {
        let oc = self.oc.to_bytes();
        w.u32(oc.len() as u32);
        w.bytes(&oc);
        w.bytes(&self.ec.to_bytes());
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let len = r.u32()? as usize;
        let oc = OreCiphertext::from_bytes(r.take(len)?)?;
        r.header(EoreCiphertext::TAG)?;
        let ec = EoreCiphertext::read_body(r)?;
        if oc.bits() != ec.bits() {
            return Err(DecodeError::InvalidField("parts disagree on bit length".into()));
        }
        Ok(EnhancedCiphertext { oc, ec })
    }
}

pub fn enh_setup<R: RngCore + CryptoRng>(rng: &mut R, clients: u32, n: u8) -> Result<(EoreMasterKey, EorePublicParams)> {
    eore::eore_setup(rng, clients, n)
}

/// Fresh ORE key plus the client's EORE key.
pub fn enh_gen_key<R: RngCore + CryptoRng>(
    j: u32,
    mk: &EoreMasterKey,
    pp: &EorePublicParams,
    rng: &mut R,
) -> Result<EnhancedSecretKey> {
    let eore = eore::gen_key(j, mk, pp)?;
    Ok(EnhancedSecretKey { ore: ore_setup(rng), eore })
}

pub fn enh_encrypt<R: RngCore + CryptoRng>(
    m: &Plaintext,
    sk: &EnhancedSecretKey,
    pp: &EorePublicParams,
    rng: &mut R,
) -> Result<EnhancedCiphertext> {
    let ec = eore::eore_encrypt(m, &sk.eore, pp, rng)?;
    let oc = ore_encrypt(m, &sk.ore)?;
    Ok(EnhancedCiphertext { oc, ec })
}

/// Keyless comparison of two ciphertexts of one client, on the ORE parts.
pub fn enh_compare(ct: &EnhancedCiphertext, ct2: &EnhancedCiphertext) -> Result<CmpOutcome> {
    if ct.client() != ct2.client() {
        return Err(Error::ClientMismatch { left: ct.client(), right: ct2.client() });
    }
    ore_compare(&ct.oc, &ct2.oc)
}

pub fn enh_gen_cmp_key<R: RngCore + CryptoRng>(
    j: u32,
    k: u32,
    mk: &EoreMasterKey,
    pp: &EorePublicParams,
    rng: &mut R,
) -> Result<EoreComparisonKey> {
    eore::eore_gen_cmp_key(j, k, mk, pp, rng)
}

/// Keyed cross-client comparison, on the EORE parts.
pub fn enh_compare_mc(
    ct: &EnhancedCiphertext,
    ct2: &EnhancedCiphertext,
    ck: &EoreComparisonKey,
    pp: &EorePublicParams,
    stats: &mut PairingStats,
) -> Result<CmpOutcome> {
    eore::eore_compare_mc(&ct.ec, &ct2.ec, ck, pp, stats)
}
