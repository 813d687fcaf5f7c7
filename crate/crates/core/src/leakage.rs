//! Reference leakage functions and the empirically extractable view.
//!
//! A [`LeakageProfile`] lists, for query positions `i' < i` (1-based), the
//! order bit and, when leaked, the most significant differing bit. The
//! `leak_*` functions evaluate the permitted leakage from plaintexts;
//! [`adversary_view`] encrypts the same queries and collects whatever the
//! public comparison algorithms return with the revealed keys. Tests assert
//! the two agree record for record.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::{CryptoRng, Rng, RngCore};

use crate::encoding::{cmp, ind, Plaintext};
use crate::error::{Error, Result};
use crate::pairing::PairingStats;
use crate::{basic, enhanced, eore};

/// `((j_1, m_1), ..., (j_q, m_q))` with a uniform bit length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySequence {
    clients: u32,
    n: u8,
    items: Vec<(u32, Plaintext)>,
}

impl QuerySequence {
    pub fn new(clients: u32, n: u8, items: Vec<(u32, Plaintext)>) -> Result<Self> {
        for (j, m) in &items {
            if *j == 0 || *j > clients {
                return Err(Error::ClientOutOfRange { index: *j, max: clients });
            }
            if m.bits() != n {
                return Err(Error::BitLengthMismatch { left: m.bits(), right: n });
            }
        }
        Ok(QuerySequence { clients, n, items })
    }

    /// `q` queries with uniform clients and values below `2^n`.
    pub fn random<R: Rng>(rng: &mut R, clients: u32, n: u8, q: usize) -> Result<Self> {
        let items = (0..q)
            .map(|_| {
                let v = rng.gen::<u64>() >> (64 - n as u32);
                Ok((rng.gen_range(1..=clients), Plaintext::new(v, n)?))
            })
            .collect::<Result<_>>()?;
        QuerySequence::new(clients, n, items)
    }

    pub fn clients(&self) -> u32 {
        self.clients
    }

    pub fn bits(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(u32, Plaintext)] {
        &self.items
    }
}

/// Unordered client pairs whose comparison key is revealed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RevealedSet {
    pairs: BTreeSet<(u32, u32)>,
}

impl RevealedSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, j: u32, k: u32) -> Result<()> {
        if j == k {
            return Err(Error::SameClient(j));
        }
        self.pairs.insert((j.min(k), j.max(k)));
        Ok(())
    }

    pub fn contains(&self, j: u32, k: u32) -> bool {
        self.pairs.contains(&(j.min(k), j.max(k)))
    }

    /// Every pair of distinct clients in `1..=clients`.
    pub fn all(clients: u32) -> Self {
        let pairs = (1..=clients).flat_map(|j| (j + 1..=clients).map(move |k| (j, k))).collect();
        RevealedSet { pairs }
    }

    /// Each pair included independently with probability `p`.
    pub fn random<R: Rng>(rng: &mut R, clients: u32, p: f64) -> Self {
        let pairs = Self::all(clients).pairs.into_iter().filter(|_| rng.gen_bool(p)).collect();
        RevealedSet { pairs }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeakageRecord {
    /// Position `i'` of the earlier query, 1-based.
    pub earlier: usize,
    /// Position `i > i'`.
    pub later: usize,
    /// `cmp(m_{i'}, m_i)`.
    pub less: bool,
    /// `ind(m_{i'}, m_i)` where leaked.
    pub msdb: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeakageProfile {
    records: BTreeSet<LeakageRecord>,
}

impl LeakageProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, record: LeakageRecord) {
        debug_assert!(record.earlier < record.later);
        self.records.insert(record);
    }

    pub fn union(mut self, other: LeakageProfile) -> Self {
        self.records.extend(other.records);
        self
    }

    pub fn records(&self) -> impl Iterator<Item = &LeakageRecord> {
        self.records.iter()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Sorted CSV with header `earlier,later,cmp,msdb`; an absent msdb is empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("earlier,later,cmp,msdb\n");
        for r in &self.records {
            let msdb = r.msdb.map(|i| i.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", r.earlier, r.later, r.less as u8, msdb);
        }
        out
    }

    /// Records present in exactly one of the two profiles.
    pub fn difference(&self, other: &LeakageProfile) -> Vec<LeakageRecord> {
        self.records.symmetric_difference(&other.records).copied().collect()
    }
}

fn full_record(earlier: usize, later: usize, m: &Plaintext, m2: &Plaintext) -> LeakageRecord {
    LeakageRecord {
        earlier,
        later,
        less: cmp(m, m2).expect("uniform bit length"),
        msdb: Some(ind(m, m2).expect("uniform bit length")),
    }
}

fn pairs_where(q: &QuerySequence, keep: impl Fn(u32, u32) -> bool) -> LeakageProfile {
    let mut profile = LeakageProfile::new();
    for (a, (j, m)) in q.items.iter().enumerate() {
        for (b, (k, m2)) in q.items.iter().enumerate().skip(a + 1) {
            if keep(*j, *k) {
                profile.insert(full_record(a + 1, b + 1, m, m2));
            }
        }
    }
    profile
}

/// Basic scheme: pairs of one client, or of a revealed client pair.
pub fn leak_basic(s: &RevealedSet, q: &QuerySequence) -> LeakageProfile {
    pairs_where(q, |j, k| j == k || s.contains(j, k))
}

/// EORE: pairs of a revealed client pair only.
pub fn leak_eore(s: &RevealedSet, q: &QuerySequence) -> LeakageProfile {
    pairs_where(q, |j, k| s.contains(j, k))
}

/// Leakage of a single-client ORE over one client's messages, in order.
/// Returned records use positions within that subsequence.
pub trait OreLeakage {
    fn leak(&self, messages: &[Plaintext]) -> LeakageProfile;
}

/// Order bit plus most significant differing bit for every pair, as leaked by
/// the prefix-PRF ORE.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClwwLeakage;

impl OreLeakage for ClwwLeakage {
    fn leak(&self, messages: &[Plaintext]) -> LeakageProfile {
        let mut profile = LeakageProfile::new();
        for (a, m) in messages.iter().enumerate() {
            for (b, m2) in messages.iter().enumerate().skip(a + 1) {
                profile.insert(full_record(a + 1, b + 1, m, m2));
            }
        }
        profile
    }
}

/// Per-client ORE leakage on each client's subsequence, plus EORE leakage.
pub fn leak_enhanced(s: &RevealedSet, q: &QuerySequence, ore: &impl OreLeakage) -> LeakageProfile {
    let mut by_client: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (pos, (j, _)) in q.items.iter().enumerate() {
        by_client.entry(*j).or_default().push(pos + 1);
    }
    let mut profile = leak_eore(s, q);
    for positions in by_client.values() {
        let messages: Vec<_> = positions.iter().map(|&p| q.items[p - 1].1).collect();
        for r in ore.leak(&messages).records() {
            profile.insert(LeakageRecord {
                earlier: positions[r.earlier - 1],
                later: positions[r.later - 1],
                ..*r
            });
        }
    }
    profile
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Basic,
    Eore,
    Enhanced,
}

fn record(earlier: usize, later: usize, outcome: crate::CmpOutcome) -> LeakageRecord {
    LeakageRecord { earlier, later, less: outcome.less, msdb: Some(outcome.msdb) }
}

/// Sets up a fresh instance, encrypts `q`, issues keys for `s`, and runs every
/// public comparison the keys allow on every pair of ciphertexts.
pub fn adversary_view<R: RngCore + CryptoRng>(
    scheme: Scheme,
    s: &RevealedSet,
    q: &QuerySequence,
    rng: &mut R,
) -> Result<LeakageProfile> {
    let mut stats = PairingStats::new();
    let mut profile = LeakageProfile::new();
    let (clients, n) = (q.clients, q.n);
    match scheme {
        Scheme::Basic => {
            let (mk, pp) = basic::setup(rng, clients, n)?;
            let cts = q
                .items
                .iter()
                .map(|(j, m)| basic::encrypt(m, &basic::gen_key(*j, &mk, &pp)?, &pp))
                .collect::<Result<Vec<_>>>()?;
            let keys = s
                .pairs()
                .map(|(j, k)| Ok(((j, k), basic::gen_cmp_key(j, k, &mk, &pp, rng)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            for (a, ct) in cts.iter().enumerate() {
                for (b, ct2) in cts.iter().enumerate().skip(a + 1) {
                    let (j, k) = (ct.client(), ct2.client());
                    let outcome = if j == k {
                        basic::compare(ct, ct2, &pp)?
                    } else if let Some(ck) = keys.get(&(j.min(k), j.max(k))) {
                        basic::compare_mc(ct, ct2, ck, &pp, &mut stats)?
                    } else {
                        continue;
                    };
                    profile.insert(record(a + 1, b + 1, outcome));
                }
            }
        }
        Scheme::Eore => {
            let (mk, pp) = eore::eore_setup(rng, clients, n)?;
            let mut cts = Vec::with_capacity(q.len());
            for (j, m) in &q.items {
                cts.push(eore::eore_encrypt(m, &eore::gen_key(*j, &mk, &pp)?, &pp, rng)?);
            }
            let keys = s
                .pairs()
                .map(|(j, k)| Ok(((j, k), eore::eore_gen_cmp_key(j, k, &mk, &pp, rng)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            for (a, ct) in cts.iter().enumerate() {
                for (b, ct2) in cts.iter().enumerate().skip(a + 1) {
                    let (j, k) = (ct.client(), ct2.client());
                    // No algorithm compares EORE ciphertexts of one client.
                    if let Some(ck) = keys.get(&(j.min(k), j.max(k))) {
                        let outcome = eore::eore_compare_mc(ct, ct2, ck, &pp, &mut stats)?;
                        profile.insert(record(a + 1, b + 1, outcome));
                    }
                }
            }
        }
        Scheme::Enhanced => {
            let (mk, pp) = enhanced::enh_setup(rng, clients, n)?;
            let sks = (1..=clients)
                .map(|j| enhanced::enh_gen_key(j, &mk, &pp, rng))
                .collect::<Result<Vec<_>>>()?;
            let mut cts = Vec::with_capacity(q.len());
            for (j, m) in &q.items {
                cts.push(enhanced::enh_encrypt(m, &sks[*j as usize - 1], &pp, rng)?);
            }
            let keys = s
                .pairs()
                .map(|(j, k)| Ok(((j, k), enhanced::enh_gen_cmp_key(j, k, &mk, &pp, rng)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            for (a, ct) in cts.iter().enumerate() {
                for (b, ct2) in cts.iter().enumerate().skip(a + 1) {
                    let (j, k) = (ct.client(), ct2.client());
                    let outcome = if j == k {
                        enhanced::enh_compare(ct, ct2)?
                    } else if let Some(ck) = keys.get(&(j.min(k), j.max(k))) {
                        enhanced::enh_compare_mc(ct, ct2, ck, &pp, &mut stats)?
                    } else {
                        continue;
                    };
                    profile.insert(record(a + 1, b + 1, outcome));
                }
            }
        }
    }
    Ok(profile)
}
