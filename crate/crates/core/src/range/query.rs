//! Range queries "which rows hold a value less than m'" over an encrypted
//! column of client `j`, given a query ciphertext of client `k` and `CK_{j,k}`.

use std::collections::BTreeSet;
use std::ops::AddAssign;

use rand::Rng;

use crate::basic::{self, BasicCiphertext, BasicComparisonKey, PreparedComparisonKey, PublicParams};
use crate::encoding::CmpOutcome;
use crate::error::{Error, Result};
use crate::pairing::PairingStats;

use super::EncryptedColumn;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub compare_mc_calls: u64,
    pub compare_calls: u64,
    pub pairings: u64,
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, rhs: Self) {
        self.compare_mc_calls += rhs.compare_mc_calls;
        self.compare_calls += rhs.compare_calls;
        self.pairings += rhs.pairings;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeQueryResult {
    pub row_ids: BTreeSet<u64>,
    pub stats: QueryStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Simple,
    BinSearch,
    Hybrid,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Simple, Method::BinSearch, Method::Hybrid];

    pub fn name(self) -> &'static str {
        match self {
            Method::Simple => "simple",
            Method::BinSearch => "binsearch",
            Method::Hybrid => "hybrid",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// Keyed comparison locating the first differing index by binary search.
///
/// The per-index equality `e(C_{i,0}, K_left) = e(C'_{i,0}, K_right)` holds
/// exactly for `i < i*`, so `⌈log2 n⌉` probes of two pairings narrow `i*`
/// down to one candidate. A probed candidate needs two more pairings for the
/// direction, 12 in total at `n = 32`. The last index is never probed, so
/// when the candidate is `n` the outcome costs 12 (less), 13 (equal) or
/// 14 (not less) pairings.
pub fn compare_mc_binsearch(
    ct: &BasicCiphertext,
    ct2: &BasicCiphertext,
    ck: &BasicComparisonKey,
    pp: &PublicParams,
    stats: &mut PairingStats,
) -> Result<CmpOutcome> {
    if ct.bits() != pp.bits() {
        return Err(Error::BitLengthMismatch { left: ct.bits(), right: pp.bits() });
    }
    compare_mc_binsearch_prepared(ct, ct2, &ck.prepare(ct.client(), ct2.client())?, stats)
}

pub fn compare_mc_binsearch_prepared(
    ct: &BasicCiphertext,
    ct2: &BasicCiphertext,
    key: &PreparedComparisonKey,
    stats: &mut PairingStats,
) -> Result<CmpOutcome> {
    key.check(ct, ct2)?;
    let n = ct.bits() as usize;
    let (mut lo, mut hi) = (1, n);
    let mut at_hi = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let left0 = key.left(ct, mid, false, stats);
        let right0 = key.right(ct2, mid, false, stats);
        if left0 == right0 {
            lo = mid + 1;
        } else {
            hi = mid;
            at_hi = Some((left0, right0));
        }
    }
    // A candidate below n was the last failing probe.
    if let Some((left0, right0)) = at_hi.filter(|_| lo < n) {
        return key.direction(ct, ct2, lo, &left0, &right0, stats);
    }
    // Candidate n is never probed: less at n, equal, or not less at n.
    let left1 = key.left(ct, n, true, stats);
    let right0 = key.right(ct2, n, false, stats);
    if left1 == right0 {
        return Ok(CmpOutcome { less: true, msdb: n });
    }
    let left0 = key.left(ct, n, false, stats);
    if left0 == right0 {
        return Ok(CmpOutcome::equal(ct.bits()));
    }
    if left0 == key.right(ct2, n, true, stats) {
        Ok(CmpOutcome { less: false, msdb: n })
    } else {
        Err(Error::Integrity { index: n })
    }
}

fn prepare(col: &EncryptedColumn, qct: &BasicCiphertext, ck: &BasicComparisonKey, pp: &PublicParams) -> Result<PreparedComparisonKey> {
    if col.bits() != pp.bits() || qct.bits() != pp.bits() {
        return Err(Error::BitLengthMismatch { left: col.bits(), right: qct.bits() });
    }
    ck.prepare(col.owner(), qct.client())
}

fn scan(
    col: &EncryptedColumn,
    qct: &BasicCiphertext,
    ck: &BasicComparisonKey,
    pp: &PublicParams,
    compare: fn(&BasicCiphertext, &BasicCiphertext, &PreparedComparisonKey, &mut PairingStats) -> Result<CmpOutcome>,
) -> Result<RangeQueryResult> {
    let key = prepare(col, qct, ck, pp)?;
    let mut pairing = PairingStats::new();
    let mut result = RangeQueryResult::default();
    for (id, ct) in col.rows() {
        if compare(ct, qct, &key, &mut pairing)?.less {
            result.row_ids.insert(*id);
        }
        result.stats.compare_mc_calls += 1;
    }
    result.stats.pairings = pairing.pairings;
    Ok(result)
}

/// One sequential keyed comparison per row.
pub fn query_simple(col: &EncryptedColumn, qct: &BasicCiphertext, ck: &BasicComparisonKey, pp: &PublicParams) -> Result<RangeQueryResult> {
    scan(col, qct, ck, pp, basic::compare_mc_prepared)
}

/// One binary-search keyed comparison per row.
pub fn query_binsearch(col: &EncryptedColumn, qct: &BasicCiphertext, ck: &BasicComparisonKey, pp: &PublicParams) -> Result<RangeQueryResult> {
    scan(col, qct, ck, pp, compare_mc_binsearch_prepared)
}

/// Quickselect-style search: one keyed comparison of a random pivot against
/// the query, then the keyless same-client comparison splits the remaining
/// rows around the pivot. The side that is settled is accepted or dropped
/// whole and the search continues in the other side.
pub fn query_hybrid<R: Rng>(
    col: &EncryptedColumn,
    qct: &BasicCiphertext,
    ck: &BasicComparisonKey,
    pp: &PublicParams,
    rng: &mut R,
) -> Result<RangeQueryResult> {
    let key = prepare(col, qct, ck, pp)?;
    let mut pairing = PairingStats::new();
    let mut result = RangeQueryResult::default();
    let mut current: Vec<&(u64, BasicCiphertext)> = col.rows().iter().collect();
    while !current.is_empty() {
        let pivot = current.swap_remove(rng.gen_range(0..current.len()));
        let pivot_less = basic::compare_mc_prepared(&pivot.1, qct, &key, &mut pairing)?.less;
        result.stats.compare_mc_calls += 1;
        let (mut below, mut above) = (Vec::new(), Vec::new());
        for row in current {
            result.stats.compare_calls += 1;
            if basic::compare(&row.1, &pivot.1, pp)?.less {
                below.push(row);
            } else {
                above.push(row);
            }
        }
        if pivot_less {
            result.row_ids.insert(pivot.0);
            result.row_ids.extend(below.iter().map(|r| r.0));
            current = above;
        } else {
            current = below;
        }
    }
    result.stats.pairings = pairing.pairings;
    Ok(result)
}

pub fn run_query<R: Rng>(
    method: Method,
    col: &EncryptedColumn,
    qct: &BasicCiphertext,
    ck: &BasicComparisonKey,
    pp: &PublicParams,
    rng: &mut R,
) -> Result<RangeQueryResult> {
    match method {
        Method::Simple => query_simple(col, qct, ck, pp),
        Method::BinSearch => query_binsearch(col, qct, ck, pp),
        Method::Hybrid => query_hybrid(col, qct, ck, pp, rng),
    }
}
