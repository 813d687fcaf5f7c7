//! Timing and pairing counts of the three query methods on random columns.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index;
use rand::{CryptoRng, RngCore};

use crate::basic;
use crate::encoding::Plaintext;
use crate::error::{Error, Result};

use super::{run_query, EncryptedColumn, Method, QueryStats};

pub const CSV_HEADER: &str = "method,R,M,trial,wall_ms,pairings,compare_mc_calls,compare_calls";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Values are drawn from `[0, range)`.
    pub range: u64,
    /// Column size `M`.
    pub size: usize,
    pub trials: usize,
    pub methods: Vec<Method>,
    pub bits: u8,
}

impl BenchConfig {
    pub fn new(range: u64, size: usize, trials: usize) -> Self {
        BenchConfig { range, size, trials, methods: Method::ALL.to_vec(), bits: 32 }
    }

    fn validate(&self) -> Result<()> {
        if self.size == 0 || self.trials == 0 || self.methods.is_empty() {
            return Err(Error::InvalidParameter("size, trials and methods must be nonempty".into()));
        }
        if self.bits == 0 || self.bits > 63 || self.range > 1u64 << self.bits {
            return Err(Error::InvalidParameter(format!("range {} exceeds {} bits", self.range, self.bits)));
        }
        if self.range < self.size as u64 + 1 {
            return Err(Error::InvalidParameter(format!(
                "range {} too small for {} distinct values",
                self.range,
                self.size + 1
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub range: u64,
    pub size: usize,
    pub trial: usize,
    pub wall_ms: f64,
    pub stats: QueryStats,
}

/// Accepts a decimal integer or `2^k`.
pub fn parse_range(s: &str) -> Result<u64> {
    let bad = || Error::InvalidParameter(format!("invalid range {s:?}"));
    match s.split_once('^') {
        Some(("2", k)) => {
            let k: u32 = k.parse().map_err(|_| bad())?;
            1u64.checked_shl(k).filter(|_| k < 64).ok_or_else(bad)
        }
        Some(_) => Err(bad()),
        None => s.parse().map_err(|_| bad()),
    }
}

/// Per trial: fresh two-client instance, `M + 1` distinct values from
/// `[0, R)`, the first `M` encrypted under client 1 as the column and the
/// last under client 2 as the query. Every method runs on the same column.
pub fn run_bench<R: RngCore + CryptoRng>(cfg: &BenchConfig, rng: &mut R) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.trials * cfg.methods.len());
    for trial in 0..cfg.trials {
        let (mk, pp) = basic::setup(rng, 2, cfg.bits)?;
        let (s1, s2) = (basic::gen_key(1, &mk, &pp)?, basic::gen_key(2, &mk, &pp)?);
        let ck = basic::gen_cmp_key(1, 2, &mk, &pp, rng)?;
        let values = index::sample(rng, cfg.range as usize, cfg.size + 1).into_vec();
        let pt = |v: usize| Plaintext::new(v as u64, cfg.bits);
        let cts = values[..cfg.size]
            .iter()
            .map(|&v| basic::encrypt(&pt(v)?, &s1, &pp))
            .collect::<Result<Vec<_>>>()?;
        let col = EncryptedColumn::from_ciphertexts(1, cfg.bits, cts)?;
        let qct = basic::encrypt(&pt(values[cfg.size])?, &s2, &pp)?;
        for &method in &cfg.methods {
            let start = Instant::now();
            let result = run_query(method, &col, &qct, &ck, &pp, rng)?;
            rows.push(BenchRow {
                method,
                range: cfg.range,
                size: cfg.size,
                trial,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
                stats: result.stats,
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.3},{},{},{}",
            r.method.name(),
            r.range,
            r.size,
            r.trial,
            r.wall_ms,
            r.stats.pairings,
            r.stats.compare_mc_calls,
            r.stats.compare_calls
        );
    }
    out
}

/// Mean pairings of `method` over the rows that used it.
pub fn mean_pairings(rows: &[BenchRow], method: Method) -> f64 {
    let picked: Vec<_> = rows.iter().filter(|r| r.method == method).collect();
    picked.iter().map(|r| r.stats.pairings as f64).sum::<f64>() / picked.len().max(1) as f64
}
