//! Acceptance criteria 1-10. Each test prints one PASS/FAIL line to stderr.
//!
//! Golden files live in `tests/golden`; regenerate with `MCORE_REGEN_GOLDEN=1`.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use common::{golden_objects, mutation_check, oracle, pt, report, rng};
use mcore::basic::{self, BasicCiphertext, BasicComparisonKey, ClientSecretKey, MasterKey, PublicParams};
use mcore::enhanced::{self, EnhancedCiphertext, EnhancedSecretKey};
use mcore::eore::{self, EoreCiphertext, EoreComparisonKey, EoreMasterKey, EorePublicParams};
use mcore::leakage::{adversary_view, leak_basic, leak_enhanced, leak_eore, ClwwLeakage, QuerySequence, RevealedSet, Scheme};
use mcore::ore::{self, OreCiphertext, OreSecretKey};
use mcore::pairing::{pair, GtElement, G1_BYTES, G2_BYTES};
use mcore::range::{self, bench, EncryptedColumn, Method};
use mcore::{CmpOutcome, PairingStats, WireFormat};
use rand::Rng;

fn expect(a: u64, b: u64, n: u8) -> CmpOutcome {
    let (less, msdb) = oracle(a, b, n);
    CmpOutcome { less, msdb }
}

/// A pair whose first differing bit is `i` (1-based), in the given direction.
fn pair_at(rng: &mut impl Rng, i: usize, less: bool) -> (u64, u64) {
    let a = rng.gen::<u32>() as u64;
    let bit = 1u64 << (32 - i);
    let low = bit - 1;
    let lo_side = (a & !bit & !low) | (rng.gen::<u64>() & low);
    let hi_side = (a | bit) & !low | (rng.gen::<u64>() & low);
    if less {
        (lo_side, hi_side)
    } else {
        (hi_side, lo_side)
    }
}

fn tally(failures: &mut Vec<String>, what: &str, got: CmpOutcome, want: CmpOutcome) {
    if got != want && failures.len() < 5 {
        failures.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

#[test]
fn criterion_01_basic_correctness() {
    let mut rng = rng(1);
    let mut failures = Vec::new();
    let mut checked = 0;
    let (mk, pp) = basic::setup(&mut rng, 2, 5).unwrap();
    let (s1, s2) = (basic::gen_key(1, &mk, &pp).unwrap(), basic::gen_key(2, &mk, &pp).unwrap());
    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
    let c1: Vec<_> = (0..32).map(|v| basic::encrypt(&pt(v, 5), &s1, &pp).unwrap()).collect();
    let c2: Vec<_> = (0..32).map(|v| basic::encrypt(&pt(v, 5), &s2, &pp).unwrap()).collect();
    let mut stats = PairingStats::new();
    for a in 0..32u64 {
        for b in 0..32u64 {
            let want = expect(a, b, 5);
            tally(&mut failures, &format!("compare({a},{b})"), basic::compare(&c1[a as usize], &c1[b as usize], &pp).unwrap(), want);
            let got = basic::compare_mc(&c1[a as usize], &c2[b as usize], &ck, &pp, &mut stats).unwrap();
            tally(&mut failures, &format!("compare_mc({a},{b})"), got, want);
            checked += 2;
        }
    }
    let (mk, pp) = basic::setup(&mut rng, 2, 32).unwrap();
    let (s1, s2) = (basic::gen_key(1, &mk, &pp).unwrap(), basic::gen_key(2, &mk, &pp).unwrap());
    let ck = basic::gen_cmp_key(2, 1, &mk, &pp, &mut rng).unwrap();
    for _ in 0..1000 {
        let (a, b) = (rng.gen::<u32>() as u64, rng.gen::<u32>() as u64);
        let want = expect(a, b, 32);
        let a1 = basic::encrypt(&pt(a, 32), &s1, &pp).unwrap();
        let b1 = basic::encrypt(&pt(b, 32), &s1, &pp).unwrap();
        let b2 = basic::encrypt(&pt(b, 32), &s2, &pp).unwrap();
        tally(&mut failures, &format!("compare({a},{b})"), basic::compare(&a1, &b1, &pp).unwrap(), want);
        tally(&mut failures, &format!("compare_mc({a},{b})"), basic::compare_mc(&a1, &b2, &ck, &pp, &mut stats).unwrap(), want);
        checked += 2;
    }
    let outcome = if failures.is_empty() {
        Ok(format!("{checked} comparisons (5-bit exhaustive and 1000 random 32-bit pairs), 0 failures"))
    } else {
        Err(failures.join("; "))
    };
    report(1, "basic scheme correctness", outcome);
}

#[test]
fn criterion_02_eore_and_enhanced_correctness() {
    let mut rng = rng(2);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut stats = PairingStats::new();
    for (n, pairs) in [(4u8, None), (32u8, Some(500))] {
        let (mk, pp) = eore::eore_setup(&mut rng, 2, n).unwrap();
        let (e1, e2) = (eore::gen_key(1, &mk, &pp).unwrap(), eore::gen_key(2, &mk, &pp).unwrap());
        let h1 = enhanced::enh_gen_key(1, &mk, &pp, &mut rng).unwrap();
        let h2 = enhanced::enh_gen_key(2, &mk, &pp, &mut rng).unwrap();
        let ck = eore::eore_gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
        let values: Vec<(u64, u64)> = match pairs {
            None => (0..16).flat_map(|a| (0..16).map(move |b| (a, b))).collect(),
            Some(count) => (0..count).map(|_| (rng.gen::<u32>() as u64, rng.gen::<u32>() as u64)).collect(),
        };
        // Exhaustive domain: encrypt each value once per client and scheme.
        let domain: BTreeSet<u64> = values.iter().flat_map(|&(a, b)| [a, b]).collect();
        let enc = |rng: &mut rand_chacha::ChaCha20Rng, v: u64| {
            (
                eore::eore_encrypt(&pt(v, n), &e1, &pp, rng).unwrap(),
                eore::eore_encrypt(&pt(v, n), &e2, &pp, rng).unwrap(),
                enhanced::enh_encrypt(&pt(v, n), &h1, &pp, rng).unwrap(),
                enhanced::enh_encrypt(&pt(v, n), &h2, &pp, rng).unwrap(),
            )
        };
        let table: std::collections::BTreeMap<u64, _> = domain.iter().map(|&v| (v, enc(&mut rng, v))).collect();
        for (a, b) in values {
            let want = expect(a, b, n);
            let (ta, tb) = (&table[&a], &table[&b]);
            tally(&mut failures, &format!("eore_compare_mc({a},{b})"), eore::eore_compare_mc(&ta.0, &tb.1, &ck, &pp, &mut stats).unwrap(), want);
            tally(&mut failures, &format!("enh_compare({a},{b})"), enhanced::enh_compare(&ta.2, &tb.2).unwrap(), want);
            tally(&mut failures, &format!("enh_compare_mc({a},{b})"), enhanced::enh_compare_mc(&ta.2, &tb.3, &ck, &pp, &mut stats).unwrap(), want);
            checked += 3;
        }
    }
    let outcome = if failures.is_empty() {
        Ok(format!("{checked} comparisons (4-bit exhaustive and 500 random 32-bit pairs), 0 failures"))
    } else {
        Err(failures.join("; "))
    };
    report(2, "EORE and enhanced correctness", outcome);
}

#[test]
fn criterion_03_pairing_identities() {
    let mut rng = rng(3);
    let mut stats = PairingStats::new();
    let mut problems = Vec::new();
    let mut equalities = 0;
    let (mk, pp) = basic::setup(&mut rng, 2, 32).unwrap();
    let (s1, s2) = (basic::gen_key(1, &mk, &pp).unwrap(), basic::gen_key(2, &mk, &pp).unwrap());
    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
    let (k0, k1) = ck.elements();
    let (emk, epp) = eore::eore_setup(&mut rng, 2, 32).unwrap();
    let (e1, e2) = (eore::gen_key(1, &emk, &epp).unwrap(), eore::gen_key(2, &emk, &epp).unwrap());
    let eck = eore::eore_gen_cmp_key(1, 2, &emk, &epp, &mut rng).unwrap();
    // Unmasked value of a client-1 element under (K_{1,0}, K_{1,1}); of a client-2 element under (K_{0,0}, K_{0,1}).
    let unmask = |c: &[mcore::pairing::G1Element; 2], side: usize, stats: &mut PairingStats| -> GtElement {
        pair(&c[0], eck.element(side, 0), stats) / pair(&c[1], eck.element(side, 1), stats)
    };
    for t in 0..100 {
        let i_star = 1 + t % 32;
        let less = rng.gen();
        let (a, b) = pair_at(&mut rng, i_star, less);
        let x = basic::encrypt(&pt(a, 32), &s1, &pp).unwrap();
        let y = basic::encrypt(&pt(b, 32), &s2, &pp).unwrap();
        let ex = eore::eore_encrypt(&pt(a, 32), &e1, &epp, &mut rng).unwrap();
        let ey = eore::eore_encrypt(&pt(b, 32), &e2, &epp, &mut rng).unwrap();
        for i in 1..=i_star {
            let basic_eq = pair(x.element(i, false), k1, &mut stats) == pair(y.element(i, false), k0, &mut stats);
            let eore_eq = unmask(ex.element(i, false), 1, &mut stats) == unmask(ey.element(i, false), 0, &mut stats);
            let want = i < i_star;
            if basic_eq != want || eore_eq != want {
                problems.push(format!("pair {t} ({a},{b}) index {i}: basic {basic_eq}, eore {eore_eq}, want {want}"));
            }
            equalities += want as usize * 2;
        }
    }
    let outcome = if problems.is_empty() {
        Ok(format!("{equalities} prefix equalities held and every first differing index broke them, on 100 pairs"))
    } else {
        Err(problems.into_iter().take(5).collect::<Vec<_>>().join("; "))
    };
    report(3, "pairing identities below the first differing bit", outcome);
}

#[test]
fn criterion_04_pairing_counts() {
    let mut rng = rng(4);
    let (mk, pp) = basic::setup(&mut rng, 2, 32).unwrap();
    let (s1, s2) = (basic::gen_key(1, &mk, &pp).unwrap(), basic::gen_key(2, &mk, &pp).unwrap());
    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
    // Every first-differing index in both directions, plus random pairs.
    let mut pairs: Vec<(u64, u64)> = (1..=32).flat_map(|i| [pair_at(&mut rng, i, true), pair_at(&mut rng, i, false)]).collect();
    pairs.extend((0..200).map(|_| (rng.gen::<u32>() as u64, rng.gen::<u32>() as u64)));
    let mut seq_bad = Vec::new();
    let mut bin_bad = Vec::new();
    let (mut min, mut max) = (u64::MAX, 0);
    for (a, b) in pairs {
        if a == b {
            continue;
        }
        let x = basic::encrypt(&pt(a, 32), &s1, &pp).unwrap();
        let y = basic::encrypt(&pt(b, 32), &s2, &pp).unwrap();
        let (_, i_star) = oracle(a, b, 32);
        let mut s = PairingStats::new();
        basic::compare_mc(&x, &y, &ck, &pp, &mut s).unwrap();
        let want = 2 * i_star as u64 + 2;
        if s.pairings != want {
            seq_bad.push(format!("({a},{b}) used {} not {want}", s.pairings));
        }
        min = min.min(s.pairings);
        max = max.max(s.pairings);
        let mut s = PairingStats::new();
        range::compare_mc_binsearch(&x, &y, &ck, &pp, &mut s).unwrap();
        if s.pairings != 12 {
            bin_bad.push(format!("i*={i_star} less={} used {}", a < b, s.pairings));
        }
    }
    let outcome = if seq_bad.is_empty() && min == 4 && max == 66 && bin_bad.is_empty() {
        Ok("sequential 2*ind+2 exact (min 4, max 66); binsearch 12 on every unequal pair".to_string())
    } else {
        Err(format!(
            "sequential mismatches {:?}, min {min}, max {max}; binsearch off 12 on {} pair(s): {}",
            seq_bad,
            bin_bad.len(),
            bin_bad.join(", ")
        ))
    };
    report(4, "pairing counts at n=32", outcome);
}

fn equivalence_run(
    rng: &mut rand_chacha::ChaCha20Rng,
    col: &EncryptedColumn,
    qct: &BasicCiphertext,
    ck: &BasicComparisonKey,
    pp: &PublicParams,
    want: &BTreeSet<u64>,
) -> Option<String> {
    for m in Method::ALL {
        let got = range::run_query(m, col, qct, ck, pp, rng).unwrap();
        if &got.row_ids != want {
            return Some(format!("{m:?} returned {} rows, oracle {}", got.row_ids.len(), want.len()));
        }
    }
    None
}

#[test]
fn criterion_05_method_equivalence() {
    let mut rng = rng(5);
    let mut mismatches = Vec::new();
    let (mk, pp) = basic::setup(&mut rng, 2, 5).unwrap();
    let (s1, s2) = (basic::gen_key(1, &mk, &pp).unwrap(), basic::gen_key(2, &mk, &pp).unwrap());
    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
    let col = EncryptedColumn::from_ciphertexts(1, 5, (0..32).map(|v| basic::encrypt(&pt(v, 5), &s1, &pp).unwrap())).unwrap();
    for q in 0..32u64 {
        let qct = basic::encrypt(&pt(q, 5), &s2, &pp).unwrap();
        let want: BTreeSet<u64> = (0..q).collect();
        if let Some(m) = equivalence_run(&mut rng, &col, &qct, &ck, &pp, &want) {
            mismatches.push(format!("5-bit query {q}: {m}"));
        }
    }
    for trial in 0..50 {
        let (mk, pp) = basic::setup(&mut rng, 2, 32).unwrap();
        let (s1, s2) = (basic::gen_key(1, &mk, &pp).unwrap(), basic::gen_key(2, &mk, &pp).unwrap());
        let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
        let values: Vec<u64> = (0..100).map(|_| rng.gen::<u32>() as u64).collect();
        let q = rng.gen::<u32>() as u64;
        let col = EncryptedColumn::from_ciphertexts(1, 32, values.iter().map(|&v| basic::encrypt(&pt(v, 32), &s1, &pp).unwrap())).unwrap();
        let qct = basic::encrypt(&pt(q, 32), &s2, &pp).unwrap();
        let want: BTreeSet<u64> = values.iter().enumerate().filter(|(_, &v)| v < q).map(|(i, _)| i as u64).collect();
        if let Some(m) = equivalence_run(&mut rng, &col, &qct, &ck, &pp, &want) {
            mismatches.push(format!("random column {trial}: {m}"));
        }
    }
    let outcome = if mismatches.is_empty() {
        Ok("32 exhaustive 5-bit queries and 50 random M=100 columns, 0 mismatches".to_string())
    } else {
        Err(mismatches.join("; "))
    };
    report(5, "range-query method equivalence", outcome);
}

#[test]
fn criterion_06_table_trends() {
    let mut rng = rng(6);
    let ranges = [8u32, 16, 24, 28, 32];
    let mut means = Vec::new();
    for &k in &ranges {
        let cfg = bench::BenchConfig::new(1 << k, 100, 20);
        let rows = bench::run_bench(&cfg, &mut rng).unwrap();
        means.push((
            k,
            bench::mean_pairings(&rows, Method::Simple),
            bench::mean_pairings(&rows, Method::BinSearch),
            bench::mean_pairings(&rows, Method::Hybrid),
        ));
    }
    let table: Vec<String> = means
        .iter()
        .map(|(k, s, b, h)| format!("R=2^{k}: simple {s:.1}, binsearch {b:.1}, hybrid {h:.1}"))
        .collect();
    let hybrid_best = means.iter().all(|(_, s, b, h)| h < &s.min(*b));
    let simple_decreasing = means.windows(2).all(|w| w[1].1 < w[0].1);
    let bin_constant = means.iter().all(|(_, _, b, _)| *b == means[0].2);
    let outcome = if hybrid_best && simple_decreasing && bin_constant {
        Ok(table.join("; "))
    } else {
        Err(format!(
            "hybrid lowest {hybrid_best}, simple decreasing {simple_decreasing}, binsearch constant {bin_constant}; {}",
            table.join("; ")
        ))
    };
    report(6, "mean pairing trends over R at M=100, 20 trials", outcome);
}

#[test]
fn criterion_07_leakage_equivalence() {
    let mut rng = rng(7);
    let mut mismatches = Vec::new();
    let mut records = 0;
    for trial in 0..50 {
        let q_len = rng.gen_range(2..=30);
        let n = [8u8, 16, 32][trial % 3];
        let q = QuerySequence::random(&mut rng, 4, n, q_len).unwrap();
        let s = match trial % 10 {
            0 => RevealedSet::new(),
            1 => RevealedSet::all(4),
            _ => RevealedSet::random(&mut rng, 4, 0.5),
        };
        let checks = [
            (Scheme::Basic, leak_basic(&s, &q)),
            (Scheme::Eore, leak_eore(&s, &q)),
            (Scheme::Enhanced, leak_enhanced(&s, &q, &ClwwLeakage)),
        ];
        for (scheme, want) in checks {
            let got = adversary_view(scheme, &s, &q, &mut rng).unwrap();
            if got != want {
                mismatches.push(format!("trial {trial} {scheme:?}: {:?}", got.difference(&want)));
            }
            if scheme == Scheme::Eore && s.is_empty() && !got.is_empty() {
                mismatches.push(format!("trial {trial}: EORE view nonempty without keys"));
            }
            records += want.len();
        }
    }
    let outcome = if mismatches.is_empty() {
        Ok(format!("50 trials x 3 schemes, {records} records matched, empty-key cases included"))
    } else {
        Err(mismatches.into_iter().take(3).collect::<Vec<_>>().join("; "))
    };
    report(7, "leakage equivalence", outcome);
}

#[test]
fn criterion_08_sizes() {
    let mut rng = rng(8);
    let mut problems = Vec::new();
    const FRAMING_CT: usize = 6 + 4 + 2;
    const FRAMING_KEY: usize = 6 + 4 + 4;
    for n in [1u8, 8, 32, 64] {
        let (mk, pp) = basic::setup(&mut rng, 2, n).unwrap();
        let sk = basic::gen_key(1, &mk, &pp).unwrap();
        let ct = basic::encrypt(&pt(1, n), &sk, &pp).unwrap();
        let len = ct.to_bytes().len();
        if len != FRAMING_CT + 2 * n as usize * G1_BYTES || ct.element_count() != 2 * n as usize {
            problems.push(format!("basic ct n={n}: {len} bytes"));
        }
        let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
        if ck.to_bytes().len() != FRAMING_KEY + 2 * G2_BYTES {
            problems.push(format!("basic key: {} bytes", ck.to_bytes().len()));
        }
        let (emk, epp) = eore::eore_setup(&mut rng, 2, n).unwrap();
        let esk = eore::gen_key(1, &emk, &epp).unwrap();
        let ect = eore::eore_encrypt(&pt(1, n), &esk, &epp, &mut rng).unwrap();
        let len = ect.to_bytes().len();
        if len != FRAMING_CT + 4 * n as usize * G1_BYTES || ect.element_count() != 4 * n as usize {
            problems.push(format!("eore ct n={n}: {len} bytes"));
        }
        let eck = eore::eore_gen_cmp_key(1, 2, &emk, &epp, &mut rng).unwrap();
        if eck.to_bytes().len() != FRAMING_KEY + 4 * G2_BYTES {
            problems.push(format!("eore key: {} bytes", eck.to_bytes().len()));
        }
    }
    let outcome = if problems.is_empty() {
        Ok(format!(
            "basic ct {FRAMING_CT}+2n*{G1_BYTES}, EORE ct {FRAMING_CT}+4n*{G1_BYTES}, keys {FRAMING_KEY}+2*{G2_BYTES} and {FRAMING_KEY}+4*{G2_BYTES} bytes"
        ))
    } else {
        Err(problems.join("; "))
    };
    report(8, "ciphertext and key sizes", outcome);
}

#[test]
fn criterion_09_key_management_modes() {
    let mut rng = rng(9);
    let (mk, pp) = basic::setup(&mut rng, 3, 32).unwrap();
    let sks: Vec<_> = (1..=3).map(|j| basic::gen_key(j, &mk, &pp).unwrap()).collect();
    let mut mismatches = Vec::new();
    let mut stats = PairingStats::new();
    for mode in ["centerless", "reduced-trust"] {
        for t in 0..100 {
            let (j, k) = [(1, 2), (2, 3), (3, 1)][t % 3];
            let (skj, skk) = (&sks[j as usize - 1], &sks[k as usize - 1]);
            let key = match mode {
                "centerless" => basic::assemble_centerless_key(
                    j,
                    k,
                    basic::gen_cmp_key_share_centerless(j, k, skj).unwrap(),
                    basic::gen_cmp_key_share_centerless(j, k, skk).unwrap(),
                )
                .unwrap(),
                _ => basic::gen_cmp_key_from_registrations(
                    j,
                    k,
                    &basic::register_client(skj, &pp),
                    &basic::register_client(skk, &pp),
                    &pp,
                    &mut rng,
                )
                .unwrap(),
            };
            let center = basic::gen_cmp_key(j, k, &mk, &pp, &mut rng).unwrap();
            let (a, b) = if t % 4 == 0 {
                pair_at(&mut rng, 1 + t % 32, t % 8 == 0)
            } else {
                (rng.gen::<u32>() as u64, rng.gen::<u32>() as u64)
            };
            let x = basic::encrypt(&pt(a, 32), skj, &pp).unwrap();
            let y = basic::encrypt(&pt(b, 32), skk, &pp).unwrap();
            let via_mode = basic::compare_mc(&x, &y, &key, &pp, &mut stats).unwrap();
            let via_center = basic::compare_mc(&x, &y, &center, &pp, &mut stats).unwrap();
            if via_mode != via_center || via_mode != expect(a, b, 32) {
                mismatches.push(format!("{mode} ({j},{k}) {a} vs {b}: {via_mode:?} / {via_center:?}"));
            }
        }
    }
    let outcome = if mismatches.is_empty() {
        Ok("centerless and reduced-trust keys agree with center-issued keys on 100 comparisons each".to_string())
    } else {
        Err(mismatches.into_iter().take(5).collect::<Vec<_>>().join("; "))
    };
    report(9, "key-management modes", outcome);
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn round_trip<T: WireFormat + PartialEq + std::fmt::Debug>(v: &T) -> bool {
    T::from_bytes(&v.to_bytes()).map(|d| &d == v).unwrap_or(false)
}

fn round_trips(rng: &mut rand_chacha::ChaCha20Rng, iterations: usize) -> Result<(), String> {
    for it in 0..iterations {
        let n = rng.gen_range(1..=8u8);
        let clients = rng.gen_range(2..=5u32);
        let (j, k) = (rng.gen_range(1..=clients), rng.gen_range(1..clients));
        let k = if k >= j { k + 1 } else { k };
        let v = rng.gen::<u64>() >> (64 - n as u32);
        let (mk, pp) = basic::setup(rng, clients, n).unwrap();
        let sk = basic::gen_key(j, &mk, &pp).unwrap();
        let ct = basic::encrypt(&pt(v, n), &sk, &pp).unwrap();
        let ck = basic::gen_cmp_key(j, k, &mk, &pp, rng).unwrap();
        let (emk, epp) = eore::eore_setup(rng, clients, n).unwrap();
        let esk = eore::gen_key(j, &emk, &epp).unwrap();
        let ect = eore::eore_encrypt(&pt(v, n), &esk, &epp, rng).unwrap();
        let eck = eore::eore_gen_cmp_key(j, k, &emk, &epp, rng).unwrap();
        let wide = rng.gen_range(1..=64u8);
        let ok = ore::ore_setup(rng);
        let oct = ore::ore_encrypt(&pt(rng.gen::<u64>() >> (64 - wide as u32), wide), &ok).unwrap();
        let hsk = enhanced::enh_gen_key(j, &emk, &epp, rng).unwrap();
        let hct = enhanced::enh_encrypt(&pt(v, n), &hsk, &epp, rng).unwrap();
        let mut col = EncryptedColumn::new(j, n);
        for _ in 0..rng.gen_range(0..3) {
            let _ = col.push(rng.gen(), ct.clone());
        }
        let ok_all = round_trip::<PublicParams>(&pp)
            && round_trip::<MasterKey>(&mk)
            && round_trip::<ClientSecretKey>(&sk)
            && round_trip::<BasicCiphertext>(&ct)
            && round_trip::<BasicComparisonKey>(&ck)
            && round_trip::<EorePublicParams>(&epp)
            && round_trip::<EoreMasterKey>(&emk)
            && round_trip::<EoreCiphertext>(&ect)
            && round_trip::<EoreComparisonKey>(&eck)
            && round_trip::<OreSecretKey>(&ok)
            && round_trip::<OreCiphertext>(&oct)
            && round_trip::<EnhancedSecretKey>(&hsk)
            && round_trip::<EnhancedCiphertext>(&hct)
            && EncryptedColumn::from_bytes(&col.to_bytes()).ok().as_ref() == Some(&col);
        if !ok_all {
            return Err(format!("round trip failed at iteration {it}"));
        }
    }
    Ok(())
}

#[test]
fn criterion_10_serialization() {
    let regen = std::env::var_os("MCORE_REGEN_GOLDEN").is_some();
    let dir = golden_dir();
    let mut problems = Vec::new();
    let objects = golden_objects();
    for g in &objects {
        let path = dir.join(format!("{}.bin", g.name));
        if regen {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &g.bytes).unwrap();
        }
        match std::fs::read(&path) {
            Ok(stored) if stored == g.bytes => {}
            Ok(_) => problems.push(format!("{} differs from golden file", g.name)),
            Err(_) => problems.push(format!("{} golden file missing (set MCORE_REGEN_GOLDEN=1)", g.name)),
        }
        if (g.decode)(&g.bytes).as_deref() != Ok(&g.bytes[..]) {
            problems.push(format!("{} does not decode to itself", g.name));
        }
    }
    let mut tolerated = 0;
    let mut rejected = 0;
    for g in &objects {
        match mutation_check(g) {
            Ok((r, t)) => {
                rejected += r;
                tolerated += t;
            }
            Err(e) => problems.push(e),
        }
        for cut in 0..g.bytes.len() {
            if (g.decode)(&g.bytes[..cut]).is_ok() {
                problems.push(format!("{} truncated to {cut} bytes accepted", g.name));
                break;
            }
        }
        let mut extra = g.bytes.clone();
        extra.push(0);
        if (g.decode)(&extra).is_ok() {
            problems.push(format!("{} with a trailing byte accepted", g.name));
        }
    }
    if let Err(e) = round_trips(&mut rng(10), 1000) {
        problems.push(e);
    }
    let outcome = if problems.is_empty() {
        Ok(format!(
            "{} golden files stable, 1000 round trips per type, {rejected} bit flips rejected, {tolerated} flips of unauthenticated fields decoded to different values, all truncations rejected",
            objects.len()
        ))
    } else {
        Err(problems.join("; "))
    };
    report(10, "serialization", outcome);
}
