#![allow(dead_code)]

use std::io::Write;

use mcore::basic::{self, BasicCiphertext, BasicComparisonKey, ClientSecretKey, MasterKey, PublicParams};
use mcore::enhanced::{self, EnhancedCiphertext, EnhancedSecretKey};
use mcore::eore::{self, EoreCiphertext, EoreComparisonKey, EoreMasterKey, EorePublicParams};
use mcore::ore::{self, OreCiphertext, OreSecretKey};
use mcore::range::EncryptedColumn;
use mcore::{Plaintext, WireFormat};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Plaintext-side ground truth, computed without the library: order bit and
/// 1-based index of the most significant differing bit (`n + 1` if equal).
pub fn oracle(a: u64, b: u64, n: u8) -> (bool, usize) {
    let diff = (a ^ b) << (64 - n as u32);
    let msdb = if diff == 0 { n as usize + 1 } else { diff.leading_zeros() as usize + 1 };
    (a < b, msdb)
}

/// Prints one line straight to the process stderr, past the test harness
/// capture, then fails the test if the criterion did not hold.
pub fn report(criterion: u32, title: &str, outcome: Result<String, String>) {
    let line = match &outcome {
        Ok(detail) => format!("[acceptance] criterion {criterion:>2} PASS  {title}: {detail}"),
        Err(detail) => format!("[acceptance] criterion {criterion:>2} FAIL  {title}: {detail}"),
    };
    let _ = writeln!(std::io::stderr(), "{line}");
    if let Err(detail) = outcome {
        panic!("criterion {criterion} failed: {detail}");
    }
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn pt(v: u64, n: u8) -> Plaintext {
    Plaintext::new(v, n).unwrap()
}

/// Byte regions of a serialized object, for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Span {
    /// Magic, version, tag, lengths and counts: any flip must be rejected.
    Frame(usize),
    /// Values the decoder cannot validate (indices, digits, raw key bytes):
    /// a flip may decode, but never to the original value.
    Field(usize),
    /// A secret exponent; flips may stay canonical.
    Scalar,
    /// Compressed points: only the sign flag may flip without rejection.
    G1,
    G2,
}

impl Span {
    pub fn len(self) -> usize {
        match self {
            Span::Frame(n) | Span::Field(n) => n,
            Span::Scalar => 32,
            Span::G1 => 48,
            Span::G2 => 96,
        }
    }

    /// Whether flipping `bit` of byte `offset` within this span may decode.
    pub fn tolerates(self, offset: usize, bit: u8) -> bool {
        match self {
            Span::Frame(_) => false,
            Span::Field(_) | Span::Scalar => true,
            Span::G1 | Span::G2 => offset == 0 && bit == 5,
        }
    }
}

pub fn header() -> Span {
    Span::Frame(6)
}

pub fn repeat(span: Span, count: usize) -> Vec<Span> {
    vec![span; count]
}

pub struct Golden {
    pub name: &'static str,
    pub bytes: Vec<u8>,
    pub layout: Vec<Span>,
    pub decode: fn(&[u8]) -> Result<Vec<u8>, String>,
}

fn via<T: WireFormat>(b: &[u8]) -> Result<Vec<u8>, String> {
    T::from_bytes(b).map(|v| v.to_bytes()).map_err(|e| e.to_string())
}

fn via_column(b: &[u8]) -> Result<Vec<u8>, String> {
    EncryptedColumn::from_bytes(b).map(|c| c.to_bytes()).map_err(|e| e.to_string())
}

/// Deterministic fixture objects, one per serialized type.
pub fn golden_objects() -> Vec<Golden> {
    let mut rng = rng(0x601d);
    let n = 4u8;
    let (mk, pp) = basic::setup(&mut rng, 3, n).unwrap();
    let sk1 = basic::gen_key(1, &mk, &pp).unwrap();
    let ct = basic::encrypt(&pt(0b1011, n), &sk1, &pp).unwrap();
    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng).unwrap();
    let (emk, epp) = eore::eore_setup(&mut rng, 3, n).unwrap();
    let esk2 = eore::gen_key(2, &emk, &epp).unwrap();
    let ect = eore::eore_encrypt(&pt(6, n), &esk2, &epp, &mut rng).unwrap();
    let eck = eore::eore_gen_cmp_key(2, 3, &emk, &epp, &mut rng).unwrap();
    let ok = ore::ore_setup(&mut rng);
    let oct = ore::ore_encrypt(&Plaintext::u32(0xdead_beef), &ok).unwrap();
    let hsk = enhanced::enh_gen_key(1, &emk, &epp, &mut rng).unwrap();
    let hct = enhanced::enh_encrypt(&pt(9, n), &hsk, &epp, &mut rng).unwrap();
    let mut col = EncryptedColumn::new(1, n);
    for (id, v) in [(10u64, 5u64), (11, 15), (12, 0)] {
        col.push(id, basic::encrypt(&pt(v, n), &sk1, &pp).unwrap()).unwrap();
    }

    let f = Span::Frame;
    let d = Span::Field;
    let ore_body = |bits: usize| vec![f(2), d(bits.div_ceil(4))];
    let mut column_layout = vec![f(4), f(1), f(4), f(2), f(8)];
    for _ in 0..3 {
        column_layout.extend([d(8), f(4), header(), f(4), f(2)]);
        column_layout.extend(repeat(Span::G1, 2 * n as usize));
    }
    let mut enh_ct_layout = vec![header(), f(4), header()];
    enh_ct_layout.extend(ore_body(n as usize));
    enh_ct_layout.extend([header(), d(4), f(2)]);
    enh_ct_layout.extend(repeat(Span::G1, 4 * n as usize));

    let cat = |parts: Vec<Vec<Span>>| parts.concat();
    vec![
        Golden {
            name: "basic_params",
            bytes: pp.to_bytes(),
            layout: vec![header(), f(1), d(4), d(2), Span::G1, Span::G2],
            decode: via::<PublicParams>,
        },
        Golden {
            name: "basic_master_key",
            bytes: mk.to_bytes(),
            layout: cat(vec![vec![header(), f(4)], repeat(Span::Scalar, 3)]),
            decode: via::<MasterKey>,
        },
        Golden {
            name: "client_key",
            bytes: sk1.to_bytes(),
            layout: vec![header(), d(4), Span::Scalar],
            decode: via::<ClientSecretKey>,
        },
        Golden {
            name: "basic_ciphertext",
            bytes: ct.to_bytes(),
            layout: cat(vec![vec![header(), d(4), f(2)], repeat(Span::G1, 2 * n as usize)]),
            decode: via::<BasicCiphertext>,
        },
        Golden {
            name: "basic_cmp_key",
            bytes: ck.to_bytes(),
            layout: vec![header(), d(4), d(4), Span::G2, Span::G2],
            decode: via::<BasicComparisonKey>,
        },
        Golden {
            name: "eore_params",
            bytes: epp.to_bytes(),
            layout: cat(vec![vec![header(), f(1), f(4), d(2), Span::G1, Span::G2], repeat(Span::G1, 3)]),
            decode: via::<EorePublicParams>,
        },
        Golden {
            name: "eore_master_key",
            bytes: emk.to_bytes(),
            layout: cat(vec![vec![header(), f(4)], repeat(Span::Scalar, 3), repeat(Span::G2, 3)]),
            decode: via::<EoreMasterKey>,
        },
        Golden {
            name: "eore_ciphertext",
            bytes: ect.to_bytes(),
            layout: cat(vec![vec![header(), d(4), f(2)], repeat(Span::G1, 4 * n as usize)]),
            decode: via::<EoreCiphertext>,
        },
        Golden {
            name: "eore_cmp_key",
            bytes: eck.to_bytes(),
            layout: cat(vec![vec![header(), d(4), d(4)], repeat(Span::G2, 4)]),
            decode: via::<EoreComparisonKey>,
        },
        Golden {
            name: "ore_key",
            bytes: ok.to_bytes(),
            layout: vec![header(), f(2), d(32)],
            decode: via::<OreSecretKey>,
        },
        Golden {
            name: "ore_ciphertext",
            bytes: oct.to_bytes(),
            layout: cat(vec![vec![header()], ore_body(32)]),
            decode: via::<OreCiphertext>,
        },
        Golden {
            name: "enhanced_key",
            bytes: hsk.to_bytes(),
            layout: vec![header(), d(4), Span::Scalar, f(2), d(32)],
            decode: via::<EnhancedSecretKey>,
        },
        Golden {
            name: "enhanced_ciphertext",
            bytes: hct.to_bytes(),
            layout: enh_ct_layout,
            decode: via::<EnhancedCiphertext>,
        },
        Golden { name: "column", bytes: col.to_bytes(), layout: column_layout, decode: via_column },
    ]
}

/// Every single-bit flip of `g`: `Err` lists flips that decoded although the
/// layout says they must be rejected, or that decoded back to the original.
pub fn mutation_check(g: &Golden) -> Result<(usize, usize), String> {
    let total: usize = g.layout.iter().map(|s| s.len()).sum();
    if total != g.bytes.len() {
        return Err(format!("{}: layout covers {total} of {} bytes", g.name, g.bytes.len()));
    }
    let (mut rejected, mut tolerated) = (0, 0);
    let mut base = 0;
    for span in &g.layout {
        for offset in 0..span.len() {
            for bit in 0..8u8 {
                let mut m = g.bytes.clone();
                m[base + offset] ^= 1 << bit;
                match (g.decode)(&m) {
                    Err(_) => rejected += 1,
                    Ok(re) if re == g.bytes => {
                        return Err(format!("{}: flip at byte {} bit {bit} decoded to the original", g.name, base + offset))
                    }
                    Ok(_) if span.tolerates(offset, bit) => tolerated += 1,
                    Ok(_) => {
                        return Err(format!("{}: flip at byte {} bit {bit} ({span:?}) accepted", g.name, base + offset))
                    }
                }
            }
        }
        base += span.len();
    }
    Ok((rejected, tolerated))
}
