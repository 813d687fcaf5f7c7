//! A server holds client 1's encrypted column; client 2 asks which rows are
//! below its own encrypted value. The three strategies agree and differ only
//! in cost.

use mcore::basic;
use mcore::range::{self, EncryptedColumn, Method};
use mcore::Plaintext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let (mk, pp) = basic::setup(&mut rng, 2, 32)?;
    let owner = basic::gen_key(1, &mk, &pp)?;
    let asker = basic::gen_key(2, &mk, &pp)?;
    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng)?;

    let mut col = EncryptedColumn::new(1, 32);
    for row in 0..40u64 {
        let v = rng.gen_range(0..1_000u32);
        col.push(row, basic::encrypt(&Plaintext::u32(v), &owner, &pp)?)?;
    }
    let query = basic::encrypt(&Plaintext::u32(500), &asker, &pp)?;

    for method in Method::ALL {
        let r = range::run_query(method, &col, &query, &ck, &pp, &mut rng)?;
        println!(
            "{:>9}: {} rows, {} keyed and {} keyless comparisons, {} pairings",
            method.name(),
            r.row_ids.len(),
            r.stats.compare_mc_calls,
            r.stats.compare_calls,
            r.stats.pairings
        );
    }

    let dir = std::env::temp_dir().join(format!("mcore-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("column.mcdb");
    col.save(&path)?;
    println!("reloaded column equal: {}", EncryptedColumn::load(&path)? == col);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
