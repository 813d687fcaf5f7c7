//! Two clients encrypt under their own keys. Within a client anyone can
//! compare; across clients a comparison key issued by the center is needed.

use mcore::basic;
use mcore::{PairingStats, Plaintext};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let (mk, pp) = basic::setup(&mut rng, 2, 32)?;
    let alice = basic::gen_key(1, &mk, &pp)?;
    let bob = basic::gen_key(2, &mk, &pp)?;

    let a5 = basic::encrypt(&Plaintext::u32(5), &alice, &pp)?;
    let a7 = basic::encrypt(&Plaintext::u32(7), &alice, &pp)?;
    let b6 = basic::encrypt(&Plaintext::u32(6), &bob, &pp)?;

    let same = basic::compare(&a5, &a7, &pp)?;
    println!("alice 5 < alice 7: {} (first differing bit {})", same.less, same.msdb);

    // Without a key the cross-client comparison is refused.
    assert!(basic::compare(&a7, &b6, &pp).is_err());

    let ck = basic::gen_cmp_key(1, 2, &mk, &pp, &mut rng)?;
    let mut stats = PairingStats::new();
    let cross = basic::compare_mc(&a7, &b6, &ck, &pp, &mut stats)?;
    println!("alice 7 < bob 6: {} using {} pairings", cross.less, stats.pairings);
    Ok(())
}
