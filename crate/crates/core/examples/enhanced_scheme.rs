//! Each ciphertext carries a single-client ORE part for cheap comparisons
//! inside one client and an EORE part for keyed comparisons across clients.

use mcore::enhanced;
use mcore::{PairingStats, Plaintext};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let (mk, pp) = enhanced::enh_setup(&mut rng, 2, 16)?;
    let sk1 = enhanced::enh_gen_key(1, &mk, &pp, &mut rng)?;
    let sk2 = enhanced::enh_gen_key(2, &mk, &pp, &mut rng)?;

    let enc = |v: u64, sk, rng: &mut ChaCha20Rng| enhanced::enh_encrypt(&Plaintext::new(v, 16).unwrap(), sk, &pp, rng);
    let five = enc(5, &sk1, &mut rng)?;
    let seven = enc(7, &sk1, &mut rng)?;
    let six = enc(6, &sk2, &mut rng)?;

    println!("5 < 7 within client 1: {}", enhanced::enh_compare(&five, &seven)?.less);
    let ck = enhanced::enh_gen_cmp_key(1, 2, &mk, &pp, &mut rng)?;
    let mut stats = PairingStats::new();
    println!("7 < 6 across clients: {}", enhanced::enh_compare_mc(&seven, &six, &ck, &pp, &mut stats)?.less);
    Ok(())
}
