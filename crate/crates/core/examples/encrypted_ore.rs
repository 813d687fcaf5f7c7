//! Randomized ciphertexts that reveal nothing, not even equality within one
//! client, until a comparison key for a client pair is issued.

use mcore::eore;
use mcore::{PairingStats, Plaintext};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let (mk, pp) = eore::eore_setup(&mut rng, 2, 16)?;
    let sk1 = eore::gen_key(1, &mk, &pp)?;
    let sk2 = eore::gen_key(2, &mk, &pp)?;

    let m = Plaintext::new(4242, 16)?;
    let c = eore::eore_encrypt(&m, &sk1, &pp, &mut rng)?;
    let c_again = eore::eore_encrypt(&m, &sk1, &pp, &mut rng)?;
    println!("same value encrypts differently: {}", c != c_again);

    let other = eore::eore_encrypt(&Plaintext::new(5000, 16)?, &sk2, &pp, &mut rng)?;
    let ck = eore::eore_gen_cmp_key(1, 2, &mk, &pp, &mut rng)?;
    let mut stats = PairingStats::new();
    let out = eore::eore_compare_mc(&c, &other, &ck, &pp, &mut stats)?;
    println!("4242 < 5000: {} (bit {}, {} pairings)", out.less, out.msdb, stats.pairings);
    Ok(())
}
