//! Checks that what the public algorithms reveal on a random workload is
//! exactly the permitted leakage, and prints the profile as CSV.

use mcore::leakage::{self, ClwwLeakage, QuerySequence, RevealedSet, Scheme};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let q = QuerySequence::random(&mut rng, 3, 8, 6)?;
    let mut s = RevealedSet::new();
    s.insert(1, 2)?;

    let checks = [
        (Scheme::Basic, leakage::leak_basic(&s, &q)),
        (Scheme::Eore, leakage::leak_eore(&s, &q)),
        (Scheme::Enhanced, leakage::leak_enhanced(&s, &q, &ClwwLeakage)),
    ];
    for (scheme, allowed) in checks {
        let seen = leakage::adversary_view(scheme, &s, &q, &mut rng)?;
        println!("{scheme:?}: {} records, matches leakage function: {}", seen.len(), seen == allowed);
        print!("{}", seen.to_csv());
    }
    Ok(())
}
