//! Comparison keys without a fully trusted center.
//!
//! Centerless: both clients hash the pair `(j, k)` to the second group and
//! raise it to their own exponent. Reduced trust: clients register `ĝ^{s_j}`
//! once and the center only re-randomizes registrations.

use mcore::basic;
use mcore::{PairingStats, Plaintext};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let (mk, pp) = basic::setup(&mut rng, 3, 32)?;
    let sk1 = basic::gen_key(1, &mk, &pp)?;
    let sk3 = basic::gen_key(3, &mk, &pp)?;
    let x = basic::encrypt(&Plaintext::u32(1_000), &sk1, &pp)?;
    let y = basic::encrypt(&Plaintext::u32(999), &sk3, &pp)?;

    let share1 = basic::gen_cmp_key_share_centerless(1, 3, &sk1)?;
    let share3 = basic::gen_cmp_key_share_centerless(1, 3, &sk3)?;
    let centerless = basic::assemble_centerless_key(1, 3, share1, share3)?;

    let reg1 = basic::register_client(&sk1, &pp);
    let reg3 = basic::register_client(&sk3, &pp);
    let reduced = basic::gen_cmp_key_from_registrations(1, 3, &reg1, &reg3, &pp, &mut rng)?;

    let center = basic::gen_cmp_key(1, 3, &mk, &pp, &mut rng)?;
    let mut stats = PairingStats::new();
    for (name, key) in [("center", &center), ("centerless", &centerless), ("reduced-trust", &reduced)] {
        let out = basic::compare_mc(&x, &y, key, &pp, &mut stats)?;
        println!("{name:>13}: 1000 < 999 is {}", out.less);
    }
    Ok(())
}
