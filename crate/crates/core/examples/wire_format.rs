//! Every key and ciphertext is a self-describing container: magic `MCOR`,
//! version, and a tag naming scheme and object kind.

use mcore::basic::{self, BasicCiphertext};
use mcore::wire::{peek_tag, tag};
use mcore::{Plaintext, WireFormat};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let (mk, pp) = basic::setup(&mut rng, 2, 8)?;
    let sk = basic::gen_key(1, &mk, &pp)?;
    let ct = basic::encrypt(&Plaintext::new(200, 8)?, &sk, &pp)?;

    let bytes = ct.to_bytes();
    println!("{} bytes, tag 0x{:02x}", bytes.len(), peek_tag(&bytes)?);
    assert_eq!(peek_tag(&bytes)?, tag::BASIC_CIPHERTEXT);
    assert_eq!(BasicCiphertext::from_bytes(&bytes)?, ct);

    // A key is not a ciphertext.
    let err = BasicCiphertext::from_bytes(&sk.to_bytes()).unwrap_err();
    println!("decoding a key as a ciphertext: {err}");
    Ok(())
}
