//! Small version of the method benchmark; prints CSV.
//! Pass a range such as `2^16` as the first argument.

use mcore::range::bench::{self, BenchConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn main() -> mcore::Result<()> {
    run(&std::env::args().nth(1).unwrap_or_else(|| "2^16".into()))
}

pub fn run(range: &str) -> mcore::Result<()> {
    let cfg = BenchConfig::new(bench::parse_range(range)?, 20, 1);
    let rows = bench::run_bench(&cfg, &mut ChaCha20Rng::from_entropy())?;
    print!("{}", bench::to_csv(&rows));
    Ok(())
}
