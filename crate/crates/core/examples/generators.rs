//! Seeded instance generators. Same seed, same bytes.
//!
//! cargo run --example generators -- [seed]

use stabkit::gen::{generate, GenKind, SplitMix64, UniformConfig};
use stabkit::laminar::is_laminar;
use stabkit::Scalar;

fn main() -> stabkit::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(42);
    let mut rng = SplitMix64::new(seed);
    println!("splitmix64({seed}): {} {} {}", rng.next_u64(), rng.next_u64(), rng.below(100));

    let delta = Scalar::ratio(1, 3);
    for kind in [GenKind::Uniform, GenKind::Laminar, GenKind::Bounded] {
        let inst = generate(kind, 8, seed, Some(&delta), &UniformConfig::default())?;
        let ratio = inst.min_width().map(|m| m / inst.max_width()).unwrap_or_else(Scalar::one);
        println!("{kind:?}: n={} width ratio {} laminar={}", inst.len(), ratio, is_laminar(&inst));
    }
    let a = serde_json::to_string(&generate(GenKind::Uniform, 8, seed, None, &UniformConfig::default())?)?;
    let b = serde_json::to_string(&generate(GenKind::Uniform, 8, seed, None, &UniformConfig::default())?)?;
    println!("reproducible: {}", a == b);
    Ok(())
}
