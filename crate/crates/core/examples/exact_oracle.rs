//! Exact optimum by subset DP over reduced candidates, next to the greedy
//! set-cover baseline.
//!
//! cargo run --example exact_oracle -- [n] [seed]

use stabkit::gen::{gen_uniform, UniformConfig};
use stabkit::oracle::{exact_opt, greedy_cover, reduced_candidates};
use stabkit::split_independent;

fn main() -> stabkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|a| a.parse().ok()).unwrap_or(10);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    let inst = gen_uniform(n, seed, &UniformConfig::default())?;
    println!(
        "n={n} seed={seed}: {} reduced candidates, {} components",
        reduced_candidates(&inst).len(),
        split_independent(&inst).len()
    );

    let opt = exact_opt(&inst)?;
    let greedy = greedy_cover(&inst);
    println!("exact  {} ({} segments)", opt.cost(), opt.len());
    println!(
        "greedy {} ({} segments), ratio {}",
        greedy.cost(),
        greedy.len(),
        (greedy.cost() / opt.cost()).to_decimal(4)
    );
    for s in opt.segments() {
        println!("  [{}, {}] x {}", s.xl, s.xr, s.y);
    }
    Ok(())
}
