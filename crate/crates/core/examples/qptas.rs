//! Recursive scheme with no width assumption. A small oracle limit forces
//! the long-segment guessing to run.
//!
//! cargo run --release --example qptas

use stabkit::gen::{gen_uniform, UniformConfig};
use stabkit::oracle::exact_opt;
use stabkit::schemes::{qptas_with_stats, QptasOverrides};
use stabkit::Scalar;

fn main() -> stabkit::Result<()> {
    let inst = gen_uniform(9, 21, &UniformConfig::default())?;
    let eps = Scalar::ratio(1, 2);
    let o = QptasOverrides { oracle_limit: Some(4), node_budget: Some(2_000_000), ..Default::default() };
    let r = qptas_with_stats(&inst, &eps, &o)?;
    let p = &r.params;
    println!("mu {} H {} Klong {}", p.mu, p.h, p.klong);
    println!(
        "depth {} nodes {} guesses {} oracle calls {}",
        r.stats.max_depth, r.stats.nodes, r.stats.guesses, r.stats.oracle_calls
    );
    let opt = exact_opt(&inst)?;
    println!("cost {} opt {} ratio {}", r.solution.cost(), opt.cost(), (r.solution.cost() / opt.cost()).to_decimal(4));
    match r.certified_ratio {
        Some(c) => println!("certified ratio {}", c.to_decimal(4)),
        None => println!("no certificate: Klong was binding"),
    }
    Ok(())
}
