//! Exact DP on laminar instances, with and without memoization.
//!
//! cargo run --example laminar_dp -- [n] [seed]

use stabkit::gen::gen_laminar;
use stabkit::laminar::{is_laminar, LaminarDp};
use stabkit::oracle::exact_opt;

fn main() -> stabkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|a| a.parse().ok()).unwrap_or(12);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);

    let inst = gen_laminar(n, seed);
    assert!(is_laminar(&inst));

    let mut dp = LaminarDp::new(&inst)?;
    let sol = dp.solve()?;
    println!("laminar dp: cost {} in {} evaluations ({} memo entries)", sol.cost(), dp.evaluations(), dp.memo_len());

    let mut plain = LaminarDp::new(&inst)?.with_memo(false);
    let again = plain.solve()?;
    println!("without memo: cost {} in {} evaluations", again.cost(), plain.evaluations());

    if n <= 20 {
        println!("oracle agrees: {}", exact_opt(&inst)?.cost() == sol.cost());
    }
    Ok(())
}
