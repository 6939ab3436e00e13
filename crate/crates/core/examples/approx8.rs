//! Round widths up to powers of two, solve the laminar instance exactly and
//! stretch the segments back.
//!
//! cargo run --example approx8

use stabkit::approx8::{approx8, round_rect, shrink, to_laminar};
use stabkit::gen::{gen_uniform, UniformConfig};
use stabkit::laminar::is_laminar;
use stabkit::oracle::exact_opt;
use stabkit::verify;

fn main() -> stabkit::Result<()> {
    let cfg = UniformConfig { resolution: 4, ..UniformConfig::default() };
    let inst = gen_uniform(10, 11, &cfg)?;
    for r in inst.rects().iter().take(3) {
        let q = round_rect(r);
        println!("rect {}: [{}, {}] -> [{}, {}]", r.id, r.xl, r.xr, q.xl, q.xr);
    }
    let (rounded, _) = to_laminar(&inst);
    println!("rounded family laminar: {}", is_laminar(&rounded));

    let sol = approx8(&inst)?;
    let tight = shrink(&inst, &sol);
    let opt = exact_opt(&inst)?;
    println!("approx8 {} feasible={}", sol.cost(), verify(&inst, &sol).feasible);
    println!("shrunk  {} feasible={}", tight.cost(), verify(&inst, &tight).feasible);
    println!("optimum {}  ratio {}", opt.cost(), (sol.cost() / opt.cost()).to_decimal(3));
    Ok(())
}
