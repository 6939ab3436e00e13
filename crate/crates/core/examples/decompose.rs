//! Strip partition and horizontal cuts. Prints what is paid up front and
//! the independent sub-instances left over.
//!
//! cargo run --example decompose -- [eps]

use stabkit::decompose::decompose;
use stabkit::gen::gen_bounded_ratio;
use stabkit::Scalar;

fn main() -> stabkit::Result<()> {
    let eps: Scalar = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(Scalar::ratio(1, 4));
    let inst = gen_bounded_ratio(60, &Scalar::ratio(1, 2), 9)?;
    let d = decompose(&inst, &eps)?;
    println!("eps {eps}: strips of width {} at offset {}", d.spacing, d.offset);
    println!("paid {} = strips {} + cuts {}", d.paid_cost, d.strip_paid_cost, d.cut_cost);
    for (sub, ub) in d.sub_instances.iter().zip(&d.opt_upper_bounds) {
        println!("  sub-instance with {:>2} rects, approx cost {}", sub.len(), ub.to_decimal(3));
    }
    Ok(())
}
