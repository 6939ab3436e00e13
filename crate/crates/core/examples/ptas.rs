//! Scheme for instances whose widths are within a fixed ratio: decompose,
//! then solve every chunk exactly under a segment-count bound.
//!
//! cargo run --release --example ptas

use stabkit::gen::gen_bounded_ratio;
use stabkit::oracle::exact_opt;
use stabkit::schemes::{ptas_segment_bound, ptas_with, SearchLimits};
use stabkit::Scalar;

fn main() -> stabkit::Result<()> {
    let delta = Scalar::ratio(1, 2);
    let inst = gen_bounded_ratio(14, &delta, 5)?;
    let opt = exact_opt(&inst)?;
    for eps in [Scalar::ratio(1, 2), Scalar::ratio(1, 4)] {
        let r = ptas_with(&inst, &eps, &delta, &SearchLimits::default())?;
        println!(
            "eps {eps}: K={} cost {} (paid {}, {} chunks), opt {}, ratio {}",
            ptas_segment_bound(&eps, &delta),
            r.solution.cost(),
            r.paid_cost,
            r.chunk_costs.len(),
            opt.cost(),
            (r.solution.cost() / opt.cost()).to_decimal(4)
        );
    }
    Ok(())
}
