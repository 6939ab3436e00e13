//! Build an instance by hand, check candidate solutions against it.
//!
//! cargo run --example verify

use stabkit::{candidate_segments, verify, Instance, Segment, Solution};

fn main() -> stabkit::Result<()> {
    let inst = Instance::from_ints(&[(0, 4, 0, 2), (1, 3, 1, 5), (5, 7, 0, 3)]);
    println!("{} rectangles, {} candidate segments", inst.len(), candidate_segments(&inst).len());

    let partial = Solution::new(vec![Segment::ints(0, 4, 2)]);
    let report = verify(&inst, &partial);
    println!("one segment: feasible={} unstabbed={:?}", report.feasible, report.unstabbed_ids);

    let full = Solution::new(vec![Segment::ints(0, 4, 2), Segment::ints(5, 7, 2)]);
    let report = verify(&inst, &full);
    println!("two segments: feasible={} cost={}", report.feasible, report.recomputed_cost);
    println!("{}", serde_json::to_string_pretty(&full)?);
    Ok(())
}
