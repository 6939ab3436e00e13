//! Run a small suite and print the CSV report and the summary table.
//!
//! cargo run --release --example bench

use stabkit::bench::{run_bench, Suite};

fn main() -> stabkit::Result<()> {
    let suite: Suite = serde_json::from_str(
        r#"{
            "instances": [
                {"kind": "uniform", "n": [6, 10]},
                {"kind": "laminar", "n": [10]},
                {"kind": "bounded", "n": [8], "delta": "1/2"}
            ],
            "seed_count": 3,
            "algos": ["greedy", "laminar-dp", "approx8", "ptas", "qptas"],
            "eps": ["1/2"]
        }"#,
    )?;
    let report = run_bench(&suite)?;
    report.write_csv(std::io::stdout().lock())?;
    println!();
    print!("{}", report.summary_markdown());
    println!("violations: {}", report.violations().len());
    Ok(())
}
