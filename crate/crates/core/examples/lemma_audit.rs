//! Run the geometric lemma audit for one q and print a verdict per line.
//!
//! cargo run --release --example lemma_audit -- 9

use conic_codes::group::DEFAULT_GROUP_BOUND;
use conic_codes::verify::{run_suite, Depth};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(9), |s| s.parse())?;
    let verdicts = run_suite(q, None, Depth::Geometry, DEFAULT_GROUP_BOUND)?;
    for v in &verdicts {
        println!("{:<18} {:<4} {}", v.lemma_id, if v.passed { "ok" } else { "FAIL" }, v.detail);
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("{} checks, {failed} failed", verdicts.len());
    Ok(())
}
