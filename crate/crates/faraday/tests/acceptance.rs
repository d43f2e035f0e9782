//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::Instant;

use faraday::acceptance::CRITERIA;

fn main() {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (id, check) in CRITERIA {
        let o = check();
        println!("{o}");
        if !o.passed {
            failed.push(id);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "acceptance: {} passed, {} failed in {elapsed:.2} s",
        CRITERIA.len() - failed.len(),
        failed.len()
    );
    if elapsed > 60.0 {
        println!("acceptance: suite exceeded its 60 s budget");
        std::process::exit(1);
    }
    if !failed.is_empty() {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
