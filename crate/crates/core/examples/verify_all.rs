//! Runs the numerical check suite and prints one line per check.
//!
//! `cargo run --release --example verify_all -- [group ...]`

use centroframe::commands::{run_verify, VerifyConfig};

fn main() {
    let checks: Vec<String> = std::env::args().skip(1).collect();
    let t = std::time::Instant::now();
    let report = run_verify(&VerifyConfig {
        checks,
        ..VerifyConfig::default()
    });
    for c in &report.checks {
        println!(
            "{} {:<40} measured {:.3e} bound {:?} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.bound,
            c.detail
        );
    }
    println!("{} passed, {} failed in {:.2?}", report.passed, report.failed, t.elapsed());
    if !report.all_passed {
        std::process::exit(1);
    }
}
