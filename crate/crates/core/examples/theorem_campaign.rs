//! Runs every verification campaign and prints one summary line each.
//!
//! ```text
//! cargo run --release --example theorem_campaign -- [trials] [seed]
//! ```

use vcplab::verify::{run, TheoremId, VerifyConfig};

fn main() -> vcplab::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(2024);

    println!("{:<12} {:>2} {:>7} {:>9} {:>12}  result", "check", "N", "trials", "rejected", "max viol.");
    for theorem in TheoremId::ALL {
        for n in 1..=2 {
            let report = run(&VerifyConfig::new(theorem, trials, seed, n))?;
            println!(
                "{:<12} {:>2} {:>7} {:>9} {:>12.3e}  {}",
                theorem.as_str(),
                n,
                report.trials,
                report.rejected_samples,
                report.max_violation,
                if report.pass { "pass" } else { "FAIL" }
            );
            if let Some(first) = report.failures.first() {
                println!("    first failure: trial {} seed {} {:?}", first.trial, first.seed, first.note);
                println!("    chain: {:?}", first.values);
            }
        }
    }
    Ok(())
}
