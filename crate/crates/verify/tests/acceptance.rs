//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;

use msc_verify::{criteria, evaluate};

fn main() -> ExitCode {
    let all = criteria();
    let mut failed = 0;
    for c in &all {
        let (pass, took, detail) = evaluate(c);
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} ({:.2}s, limit {}s) {detail}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", all.len() - failed, all.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
