//! Runs the twelve acceptance criteria and prints one pass/fail line for each.
//! Built without the libtest harness so the lines show up in plain `cargo test`.

use std::process::ExitCode;

use heightlab::verify::{run_suite, Suite, VerifyConfig};

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let results = run_suite(Suite::All, &cfg);
    for r in &results {
        println!("{} [{} ms]", r.line(), r.millis);
        for n in &r.notes {
            println!("    note: {n}");
        }
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if results.len() != 12 {
        eprintln!("expected 12 criteria, ran {}", results.len());
        return ExitCode::FAILURE;
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        return ExitCode::FAILURE;
    }
    println!("acceptance: 12/12 criteria passed");
    ExitCode::SUCCESS
}
