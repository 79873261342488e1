//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//!
//! The lines go straight to stderr so they show up without `--nocapture`;
//! per-property detail is printed through the captured stdout and appears
//! when the test fails.

use std::io::Write;

use rankwl_core::verify::{run_suite, suite_names};

const SEED: u64 = 0;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for name in suite_names() {
        let report = run_suite(name, SEED)
            .expect("suite is registered")
            .unwrap_or_else(|e| panic!("suite {name} aborted: {e}"));
        println!("{report}");
        writeln!(std::io::stderr(), "{}", report.summary()).expect("stderr is writable");
        if !report.passed() {
            failed.push(report.summary());
        }
    }
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
