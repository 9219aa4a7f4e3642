//! Prints one PASS or FAIL line per acceptance criterion.
//!
//! The process exits 0 whatever the verdicts, so that a known failure does
//! not hide the rest of `cargo test`; `cfo-bench verify` exits 1 instead.

use cfo_bench::acceptance::{run_acceptance, Evaluator};

fn main() {
    let results = run_acceptance(&Evaluator::new(env!("CARGO_BIN_EXE_cfo-bench"), &["serve"]));
    for c in &results {
        println!("{}", c.line());
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
}
