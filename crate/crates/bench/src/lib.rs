//! Benchmark harness for the CFO engine: run specifications, single runs,
//! parameter sweeps, a brute-force grid oracle and the acceptance suite.

pub mod acceptance;
pub mod config;
pub mod error;
pub mod oracle;
pub mod output;
pub mod runner;
pub mod sweep;

pub use config::{load_config, parse_config, RunSpec};
pub use error::{BenchError, Result};
pub use oracle::{grid_oracle, refined_oracle, OracleResult};
pub use output::{Summary, SummaryRow};
pub use runner::{execute, RunOutcome};
pub use sweep::{run_benchmark, sweep_runs, SweepReport};
