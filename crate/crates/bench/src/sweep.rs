//! Single runs and parameter sweeps with their output files.

use std::path::Path;

use rayon::prelude::*;

use crate::config::RunSpec;
use crate::error::{BenchError, Result};
use crate::output::{prepare_dir, write_run_files, Summary, SummaryRow};
use crate::runner::{execute, RunOutcome};

/// Runs a spec without a sweep, writes its files into `out` and returns the
/// outcome.
pub fn run_benchmark(spec: &RunSpec, out: &Path) -> Result<RunOutcome> {
    if spec.sweep.is_some() {
        return Err(BenchError::config("sweep: use sweep_runs for a spec with a sweep"));
    }
    prepare_dir(out)?;
    let outcome = execute(spec, 1, None)?;
    write_run_files(&outcome, out, &spec.outputs.emit)?;
    if spec.outputs.emit.summary {
        Summary::new(spec, vec![SummaryRow::from_outcome(&outcome)]).write(out)?;
    }
    Ok(outcome)
}

/// All runs of a sweep, in sweep order, and their summary.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub outcomes: Vec<RunOutcome>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn best(&self) -> Option<&RunOutcome> {
        let best = self.summary.best()?;
        self.outcomes.iter().find(|o| o.run_number == best.run)
    }
}

/// Runs every sweep value in parallel. Each run writes into its own
/// `run_NN` subdirectory; the summary is assembled in run order afterwards.
pub fn sweep_runs(spec: &RunSpec, out: &Path) -> Result<SweepReport> {
    if spec.sweep.is_none() {
        return Err(BenchError::config("sweep: the spec has no sweep section"));
    }
    prepare_dir(out)?;
    let variants = spec.sweep_values();
    let width = variants.len().to_string().len().max(2);
    let outcomes = variants
        .into_par_iter()
        .enumerate()
        .map(|(i, (param, variant))| {
            let outcome = execute(&variant, i + 1, param)?;
            let dir = out.join(format!("run_{:0width$}", i + 1));
            prepare_dir(&dir)?;
            write_run_files(&outcome, &dir, &spec.outputs.emit)?;
            Ok(outcome)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = Summary::new(spec, outcomes.iter().map(SummaryRow::from_outcome).collect());
    if spec.outputs.emit.summary {
        summary.write(out)?;
    }
    Ok(SweepReport { outcomes, summary })
}
