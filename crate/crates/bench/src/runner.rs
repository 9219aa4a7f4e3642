//! Building objectives from a spec and executing runs.

use std::time::Duration;

use cfo_core::noise::NoiseState;
use cfo_core::{run, Objective, RunRecord};
use cfo_objectives::{lookup, ExternalCommand, ExternalObjective, Noisy, ObjectiveError, Registered};

use crate::config::RunSpec;
use crate::error::{BenchError, Result};

/// A finished run with the context needed to report it.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// 1-based position in a sweep; 1 for a single run.
    pub run_number: usize,
    /// Sweep value, if any.
    pub param: Option<f64>,
    pub spec: RunSpec,
    pub record: RunRecord,
    /// Seed actually used by the noise stream.
    pub noise_seed: Option<u64>,
}

/// The objective described by `spec`, plus the noise seed in use.
///
/// `run_id` is passed to external evaluators so that parallel runs can be
/// told apart.
pub fn build_objective(spec: &RunSpec, run_id: u64) -> Result<(Box<dyn Objective>, Option<u64>)> {
    let obj = &spec.objective;
    let base: Box<dyn Objective> = match &obj.external {
        Some(ext) => {
            let mut cmd = ExternalCommand::new(&ext.command)
                .timeout(Duration::from_secs_f64(ext.timeout_secs))
                .run_id(run_id);
            for a in &ext.args {
                cmd = cmd.arg(a);
            }
            Box::new(ExternalObjective::spawn(cmd).map_err(ObjectiveError::from)?)
        }
        None => {
            let id = lookup(&obj.id)?;
            let mut opts = obj.options();
            if opts.n_dims.is_none() && matches!(id.dims(), cfo_objectives::Dims::Configurable { .. }) {
                opts.n_dims = Some(spec.space.n_dims());
            }
            Box::new(Registered::new(id, &opts)?)
        }
    };
    match &obj.noise {
        None => Ok((base, None)),
        Some(n) => {
            let state = if n.wall_clock {
                NoiseState::from_wall_clock(n.mu, n.sigma)
            } else {
                NoiseState::new(n.mu, n.sigma, n.seed)
            };
            let seed = state.seed;
            Ok((Box::new(Noisy::new(base, state)), Some(seed)))
        }
    }
}

/// Runs `spec` once, without writing anything.
pub fn execute(spec: &RunSpec, run_number: usize, param: Option<f64>) -> Result<RunOutcome> {
    let (objective, noise_seed) = build_objective(spec, run_number as u64)?;
    let record = run(&spec.cfo, &spec.space, objective).map_err(BenchError::from)?;
    Ok(RunOutcome { run_number, param, spec: spec.clone(), record, noise_seed })
}

impl RunOutcome {
    /// The one-line result printed after a run.
    pub fn result_line(&self) -> String {
        let r = &self.record;
        let point = r.best_point.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
        let sat = match r.saturation_step {
            Some(s) => s.to_string(),
            None => "none".to_string(),
        };
        format!(
            "{}: best fitness {} at ({}) saturation step {} N_eval {}",
            self.spec.label(),
            r.best_value,
            point,
            sat,
            r.reported_evaluations()
        )
    }
}
