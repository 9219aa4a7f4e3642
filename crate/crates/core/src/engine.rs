//! The time-step loop.

use serde::{Deserialize, Serialize};

use crate::config::CfoConfig;
use crate::diagnostics::{
    d_avg, detect_davg_saturation, detect_fitness_saturation, detect_oscillation, step_best, BestFitness,
};
use crate::error::{CfoError, Result};
use crate::frep::{saved_slot_index, update_frep, SavedRing};
use crate::init::init_probes;
use crate::kinematics::{advance_positions, compute_accelerations, retrieve_errant_probes};
use crate::matrix::ProbeMatrix;
use crate::noise::NoiseState;
use crate::objective::{EvalContext, Objective};
use crate::space::DecisionSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    CompletedNt,
    FitnessSaturated,
}

/// Mutable state between steps.
#[derive(Debug, Clone)]
pub struct RunState {
    pub step: usize,
    pub positions: ProbeMatrix,
    pub prev_positions: ProbeMatrix,
    pub accelerations: ProbeMatrix,
    pub fitness: Vec<f64>,
    pub best: BestFitness,
    pub best_point: Vec<f64>,
    pub saved_best: SavedRing,
    pub frep: f64,
}

/// Per-step series and final result of one run. Index `j` of every series is
/// time step `j`; step 0 is the initial distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n_probes: usize,
    pub n_dims: usize,
    /// Best fitness over all steps so far.
    pub best_fitness: Vec<f64>,
    /// Best fitness among the probes of each step.
    pub step_best_fitness: Vec<f64>,
    /// Probe holding each step's best fitness (0-based).
    pub best_probe: Vec<usize>,
    /// Average distance to the step's best probe.
    pub d_avg: Vec<f64>,
    /// Repositioning factor in force after each step's update.
    pub frep: Vec<f64>,
    pub n_eval: Vec<usize>,
    pub davg_oscillating: Vec<bool>,
    pub davg_saturated: Vec<bool>,
    pub fitness_saturated: Vec<bool>,
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub best_probe_index: usize,
    pub best_step: usize,
    /// Earliest step whose running best already equals the final best (within
    /// the fitness saturation tolerance), reported only when the saturation
    /// detector fired at or after it.
    pub saturation_step: Option<usize>,
    pub termination: Termination,
    pub last_step: usize,
    /// `fitness_history[j][p]`; absent in streaming mode.
    pub fitness_history: Option<Vec<Vec<f64>>>,
    pub position_history: Option<Vec<ProbeMatrix>>,
}

impl RunRecord {
    /// Saturation step if detected, otherwise the last executed step.
    pub fn reported_steps(&self) -> usize {
        self.saturation_step.unwrap_or(self.last_step)
    }

    /// `(steps + 1) * N_p` for [`Self::reported_steps`].
    pub fn reported_evaluations(&self) -> usize {
        (self.reported_steps() + 1) * self.n_probes
    }
}

/// Steps a single CFO run. Not shareable between threads while running, but
/// movable between them.
pub struct Engine<O: Objective> {
    cfg: CfoConfig,
    space: DecisionSpace,
    objective: O,
    state: RunState,
    record: RunRecord,
    perturbation: Option<NoiseState>,
}

impl<O: Objective> Engine<O> {
    /// Places the probes and evaluates step 0.
    pub fn new(cfg: CfoConfig, space: DecisionSpace, mut objective: O) -> Result<Self> {
        cfg.validate(&space)?;
        let positions = init_probes(&cfg, &space)?;
        let fitness = evaluate_all(&mut objective, &positions, 0)?;
        let mut accelerations = ProbeMatrix::zeros(cfg.n_probes, space.n_dims());
        if let Some(a0) = &cfg.initial_acceleration {
            for p in 0..cfg.n_probes {
                accelerations.row_mut(p).copy_from_slice(a0);
            }
        }
        let (probe, value) = step_best(&fitness);
        let best = BestFitness { value, probe, step: 0 };
        let keep = cfg.retains_history();
        let record = RunRecord {
            n_probes: cfg.n_probes,
            n_dims: space.n_dims(),
            best_fitness: vec![value],
            step_best_fitness: vec![value],
            best_probe: vec![probe],
            d_avg: vec![d_avg(&positions, probe, &space)?],
            frep: vec![cfg.frep.init],
            n_eval: vec![cfg.n_probes],
            davg_oscillating: vec![false],
            davg_saturated: vec![false],
            fitness_saturated: vec![false],
            best_point: positions.row(probe).to_vec(),
            best_value: value,
            best_probe_index: probe,
            best_step: 0,
            saturation_step: None,
            termination: Termination::CompletedNt,
            last_step: 0,
            fitness_history: keep.then(|| vec![fitness.clone()]),
            position_history: keep.then(|| vec![positions.clone()]),
        };
        let state = RunState {
            step: 0,
            prev_positions: positions.clone(),
            best_point: positions.row(probe).to_vec(),
            positions,
            accelerations,
            fitness,
            best,
            saved_best: SavedRing::new(cfg.frep.n_saved, value),
            frep: cfg.frep.init,
        };
        let m = &cfg.mitigations;
        let perturbation = m.perturb_on_oscillation.then(|| NoiseState::new(0.0, m.perturb_sigma, m.perturb_seed));
        Ok(Self { cfg, space, objective, state, record, perturbation })
    }

    pub fn state(&self) -> &RunState {
        &self.state
    }

    pub fn record(&self) -> &RunRecord {
        &self.record
    }

    pub fn is_finished(&self) -> bool {
        self.state.step >= self.cfg.n_steps || self.record.termination == Termination::FitnessSaturated
    }

    /// Executes one time step. Returns `false` once the run has ended.
    pub fn step(&mut self) -> Result<bool> {
        if self.is_finished() {
            return Ok(false);
        }
        let j = self.state.step + 1;
        let st = &mut self.state;
        let slot = saved_slot_index(j, self.cfg.frep.n_saved);

        let raw = advance_positions(&st.positions, &st.accelerations, self.cfg.delta_t)?;
        let positions = retrieve_errant_probes(&raw, &st.positions, &self.space, st.frep)?;
        if let Some(p) = (0..positions.n_probes()).find(|&p| !self.space.contains(positions.row(p))) {
            return Err(CfoError::Invariant(format!("probe {p} outside the decision space at step {j}")));
        }
        let fitness = evaluate_all(&mut self.objective, &positions, j)?;

        for (p, &m) in fitness.iter().enumerate() {
            if m >= st.best.value {
                st.best = BestFitness { value: m, probe: p, step: j };
                st.best_point = positions.row(p).to_vec();
                st.saved_best.set(slot, m);
            }
        }
        st.frep = update_frep(&st.saved_best, st.frep, &self.cfg.frep);
        st.accelerations = compute_accelerations(&positions, &fitness, &self.cfg, &self.space)?;
        st.prev_positions = std::mem::replace(&mut st.positions, positions);
        st.fitness = fitness;
        st.step = j;

        let (probe, value) = step_best(&st.fitness);
        let rec = &mut self.record;
        rec.best_fitness.push(st.best.value);
        rec.step_best_fitness.push(value);
        rec.best_probe.push(probe);
        rec.d_avg.push(d_avg(&st.positions, probe, &self.space)?);
        rec.frep.push(st.frep);
        rec.n_eval.push((j + 1) * self.cfg.n_probes);
        let oscillating = detect_oscillation(&rec.d_avg, j);
        let davg_saturated = detect_davg_saturation(&rec.d_avg, j, &self.cfg.detectors);
        let fitness_saturated = detect_fitness_saturation(&rec.step_best_fitness, j, &self.cfg.detectors);
        rec.davg_oscillating.push(oscillating);
        rec.davg_saturated.push(davg_saturated);
        rec.fitness_saturated.push(fitness_saturated);
        rec.best_point.clone_from(&st.best_point);
        rec.best_value = st.best.value;
        rec.best_probe_index = st.best.probe;
        rec.best_step = st.best.step;
        rec.last_step = j;

        if j < self.cfg.n_steps {
            self.apply_mitigations(j, probe, oscillating && davg_saturated);
        }
        let rec = &mut self.record;
        if let Some(h) = rec.fitness_history.as_mut() {
            h.push(self.state.fitness.clone());
        }
        if let Some(h) = rec.position_history.as_mut() {
            h.push(self.state.positions.clone());
        }
        if fitness_saturated && self.cfg.early_termination {
            rec.termination = Termination::FitnessSaturated;
        }
        Ok(!self.is_finished())
    }

    fn apply_mitigations(&mut self, j: usize, step_best_probe: usize, trapped: bool) {
        let st = &mut self.state;
        if let (Some(noise), true) = (self.perturbation.as_mut(), trapped) {
            for (i, x) in st.positions.row_mut(step_best_probe).iter_mut().enumerate() {
                let moved = 0.5 * *x * (1.0 + noise.deviate());
                *x = moved.clamp(self.space.lower(i), self.space.upper(i));
            }
        }
        if let Some(n) = self.cfg.mitigations.shrink_interval {
            if j % n == 0 {
                let bounds = self
                    .space
                    .bounds()
                    .iter()
                    .zip(&st.best_point)
                    .map(|(&(lo, hi), &b)| (lo + (b - lo) / 2.0, hi - (hi - b) / 2.0))
                    .collect();
                // A degenerate box (best point on a bound) leaves the space unchanged.
                if let Ok(space) = DecisionSpace::new(bounds) {
                    self.space = space;
                    for p in 0..st.positions.n_probes() {
                        for (i, x) in st.positions.row_mut(p).iter_mut().enumerate() {
                            *x = x.clamp(self.space.lower(i), self.space.upper(i));
                        }
                    }
                }
            }
        }
    }

    /// Runs the remaining steps and returns the record.
    pub fn run_to_end(mut self) -> Result<RunRecord> {
        while self.step()? {}
        Ok(self.finish())
    }

    pub fn finish(mut self) -> RunRecord {
        self.record.saturation_step = saturation_step(&self.record, self.cfg.detectors.fitness_sat_tol);
        self.record
    }

    pub fn into_objective(self) -> O {
        self.objective
    }
}

fn saturation_step(rec: &RunRecord, tol: f64) -> Option<usize> {
    let last_firing = rec.fitness_saturated.iter().rposition(|&f| f)?;
    let final_best = rec.best_fitness[rec.last_step];
    let first = rec.best_fitness.iter().position(|&b| (final_best - b).abs() <= tol)?;
    (first <= last_firing).then_some(first)
}

fn evaluate_all<O: Objective>(objective: &mut O, positions: &ProbeMatrix, step: usize) -> Result<Vec<f64>> {
    (0..positions.n_probes())
        .map(|probe| {
            let value = objective
                .evaluate(positions.row(probe), EvalContext { step, probe })
                .map_err(|source| CfoError::Objective { step, probe, source })?;
            if !value.is_finite() {
                return Err(CfoError::NonFiniteFitness { step, probe, value });
            }
            Ok(value)
        })
        .collect()
}

/// Executes a full run.
pub fn run<O: Objective>(cfg: &CfoConfig, space: &DecisionSpace, objective: O) -> Result<RunRecord> {
    Engine::new(cfg.clone(), space.clone(), objective)?.run_to_end()
}
