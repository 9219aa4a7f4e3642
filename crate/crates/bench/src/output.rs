//! Data files and summary tables.
//!
//! Floats are written with Rust's shortest round-trip formatting, so identical
//! runs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{Emit, RunSpec};
use crate::error::{BenchError, Result};
use crate::runner::RunOutcome;

/// Number of best-probe trajectories written at most.
pub const MAX_TRAJECTORIES: usize = 10;

/// Creates `dir` and checks that it accepts files.
pub fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| BenchError::Output { path: dir.to_path_buf(), source })?;
    let meta = fs::metadata(dir).map_err(|source| BenchError::Output { path: dir.to_path_buf(), source })?;
    if meta.permissions().readonly() {
        return Err(BenchError::Output {
            path: dir.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::PermissionDenied, "directory is read-only"),
        });
    }
    Ok(())
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|source| BenchError::Output { path: path.clone(), source })?;
    Ok(path)
}

fn series<T: std::fmt::Display>(values: impl IntoIterator<Item = T>) -> String {
    let mut s = String::new();
    for (step, v) in values.into_iter().enumerate() {
        let _ = writeln!(s, "{step} {v}");
    }
    s
}

fn row(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct RecordFile<'a> {
    objective: &'a str,
    run_number: usize,
    param: Option<f64>,
    noise_seed: Option<u64>,
    record: &'a cfo_core::RunRecord,
}

/// Writes the per-run files selected by `emit` into `dir` and returns their
/// paths.
pub fn write_run_files(outcome: &RunOutcome, dir: &Path, emit: &Emit) -> Result<Vec<PathBuf>> {
    let label = outcome.spec.label();
    let r = &outcome.record;
    let mut written = Vec::new();
    let file = |suffix: &str| dir.join(format!("{label}_{suffix}"));

    if emit.fitness {
        written.push(write(file("Fitness.dat"), &series(&r.best_fitness))?);
    }
    if emit.davg {
        written.push(write(file("Davg.dat"), &series(&r.d_avg))?);
    }
    if emit.best_probe {
        written.push(write(file("BestProbe.dat"), &series(r.best_probe.iter().map(|p| p + 1)))?);
    }
    if emit.probe_snapshots || emit.trajectories {
        let positions = r.position_history.as_ref().ok_or_else(|| {
            BenchError::config("outputs.emit: probe snapshots and trajectories need the run history")
        })?;
        if emit.probe_snapshots && r.n_dims == 2 {
            for (step, m) in positions.iter().enumerate() {
                let mut s = String::new();
                for p in 0..m.n_probes() {
                    let _ = writeln!(s, "{}", row(m.row(p)));
                }
                written.push(write(file(&format!("Probes_{step:04}.dat")), &s)?);
            }
        }
        if emit.trajectories {
            let fitness = r.fitness_history.as_ref().ok_or_else(|| {
                BenchError::config("outputs.emit: trajectories need the run history")
            })?;
            for (k, path) in best_trajectories(fitness, positions).into_iter().enumerate() {
                let mut s = String::new();
                for point in path {
                    let _ = writeln!(s, "{}", row(&point));
                }
                written.push(write(file(&format!("t{}.dat", k + 1)), &s)?);
            }
        }
    }
    if emit.record {
        let doc = RecordFile {
            objective: &label,
            run_number: outcome.run_number,
            param: outcome.param,
            noise_seed: outcome.noise_seed,
            record: r,
        };
        let mut json = serde_json::to_string_pretty(&doc).expect("run records serialize");
        json.push('\n');
        written.push(write(dir.join("record.json"), &json)?);
    }
    Ok(written)
}

/// Paths of the probes ranked 1st, 2nd, ... by fitness at each step.
///
/// Trajectory `k` visits, at every step, the probe with the `k`-th highest
/// fitness; ties go to the higher probe index.
pub fn best_trajectories(fitness: &[Vec<f64>], positions: &[cfo_core::ProbeMatrix]) -> Vec<Vec<Vec<f64>>> {
    let n_probes = fitness.first().map_or(0, Vec::len);
    let k_max = n_probes.min(MAX_TRAJECTORIES);
    let mut out = vec![Vec::with_capacity(fitness.len()); k_max];
    for (fit, pos) in fitness.iter().zip(positions) {
        let mut order: Vec<usize> = (0..n_probes).collect();
        order.sort_by(|&a, &b| fit[b].total_cmp(&fit[a]).then(b.cmp(&a)));
        for (k, &p) in order.iter().take(k_max).enumerate() {
            out[k].push(pos.row(p).to_vec());
        }
    }
    out
}

/// One line of the summary table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub run: usize,
    pub param: Option<f64>,
    pub n_t: usize,
    pub n_d: usize,
    pub n_p: usize,
    pub g: f64,
    pub delta_t: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Saturation step if detected, otherwise the last step.
    pub steps: usize,
    pub n_eval: usize,
    pub frep_final: f64,
    pub best_fitness: f64,
    pub best_point: Vec<f64>,
}

impl SummaryRow {
    pub fn from_outcome(o: &RunOutcome) -> Self {
        let c = &o.spec.cfo;
        let r = &o.record;
        Self {
            run: o.run_number,
            param: o.param,
            n_t: c.n_steps,
            n_d: r.n_dims,
            n_p: r.n_probes,
            g: c.g,
            delta_t: c.delta_t,
            alpha: c.alpha,
            beta: c.beta,
            steps: r.reported_steps(),
            n_eval: r.reported_evaluations(),
            frep_final: r.frep.last().copied().unwrap_or(c.frep.init),
            best_fitness: r.best_value,
            best_point: r.best_point.clone(),
        }
    }
}

/// Summary of one or more runs, with the best run repeated at the end when
/// there is more than one.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub label: String,
    pub param_name: String,
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    pub fn new(spec: &RunSpec, rows: Vec<SummaryRow>) -> Self {
        let param_name = match &spec.sweep {
            Some(s) => serde_json::to_value(s.parameter).ok().and_then(|v| v.as_str().map(str::to_string)),
            None => None,
        };
        Self { label: spec.label(), param_name: param_name.unwrap_or_else(|| "gamma".into()), rows }
    }

    /// The best run; later runs win ties.
    pub fn best(&self) -> Option<&SummaryRow> {
        self.rows.iter().reduce(|best, r| if r.best_fitness >= best.best_fitness { r } else { best })
    }

    pub fn total_evaluations(&self) -> usize {
        self.rows.iter().map(|r| r.n_eval).sum()
    }

    fn n_dims(&self) -> usize {
        self.rows.first().map_or(0, |r| r.best_point.len())
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("run,{},N_t,N_d,N_p,G,delta_t,alpha,beta,steps,N_eval,frep_final,best_fitness", self.param_name);
        for i in 1..=self.n_dims() {
            let _ = write!(s, ",x{i}");
        }
        s.push('\n');
        let mut line = |run: String, r: &SummaryRow| {
            let param = r.param.map(|p| p.to_string()).unwrap_or_default();
            let _ = write!(
                s,
                "{run},{param},{},{},{},{},{},{},{},{},{},{},{}",
                r.n_t, r.n_d, r.n_p, r.g, r.delta_t, r.alpha, r.beta, r.steps, r.n_eval, r.frep_final, r.best_fitness
            );
            for v in &r.best_point {
                let _ = write!(s, ",{v}");
            }
            s.push('\n');
        };
        for r in &self.rows {
            line(r.run.to_string(), r);
        }
        if self.rows.len() > 1 {
            if let Some(b) = self.best() {
                line("best".into(), b);
            }
        }
        s
    }

    /// Fixed-width table in the layout of the original program's run log.
    pub fn to_table(&self) -> String {
        let mut s = format!("FUNCTION: {}\n\n", self.label);
        let _ = writeln!(
            s,
            "{:>5} {:>10} {:>6} {:>4} {:>5} {:>7} {:>6} {:>6} {:>6} {:>7} {:>9} {:>9} {:>22}  Best point",
            "Run #", self.param_name, "Nt", "Nd", "Np", "G", "DelT", "Alpha", "Beta", "#Steps", "Neval", "Frep", "Fitness"
        );
        let rule = "-".repeat(s.lines().last().map_or(0, str::len));
        let _ = writeln!(s, "{rule}");
        let line = |s: &mut String, r: &SummaryRow| {
            let param = r.param.map(|p| format!("{p:.3}")).unwrap_or_else(|| "-".into());
            let point = r.best_point.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                s,
                "{:>5} {:>10} {:>6} {:>4} {:>5} {:>7.2} {:>6.2} {:>6.2} {:>6.2} {:>7} {:>9} {:>9.5} {:>22.10}  {}",
                r.run, param, r.n_t, r.n_d, r.n_p, r.g, r.delta_t, r.alpha, r.beta, r.steps, r.n_eval, r.frep_final,
                r.best_fitness, point
            );
        };
        for r in &self.rows {
            line(&mut s, r);
        }
        let _ = writeln!(s, "\n Total Function Evaluations: {}", self.total_evaluations());
        if self.rows.len() > 1 {
            if let Some(b) = self.best() {
                let _ = writeln!(s, "{rule}");
                line(&mut s, b);
            }
        }
        s
    }

    /// Writes `summary.csv` and `summary.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        Ok(vec![write(dir.join("summary.csv"), &self.to_csv())?, write(dir.join("summary.txt"), &self.to_table())?])
    }
}
