//! The acceptance suite: twelve checks of the engine, the surrogates, the
//! harness and the external protocol, each reported as PASS or FAIL with the
//! measured numbers.
//!
//! Every CFO run goes through the same spec defaults as the command line and
//! is executed twice so that determinism is checked on the real workload.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use cfo_antenna::{Pattern, Quadrature};
use cfo_core::noise::NoiseState;
use cfo_core::{
    BoxError, CfoConfig, DecisionSpace, Engine, EvalContext, FrepMode, FrepPolicy, InitScheme, Objective,
    ProbeMatrix, RunRecord,
};
use cfo_objectives::{lookup, ExternalCommand, ExternalObjective, ObjectiveOptions, Pbm, Registered};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{parse_config, CfoOverrides, ObjectiveSpec, RunSpec};
use crate::error::BenchError;
use crate::oracle::{compass_refine, grid_oracle, refined_oracle};
use crate::output::{write_run_files, Summary, SummaryRow};
use crate::runner::{execute, RunOutcome};
use crate::sweep::sweep_runs;

/// Seed of the noisy linear-array run. Fixed before the first run and not
/// tuned afterwards.
pub const NOISY_LINEAR_SEED: u64 = 1;
/// Seed of the Box-Muller moment check.
pub const NOISE_CHECK_SEED: u64 = 20_080_415;

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

/// How to start an evaluator that serves registered objectives, e.g.
/// `cfo-bench serve`.
#[derive(Debug, Clone)]
pub struct Evaluator {
    pub program: PathBuf,
    pub args: Vec<String>,
}

impl Evaluator {
    pub fn new(program: impl Into<PathBuf>, args: &[&str]) -> Self {
        Self { program: program.into(), args: args.iter().map(|s| s.to_string()).collect() }
    }

    fn command(&self, id: &str) -> ExternalCommand {
        let mut cmd = ExternalCommand::new(self.program.to_string_lossy());
        for a in &self.args {
            cmd = cmd.arg(a);
        }
        cmd.arg(id)
    }
}

/// Shared state: every run's determinism verdict and summary row.
#[derive(Default)]
struct Ledger {
    determinism: Mutex<Vec<(String, bool)>>,
    rows: Mutex<Vec<(String, SummaryRow, RunRecord)>>,
}

impl Ledger {
    /// Executes `spec` twice, records whether the serialized records match
    /// and returns the first outcome.
    fn run(&self, name: &str, spec: &RunSpec) -> Result<(RunOutcome, f64), BenchError> {
        let start = Instant::now();
        let a = execute(spec, 1, None)?;
        let seconds = start.elapsed().as_secs_f64();
        let b = execute(spec, 1, None)?;
        let same = serde_json::to_string(&a.record).ok() == serde_json::to_string(&b.record).ok();
        self.determinism.lock().unwrap().push((name.to_string(), same));
        self.rows.lock().unwrap().push((name.to_string(), SummaryRow::from_outcome(&a), a.record.clone()));
        Ok((a, seconds))
    }
}

fn spec_for(id: &str) -> RunSpec {
    RunSpec::new(ObjectiveSpec::named(id), CfoOverrides::default()).expect("registered defaults are valid")
}

fn registered(id: &str, opts: &ObjectiveOptions) -> Registered {
    Registered::new(lookup(id).expect("registered id"), opts).expect("registered objective")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn fmt_point(x: &[f64]) -> String {
    format!("({})", x.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>().join(", "))
}

type Check = Result<(bool, String), BenchError>;

fn timed(number: u8, title: &'static str, f: impl FnOnce() -> Check) -> Criterion {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Criterion { number, title, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Runs all criteria and returns them in order 1 to 12.
pub fn run_acceptance(evaluator: &Evaluator) -> Vec<Criterion> {
    let ledger = Ledger::default();
    let scratch = std::env::temp_dir().join(format!("cfo-acceptance-{}", std::process::id()));
    let mut out = vec![
        timed(1, "engine step matches a naive re-implementation", engine_equivalence),
        timed(3, "analytic suite", || analytic_suite(&ledger)),
        timed(4, "PBM1 surrogate", || pbm1(&ledger)),
        timed(5, "PBM2 surrogate", || pbm2(&ledger)),
        timed(6, "PBM3 surrogate", || pbm3(&ledger)),
        timed(7, "PBM5 surrogate", || pbm5(&ledger)),
        timed(9, "noise statistics", noise_statistics),
        timed(10, "quadrature integrity", quadrature_integrity),
        timed(11, "detector behaviour on PBM1", || detectors(&ledger)),
        timed(12, "external protocol", || external_protocol(evaluator)),
    ];
    out.push(timed(8, "efficiency accounting", || accounting(&ledger, &scratch)));
    out.push(timed(2, "determinism", || determinism(&ledger, &scratch)));
    let _ = std::fs::remove_dir_all(&scratch);
    out.sort_by_key(|c| c.number);
    out
}

// 1 -------------------------------------------------------------------------

/// Fitness read from a table indexed by step and probe.
struct TableObjective(Vec<Vec<f64>>);

impl Objective for TableObjective {
    fn evaluate(&mut self, _x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
        Ok(self.0[ctx.step][ctx.probe])
    }
}

struct Instance {
    bounds: Vec<(f64, f64)>,
    positions: Vec<Vec<f64>>,
    accel: Vec<f64>,
    fitness: Vec<Vec<f64>>,
    g: f64,
    alpha: f64,
    beta: f64,
    dt: f64,
    frep: f64,
}

fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n_p = rng.gen_range(2..=6);
    let n_d = rng.gen_range(1..=4);
    let bounds: Vec<(f64, f64)> = (0..n_d)
        .map(|_| {
            let lo = rng.gen_range(-10.0..10.0);
            (lo, lo + rng.gen_range(0.1..20.0))
        })
        .collect();
    let positions = (0..n_p).map(|_| bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect()).collect();
    // Large enough that some probes leave the box and are retrieved.
    let accel = bounds.iter().map(|&(lo, hi)| rng.gen_range(-1.0..1.0) * (hi - lo)).collect();
    let mut fitness: Vec<Vec<f64>> =
        (0..3).map(|_| (0..n_p).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
    if rng.gen_bool(0.3) {
        // Exercise equal fitnesses, where the unit step is 1 but the mass 0.
        fitness[1][n_p - 1] = fitness[1][0];
    }
    Instance {
        bounds,
        positions,
        accel,
        fitness,
        g: rng.gen_range(0.5..3.0),
        alpha: rng.gen_range(1.0..3.0),
        beta: rng.gen_range(1.0..3.0),
        dt: rng.gen_range(0.5..2.0),
        frep: rng.gen_range(0.05..1.0),
    }
}

fn naive_retrieve(raw: &[Vec<f64>], prev: &[Vec<f64>], bounds: &[(f64, f64)], frep: f64) -> Vec<Vec<f64>> {
    raw.iter()
        .zip(prev)
        .map(|(r, p)| {
            r.iter()
                .zip(p)
                .zip(bounds)
                .map(|((&x, &before), &(lo, hi))| {
                    if x < lo {
                        lo + frep * (before - lo)
                    } else if x > hi {
                        hi - frep * (hi - before)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect()
}

fn naive_move(pos: &[Vec<f64>], acc: &[Vec<f64>], dt: f64) -> Vec<Vec<f64>> {
    pos.iter().zip(acc).map(|(r, a)| r.iter().zip(a).map(|(x, ai)| x + 0.5 * ai * dt * dt).collect()).collect()
}

fn naive_accelerations(pos: &[Vec<f64>], fit: &[f64], inst: &Instance) -> Vec<Vec<f64>> {
    let n_d = inst.bounds.len();
    (0..pos.len())
        .map(|p| {
            let mut a = vec![0.0; n_d];
            for k in 0..pos.len() {
                let dm = fit[k] - fit[p];
                if k == p || dm <= 0.0 {
                    continue;
                }
                let dist = pos[k].iter().zip(&pos[p]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
                let w = inst.g * (inst.alpha * dm.ln()).exp() / (inst.beta * dist.ln()).exp();
                for i in 0..n_d {
                    a[i] += w * (pos[k][i] - pos[p][i]);
                }
            }
            a
        })
        .collect()
}

fn worst_rel(engine: &ProbeMatrix, naive: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (p, row) in naive.iter().enumerate() {
        for (i, &n) in row.iter().enumerate() {
            let e = engine.get(p, i);
            let err = if e == n { 0.0 } else { (e - n).abs() / n.abs().max(f64::MIN_POSITIVE) };
            worst = worst.max(err);
        }
    }
    worst
}

fn engine_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1_200_212);
    let mut worst: f64 = 0.0;
    let mut retrieved = 0usize;
    for _ in 0..50 {
        let inst = random_instance(&mut rng);
        let space = DecisionSpace::new(inst.bounds.clone())?;
        let mut cfg = CfoConfig::new(inst.positions.len(), 2, InitScheme::Custom(inst.positions.clone()));
        cfg.g = inst.g;
        cfg.alpha = inst.alpha;
        cfg.beta = inst.beta;
        cfg.delta_t = inst.dt;
        cfg.initial_acceleration = Some(inst.accel.clone());
        cfg.frep = FrepPolicy { mode: FrepMode::Fixed, init: inst.frep, ..FrepPolicy::default() };
        let mut engine = Engine::new(cfg, space, TableObjective(inst.fitness.clone()))?;

        let acc0 = vec![inst.accel.clone(); inst.positions.len()];
        let raw1 = naive_move(&inst.positions, &acc0, inst.dt);
        let r1 = naive_retrieve(&raw1, &inst.positions, &inst.bounds, inst.frep);
        retrieved += raw1.iter().flatten().zip(r1.iter().flatten()).filter(|(a, b)| a != b).count();
        let a1 = naive_accelerations(&r1, &inst.fitness[1], &inst);
        engine.step()?;
        worst = worst.max(worst_rel(&engine.state().positions, &r1));
        worst = worst.max(worst_rel(&engine.state().accelerations, &a1));

        let r2 = naive_retrieve(&naive_move(&r1, &a1, inst.dt), &r1, &inst.bounds, inst.frep);
        engine.step()?;
        worst = worst.max(worst_rel(&engine.state().positions, &r2));
    }
    Ok((
        worst <= 1e-12,
        format!("50 instances, worst relative deviation {worst:.2e} (limit 1e-12), {retrieved} retrieved coordinates"),
    ))
}

// 2 -------------------------------------------------------------------------

fn determinism(ledger: &Ledger, scratch: &Path) -> Check {
    let runs = ledger.determinism.lock().unwrap().clone();
    let differing: Vec<&str> = runs.iter().filter(|(_, same)| !same).map(|(n, _)| n.as_str()).collect();

    // Output files, not just records.
    let spec = spec_for("GP");
    let mut bytes = Vec::new();
    for k in 0..2 {
        let dir = scratch.join(format!("determinism_{k}"));
        std::fs::create_dir_all(&dir).map_err(|source| BenchError::Output { path: dir.clone(), source })?;
        let outcome = execute(&spec, 1, None)?;
        let mut files = write_run_files(&outcome, &dir, &spec.outputs.emit)?;
        files.extend(Summary::new(&spec, vec![SummaryRow::from_outcome(&outcome)]).write(&dir)?);
        let contents: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap_or_default()).collect();
        bytes.push(contents);
    }
    let files_same = bytes[0] == bytes[1];
    Ok((
        differing.is_empty() && files_same && !runs.is_empty(),
        format!(
            "{} runs repeated, {} differing{}; GP output files {}",
            runs.len(),
            differing.len(),
            if differing.is_empty() { String::new() } else { format!(" ({})", differing.join(", ")) },
            if files_same { "byte-identical" } else { "differ" }
        ),
    ))
}

// 3 -------------------------------------------------------------------------

fn analytic_suite(ledger: &Ledger) -> Check {
    let (gp, t_gp) = ledger.run("GP", &spec_for("GP"))?;
    let (hb, t_hb) = ledger.run("HIMMELBLAU", &spec_for("HIMMELBLAU"))?;
    let (pf, t_pf) = ledger.run("PARROTT_F4", &spec_for("PARROTT_F4"))?;
    let gp_r = &gp.record;
    let gp_dist = ((gp_r.best_point[0] - 0.0).powi(2) + (gp_r.best_point[1] + 1.0).powi(2)).sqrt();
    let ok = gp_r.best_value >= -3.01
        && gp_dist <= 0.05
        && hb.record.best_value >= 199.9
        && pf.record.best_value >= 0.999
        && t_gp.max(t_hb).max(t_pf) < 5.0;
    Ok((
        ok,
        format!(
            "GP {:.5} at {} (distance {:.4}, N_p {}); Himmelblau {:.5} (N_p {}); Parrott F4 {:.7} (N_p {}); slowest run {:.2} s",
            gp_r.best_value,
            fmt_point(&gp_r.best_point),
            gp_dist,
            gp_r.n_probes,
            hb.record.best_value,
            hb.record.n_probes,
            pf.record.best_value,
            pf.record.n_probes,
            t_gp.max(t_hb).max(t_pf)
        ),
    ))
}

// 4 and 11 --------------------------------------------------------------------

/// Coordinates of the reported CFO optimum for the dipole.
pub const PBM1_REFERENCE_POINT: [f64; 2] = [2.55088, 0.61805];
pub const PBM1_REFERENCE_D: f64 = 3.2;

fn pbm1(ledger: &Ledger) -> Check {
    let obj = registered("PBM_1", &ObjectiveOptions::default());
    let oracle = grid_oracle(|x| obj.value(x).unwrap_or(f64::NAN), obj.space(), &[251, 91])?;
    let o = &oracle.argmax;
    let oracle_ok = (o[0] - PBM1_REFERENCE_POINT[0]).abs() <= 0.05
        && (o[1] - PBM1_REFERENCE_POINT[1]).abs() <= 0.03
        && rel(oracle.value, PBM1_REFERENCE_D) <= 0.05;

    let (run, _) = ledger.run("PBM_1", &spec_for("PBM_1"))?;
    let r = &run.record;
    let worst = r.best_point.iter().zip(o).map(|(x, y)| (x - y).abs() / y.abs()).fold(0.0, f64::max);
    let sat = r.saturation_step;
    let cfo_ok = worst <= 0.02 && sat.is_some_and(|s| s <= 40);
    Ok((
        oracle_ok && cfo_ok,
        format!(
            "oracle {:.5} at {} ({}); CFO {:.5} at {} (worst coordinate deviation {:.1}%, limit 2%), saturation step {} (limit 40)",
            oracle.value,
            fmt_point(o),
            if oracle_ok { "within tolerance of the reference" } else { "outside tolerance of the reference" },
            r.best_value,
            fmt_point(&r.best_point),
            100.0 * worst,
            sat.map_or("none".into(), |s| s.to_string())
        ),
    ))
}

fn detectors(ledger: &Ledger) -> Check {
    let (run, _) = ledger.run("PBM_1 (detectors)", &spec_for("PBM_1"))?;
    let r = &run.record;
    let fired = r.fitness_saturated.iter().any(|&f| f);
    let final_davg = *r.d_avg.last().unwrap_or(&f64::NAN);
    Ok((
        fired && final_davg < 0.05,
        format!(
            "fitness saturation {} (window {}), final D_avg {final_davg:.5} (limit 0.05)",
            if fired { "fired" } else { "never fired" },
            run.spec.cfo.detectors.n_avg_steps
        ),
    ))
}

// 5 -------------------------------------------------------------------------

fn pbm2(ledger: &Ledger) -> Check {
    let obj = registered("PBM_2", &ObjectiveOptions::default());
    let f = |x: &[f64]| obj.value(x).unwrap_or(f64::NAN);
    let (run, _) = ledger.run("PBM_2", &spec_for("PBM_2"))?;
    let (grid, fine) = refined_oracle(f, obj.space(), &[401, 181], std::slice::from_ref(&run.record.best_point))?;
    let theta_err = (fine.argmax[1] - FRAC_PI_2).abs();
    let oracle_ok = theta_err <= 0.02 && rel(fine.value, 18.11) <= 0.05;
    let cfo_gap = rel(run.record.best_value, fine.value);

    let mut noisy = spec_for("PBM_2");
    noisy.objective.noise = Some(crate::config::NoiseSpec {
        mu: 0.0,
        sigma: cfo_objectives::pbm::linear_array_noise_sigma(),
        seed: NOISY_LINEAR_SEED,
        wall_clock: false,
    });
    let (nrun, _) = ledger.run("PBM_2 noisy", &noisy)?;
    let noisy_theta_err = (nrun.record.best_point[1] - FRAC_PI_2).abs();
    Ok((
        oracle_ok && cfo_gap <= 0.02 && noisy_theta_err <= 0.1,
        format!(
            "oracle {:.4} at {} (grid {:.4}); CFO {:.4} at {} ({:.2}% below); noisy CFO theta {:.4} ({:.4} from pi/2, seed {})",
            fine.value,
            fmt_point(&fine.argmax),
            grid.value,
            run.record.best_value,
            fmt_point(&run.record.best_point),
            100.0 * cfo_gap,
            nrun.record.best_point[1],
            noisy_theta_err,
            NOISY_LINEAR_SEED
        ),
    ))
}

// 6 -------------------------------------------------------------------------

fn pbm3(ledger: &Ledger) -> Check {
    let obj = registered("PBM_3", &ObjectiveOptions::default());
    let f = |x: &[f64]| obj.value(x).unwrap_or(f64::NAN);
    let candidates: Vec<Vec<f64>> = (1..=4).map(|i| vec![i as f64 - 0.5, FRAC_PI_2]).collect();
    let values: Vec<f64> = candidates.iter().map(|c| f(c)).collect();
    let hi = values.iter().copied().fold(f64::MIN, f64::max);
    let lo = values.iter().copied().fold(f64::MAX, f64::min);
    let spread = (hi - lo) / hi;

    let (run, _) = ledger.run("PBM_3", &spec_for("PBM_3"))?;
    let mut starts = candidates.clone();
    starts.push(run.record.best_point.clone());
    let (_, fine) = refined_oracle(f, obj.space(), &[201, 91], &starts)?;
    let gap = rel(run.record.best_value, fine.value);
    Ok((
        spread <= 1e-9 && rel(hi, 6.15) <= 0.10 && gap <= 0.03,
        format!(
            "candidates {:.6} spread {spread:.1e}; oracle {:.4} at {}; CFO {:.4} at {} ({:.2}% below)",
            hi,
            fine.value,
            fmt_point(&fine.argmax),
            run.record.best_value,
            fmt_point(&run.record.best_point),
            100.0 * gap
        ),
    ))
}

// 7 -------------------------------------------------------------------------

/// Best uniform spacing for `n_elements`, from a 1001-point sweep refined by
/// compass search.
pub fn uniform_spacing_oracle(n_elements: usize) -> Result<(f64, f64), BenchError> {
    let obj = registered("PBM_5", &ObjectiveOptions { n_elements: Some(n_elements), ..Default::default() });
    let n = n_elements - 1;
    let space = DecisionSpace::new(vec![(0.5, 1.5)])?;
    let f = |d: &[f64]| obj.value(&vec![d[0]; n]).unwrap_or(f64::NAN);
    let grid = grid_oracle(f, &space, &[1001])?;
    let fine = compass_refine(f, &space, &grid.argmax, &[1e-3]);
    Ok((fine.argmax[0], fine.value))
}

fn pbm5(ledger: &Ledger) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n_el, reference) in [(6usize, 11.22), (10, 19.10)] {
        let (d_star, d_max) = uniform_spacing_oracle(n_el)?;
        let spec = RunSpec::new(
            ObjectiveSpec { n_elements: Some(n_el), ..ObjectiveSpec::named("PBM_5") },
            CfoOverrides::default(),
        )?;
        let (run, _) = ledger.run(&format!("PBM_5 {n_el} elements"), &spec)?;
        let x = &run.record.best_point;
        let worst = x.iter().map(|d| (d - d_star).abs()).fold(0.0, f64::max);
        let spread = x.iter().copied().fold(f64::MIN, f64::max) - x.iter().copied().fold(f64::MAX, f64::min);
        ok &= (0.96..=1.01).contains(&d_star) && rel(d_max, reference) <= 0.05 && worst <= 0.03 && spread <= 1e-3;
        parts.push(format!(
            "{n_el} elements: oracle {d_max:.4} at d = {d_star:.5}; CFO {:.4}, max |d_i - d*| {worst:.5}, spread {spread:.1e}",
            run.record.best_value
        ));
    }
    Ok((ok, parts.join("; ")))
}

// 8 -------------------------------------------------------------------------

fn accounting(ledger: &Ledger, scratch: &Path) -> Check {
    let mut rows = ledger.rows.lock().unwrap().clone();

    // A sweep through the real writer; its CSV is read back.
    let spec = parse_config(r#"{"objective": "SGO", "sweep": {"parameter": "gamma", "start": 0, "stop": 1, "count": 11}}"#)?;
    let dir = scratch.join("sweep");
    let report = sweep_runs(&spec, &dir)?;
    for o in &report.outcomes {
        rows.push((format!("SGO run {}", o.run_number), SummaryRow::from_outcome(o), o.record.clone()));
    }
    let csv = std::fs::read_to_string(dir.join("summary.csv"))
        .map_err(|source| BenchError::Output { path: dir.join("summary.csv"), source })?;
    let mut csv_rows = 0;
    let mut csv_bad = 0;
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n_p: usize = f[4].parse().unwrap_or(0);
        let steps: usize = f[9].parse().unwrap_or(0);
        let n_eval: usize = f[10].parse().unwrap_or(usize::MAX);
        csv_rows += 1;
        if n_eval != (steps + 1) * n_p {
            csv_bad += 1;
        }
    }

    let mut bad = Vec::new();
    for (name, row, rec) in &rows {
        let steps = rec.saturation_step.unwrap_or(rec.last_step);
        if row.steps != steps || row.n_eval != (steps + 1) * rec.n_probes {
            bad.push(name.clone());
        }
    }
    let pbm5 = rows.iter().find(|(n, ..)| n == "PBM_5 6 elements").map(|(_, r, rec)| (r.n_eval, rec.saturation_step));
    let (n_eval6, sat6) = pbm5.unwrap_or((usize::MAX, None));
    let ok = bad.is_empty() && csv_bad == 0 && csv_rows == 12 && sat6.is_some_and(|s| s <= 10) && n_eval6 <= 110;
    Ok((
        ok,
        format!(
            "{} run rows and {csv_rows} emitted CSV rows checked, {} mismatches; PBM5 6 elements saturation step {}, N_eval {n_eval6}",
            rows.len(),
            bad.len() + csv_bad,
            sat6.map_or("none".into(), |s| s.to_string())
        ),
    ))
}

// 9 -------------------------------------------------------------------------

fn noise_statistics() -> Check {
    const N: usize = 1_000_000;
    let start = Instant::now();
    let mut noise = NoiseState::new(0.0, 0.4472, NOISE_CHECK_SEED);
    let draws: Vec<f64> = (0..N).map(|_| noise.deviate()).collect();
    let mean = draws.iter().sum::<f64>() / N as f64;
    let var = draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (N - 1) as f64;
    let seconds = start.elapsed().as_secs_f64();
    Ok((
        mean.abs() < 0.002 && (0.198..=0.202).contains(&var) && seconds < 2.0,
        format!("mean {mean:.5}, variance {var:.5} over 1e6 draws in {seconds:.2} s"),
    ))
}

// 10 ------------------------------------------------------------------------

fn quadrature_integrity() -> Check {
    let cases: [(&str, ObjectiveOptions, Vec<f64>); 4] = [
        ("PBM_1", ObjectiveOptions::default(), PBM1_REFERENCE_POINT.to_vec()),
        ("PBM_2", ObjectiveOptions::default(), vec![5.85, FRAC_PI_2]),
        ("PBM_3", ObjectiveOptions::default(), vec![0.5, FRAC_PI_2]),
        ("PBM_5", ObjectiveOptions { n_elements: Some(6), ..Default::default() }, vec![0.99; 5]),
    ];
    let fine = Quadrature { n_theta: 1024, n_phi: 2048 };
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, opts, x) in cases {
        let obj = registered(id, &opts);
        let pbm: &Pbm = obj.antenna().expect("antenna benchmark");
        let power = pbm.radiated_power(&x)?;
        let pattern = pbm.pattern(&x)?;
        let norm = fine.integrate(|t, p| 4.0 * PI * pattern.field(t, p).norm_sqr() / power) / (4.0 * PI);
        let d = pbm.directivity(&x)?;
        let d2 = pbm.refined().directivity(&x)?;
        let change = rel(d2, d);
        ok &= (0.999..=1.001).contains(&norm) && change < 1e-3;
        parts.push(format!("{id} norm {norm:.6}, doubling {change:.1e}"));
    }
    Ok((ok, parts.join("; ")))
}

// 12 ------------------------------------------------------------------------

fn external_protocol(evaluator: &Evaluator) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(424_242);
    let mut ext = ExternalObjective::spawn(evaluator.command("F1")).map_err(cfo_objectives::ObjectiveError::from)?;
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let n = rng.gen_range(1..=6);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-100.0..100.0)).collect();
        let remote = ext.request(&x, EvalContext { step: k, probe: 0 }).map_err(cfo_objectives::ObjectiveError::from)?;
        let local = cfo_objectives::registry::evaluate("F1", &x)?;
        worst = worst.max((remote - local).abs() / local.abs().max(1.0));
    }
    drop(ext);

    let stub = |script: &str, timeout: f64| {
        format!(
            r#"{{"objective": {{"id": "stub", "external": {{"command": "sh", "args": ["-c", {}], "timeout_secs": {timeout}}}}},
                "bounds": [[-1, 1]], "cfo": {{"n_probes": 2, "n_steps": 3}}}}"#,
            serde_json::to_string(script).unwrap()
        )
    };
    let malformed = parse_config(&stub("echo 'CFO-OBJ 1'; read line; echo 'FITNESS banana'; exec sleep 5", 10.0))?;
    let malformed_code = execute(&malformed, 1, None).err().map(|e| e.exit_code());
    let slow = parse_config(&stub("echo 'CFO-OBJ 1'; read line; exec sleep 30", 0.5))?;
    let start = Instant::now();
    let slow_code = execute(&slow, 1, None).err().map(|e| e.exit_code());
    let slow_seconds = start.elapsed().as_secs_f64();

    let code = |c: Option<u8>| c.map_or("success".into(), |c| c.to_string());
    Ok((
        worst <= 1e-12 && malformed_code == Some(3) && slow_code == Some(3) && slow_seconds < 5.0,
        format!(
            "100 paired evaluations, worst relative deviation {worst:.1e}; malformed reply exit code {}; timeout exit code {} after {slow_seconds:.2} s",
            code(malformed_code),
            code(slow_code)
        ),
    ))
}
