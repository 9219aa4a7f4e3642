// The reference step is written index by index on purpose.
#![allow(clippy::too_many_arguments, clippy::needless_range_loop)]

use cfo_core::*;
use proptest::prelude::*;

/// Naive re-statement of one engine step: gravity, drift, retrieval.
fn naive_step(
    r: &[Vec<f64>],
    m: &[f64],
    bounds: &[(f64, f64)],
    g: f64,
    alpha: f64,
    beta: f64,
    dt: f64,
    frep: f64,
) -> Vec<Vec<f64>> {
    let np = r.len();
    let nd = bounds.len();
    let mut a = vec![vec![0.0; nd]; np];
    for p in 0..np {
        for i in 0..nd {
            for k in 0..np {
                if k == p {
                    continue;
                }
                let mut sumsq = 0.0;
                for l in 0..nd {
                    sumsq += (r[k][l] - r[p][l]) * (r[k][l] - r[p][l]);
                }
                let diff = m[k] - m[p];
                let u = if diff >= 0.0 { 1.0 } else { 0.0 };
                a[p][i] += g * (r[k][i] - r[p][i]) * (u * diff).powf(alpha) / sumsq.sqrt().powf(beta);
            }
        }
    }
    let mut out = r.to_vec();
    for p in 0..np {
        for i in 0..nd {
            let x = r[p][i] + 0.5 * a[p][i] * dt * dt;
            let (lo, hi) = bounds[i];
            out[p][i] = if x < lo {
                lo + frep * (r[p][i] - lo)
            } else if x > hi {
                hi - frep * (hi - r[p][i])
            } else {
                x
            };
        }
    }
    out
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

prop_compose! {
    fn instance()(np in 2usize..=6, nd in 1usize..=4)
        (bounds in prop::collection::vec((-10.0f64..10.0, 0.1f64..20.0), nd),
         unit in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, nd), np),
         fitness in prop::collection::vec(-5.0f64..5.0, np),
         frep in 0.0f64..=1.0)
        -> (Vec<(f64, f64)>, Vec<Vec<f64>>, Vec<f64>, f64)
    {
        let bounds: Vec<(f64, f64)> = bounds.into_iter().map(|(lo, w)| (lo, lo + w)).collect();
        let points = unit
            .iter()
            .map(|u| u.iter().zip(&bounds).map(|(t, (lo, hi))| lo + t * (hi - lo)).collect())
            .collect();
        (bounds, points, fitness, frep)
    }
}

fn smooth(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| -(v - 0.3 * i as f64).powi(2) + (2.0 * v).sin()).sum()
}

proptest! {
    #[test]
    fn engine_step_matches_naive((bounds, points, fitness, frep) in instance()) {
        let space = DecisionSpace::new(bounds.clone()).unwrap();
        let cfg = CfoConfig::new(points.len(), 1, InitScheme::Custom(points.clone()));
        let r = ProbeMatrix::from_rows(&points).unwrap();
        let a = compute_accelerations(&r, &fitness, &cfg, &space).unwrap();
        let raw = advance_positions(&r, &a, cfg.delta_t).unwrap();
        let got = retrieve_errant_probes(&raw, &r, &space, frep).unwrap();
        let want = naive_step(&points, &fitness, &bounds, 2.0, 2.0, 2.0, 1.0, frep);
        for (gr, wr) in got.rows().zip(&want) {
            for (x, y) in gr.iter().zip(wr) {
                prop_assert!(rel_close(*x, *y), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn mass_never_negative(a in -1e6f64..1e6, b in -1e6f64..1e6, alpha in 0.1f64..4.0) {
        prop_assert!(cfo_mass(a, b, alpha).unwrap() >= 0.0);
    }

    #[test]
    fn unique_best_probe_feels_no_pull((bounds, points, mut fitness, _f) in instance()) {
        let space = DecisionSpace::new(bounds).unwrap();
        let cfg = CfoConfig::new(points.len(), 1, InitScheme::Custom(points.clone()));
        let top = fitness.iter().cloned().fold(f64::MIN, f64::max);
        fitness[0] = top + 1.0;
        let r = ProbeMatrix::from_rows(&points).unwrap();
        let a = compute_accelerations(&r, &fitness, &cfg, &space).unwrap();
        prop_assert!(a.row(0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn davg_within_bounds((bounds, points, _m, _f) in instance(), best in 0usize..6) {
        let space = DecisionSpace::new(bounds).unwrap();
        let r = ProbeMatrix::from_rows(&points).unwrap();
        let best = best % r.n_probes();
        let d = d_avg(&r, best, &space).unwrap();
        let np = r.n_probes() as f64;
        prop_assert!(d >= 0.0 && d <= np / (np - 1.0) + 1e-12);
        let brute: f64 = points.iter()
            .map(|q| q.iter().zip(&points[best]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
            .sum::<f64>() / (space.diag_length() * (np - 1.0));
        prop_assert!(rel_close(d, brute));
    }

    #[test]
    fn run_invariants(nd in 1usize..=3, per_axis in 2usize..=4, steps in 1usize..40, gamma in 0.0f64..=1.0,
                      lo in -5.0f64..0.0, width in 0.5f64..8.0) {
        let space = DecisionSpace::uniform(nd, lo, lo + width).unwrap();
        let mut cfg = CfoConfig::new(nd * per_axis, steps, InitScheme::OnAxis);
        cfg.gamma = gamma;
        let rec = run(&cfg, &space, FnObjective(smooth)).unwrap();
        let history = rec.position_history.as_ref().unwrap();
        prop_assert_eq!(history.len(), rec.last_step + 1);
        for r in history {
            for row in r.rows() {
                prop_assert!(space.contains(row));
            }
        }
        prop_assert_eq!(history[0].as_slice(), history[1].as_slice());
        for j in 0..=rec.last_step {
            prop_assert_eq!(rec.n_eval[j], (j + 1) * cfg.n_probes);
            prop_assert!(rec.frep[j] > 0.0 && rec.frep[j] <= 1.0);
            if j > 0 {
                prop_assert!(rec.best_fitness[j] >= rec.best_fitness[j - 1]);
            }
        }
        let fit = rec.fitness_history.as_ref().unwrap();
        let b = best_fitness(fit, rec.last_step);
        prop_assert_eq!((b.value, b.probe, b.step), (rec.best_value, rec.best_probe_index, rec.best_step));
        prop_assert_eq!(rec.best_point.as_slice(), history[b.step].row(b.probe));
    }

    #[test]
    fn frep_stays_in_range(init in 0.01f64..=1.0, inc in 0.001f64..0.5, slots in prop::collection::vec(-1.0f64..1.0, 5)) {
        let policy = FrepPolicy { init, increment: inc, ..FrepPolicy::default() };
        let ring = SavedRing::from_slots(slots);
        let mut f = init;
        for _ in 0..200 {
            let next = update_frep(&ring, f, &policy);
            prop_assert!(next > 0.0 && next <= 1.0);
            if !ring.stalled(policy.n_sat, policy.fit_tol) {
                prop_assert_eq!(next, f);
            }
            f = next;
        }
    }
}

#[test]
fn identical_runs_serialize_identically() {
    let space = DecisionSpace::uniform(2, -2.0, 2.0).unwrap();
    let cfg = CfoConfig::new(8, 60, InitScheme::OnAxis);
    let a = serde_json::to_string(&run(&cfg, &space, FnObjective(smooth)).unwrap()).unwrap();
    let b = serde_json::to_string(&run(&cfg, &space, FnObjective(smooth)).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn streaming_keeps_series_only() {
    let space = DecisionSpace::uniform(2, -2.0, 2.0).unwrap();
    let mut cfg = CfoConfig::new(8, 60, InitScheme::OnAxis);
    let full = run(&cfg, &space, FnObjective(smooth)).unwrap();
    cfg.history = HistoryMode::Streaming;
    let lean = run(&cfg, &space, FnObjective(smooth)).unwrap();
    assert!(lean.fitness_history.is_none() && lean.position_history.is_none());
    assert_eq!(lean.best_fitness, full.best_fitness);
    assert_eq!(lean.d_avg, full.d_avg);
    assert_eq!(lean.best_point, full.best_point);
}

#[test]
fn early_termination_stops_at_first_detection() {
    let space = DecisionSpace::uniform(2, -2.0, 2.0).unwrap();
    let mut cfg = CfoConfig::new(8, 400, InitScheme::OnAxis);
    cfg.detectors.n_avg_steps = 10;
    let free = run(&cfg, &space, FnObjective(smooth)).unwrap();
    let first = free.fitness_saturated.iter().position(|&f| f).expect("detector fires");
    cfg.early_termination = true;
    let stopped = run(&cfg, &space, FnObjective(smooth)).unwrap();
    assert_eq!(stopped.last_step, first);
    assert_eq!(stopped.termination, Termination::FitnessSaturated);
    assert_eq!(&stopped.best_fitness[..], &free.best_fitness[..=first]);
    let js = stopped.saturation_step.unwrap();
    assert!(js <= first);
    assert_eq!(stopped.reported_evaluations(), (js + 1) * 8);
}

#[test]
fn objective_failure_names_probe_and_step() {
    struct FailsAt(usize);
    impl Objective for FailsAt {
        fn evaluate(&mut self, _x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
            if ctx.step == self.0 && ctx.probe == 2 {
                Err("solver crashed".into())
            } else {
                Ok(ctx.probe as f64)
            }
        }
    }
    let space = DecisionSpace::uniform(2, 0.0, 1.0).unwrap();
    let cfg = CfoConfig::new(4, 10, InitScheme::OnAxis);
    match run(&cfg, &space, FailsAt(3)) {
        Err(CfoError::Objective { step: 3, probe: 2, source }) => assert_eq!(source.to_string(), "solver crashed"),
        other => panic!("unexpected {other:?}"),
    }
    let nan = run(&cfg, &space, FnObjective(|_: &[f64]| f64::NAN)).unwrap_err();
    assert!(matches!(nan, CfoError::NonFiniteFitness { step: 0, probe: 0, .. }));
}

#[test]
fn initial_acceleration_moves_probes_at_step_one() {
    let space = DecisionSpace::uniform(2, 0.0, 1.0).unwrap();
    let mut cfg = CfoConfig::new(4, 1, InitScheme::OnAxis);
    cfg.initial_acceleration = Some(vec![0.1, 0.0]);
    let rec = run(&cfg, &space, FnObjective(|_: &[f64]| 0.0)).unwrap();
    let h = rec.position_history.unwrap();
    assert!((h[1].get(2, 0) - 0.55).abs() < 1e-15);
    // Probe 1 sits on the upper bound: retrieved to 1 - 0.5 * (1 - 1) = 1.
    assert_eq!(h[1].get(1, 0), 1.0);
}

#[test]
fn saturation_step_ignores_superseded_detections() {
    let space = DecisionSpace::uniform(1, 0.0, 1.0).unwrap();
    let mut cfg = CfoConfig::new(2, 40, InitScheme::OnDiagonal);
    cfg.detectors.n_avg_steps = 5;
    // Flat until step 25, then a single jump.
    struct Jump;
    impl Objective for Jump {
        fn evaluate(&mut self, _x: &[f64], ctx: EvalContext) -> Result<f64, BoxError> {
            Ok(if ctx.step >= 25 { 2.0 } else { 1.0 })
        }
    }
    let rec = run(&cfg, &space, Jump).unwrap();
    assert!(rec.fitness_saturated[15]);
    assert_eq!(rec.saturation_step, Some(25));
}

#[test]
fn mitigations_keep_probes_contained() {
    let space = DecisionSpace::uniform(2, -3.0, 3.0).unwrap();
    let mut cfg = CfoConfig::new(8, 120, InitScheme::OnAxis);
    cfg.detectors.n_avg_steps = 10;
    cfg.mitigations = Mitigations { perturb_on_oscillation: true, perturb_sigma: 0.1, perturb_seed: 7, shrink_interval: Some(40) };
    let a = run(&cfg, &space, FnObjective(smooth)).unwrap();
    let b = run(&cfg, &space, FnObjective(smooth)).unwrap();
    assert_eq!(a, b);
    for r in a.position_history.as_ref().unwrap() {
        for row in r.rows() {
            assert!(space.contains(row));
        }
    }
}
