use cfo_bench::config::{CfoOverrides, InitSpec, ObjectiveSpec};
use cfo_bench::output::{Summary, SummaryRow};
use cfo_bench::{execute, refined_oracle, RunSpec};
use cfo_objectives::{lookup, ObjectiveOptions, Registered};
use proptest::prelude::*;

const IDS: [&str; 4] = ["GP", "HIMMELBLAU", "PARROTT_F4", "PBM_2"];

fn spec(id: &str, per_axis: usize, n_steps: usize, gamma: f64) -> RunSpec {
    let n_dims = RunSpec::new(ObjectiveSpec::named(id), CfoOverrides::default()).unwrap().space.n_dims();
    let overrides = CfoOverrides {
        init: Some(InitSpec::OnAxis),
        n_probes: Some(per_axis * n_dims),
        n_steps: Some(n_steps),
        gamma: Some(gamma),
        ..Default::default()
    };
    RunSpec::new(ObjectiveSpec::named(id), overrides).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_count_matches_reported_steps(
        id in 0..IDS.len(),
        per_axis in (1usize..4).prop_map(|k| 2 * k),
        n_steps in 1usize..60,
        gamma in 0.0f64..=1.0,
    ) {
        let s = spec(IDS[id], per_axis, n_steps, gamma);
        let o = execute(&s, 1, None).unwrap();
        let row = SummaryRow::from_outcome(&o);
        prop_assert!(row.steps <= n_steps);
        prop_assert_eq!(row.n_eval, (row.steps + 1) * row.n_p);
        prop_assert!(row.best_fitness >= o.record.fitness_history.as_ref().map_or(f64::MIN, |h| h[0].iter().copied().fold(f64::MIN, f64::max)));
    }

    #[test]
    fn cfo_never_beats_the_refined_oracle(id in 0..IDS.len(), gamma in 0.0f64..=1.0) {
        let s = spec(IDS[id], 4, 80, gamma);
        let o = execute(&s, 1, None).unwrap();
        let obj = Registered::new(lookup(IDS[id]).unwrap(), &ObjectiveOptions::default()).unwrap();
        let f = |x: &[f64]| obj.value(x).unwrap_or(f64::NAN);
        let (_, fine) = refined_oracle(f, &s.space, &vec![101; s.space.n_dims()], std::slice::from_ref(&o.record.best_point)).unwrap();
        prop_assert!(o.record.best_value <= fine.value + 1e-9 * fine.value.abs().max(1.0));
    }

    #[test]
    fn summary_totals_and_best_row(fitness in prop::collection::vec(-10.0f64..10.0, 1..8), steps in prop::collection::vec(0usize..50, 8)) {
        let s = spec("GP", 2, 50, 0.5);
        let rows: Vec<SummaryRow> = fitness
            .iter()
            .zip(&steps)
            .enumerate()
            .map(|(i, (&f, &st))| SummaryRow {
                run: i + 1,
                param: Some(i as f64),
                n_t: 50,
                n_d: 2,
                n_p: 4,
                g: 2.0,
                delta_t: 1.0,
                alpha: 2.0,
                beta: 2.0,
                steps: st,
                n_eval: (st + 1) * 4,
                frep_final: 0.5,
                best_fitness: f,
                best_point: vec![0.0, -1.0],
            })
            .collect();
        let summary = Summary::new(&s, rows.clone());
        prop_assert_eq!(summary.total_evaluations(), rows.iter().map(|r| r.n_eval).sum::<usize>());
        let best = summary.best().unwrap();
        prop_assert!(rows.iter().all(|r| r.best_fitness <= best.best_fitness));
        let csv = summary.to_csv();
        let lines = csv.lines().count();
        prop_assert_eq!(lines, 1 + rows.len() + usize::from(rows.len() > 1));
        let total = format!("Total Function Evaluations: {}", summary.total_evaluations());
        prop_assert!(summary.to_table().contains(&total));
    }
}
