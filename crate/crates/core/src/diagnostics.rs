//! Convergence diagnostics: average probe distance, saturation and
//! oscillation detectors, and best-fitness bookkeeping.

use crate::config::DetectorConfig;
use crate::error::{CfoError, Result};
use crate::matrix::ProbeMatrix;
use crate::space::DecisionSpace;

/// Mean distance from `best_probe` to every probe, over `L (N_p - 1)`.
pub fn d_avg(positions: &ProbeMatrix, best_probe: usize, space: &DecisionSpace) -> Result<f64> {
    d_avg_from(positions, positions.row(best_probe), space)
}

/// Same as [`d_avg`] with an explicit reference point.
pub fn d_avg_from(positions: &ProbeMatrix, reference: &[f64], space: &DecisionSpace) -> Result<f64> {
    let n_probes = positions.n_probes();
    if n_probes < 2 {
        return Err(CfoError::Dimension("average distance needs at least 2 probes".into()));
    }
    let total: f64 = positions
        .rows()
        .map(|r| r.iter().zip(reference).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .sum();
    Ok(total / (space.diag_length() * (n_probes - 1) as f64))
}

/// Sign changes between consecutive slopes over steps `j-10 ..= j-1`.
pub fn count_slope_changes(series: &[f64], j: usize) -> usize {
    if j < 11 || series.len() <= j {
        return 0;
    }
    (j - 10..j)
        .filter(|&k| (series[k] - series[k - 1]) * (series[k + 1] - series[k]) < 0.0)
        .count()
}

/// At least three slope reversals in the last ten steps, checked from step 15.
pub fn detect_oscillation(davg_series: &[f64], j: usize) -> bool {
    j >= 15 && count_slope_changes(davg_series, j) >= 3
}

fn window_saturated(series: &[f64], j: usize, n_avg: usize, tol: f64) -> bool {
    if n_avg == 0 || j < n_avg + 10 || series.len() <= j {
        return false;
    }
    let window = &series[j + 1 - n_avg..=j];
    let mean = window.iter().sum::<f64>() / n_avg as f64;
    (mean - series[j]).abs() <= tol
}

/// `best_series[k]` is the best fitness among the probes at step `k`.
pub fn detect_fitness_saturation(best_series: &[f64], j: usize, cfg: &DetectorConfig) -> bool {
    window_saturated(best_series, j, cfg.n_avg_steps, cfg.fitness_sat_tol)
}

pub fn detect_davg_saturation(davg_series: &[f64], j: usize, cfg: &DetectorConfig) -> bool {
    window_saturated(davg_series, j, cfg.n_avg_steps, cfg.davg_sat_tol)
}

/// Where and when the best fitness occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestFitness {
    pub value: f64,
    pub probe: usize,
    pub step: usize,
}

/// Maximum over steps `0..=up_to_step` of a step-major history. Ties go to the
/// latest entry in step-then-probe order.
pub fn best_fitness<R: AsRef<[f64]>>(history: &[R], up_to_step: usize) -> BestFitness {
    let mut best = BestFitness { value: f64::NEG_INFINITY, probe: 0, step: 0 };
    for (step, row) in history.iter().enumerate().take(up_to_step + 1) {
        for (probe, &value) in row.as_ref().iter().enumerate() {
            if value >= best.value {
                best = BestFitness { value, probe, step };
            }
        }
    }
    best
}

/// Index of the best probe within one step, latest probe winning ties.
pub fn step_best(fitness: &[f64]) -> (usize, f64) {
    let b = best_fitness(&[fitness], 0);
    (b.probe, b.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating(n: usize) -> Vec<f64> {
        (0..n).map(|k| if k % 2 == 0 { 0.2 } else { 0.4 }).collect()
    }

    #[test]
    fn davg_examples() {
        let space = DecisionSpace::uniform(2, 0.0, 1.0).unwrap();
        let same = ProbeMatrix::from_rows(&[[0.3, 0.3], [0.3, 0.3], [0.3, 0.3]]).unwrap();
        assert_eq!(d_avg(&same, 0, &space).unwrap(), 0.0);
        let corners = ProbeMatrix::from_rows(&[[0.0, 0.0], [1.0, 1.0]]).unwrap();
        assert!((d_avg(&corners, 0, &space).unwrap() - 1.0).abs() < 1e-15);
        let single = ProbeMatrix::from_rows(&[[0.0, 0.0]]).unwrap();
        assert!(d_avg(&single, 0, &space).is_err());
    }

    #[test]
    fn oscillation_examples() {
        assert!(!detect_oscillation(&[0.3; 30], 20));
        assert!(detect_oscillation(&alternating(30), 20));
        assert!(!detect_oscillation(&alternating(30), 12));
        assert_eq!(count_slope_changes(&alternating(30), 20), 10);
    }

    #[test]
    fn fitness_saturation_examples() {
        let cfg = DetectorConfig::default();
        let n = cfg.n_avg_steps;
        assert!(detect_fitness_saturation(&vec![4.0; n + 11], n + 10, &cfg));
        let rising: Vec<f64> = (0..n + 11).map(|k| 0.1 * k as f64).collect();
        assert!(!detect_fitness_saturation(&rising, n + 10, &cfg));
        assert!(!detect_fitness_saturation(&vec![4.0; n + 11], n + 5, &cfg));
    }

    #[test]
    fn davg_saturation_examples() {
        let cfg = DetectorConfig { n_avg_steps: 10, ..DetectorConfig::default() };
        assert!(detect_davg_saturation(&[0.2; 40], 25, &cfg));
        let falling: Vec<f64> = (0..40).map(|k| 1.0 - 0.01 * k as f64).collect();
        assert!(!detect_davg_saturation(&falling, 25, &cfg));
        assert!(!detect_davg_saturation(&[0.2; 40], 12, &cfg));
    }

    #[test]
    fn best_fitness_examples() {
        assert_eq!(best_fitness(&[[7.0]], 0), BestFitness { value: 7.0, probe: 0, step: 0 });
        assert_eq!(best_fitness(&[[1.0, 2.0], [3.0, 0.0]], 1), BestFitness { value: 3.0, probe: 0, step: 1 });
        assert_eq!(best_fitness(&[[5.0, 2.0], [1.0, 5.0]], 1), BestFitness { value: 5.0, probe: 1, step: 1 });
        assert_eq!(best_fitness(&[[5.0, 2.0], [1.0, 5.0]], 0).step, 0);
    }
}
