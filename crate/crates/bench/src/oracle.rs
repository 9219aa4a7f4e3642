//! Brute-force grid search with an optional local refinement pass.
//!
//! The grid oracle is deliberately naive: it evaluates every point of a
//! uniform inclusive grid and keeps the best, so it shares no logic with the
//! optimizer it checks.

use cfo_core::DecisionSpace;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BenchError, Result};

/// Largest grid the oracle will evaluate.
pub const MAX_GRID_POINTS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub argmax: Vec<f64>,
    pub value: f64,
    /// Grid points per axis.
    pub resolution: Vec<usize>,
    pub evaluations: u64,
}

/// Coordinate `k` of `n` along an axis; the last point is exactly `hi`.
fn grid_coord(lo: f64, hi: f64, k: usize, n: usize) -> f64 {
    if n == 1 {
        lo
    } else if k + 1 == n {
        hi
    } else {
        lo + (hi - lo) * k as f64 / (n - 1) as f64
    }
}

fn point_at(space: &DecisionSpace, resolution: &[usize], mut index: u64, out: &mut [f64]) {
    // Row-major with the first axis most significant, so increasing index is
    // lexicographic order.
    for i in (0..resolution.len()).rev() {
        let n = resolution[i] as u64;
        let k = (index % n) as usize;
        index /= n;
        out[i] = grid_coord(space.lower(i), space.upper(i), k, resolution[i]);
    }
}

/// Exhaustive search of the uniform inclusive grid with `resolution[i]`
/// points on axis `i`. Ties go to the lexicographically smallest grid index;
/// NaN values are never selected.
pub fn grid_oracle<F>(f: F, space: &DecisionSpace, resolution: &[usize]) -> Result<OracleResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if resolution.len() != space.n_dims() {
        return Err(BenchError::config(format!(
            "oracle resolution has {} axes for a {}-dimensional space",
            resolution.len(),
            space.n_dims()
        )));
    }
    if resolution.contains(&0) {
        return Err(BenchError::config("oracle resolution must be at least 1 point per axis"));
    }
    let total = resolution.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n as u64)).unwrap_or(u64::MAX);
    if total > MAX_GRID_POINTS {
        return Err(BenchError::config(format!(
            "oracle grid of {total} points exceeds the limit of {MAX_GRID_POINTS}; use a coarser resolution"
        )));
    }

    const CHUNK: u64 = 4096;
    let n_chunks = total.div_ceil(CHUNK);
    let best = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut x = vec![0.0; space.n_dims()];
            let mut best: Option<(u64, f64)> = None;
            for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
                point_at(space, resolution, index, &mut x);
                let v = f(&x);
                if !v.is_nan() && best.is_none_or(|(_, b)| v > b) {
                    best = Some((index, v));
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if y.1 > x.1 || (y.1 == x.1 && y.0 < x.0) { y } else { x }),
                (x, None) => x,
                (None, y) => y,
            },
        );
    let (index, value) = best.ok_or_else(|| BenchError::Verify("objective was NaN on the whole grid".into()))?;
    let mut argmax = vec![0.0; space.n_dims()];
    point_at(space, resolution, index, &mut argmax);
    Ok(OracleResult { argmax, value, resolution: resolution.to_vec(), evaluations: total })
}

/// Result of a local refinement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Refined {
    pub argmax: Vec<f64>,
    pub value: f64,
    pub evaluations: u64,
}

/// Compass search from `start`, staying inside `space`. Initial step sizes
/// are `initial_step[i]`; steps halve when no axis move improves and the
/// search stops once every step is below `1e-12` of its axis width.
pub fn compass_refine<F>(f: F, space: &DecisionSpace, start: &[f64], initial_step: &[f64]) -> Refined
where
    F: Fn(&[f64]) -> f64,
{
    const MAX_EVALUATIONS: u64 = 1_000_000;
    let mut x = start.to_vec();
    let mut value = f(&x);
    let mut evaluations = 1;
    let mut step = initial_step.to_vec();
    let floor: Vec<f64> = (0..space.n_dims()).map(|i| 1e-12 * space.width(i)).collect();
    while evaluations < MAX_EVALUATIONS && step.iter().zip(&floor).any(|(s, m)| s > m) {
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] = (x[i] + sign * step[i]).clamp(space.lower(i), space.upper(i));
                if y[i] == x[i] {
                    continue;
                }
                let v = f(&y);
                evaluations += 1;
                if v > value {
                    x = y;
                    value = v;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step.iter_mut().for_each(|s| *s *= 0.5);
        }
    }
    Refined { argmax: x, value, evaluations }
}

/// Grid oracle followed by compass refinement from the grid argmax and from
/// every point in `extra_starts`; the best of these is returned.
pub fn refined_oracle<F>(
    f: F,
    space: &DecisionSpace,
    resolution: &[usize],
    extra_starts: &[Vec<f64>],
) -> Result<(OracleResult, Refined)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let grid = grid_oracle(&f, space, resolution)?;
    let cell: Vec<f64> =
        (0..space.n_dims()).map(|i| space.width(i) / (resolution[i].max(2) - 1) as f64).collect();
    let mut best = compass_refine(&f, space, &grid.argmax, &cell);
    for start in extra_starts {
        let r = compass_refine(&f, space, start, &cell);
        let evaluations = best.evaluations + r.evaluations;
        if r.value > best.value {
            best = r;
        }
        best.evaluations = evaluations;
    }
    Ok((grid, best))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_objective_picks_first_point() {
        let space = DecisionSpace::new(vec![(-1.0, 1.0), (2.0, 3.0)]).unwrap();
        let r = grid_oracle(|_| 7.0, &space, &[5, 3]).unwrap();
        assert_eq!(r.argmax, vec![-1.0, 2.0]);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn grid_is_inclusive() {
        let space = DecisionSpace::new(vec![(0.0, 1.0)]).unwrap();
        let r = grid_oracle(|x| x[0], &space, &[11]).unwrap();
        assert_eq!(r.argmax, vec![1.0]);
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn ties_break_lexicographically() {
        let space = DecisionSpace::new(vec![(-1.0, 1.0), (-1.0, 1.0)]).unwrap();
        // Maxima at (-1, 1) and (1, -1); the first axis decides.
        let r = grid_oracle(|x| -(x[0] + x[1]).powi(2) + x[0].abs(), &space, &[3, 3]).unwrap();
        assert_eq!(r.argmax, vec![-1.0, 1.0]);
    }

    #[test]
    fn guard_rejects_huge_grids() {
        let space = DecisionSpace::uniform(3, 0.0, 1.0).unwrap();
        match grid_oracle(|_| 0.0, &space, &[1000, 1000, 101]) {
            Err(BenchError::Config(m)) => assert!(m.contains("coarser")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nan_is_never_chosen() {
        let space = DecisionSpace::uniform(1, 0.0, 1.0).unwrap();
        let r = grid_oracle(|x| if x[0] < 0.5 { f64::NAN } else { -x[0] }, &space, &[11]).unwrap();
        assert_eq!(r.argmax, vec![0.5]);
    }

    #[test]
    fn refinement_reaches_off_grid_optimum() {
        let space = DecisionSpace::uniform(2, -1.0, 1.0).unwrap();
        let f = |x: &[f64]| -(x[0] - 0.123456).powi(2) - (x[1] + 0.654321).powi(2);
        let (grid, fine) = refined_oracle(f, &space, &[21, 21], &[]).unwrap();
        assert!(fine.value >= grid.value);
        assert!((fine.argmax[0] - 0.123456).abs() < 1e-9);
        assert!((fine.argmax[1] + 0.654321).abs() < 1e-9);
    }
}
