//! Equations of motion: pairwise gravitational acceleration, position update
//! and errant-probe retrieval.

use crate::config::CfoConfig;
use crate::error::{CfoError, Result};
use crate::matrix::ProbeMatrix;
use crate::space::DecisionSpace;

/// Pairs closer than this fraction of the diagonal are treated as coincident
/// and contribute nothing.
pub const COINCIDENT_FRACTION: f64 = 1e-14;

/// 1 for `z >= 0`, 0 otherwise.
pub fn unit_step(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(CfoError::NonFiniteDifference);
    }
    Ok(if z >= 0.0 { 1.0 } else { 0.0 })
}

/// `U(m_k - m_p) * (m_k - m_p)^alpha`, never negative.
pub fn cfo_mass(m_k: f64, m_p: f64, alpha: f64) -> Result<f64> {
    let diff = m_k - m_p;
    if !diff.is_finite() {
        return Err(CfoError::NonFiniteDifference);
    }
    if unit_step(diff)? == 0.0 {
        return Ok(0.0);
    }
    Ok(diff.powf(alpha))
}

/// Acceleration of every probe toward all probes of greater or equal fitness.
pub fn compute_accelerations(
    positions: &ProbeMatrix,
    fitness: &[f64],
    cfg: &CfoConfig,
    space: &DecisionSpace,
) -> Result<ProbeMatrix> {
    let n_probes = positions.n_probes();
    if fitness.len() != n_probes {
        return Err(CfoError::Dimension(format!(
            "{} fitness values for {n_probes} probes",
            fitness.len()
        )));
    }
    let min_distance = COINCIDENT_FRACTION * space.diag_length();
    let mut acc = ProbeMatrix::zeros(n_probes, positions.n_dims());
    for p in 0..n_probes {
        let rp = positions.row(p);
        for k in 0..n_probes {
            if k == p {
                continue;
            }
            let mass = cfo_mass(fitness[k], fitness[p], cfg.alpha)?;
            if mass == 0.0 {
                continue;
            }
            let rk = positions.row(k);
            let distance = rk.iter().zip(rp).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            if distance < min_distance {
                continue;
            }
            let scale = cfg.g * mass / distance.powf(cfg.beta);
            for (a, (xk, xp)) in acc.row_mut(p).iter_mut().zip(rk.iter().zip(rp)) {
                *a += scale * (xk - xp);
            }
        }
        if acc.row(p).iter().any(|a| !a.is_finite()) {
            return Err(CfoError::Invariant(format!("non-finite acceleration for probe {p}")));
        }
    }
    Ok(acc)
}

/// `R + a * dt^2 / 2`, unclamped.
pub fn advance_positions(prev: &ProbeMatrix, acc: &ProbeMatrix, delta_t: f64) -> Result<ProbeMatrix> {
    if !prev.same_shape(acc) {
        return Err(CfoError::Dimension("position and acceleration shapes differ".into()));
    }
    let half_dt2 = 0.5 * delta_t * delta_t;
    let rows: Vec<Vec<f64>> = prev
        .rows()
        .zip(acc.rows())
        .map(|(r, a)| r.iter().zip(a).map(|(x, ai)| x + ai * half_dt2).collect())
        .collect();
    ProbeMatrix::from_rows(&rows)
}

/// Pull coordinates that left the box back inside, a fraction `frep` of the
/// way from the violated bound toward the previous position.
pub fn retrieve_errant_probes(
    raw: &ProbeMatrix,
    prev: &ProbeMatrix,
    space: &DecisionSpace,
    frep: f64,
) -> Result<ProbeMatrix> {
    if !raw.same_shape(prev) || raw.n_dims() != space.n_dims() {
        return Err(CfoError::Dimension("retrieval shapes differ".into()));
    }
    let mut out = raw.clone();
    for p in 0..raw.n_probes() {
        for (i, &(lo, hi)) in space.bounds().iter().enumerate() {
            let x = raw.get(p, i);
            let before = prev.get(p, i);
            let placed = if x < lo {
                lo + frep * (before - lo)
            } else if x > hi {
                hi - frep * (hi - before)
            } else {
                continue;
            };
            out.set(p, i, placed.clamp(lo, hi));
        }
    }
    Ok(out)
}
