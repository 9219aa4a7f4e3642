use serde::{Deserialize, Serialize};

use crate::error::{CfoError, Result};

/// Axis-aligned box `x_min_i <= x_i <= x_max_i` searched by the probes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct DecisionSpace {
    bounds: Vec<(f64, f64)>,
    diag_length: f64,
}

impl DecisionSpace {
    pub fn new(bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(CfoError::InvalidSpace("at least one dimension required".into()));
        }
        for (i, &(lo, hi)) in bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(CfoError::InvalidSpace(format!("bound {i} is not finite")));
            }
            if lo >= hi {
                return Err(CfoError::InvalidSpace(format!(
                    "bound {i}: lower {lo} must be below upper {hi}"
                )));
            }
        }
        let diag_length = bounds.iter().map(|&(lo, hi)| (hi - lo).powi(2)).sum::<f64>().sqrt();
        Ok(Self { bounds, diag_length })
    }

    /// The same interval on every axis.
    pub fn uniform(n_dims: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi); n_dims])
    }

    pub fn n_dims(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn lower(&self, i: usize) -> f64 {
        self.bounds[i].0
    }

    pub fn upper(&self, i: usize) -> f64 {
        self.bounds[i].1
    }

    pub fn width(&self, i: usize) -> f64 {
        self.bounds[i].1 - self.bounds[i].0
    }

    /// Length of the principal diagonal.
    pub fn diag_length(&self) -> f64 {
        self.diag_length
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.n_dims()
            && point.iter().zip(&self.bounds).all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    }
}

impl TryFrom<Vec<(f64, f64)>> for DecisionSpace {
    type Error = CfoError;

    fn try_from(bounds: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(bounds)
    }
}

impl From<DecisionSpace> for Vec<(f64, f64)> {
    fn from(space: DecisionSpace) -> Self {
        space.bounds
    }
}
