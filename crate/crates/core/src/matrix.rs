use serde::{Deserialize, Serialize};

use crate::error::{CfoError, Result};

/// Row-major `n_probes x n_dims` matrix holding one value per probe coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeMatrix {
    n_probes: usize,
    n_dims: usize,
    data: Vec<f64>,
}

impl ProbeMatrix {
    pub fn zeros(n_probes: usize, n_dims: usize) -> Self {
        Self { n_probes, n_dims, data: vec![0.0; n_probes * n_dims] }
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_dims = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * n_dims);
        for (p, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_dims {
                return Err(CfoError::Dimension(format!(
                    "row {p} has {} coordinates, expected {n_dims}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n_probes: rows.len(), n_dims, data })
    }

    pub fn n_probes(&self) -> usize {
        self.n_probes
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    pub fn row(&self, p: usize) -> &[f64] {
        &self.data[p * self.n_dims..(p + 1) * self.n_dims]
    }

    pub fn row_mut(&mut self, p: usize) -> &mut [f64] {
        &mut self.data[p * self.n_dims..(p + 1) * self.n_dims]
    }

    pub fn get(&self, p: usize, i: usize) -> f64 {
        self.data[p * self.n_dims + i]
    }

    pub fn set(&mut self, p: usize, i: usize, value: f64) {
        self.data[p * self.n_dims + i] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact(0) panics; a zero-width matrix has no coordinates to yield anyway.
        self.data.chunks_exact(self.n_dims.max(1)).take(self.n_probes)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub(crate) fn same_shape(&self, other: &Self) -> bool {
        self.n_probes == other.n_probes && self.n_dims == other.n_dims
    }
}
