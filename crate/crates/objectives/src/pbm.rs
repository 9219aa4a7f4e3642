//! Antenna benchmarks backed by the far-field surrogates.

use std::f64::consts::PI;

use cfo_antenna::{
    ArraySpec, CircularArraySurrogate, CollinearArraySurrogate, DipoleSurrogate, LinearArraySurrogate,
};

use crate::error::{ObjectiveError, Result};

/// Element count for the collinear benchmark when none is given.
pub const DEFAULT_COLLINEAR_ELEMENTS: usize = 6;

/// Standard deviation of the additive noise in the noisy linear-array
/// benchmark; the variance is 0.2.
pub fn linear_array_noise_sigma() -> f64 {
    0.2f64.sqrt()
}

/// Arm length and inner angle of the Vee dipole, which has no surrogate.
pub fn vee_dipole_bounds() -> Vec<(f64, f64)> {
    vec![(0.5, 1.5), (PI / 18.0, PI / 2.0)]
}

/// A constructed antenna benchmark.
#[derive(Debug, Clone)]
pub enum Pbm {
    /// Variable-length dipole, `(length, theta)`.
    Dipole(DipoleSurrogate),
    /// Ten-element linear array, `(spacing, theta)`.
    LinearArray(LinearArraySurrogate),
    /// Eight-element phase-steered ring, `(beta, theta)`.
    CircularArray(CircularArraySurrogate),
    /// Collinear array, one coordinate per element spacing.
    Collinear(CollinearArraySurrogate, usize),
}

impl Pbm {
    /// Benchmark `n` with default resolution; `n_elements` only matters for 5.
    pub fn new(n: u8, n_elements: usize) -> Result<Self> {
        match n {
            1 => Ok(Pbm::Dipole(DipoleSurrogate::default())),
            2 => Ok(Pbm::LinearArray(LinearArraySurrogate::default())),
            3 => Ok(Pbm::CircularArray(CircularArraySurrogate::default())),
            4 => Err(ObjectiveError::NeedsExternalSolver),
            5 => {
                if n_elements < 2 {
                    return Err(ObjectiveError::InvalidOption {
                        name: "n_elements",
                        reason: format!("need at least 2 elements, got {n_elements}"),
                    });
                }
                Ok(Pbm::Collinear(CollinearArraySurrogate::default(), n_elements))
            }
            _ => Err(ObjectiveError::UnknownId(format!("PBM_{n}"))),
        }
    }

    pub fn n_dims(&self) -> usize {
        match self {
            Pbm::Collinear(_, n) => n - 1,
            _ => 2,
        }
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        match self {
            Pbm::Dipole(_) => vec![(0.5, 3.0), (0.0, PI / 2.0)],
            Pbm::LinearArray(_) => vec![(5.0, 15.0), (0.0, PI)],
            Pbm::CircularArray(_) => vec![(0.0, 4.0), (0.0, PI)],
            Pbm::Collinear(_, n) => vec![(0.5, 1.5); n - 1],
        }
    }

    pub fn directivity(&self, x: &[f64]) -> Result<f64> {
        Ok(match self {
            Pbm::Dipole(s) => s.directivity(x[0], x[1])?,
            Pbm::LinearArray(s) => s.directivity(x[0], x[1])?,
            Pbm::CircularArray(s) => s.directivity(x[0], x[1])?,
            Pbm::Collinear(s, _) => s.directivity(x)?,
        })
    }

    /// Radiated power of the geometry in `x`, from the benchmark's own rule.
    pub fn radiated_power(&self, x: &[f64]) -> Result<f64> {
        Ok(match self {
            Pbm::Dipole(s) => s.radiated_power(x[0]),
            Pbm::LinearArray(s) => s.radiated_power(x[0]),
            Pbm::CircularArray(s) => s.radiated_power(&s.array(x[0])?.currents),
            Pbm::Collinear(s, _) => s.radiated_power(x)?,
        })
    }

    /// Full far-field pattern of the geometry in `x`; look angles are ignored.
    pub fn pattern(&self, x: &[f64]) -> Result<ArraySpec> {
        Ok(match self {
            Pbm::Dipole(_) => ArraySpec::dipole(x[0])?,
            Pbm::LinearArray(s) => ArraySpec::uniform_linear(s.n_elements, x[0])?,
            Pbm::CircularArray(s) => s.array(x[0])?,
            Pbm::Collinear(..) => ArraySpec::collinear(x)?,
        })
    }

    /// The same benchmark with its quadrature resolution doubled.
    pub fn refined(&self) -> Pbm {
        match self {
            Pbm::Dipole(s) => Pbm::Dipole(DipoleSurrogate { n_theta: 2 * s.n_theta }),
            Pbm::LinearArray(s) => Pbm::LinearArray(LinearArraySurrogate::new(s.n_elements, s.resolution.doubled())),
            Pbm::CircularArray(s) => Pbm::CircularArray(CircularArraySurrogate::new(s.coupling, s.resolution.doubled())),
            Pbm::Collinear(s, n) => Pbm::Collinear(CollinearArraySurrogate::new(2 * s.n_theta), *n),
        }
    }
}
