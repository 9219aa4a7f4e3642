//! Directivity evaluators tuned for repeated calls during optimization.
//!
//! Each one applies the same midpoint rule as [`crate::quadrature`], but in a
//! frame whose polar axis follows the array, so the azimuthal sum can be done
//! once up front and only the array-dependent part is recomputed per call.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, OnceLock};

use crate::array::{collinear_centres, ArraySpec, Coupling, CIRCULAR_ELEMENTS, LINEAR_ELEMENTS};
use crate::error::AntennaError;
use crate::pattern::{dipole_field, dipole_pattern, Pattern};
use crate::quadrature::Quadrature;
use crate::special::{sin_cos, unit_phasor};

const HALF_WAVE: f64 = 0.5;

/// `(cos theta', weight)` nodes for integrating `|F|^2` of an array laid out
/// along the polar axis. `weight` folds in the element power summed over
/// azimuth, `sin theta'` and the panel widths.
///
/// The integrand behaves like `sin theta'` at the poles, which limits the
/// plain midpoint rule to second order whenever the element radiates along
/// the array axis. Two extra nodes at `cos theta' = +-1` carry the leading
/// Euler-Maclaurin endpoint term, `-(h^2 / 24) (E(0) + E(pi))`, restoring
/// fourth-order convergence.
#[derive(Debug, Clone)]
struct AxialKernel {
    nodes: Vec<(f64, f64)>,
}

impl AxialKernel {
    fn build(n_theta: usize, azimuthal: impl Fn(f64) -> f64) -> Self {
        let q = Quadrature { n_theta, n_phi: 1 };
        let dt = q.d_theta();
        let mut nodes: Vec<(f64, f64)> = q
            .thetas()
            .map(|t| {
                let (s, c) = sin_cos(t);
                (c, azimuthal(s) * s * dt)
            })
            .collect();
        let end = -dt * dt / 24.0 * azimuthal(0.0);
        nodes.push((1.0, end));
        nodes.push((-1.0, end));
        Self { nodes }
    }

    /// Elements parallel to the array axis (collinear).
    fn collinear(n_theta: usize) -> Self {
        Self::build(n_theta, |s| TAU * dipole_field(HALF_WAVE, (1.0 - s * s).max(0.0).sqrt()).powi(2))
    }

    /// Elements perpendicular to the array axis (side by side).
    fn broadside(q: Quadrature) -> Self {
        let sin_phi: Vec<f64> = q.phis().map(f64::sin).collect();
        Self::build(q.n_theta, |s| {
            sin_phi.iter().map(|sp| dipole_field(HALF_WAVE, s * sp).powi(2)).sum::<f64>() * q.d_phi()
        })
    }

    /// Radiated power of unit in-phase currents at axial coordinates `t`.
    fn power(&self, t: &[f64]) -> f64 {
        self.nodes
            .iter()
            .map(|&(c, w)| {
                let (mut re, mut im) = (0.0, 0.0);
                for &tn in t {
                    let (s, co) = sin_cos(TAU * tn * c);
                    re += co;
                    im += s;
                }
                w * (re * re + im * im)
            })
            .sum()
    }

    /// Same as `power` for `n` equally spaced elements, using
    /// `|AF|^2 = n + 2 sum_q (n - q) cos(q u)`.
    fn power_uniform(&self, n: usize, d: f64) -> f64 {
        self.nodes
            .iter()
            .map(|&(c, w)| {
                let cos_u = (TAU * d * c).cos();
                let (mut prev, mut cur) = (1.0, cos_u);
                let mut af2 = n as f64;
                for q in 1..n {
                    af2 += 2.0 * (n - q) as f64 * cur;
                    let next = 2.0 * cos_u * cur - prev;
                    prev = cur;
                    cur = next;
                }
                w * af2
            })
            .sum()
    }
}

/// Centre-fed dipole of variable length, directivity as a function of
/// `(length, theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DipoleSurrogate {
    pub n_theta: usize,
}

impl Default for DipoleSurrogate {
    fn default() -> Self {
        Self { n_theta: Quadrature::default().n_theta }
    }
}

impl DipoleSurrogate {
    pub fn radiated_power(&self, length: f64) -> f64 {
        let q = Quadrature { n_theta: self.n_theta, n_phi: 1 };
        TAU * q.d_theta() * q.thetas().map(|t| dipole_pattern(length, t).powi(2) * t.sin()).sum::<f64>()
    }

    pub fn directivity(&self, length: f64, theta: f64) -> Result<f64, AntennaError> {
        let p = self.radiated_power(length);
        if !(p > 0.0) {
            return Err(AntennaError::DegeneratePattern);
        }
        Ok(4.0 * PI * dipole_pattern(length, theta).powi(2) / p)
    }
}

/// Uniform in-phase linear array of z-dipoles on the x axis, directivity in
/// the `phi = 90 deg` plane as a function of `(spacing, theta)`.
#[derive(Debug, Clone)]
pub struct LinearArraySurrogate {
    pub n_elements: usize,
    pub resolution: Quadrature,
    kernel: Arc<AxialKernel>,
}

impl LinearArraySurrogate {
    pub const DEFAULT_RESOLUTION: Quadrature = Quadrature { n_theta: 2048, n_phi: 512 };

    pub fn new(n_elements: usize, resolution: Quadrature) -> Self {
        static DEFAULT: OnceLock<Arc<AxialKernel>> = OnceLock::new();
        let kernel = if resolution == Self::DEFAULT_RESOLUTION {
            DEFAULT.get_or_init(|| Arc::new(AxialKernel::broadside(resolution))).clone()
        } else {
            Arc::new(AxialKernel::broadside(resolution))
        };
        Self { n_elements, resolution, kernel }
    }

    pub fn radiated_power(&self, d: f64) -> f64 {
        self.kernel.power_uniform(self.n_elements, d)
    }

    pub fn directivity(&self, d: f64, theta: f64) -> Result<f64, AntennaError> {
        let f = self.n_elements as f64 * dipole_pattern(HALF_WAVE, theta);
        Ok(4.0 * PI * f * f / self.radiated_power(d))
    }
}

impl Default for LinearArraySurrogate {
    fn default() -> Self {
        Self::new(LINEAR_ELEMENTS, Self::DEFAULT_RESOLUTION)
    }
}

/// Phase-steered circular array, directivity in the `phi = 0` plane as a
/// function of `(beta, theta)`.
#[derive(Debug, Clone)]
pub struct CircularArraySurrogate {
    pub coupling: Coupling,
    pub resolution: Quadrature,
    /// `K[m][n] = integral of |f|^2 exp(j(psi_n - psi_m)) dOmega`, so that the
    /// radiated power is `Re(I^H K I)`.
    gram: Arc<DMatrix<Complex64>>,
}

impl CircularArraySurrogate {
    pub fn new(coupling: Coupling, resolution: Quadrature) -> Self {
        static DEFAULT: OnceLock<Arc<DMatrix<Complex64>>> = OnceLock::new();
        let gram = if resolution == Quadrature::default() {
            DEFAULT.get_or_init(|| Arc::new(circular_gram(resolution))).clone()
        } else {
            Arc::new(circular_gram(resolution))
        };
        Self { coupling, resolution, gram }
    }

    pub fn array(&self, beta: f64) -> Result<ArraySpec, AntennaError> {
        ArraySpec::circular(beta, self.coupling)
    }

    pub fn radiated_power(&self, currents: &[Complex64]) -> f64 {
        let n = currents.len();
        let mut total = 0.0;
        for m in 0..n {
            for k in 0..n {
                total += (currents[m].conj() * self.gram[(m, k)] * currents[k]).re;
            }
        }
        total
    }

    pub fn directivity(&self, beta: f64, theta: f64) -> Result<f64, AntennaError> {
        let array = self.array(beta)?;
        let p = self.radiated_power(&array.currents);
        if !(p > 0.0) {
            return Err(AntennaError::DegeneratePattern);
        }
        Ok(4.0 * PI * array.field(theta, 0.0).norm_sqr() / p)
    }
}

impl Default for CircularArraySurrogate {
    fn default() -> Self {
        Self::new(Coupling::default(), Quadrature::default())
    }
}

fn circular_gram(q: Quadrature) -> DMatrix<Complex64> {
    let positions = ArraySpec::circular(0.0, Coupling::Ignored).expect("fixed geometry").positions;
    let n = CIRCULAR_ELEMENTS;
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    let w = q.d_theta() * q.d_phi();
    let mut phase = vec![Complex64::new(0.0, 0.0); n];
    for theta in q.thetas() {
        let (s, c) = sin_cos(theta);
        let f2 = dipole_field(HALF_WAVE, c).powi(2) * s * w;
        for phi in q.phis() {
            let (sp, cp) = sin_cos(phi);
            for (ph, p) in phase.iter_mut().zip(&positions) {
                *ph = unit_phasor(TAU * s * (cp * p[0] + sp * p[1]));
            }
            for m in 0..n {
                let pm = phase[m].conj() * f2;
                for k in 0..n {
                    gram[(m, k)] += pm * phase[k];
                }
            }
        }
    }
    gram
}

/// Collinear array of y-dipoles along the y axis, directivity as a function
/// of the element spacings.
#[derive(Debug, Clone)]
pub struct CollinearArraySurrogate {
    pub n_theta: usize,
    kernel: Arc<AxialKernel>,
}

impl CollinearArraySurrogate {
    pub const DEFAULT_THETA_PANELS: usize = 2048;

    pub fn new(n_theta: usize) -> Self {
        static DEFAULT: OnceLock<Arc<AxialKernel>> = OnceLock::new();
        let kernel = if n_theta == Self::DEFAULT_THETA_PANELS {
            DEFAULT.get_or_init(|| Arc::new(AxialKernel::collinear(n_theta))).clone()
        } else {
            Arc::new(AxialKernel::collinear(n_theta))
        };
        Self { n_theta, kernel }
    }

    pub fn radiated_power(&self, spacings: &[f64]) -> Result<f64, AntennaError> {
        Ok(self.kernel.power(&collinear_centres(spacings)?))
    }

    /// Directivity toward `(theta, phi)`.
    pub fn directivity_at(&self, spacings: &[f64], theta: f64, phi: f64) -> Result<f64, AntennaError> {
        let p = self.radiated_power(spacings)?;
        let f = ArraySpec::collinear(spacings)?.field(theta, phi);
        Ok(4.0 * PI * f.norm_sqr() / p)
    }

    /// Broadside (`theta = 90 deg`, `phi = 0`) directivity, `4 pi N^2 / P`.
    pub fn directivity(&self, spacings: &[f64]) -> Result<f64, AntennaError> {
        let n = (spacings.len() + 1) as f64;
        Ok(4.0 * PI * n * n / self.radiated_power(spacings)?)
    }
}

impl Default for CollinearArraySurrogate {
    fn default() -> Self {
        Self::new(Self::DEFAULT_THETA_PANELS)
    }
}
