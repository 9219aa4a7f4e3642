use std::f64::consts::{PI, TAU};

use crate::error::AntennaError;
use crate::pattern::Pattern;

/// Midpoint rule over `theta in [0, pi]`, `phi in [0, 2 pi)` with fixed panel
/// counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrature {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { n_theta: 256, n_phi: 512 }
    }
}

impl Quadrature {
    pub const MIN: Quadrature = Quadrature { n_theta: 64, n_phi: 128 };

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self, AntennaError> {
        if n_theta == 0 || n_phi == 0 {
            return Err(AntennaError::InvalidResolution { n_theta, n_phi });
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn doubled(self) -> Self {
        Self { n_theta: 2 * self.n_theta, n_phi: 2 * self.n_phi }
    }

    pub fn d_theta(&self) -> f64 {
        PI / self.n_theta as f64
    }

    pub fn d_phi(&self) -> f64 {
        TAU / self.n_phi as f64
    }

    /// Midpoint polar angles.
    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        let d = self.d_theta();
        (0..self.n_theta).map(move |a| (a as f64 + 0.5) * d)
    }

    /// Midpoint azimuths.
    pub fn phis(&self) -> impl Iterator<Item = f64> + '_ {
        let d = self.d_phi();
        (0..self.n_phi).map(move |b| (b as f64 + 0.5) * d)
    }

    /// Integral of `f(theta, phi) sin(theta)` over the sphere.
    pub fn integrate<F: FnMut(f64, f64) -> f64>(&self, mut f: F) -> f64 {
        let w = self.d_theta() * self.d_phi();
        let mut total = 0.0;
        for theta in self.thetas() {
            let s = theta.sin();
            let mut ring = 0.0;
            for phi in self.phis() {
                ring += f(theta, phi);
            }
            total += ring * s;
        }
        total * w
    }
}

/// Integral of `|F|^2` over the sphere.
pub fn radiated_power<P: Pattern + ?Sized>(pattern: &P, quadrature: Quadrature) -> f64 {
    quadrature.integrate(|t, p| pattern.field(t, p).norm_sqr())
}

/// `4 pi |F(theta0, phi0)|^2` over the radiated power.
pub fn directivity<P: Pattern + ?Sized>(
    pattern: &P,
    theta0: f64,
    phi0: f64,
    quadrature: Quadrature,
) -> Result<f64, AntennaError> {
    let power = radiated_power(pattern, quadrature);
    if power <= 0.0 || !power.is_finite() {
        return Err(AntennaError::DegeneratePattern);
    }
    Ok(4.0 * PI * pattern.field(theta0, phi0).norm_sqr() / power)
}
