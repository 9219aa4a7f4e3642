use num_complex::Complex64;
use std::f64::consts::PI;

use crate::special::sin_cos;

/// Far-field amplitude as a function of direction `(theta, phi)` in radians.
pub trait Pattern {
    fn field(&self, theta: f64, phi: f64) -> Complex64;
}

impl<F: Fn(f64, f64) -> Complex64> Pattern for F {
    fn field(&self, theta: f64, phi: f64) -> Complex64 {
        self(theta, phi)
    }
}

/// Below this `|sin|` the axial limit (zero) is returned.
const AXIS_GUARD: f64 = 1e-12;

/// Sinusoidal-current dipole of `length` wavelengths, signed, with the angle
/// to the wire given through its cosine.
pub fn dipole_field(length: f64, cos_angle: f64) -> f64 {
    let sin2 = 1.0 - cos_angle * cos_angle;
    if sin2 <= AXIS_GUARD * AXIS_GUARD {
        return 0.0;
    }
    let kl = PI * length;
    ((kl * cos_angle).cos() - kl.cos()) / sin2.sqrt()
}

/// `|cos(pi L cos(theta)) - cos(pi L)| / sin(theta)` for a z-directed dipole.
pub fn dipole_pattern(length: f64, theta: f64) -> f64 {
    dipole_field(length, theta.cos()).abs()
}

/// Unit vector toward `(theta, phi)`.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = sin_cos(theta);
    let (sp, cp) = sin_cos(phi);
    [st * cp, st * sp, ct]
}
