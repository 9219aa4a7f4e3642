//! Closed-form test functions, all oriented for maximization.
//!
//! Minimization problems are negated. Offsets shift the optimum away from the
//! origin so that an optimizer cannot win by collapsing onto the centre of a
//! symmetric box.

use std::f64::consts::PI;

/// Sphere, `-sum x^2`. Maximum 0 at the origin.
pub fn sphere(x: &[f64]) -> f64 {
    -x.iter().map(|v| v * v).sum::<f64>()
}

/// Parrott F4 (1-D). Peak just below 1 near `x = 0.0797`.
///
/// Defined for `x >= offset`; below that the fractional power is continued as
/// an odd function so the value stays finite.
pub fn parrott_f4(x: f64, offset: f64) -> f64 {
    let u = x - offset;
    let envelope = (-2.0 * 2f64.ln() * ((u - 0.08) / 0.854).powi(2)).exp();
    let power = u.signum() * u.abs().powf(0.75);
    envelope * (5.0 * PI * (power - 0.05)).sin().powi(6)
}

/// Space Gravitational Optimization test function (2-D). Maximum about
/// 130.8323 at `offset + (-2.8362, -2.8362)`.
pub fn sgo(x: &[f64], offset: [f64; 2]) -> f64 {
    let term = |v: f64| v.powi(4) - 16.0 * v * v + 0.5 * v;
    -(term(x[0] - offset[0]) + term(x[1] - offset[1]))
}

/// Goldstein-Price (2-D). Maximum -3 at `offset + (0, -1)`.
pub fn goldstein_price(x: &[f64], offset: [f64; 2]) -> f64 {
    let x1 = x[0] - offset[0];
    let x2 = x[1] - offset[1];
    let t1 = 1.0
        + (x1 + x2 + 1.0).powi(2)
            * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
    let t2 = 30.0
        + (2.0 * x1 - 3.0 * x2).powi(2)
            * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
    -(t1 * t2)
}

/// Step function (n-D). Maximum 0 on the unit cell around `offsets`.
pub fn step(x: &[f64], offsets: &[f64]) -> f64 {
    -x.iter().zip(offsets).map(|(v, o)| (v - o + 0.5).floor().powi(2)).sum::<f64>()
}

/// Offsets used by the reference program: 75 and 35 in two dimensions,
/// zero otherwise.
pub fn step_reference_offsets(n_dims: usize) -> Vec<f64> {
    if n_dims == 2 {
        vec![75.0, 35.0]
    } else {
        vec![0.0; n_dims]
    }
}

/// Schwefel problem 2.26 (n-D), `sum x sin(sqrt|x|)`. About 418.98 per
/// coordinate at `x = 420.97`.
pub fn schwefel_226(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v.abs().sqrt().sin()).sum()
}

/// Colville (4-D). Maximum 0 at `offset + (1, 1, 1, 1)`.
pub fn colville(x: &[f64], offset: f64) -> f64 {
    let [x1, x2, x3, x4] = [x[0] - offset, x[1] - offset, x[2] - offset, x[3] - offset];
    let z = 100.0 * (x2 - x1 * x1).powi(2)
        + (1.0 - x1).powi(2)
        + 90.0 * (x4 - x3 * x3).powi(2)
        + (1.0 - x3).powi(2)
        + 10.1 * ((x2 - 1.0).powi(2) + (x4 - 1.0).powi(2))
        + 19.8 * (x2 - 1.0) * (x4 - 1.0);
    -z
}

/// Griewank (n-D). Maximum 0 at `x_i = offset`.
pub fn griewank(x: &[f64], offset: f64) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (i, v) in x.iter().enumerate() {
        let u = v - offset;
        sum += u * u;
        prod *= (u / ((i + 1) as f64).sqrt()).cos();
    }
    -(sum / 4000.0 - prod + 1.0)
}

/// Himmelblau (2-D), lifted so its four maxima equal 200.
pub fn himmelblau(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    200.0 - (x1 * x1 + x2 - 11.0).powi(2) - (x1 + x2 * x2 - 7.0).powi(2)
}
