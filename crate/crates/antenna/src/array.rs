//! Arrays of identical, parallel dipoles and the three PBM array geometries.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::coupling::feed_currents;
use crate::error::AntennaError;
use crate::pattern::{dipole_field, direction, Pattern};
use crate::special::{sin_cos, unit_phasor};

/// Element count of the linear and circular benchmark arrays.
pub const LINEAR_ELEMENTS: usize = 10;
pub const CIRCULAR_ELEMENTS: usize = 8;
/// Ring radius of the circular array, wavelengths.
pub const CIRCULAR_RADIUS: f64 = 1.0;
/// Minimum collinear spacing; closer half-wave elements would overlap.
pub const MIN_COLLINEAR_SPACING: f64 = 0.5;

const HALF_WAVE: f64 = 0.5;
const Y: [f64; 3] = [0.0, 1.0, 0.0];
const Z: [f64; 3] = [0.0, 0.0, 1.0];

/// How the circular array's feed voltages become element currents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coupling {
    /// Solve `Z I = V` with induced-EMF mutual impedances.
    #[default]
    InducedEmf,
    /// Currents equal the voltages.
    Ignored,
}

/// Parallel dipoles of one length with given centres (wavelengths) and
/// complex terminal currents.
#[derive(Debug, Clone, PartialEq)]
pub struct ArraySpec {
    pub positions: Vec<[f64; 3]>,
    pub axis: [f64; 3],
    pub currents: Vec<Complex64>,
    pub element_length: f64,
}

impl ArraySpec {
    pub fn new(
        positions: Vec<[f64; 3]>,
        axis: [f64; 3],
        currents: Vec<Complex64>,
        element_length: f64,
    ) -> Result<Self, AntennaError> {
        if positions.is_empty() || positions.len() != currents.len() {
            return Err(AntennaError::InvalidArgument("need one current per element".into()));
        }
        let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(AntennaError::InvalidArgument("element axis must be a unit vector".into()));
        }
        if !(element_length > 0.0) {
            return Err(AntennaError::InvalidArgument("element length must be positive".into()));
        }
        for (a, pa) in positions.iter().enumerate() {
            if positions[..a].iter().any(|pb| pa == pb) {
                return Err(AntennaError::InvalidArgument(format!("element {a} duplicates another position")));
            }
        }
        Ok(Self { positions, axis, currents, element_length })
    }

    /// A single z-directed dipole of `length` wavelengths at the origin.
    pub fn dipole(length: f64) -> Result<Self, AntennaError> {
        Self::new(vec![[0.0; 3]], Z, vec![Complex64::new(1.0, 0.0)], length)
    }

    /// `n` in-phase z-directed half-wave dipoles on the x axis, spacing `d`,
    /// centred on the origin.
    pub fn uniform_linear(n: usize, d: f64) -> Result<Self, AntennaError> {
        let centre = (n as f64 - 1.0) / 2.0;
        let positions = (0..n).map(|m| [(m as f64 - centre) * d, 0.0, 0.0]).collect();
        Self::new(positions, Z, vec![Complex64::new(1.0, 0.0); n], HALF_WAVE)
    }

    /// Eight z-directed half-wave dipoles on a one-wavelength ring, element
    /// `n` fed with `exp(j alpha_n)`, `alpha_n = -cos(2 pi beta n)` for
    /// `n = 0..8`.
    pub fn circular(beta: f64, coupling: Coupling) -> Result<Self, AntennaError> {
        let positions: Vec<[f64; 3]> = (0..CIRCULAR_ELEMENTS)
            .map(|n| {
                let a = TAU * n as f64 / CIRCULAR_ELEMENTS as f64;
                {
                    let (s, c) = sin_cos(a);
                    [CIRCULAR_RADIUS * c, CIRCULAR_RADIUS * s, 0.0]
                }
            })
            .collect();
        let voltages = circular_voltages(beta);
        let currents = match coupling {
            Coupling::InducedEmf => feed_currents(&positions, &voltages)?,
            Coupling::Ignored => voltages,
        };
        Self::new(positions, Z, currents, HALF_WAVE)
    }

    /// In-phase y-directed half-wave dipoles along the y axis with the given
    /// centre-to-centre spacings, symmetric about the origin.
    pub fn collinear(spacings: &[f64]) -> Result<Self, AntennaError> {
        let centres = collinear_centres(spacings)?;
        let n = centres.len();
        Self::new(centres.into_iter().map(|y| [0.0, y, 0.0]).collect(), Y, vec![Complex64::new(1.0, 0.0); n], HALF_WAVE)
    }

    pub fn n_elements(&self) -> usize {
        self.positions.len()
    }

    /// `sum_n I_n exp(j 2 pi r . p_n)`.
    pub fn array_factor(&self, theta: f64, phi: f64) -> Complex64 {
        let r = direction(theta, phi);
        self.positions
            .iter()
            .zip(&self.currents)
            .map(|(p, i)| i * unit_phasor(TAU * (r[0] * p[0] + r[1] * p[1] + r[2] * p[2])))
            .sum()
    }

    pub fn element_field(&self, theta: f64, phi: f64) -> f64 {
        let r = direction(theta, phi);
        let c = r[0] * self.axis[0] + r[1] * self.axis[1] + r[2] * self.axis[2];
        dipole_field(self.element_length, c)
    }
}

impl Pattern for ArraySpec {
    fn field(&self, theta: f64, phi: f64) -> Complex64 {
        self.array_factor(theta, phi) * self.element_field(theta, phi)
    }
}

/// `exp(j alpha_n)` with `alpha_n = -cos(2 pi beta n)`, `n = 0..8`.
pub fn circular_voltages(beta: f64) -> Vec<Complex64> {
    (0..CIRCULAR_ELEMENTS)
        .map(|n| unit_phasor(-(TAU * beta * n as f64).cos()))
        .collect()
}

/// Element centres along the array axis from consecutive spacings, centred on 0.
pub fn collinear_centres(spacings: &[f64]) -> Result<Vec<f64>, AntennaError> {
    if let Some((index, &spacing)) = spacings.iter().enumerate().find(|(_, &s)| !(s >= MIN_COLLINEAR_SPACING)) {
        return Err(AntennaError::OverlappingElements { index, spacing });
    }
    let mut centres = Vec::with_capacity(spacings.len() + 1);
    let mut y = 0.0;
    centres.push(y);
    for s in spacings {
        y += s;
        centres.push(y);
    }
    let mid = y / 2.0;
    Ok(centres.into_iter().map(|c| c - mid).collect())
}

/// Linear array amplitude in the `phi = 90 deg` plane, where every element is
/// equidistant from the observer.
pub fn linear_array_pattern(n_elements: usize, d: f64, theta: f64) -> f64 {
    let spec = ArraySpec::uniform_linear(n_elements, d).expect("valid linear array");
    spec.field(theta, PI / 2.0).norm()
}

/// Circular array amplitude in the `phi = 0` plane.
pub fn circular_array_pattern(beta: f64, theta: f64, coupling: Coupling) -> Result<f64, AntennaError> {
    Ok(ArraySpec::circular(beta, coupling)?.field(theta, 0.0).norm())
}

/// Collinear array amplitude.
pub fn collinear_array_pattern(spacings: &[f64], theta: f64, phi: f64) -> Result<f64, AntennaError> {
    Ok(ArraySpec::collinear(spacings)?.field(theta, phi).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::dipole_pattern;

    #[test]
    fn single_element_reductions() {
        for t in [0.2, 1.0, PI / 2.0, 2.9] {
            let bare = dipole_pattern(0.5, t);
            assert!((linear_array_pattern(1, 7.0, t) - bare).abs() < 1e-15);
            // A lone y-directed dipole seen in the xy plane at azimuth phi sees angle acos(sin phi).
            let y_dip = collinear_array_pattern(&[], PI / 2.0, t).unwrap();
            assert!((y_dip - dipole_field(0.5, t.sin()).abs()).abs() < 1e-15);
        }
    }

    #[test]
    fn broadside_linear_array_adds_in_phase() {
        let v = linear_array_pattern(10, 5.85, PI / 2.0);
        assert!((v - 10.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn phase_law() {
        let v = circular_voltages(0.0);
        assert!(v.iter().all(|x| (x.arg() + 1.0).abs() < 1e-15));
        let v = circular_voltages(0.5);
        assert!((v[1].arg() - 1.0).abs() < 1e-15 && (v[2].arg() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_layout() {
        let c = collinear_centres(&[1.0, 0.5, 1.5]).unwrap();
        assert_eq!(c, vec![-1.5, -0.5, 0.0, 1.5]);
        assert!(matches!(collinear_centres(&[0.49]), Err(AntennaError::OverlappingElements { index: 0, .. })));
    }
}
