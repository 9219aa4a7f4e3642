//! Induced-EMF impedances of thin, parallel, side-by-side half-wave dipoles.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::AntennaError;
use crate::special::sici;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Free-space impedance over 4 pi.
const ETA_OVER_4PI: f64 = 30.0;
const HALF_WAVE: f64 = 0.5;

/// About `73.13 + j42.54` ohms.
pub fn self_impedance() -> Complex64 {
    let (si, ci) = sici(TAU);
    Complex64::new(
        ETA_OVER_4PI * (EULER_GAMMA + TAU.ln() - ci),
        ETA_OVER_4PI * si,
    )
}

/// Mutual impedance at centre separation `d` wavelengths (`d > 0`).
pub fn mutual_impedance(d: f64) -> Complex64 {
    let root = (d * d + HALF_WAVE * HALF_WAVE).sqrt();
    let (s0, c0) = sici(TAU * d);
    let (s1, c1) = sici(TAU * (root + HALF_WAVE));
    let (s2, c2) = sici(TAU * (root - HALF_WAVE));
    Complex64::new(
        ETA_OVER_4PI * (2.0 * c0 - c1 - c2),
        -ETA_OVER_4PI * (2.0 * s0 - s1 - s2),
    )
}

/// Open-circuit impedance matrix for parallel half-wave elements whose centres
/// lie in a plane normal to the element axis.
pub fn impedance_matrix(centres: &[[f64; 3]]) -> DMatrix<Complex64> {
    let n = centres.len();
    DMatrix::from_fn(n, n, |m, k| {
        if m == k {
            self_impedance()
        } else {
            let d = (0..3).map(|i| (centres[m][i] - centres[k][i]).powi(2)).sum::<f64>().sqrt();
            mutual_impedance(d)
        }
    })
}

/// Terminal currents `I = Z^-1 V` for the given feed voltages.
pub fn feed_currents(centres: &[[f64; 3]], voltages: &[Complex64]) -> Result<Vec<Complex64>, AntennaError> {
    let z = impedance_matrix(centres);
    let v = DVector::from_column_slice(voltages);
    let i = z
        .lu()
        .solve(&v)
        .ok_or_else(|| AntennaError::InvalidArgument("singular impedance matrix".into()))?;
    Ok(i.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Closed forms evaluated with scipy.special.sici.
    #[test]
    fn reference_impedances() {
        let z = self_impedance();
        assert!((z.re - 73.12960179171672).abs() < 1e-10);
        assert!((z.im - 42.54454728397885).abs() < 1e-10);
        let z = mutual_impedance(0.765366864730);
        assert!((z.re + 21.420321506215984).abs() < 1e-8 && (z.im - 8.513473132210372).abs() < 1e-8);
        let z = mutual_impedance(1.0);
        assert!((z.re - 4.011630963366198).abs() < 1e-10 && (z.im - 17.742029335482982).abs() < 1e-10);
    }

    #[test]
    fn currents_solve_the_system() {
        let centres = [[0.0, 0.0, 0.0], [0.6, 0.0, 0.0], [0.0, 0.9, 0.0]];
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-0.5, 0.2)];
        let i = feed_currents(&centres, &v).unwrap();
        let z = impedance_matrix(&centres);
        for m in 0..3 {
            let vm: Complex64 = (0..3).map(|k| z[(m, k)] * i[k]).sum();
            assert!((vm - v[m]).norm() < 1e-12);
        }
    }
}
