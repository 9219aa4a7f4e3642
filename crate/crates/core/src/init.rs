use crate::config::{integer_sqrt, CfoConfig, InitScheme};
use crate::error::Result;
use crate::matrix::ProbeMatrix;
use crate::space::DecisionSpace;

/// `lo + (num/den)(hi - lo)`, landing exactly on `hi` when `num == den`.
fn lerp(lo: f64, hi: f64, num: usize, den: usize) -> f64 {
    if num == den {
        return hi;
    }
    (lo + num as f64 * (hi - lo) / den as f64).clamp(lo, hi)
}

/// Step-0 probe positions for the configured scheme.
pub fn init_probes(cfg: &CfoConfig, space: &DecisionSpace) -> Result<ProbeMatrix> {
    cfg.validate(space)?;
    let n_probes = cfg.n_probes;
    let n_dims = space.n_dims();
    let b = space.bounds();
    let rows: Vec<Vec<f64>> = match &cfg.init_scheme {
        InitScheme::OnAxis => {
            let anchor: Vec<f64> = b.iter().map(|&(lo, hi)| lo + cfg.gamma * (hi - lo)).collect();
            let per_axis = n_probes / n_dims;
            let mut rows = Vec::with_capacity(n_probes);
            for (i, &(lo, hi)) in b.iter().enumerate() {
                for n in 0..per_axis {
                    let mut row = anchor.clone();
                    row[i] = lerp(lo, hi, n, per_axis - 1);
                    rows.push(row);
                }
            }
            rows
        }
        InitScheme::OffDiagonal => {
            let den = n_probes * n_dims - 1;
            (0..n_probes)
                .map(|p| b.iter().enumerate().map(|(i, &(lo, hi))| lerp(lo, hi, n_dims * p + i, den)).collect())
                .collect()
        }
        InitScheme::OnDiagonal => (0..n_probes)
            .map(|p| b.iter().map(|&(lo, hi)| lerp(lo, hi, p, n_probes - 1)).collect())
            .collect(),
        InitScheme::Grid2D => {
            let side = integer_sqrt(n_probes);
            lattice(space, &[side, side])
        }
        InitScheme::Lattice(counts) => lattice(space, counts),
        InitScheme::Custom(points) => points.clone(),
    };
    ProbeMatrix::from_rows(&rows)
}

/// Inclusive rectangular lattice, first axis slowest.
pub fn lattice(space: &DecisionSpace, counts: &[usize]) -> Vec<Vec<f64>> {
    let total: usize = counts.iter().product();
    let mut rows = Vec::with_capacity(total);
    let mut index = vec![0usize; counts.len()];
    for _ in 0..total {
        rows.push(
            index
                .iter()
                .zip(counts)
                .zip(space.bounds())
                .map(|((&k, &c), &(lo, hi))| lerp(lo, hi, k, c - 1))
                .collect(),
        );
        for axis in (0..counts.len()).rev() {
            index[axis] += 1;
            if index[axis] < counts[axis] {
                break;
            }
            index[axis] = 0;
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> DecisionSpace {
        DecisionSpace::uniform(2, 0.0, 1.0).unwrap()
    }

    fn rows(scheme: InitScheme, n_probes: usize) -> Vec<Vec<f64>> {
        init_probes(&CfoConfig::new(n_probes, 1, scheme), &unit_square()).unwrap().to_rows()
    }

    #[test]
    fn on_axis_with_anchor() {
        assert_eq!(
            rows(InitScheme::OnAxis, 4),
            vec![vec![0.0, 0.5], vec![1.0, 0.5], vec![0.5, 0.0], vec![0.5, 1.0]]
        );
    }

    #[test]
    fn on_axis_gamma_zero_lies_on_the_axes() {
        let mut cfg = CfoConfig::new(6, 1, InitScheme::OnAxis);
        cfg.gamma = 0.0;
        let r = init_probes(&cfg, &unit_square()).unwrap().to_rows();
        assert_eq!(r[1], vec![0.5, 0.0]);
        assert_eq!(r[4], vec![0.0, 0.5]);
    }

    #[test]
    fn grid_corners() {
        assert_eq!(
            rows(InitScheme::Grid2D, 4),
            vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]
        );
    }

    #[test]
    fn off_diagonal() {
        let r = rows(InitScheme::OffDiagonal, 2);
        assert_eq!(r[0][0], 0.0);
        assert!((r[0][1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((r[1][0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(r[1][1], 1.0);
    }

    #[test]
    fn on_diagonal_spans_corners() {
        let space = DecisionSpace::uniform(3, 0.5, 1.5).unwrap();
        let r = init_probes(&CfoConfig::new(6, 1, InitScheme::OnDiagonal), &space).unwrap();
        assert_eq!(r.row(0), &[0.5; 3]);
        assert_eq!(r.row(5), &[1.5; 3]);
        assert!((r.get(2, 1) - 0.9).abs() < 1e-15);
    }

    #[test]
    fn lattice_ordering() {
        let space = DecisionSpace::new(vec![(5.0, 15.0), (0.0, 3.0)]).unwrap();
        let pts = lattice(&space, &[3, 2]);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![5.0, 0.0]);
        assert_eq!(pts[1], vec![5.0, 3.0]);
        assert_eq!(pts[2], vec![10.0, 0.0]);
        assert_eq!(pts[5], vec![15.0, 3.0]);
    }

    #[test]
    fn custom_points_checked() {
        let bad = InitScheme::Custom(vec![vec![0.0, 0.0], vec![0.0, 2.0]]);
        assert!(init_probes(&CfoConfig::new(2, 1, bad), &unit_square()).is_err());
    }
}
