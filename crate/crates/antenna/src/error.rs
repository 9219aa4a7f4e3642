use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AntennaError {
    #[error("degenerate pattern: radiated power is zero")]
    DegeneratePattern,
    #[error("element spacing {spacing} is below the 0.5 wavelength minimum (index {index})")]
    OverlappingElements { index: usize, spacing: f64 },
    #[error("invalid quadrature resolution {n_theta}x{n_phi}")]
    InvalidResolution { n_theta: usize, n_phi: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
