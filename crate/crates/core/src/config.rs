use crate::error::{CfoError, Result};
use crate::space::DecisionSpace;

/// Runs longer than this keep only rolling state unless history is forced.
pub const MAX_RETAINED_STEPS: usize = 10_000;

/// Initial probe distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum InitScheme {
    /// Equal numbers of probes spread uniformly along each coordinate axis; the
    /// remaining coordinates sit at `x_min + gamma * (x_max - x_min)`.
    OnAxis,
    /// Probes strung along a line slightly off the principal diagonal.
    OffDiagonal,
    /// Probes spaced uniformly on the principal diagonal, endpoints included.
    OnDiagonal,
    /// Square lattice spanning a 2-D space, corners included.
    Grid2D,
    /// Rectangular lattice with the given number of points per axis, corners
    /// included; the first axis varies slowest.
    Lattice(Vec<usize>),
    /// Explicit probe coordinates.
    Custom(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrepMode {
    /// Increment only while the saved best fitnesses have stalled; reset to the
    /// initial value on reaching 1.
    Adaptive,
    /// Increment every step; drop to `floor` once the value exceeds 1.
    Cycling { floor: f64 },
    /// Never changes.
    Fixed,
}

/// Repositioning-factor controller constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrepPolicy {
    pub mode: FrepMode,
    pub init: f64,
    pub increment: f64,
    pub fit_tol: f64,
    pub n_saved: usize,
    pub n_sat: usize,
}

impl Default for FrepPolicy {
    fn default() -> Self {
        Self { mode: FrepMode::Adaptive, init: 0.5, increment: 0.005, fit_tol: 0.0005, n_saved: 5, n_sat: 3 }
    }
}

impl FrepPolicy {
    /// The variable-factor behaviour of the reference BASIC program: +0.05 per
    /// step, wrapping to 0.05.
    pub fn cycling() -> Self {
        Self { mode: FrepMode::Cycling { floor: 0.05 }, increment: 0.05, ..Self::default() }
    }
}

/// Saturation and oscillation detector settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    pub n_avg_steps: usize,
    pub fitness_sat_tol: f64,
    pub davg_sat_tol: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self { n_avg_steps: 50, fitness_sat_tol: 1e-5, davg_sat_tol: 5e-4 }
    }
}

/// Experimental trapping countermeasures. Both are off by default and are not
/// part of the reported algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mitigations {
    /// When D_avg has saturated while oscillating, halve the best probe's
    /// coordinates and scale them by `1 + N(0, perturb_sigma)`.
    pub perturb_on_oscillation: bool,
    pub perturb_sigma: f64,
    pub perturb_seed: u64,
    /// Every `n` steps, move each bound halfway toward the best point.
    pub shrink_interval: Option<usize>,
}

impl Default for Mitigations {
    fn default() -> Self {
        Self { perturb_on_oscillation: false, perturb_sigma: 0.1, perturb_seed: 0, shrink_interval: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HistoryMode {
    /// Full history up to [`MAX_RETAINED_STEPS`], streaming beyond.
    #[default]
    Auto,
    Full,
    Streaming,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CfoConfig {
    pub g: f64,
    pub delta_t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub n_probes: usize,
    pub n_steps: usize,
    pub init_scheme: InitScheme,
    pub gamma: f64,
    pub frep: FrepPolicy,
    /// Applied to every probe at step 0; `None` means zero.
    pub initial_acceleration: Option<Vec<f64>>,
    pub detectors: DetectorConfig,
    pub early_termination: bool,
    pub mitigations: Mitigations,
    pub history: HistoryMode,
}

impl CfoConfig {
    /// G = 2, dt = 1, alpha = beta = 2, gamma = 0.5, default controller and detectors.
    pub fn new(n_probes: usize, n_steps: usize, init_scheme: InitScheme) -> Self {
        Self {
            g: 2.0,
            delta_t: 1.0,
            alpha: 2.0,
            beta: 2.0,
            n_probes,
            n_steps,
            init_scheme,
            gamma: 0.5,
            frep: FrepPolicy::default(),
            initial_acceleration: None,
            detectors: DetectorConfig::default(),
            early_termination: false,
            mitigations: Mitigations::default(),
            history: HistoryMode::Auto,
        }
    }

    pub fn retains_history(&self) -> bool {
        match self.history {
            HistoryMode::Auto => self.n_steps <= MAX_RETAINED_STEPS,
            HistoryMode::Full => true,
            HistoryMode::Streaming => false,
        }
    }

    pub fn validate(&self, space: &DecisionSpace) -> Result<()> {
        let positive = |field: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CfoError::config(field, format!("must be finite and > 0, got {v}")))
            }
        };
        if !self.g.is_finite() {
            return Err(CfoError::config("g", "must be finite"));
        }
        positive("delta_t", self.delta_t)?;
        positive("alpha", self.alpha)?;
        positive("beta", self.beta)?;
        if self.n_probes < 2 {
            return Err(CfoError::config("n_probes", "at least 2 probes required"));
        }
        if self.n_steps < 1 {
            return Err(CfoError::config("n_steps", "at least 1 step required"));
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(CfoError::config("gamma", format!("must lie in [0, 1], got {}", self.gamma)));
        }
        self.validate_frep()?;
        let d = &self.detectors;
        if d.n_avg_steps < 1 {
            return Err(CfoError::config("n_avg_steps", "must be at least 1"));
        }
        if !(d.fitness_sat_tol >= 0.0) || !(d.davg_sat_tol >= 0.0) {
            return Err(CfoError::config("detectors", "tolerances must be >= 0"));
        }
        if let Some(a) = &self.initial_acceleration {
            if a.len() != space.n_dims() || a.iter().any(|v| !v.is_finite()) {
                return Err(CfoError::config(
                    "initial_acceleration",
                    format!("needs {} finite components", space.n_dims()),
                ));
            }
        }
        let m = &self.mitigations;
        if m.perturb_on_oscillation && !(m.perturb_sigma >= 0.0) {
            return Err(CfoError::config("perturb_sigma", "must be >= 0"));
        }
        if m.shrink_interval == Some(0) {
            return Err(CfoError::config("shrink_interval", "must be at least 1"));
        }
        self.validate_scheme(space)
    }

    fn validate_frep(&self) -> Result<()> {
        let f = &self.frep;
        if !(f.init > 0.0 && f.init <= 1.0) {
            return Err(CfoError::config("frep_init", format!("must lie in (0, 1], got {}", f.init)));
        }
        if !(f.increment > 0.0 && f.increment.is_finite()) && f.mode != FrepMode::Fixed {
            return Err(CfoError::config("frep_increment", "must be > 0"));
        }
        if !(f.fit_tol >= 0.0) {
            return Err(CfoError::config("fit_tol", "must be >= 0"));
        }
        if f.n_sat < 1 || f.n_saved < f.n_sat {
            return Err(CfoError::config("n_saved", "requires n_saved >= n_sat >= 1"));
        }
        if let FrepMode::Cycling { floor } = f.mode {
            if !(floor > 0.0 && floor <= 1.0) {
                return Err(CfoError::config("frep_floor", "must lie in (0, 1]"));
            }
        }
        Ok(())
    }

    fn validate_scheme(&self, space: &DecisionSpace) -> Result<()> {
        let n_dims = space.n_dims();
        match &self.init_scheme {
            InitScheme::OnAxis => {
                if self.n_probes % n_dims != 0 || self.n_probes / n_dims < 2 {
                    return Err(CfoError::config(
                        "n_probes",
                        format!("on-axis init needs a multiple of {n_dims} with at least 2 per axis"),
                    ));
                }
            }
            InitScheme::Grid2D => {
                if n_dims != 2 {
                    return Err(CfoError::config("init_scheme", "grid init requires 2 dimensions"));
                }
                let side = integer_sqrt(self.n_probes);
                if side * side != self.n_probes {
                    return Err(CfoError::config("n_probes", "grid init needs a perfect square"));
                }
            }
            InitScheme::Lattice(counts) => {
                if counts.len() != n_dims || counts.iter().any(|&c| c < 2) {
                    return Err(CfoError::config(
                        "init_scheme",
                        format!("lattice needs {n_dims} axis counts, each at least 2"),
                    ));
                }
                if counts.iter().product::<usize>() != self.n_probes {
                    return Err(CfoError::config("n_probes", "must equal the lattice point count"));
                }
            }
            InitScheme::Custom(points) => {
                if points.len() != self.n_probes {
                    return Err(CfoError::config(
                        "init_scheme",
                        format!("{} custom points given for {} probes", points.len(), self.n_probes),
                    ));
                }
                for (p, point) in points.iter().enumerate() {
                    if !space.contains(point) {
                        return Err(CfoError::config(
                            "init_scheme",
                            format!("custom point {p} {point:?} lies outside the decision space"),
                        ));
                    }
                }
            }
            InitScheme::OffDiagonal | InitScheme::OnDiagonal => {}
        }
        Ok(())
    }
}

pub(crate) fn integer_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
