//! Run specifications: the JSON schema, per-objective defaults and validation.
//!
//! Only `objective` is required. Every other field falls back to the defaults
//! for that objective (see [`default_cfo`]). Unknown fields are rejected and
//! errors name the offending path, e.g. `cfo.frep_init`.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use cfo_core::{
    CfoConfig, CfoError, DecisionSpace, FrepMode, FrepPolicy, HistoryMode, InitScheme,
};
use cfo_objectives::pbm::linear_array_noise_sigma;
use cfo_objectives::{default_bounds, lookup, Dims, FunctionId, ObjectiveOptions};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{BenchError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Which objective to optimize and how to evaluate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_dims: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_elements: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parrott_offset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external: Option<ExternalSpec>,
}

impl ObjectiveSpec {
    pub fn named(id: impl Into<String>) -> Self {
        Self { id: id.into(), n_dims: None, n_elements: None, parrott_offset: None, noise: None, external: None }
    }

    pub fn options(&self) -> ObjectiveOptions {
        ObjectiveOptions { n_dims: self.n_dims, n_elements: self.n_elements, parrott_offset: self.parrott_offset }
    }
}

/// Additive Gaussian noise on every returned fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    #[serde(default)]
    pub mu: f64,
    /// Defaults to `sqrt(0.2)`, the noisy linear-array setting.
    #[serde(default = "linear_array_noise_sigma")]
    pub sigma: f64,
    #[serde(default)]
    pub seed: u64,
    /// Seed from the clock instead; the seed used is reported in the record.
    #[serde(default)]
    pub wall_clock: bool,
}

/// A child process speaking the line protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalSpec {
    pub command: String,
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: f64,
}

fn default_timeout_secs() -> f64 {
    60.0
}

/// Initial probe layout as written in the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitSpec {
    OnAxis,
    OffDiagonal,
    OnDiagonal,
    #[serde(rename = "grid_2d")]
    Grid2D,
    Lattice(Vec<usize>),
    Custom(Vec<Vec<f64>>),
}

impl From<InitSpec> for InitScheme {
    fn from(s: InitSpec) -> Self {
        match s {
            InitSpec::OnAxis => InitScheme::OnAxis,
            InitSpec::OffDiagonal => InitScheme::OffDiagonal,
            InitSpec::OnDiagonal => InitScheme::OnDiagonal,
            InitSpec::Grid2D => InitScheme::Grid2D,
            InitSpec::Lattice(c) => InitScheme::Lattice(c),
            InitSpec::Custom(p) => InitScheme::Custom(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrepModeSpec {
    Adaptive,
    Cycling,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HistorySpec {
    Auto,
    Full,
    Streaming,
}

/// Optional overrides of the CFO parameters; absent fields keep the
/// objective's defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CfoOverrides {
    pub g: Option<f64>,
    pub delta_t: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub n_probes: Option<usize>,
    pub n_steps: Option<usize>,
    pub init: Option<InitSpec>,
    pub gamma: Option<f64>,
    pub frep_mode: Option<FrepModeSpec>,
    pub frep_init: Option<f64>,
    pub frep_increment: Option<f64>,
    pub frep_fit_tol: Option<f64>,
    pub frep_n_saved: Option<usize>,
    pub frep_n_sat: Option<usize>,
    pub frep_floor: Option<f64>,
    pub initial_acceleration: Option<Vec<f64>>,
    pub n_avg_steps: Option<usize>,
    pub fitness_sat_tol: Option<f64>,
    pub davg_sat_tol: Option<f64>,
    pub early_termination: Option<bool>,
    pub history: Option<HistorySpec>,
    pub perturb_on_oscillation: Option<bool>,
    pub perturb_sigma: Option<f64>,
    pub perturb_seed: Option<u64>,
    pub shrink_interval: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Gamma,
    FrepInit,
    NProbes,
    Seed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    /// `count` evenly spaced values from `start` to `stop` inclusive; integer
    /// parameters are rounded.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count.max(2);
        (0..self.count)
            .map(|k| {
                let v = if k + 1 == n { self.stop } else { self.start + k as f64 * (self.stop - self.start) / (n - 1) as f64 };
                match self.parameter {
                    SweepParameter::NProbes | SweepParameter::Seed => v.round(),
                    _ => v,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Emit {
    pub fitness: bool,
    pub davg: bool,
    pub best_probe: bool,
    pub probe_snapshots: bool,
    pub trajectories: bool,
    pub summary: bool,
    pub record: bool,
}

impl Default for Emit {
    fn default() -> Self {
        Self {
            fitness: true,
            davg: true,
            best_probe: true,
            probe_snapshots: false,
            trajectories: false,
            summary: true,
            record: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub directory: Option<PathBuf>,
    pub emit: Emit,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    schema_version: Option<u32>,
    #[serde(deserialize_with = "objective_field")]
    objective: ObjectiveSpec,
    bounds: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    cfo: CfoOverrides,
    sweep: Option<SweepSpec>,
    #[serde(default)]
    outputs: Outputs,
}

// A bare string is shorthand for `{"id": ...}`.
fn objective_field<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ObjectiveSpec, D::Error> {
    match serde_json::Value::deserialize(d)? {
        serde_json::Value::String(id) => Ok(ObjectiveSpec::named(id)),
        value => serde_path_to_error::deserialize(value).map_err(|e| {
            if e.path().to_string() == "." {
                serde::de::Error::custom(e.inner())
            } else {
                serde::de::Error::custom(format!("{}: {}", e.path(), e.inner()))
            }
        }),
    }
}

/// A validated run specification with all defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub objective: ObjectiveSpec,
    pub space: DecisionSpace,
    pub cfo: CfoConfig,
    pub sweep: Option<SweepSpec>,
    pub outputs: Outputs,
}

/// Reads and validates a JSON run specification.
pub fn load_config(path: &Path) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| BenchError::config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunSpec> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawSpec = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            BenchError::config(e.inner().to_string())
        } else {
            BenchError::config(format!("{path}: {}", e.inner()))
        }
    })?;
    if let Some(v) = raw.schema_version {
        if v != SCHEMA_VERSION {
            return Err(BenchError::config(format!("schema_version: unsupported version {v}, expected {SCHEMA_VERSION}")));
        }
    }
    let spec = RunSpec::resolve(raw.objective, raw.bounds, raw.cfo, raw.sweep, raw.outputs)?;
    Ok(spec)
}

impl RunSpec {
    /// Builds a spec in code, with the same defaults and checks as a file.
    pub fn new(objective: ObjectiveSpec, cfo: CfoOverrides) -> Result<Self> {
        Self::resolve(objective, None, cfo, None, Outputs::default())
    }

    fn resolve(
        objective: ObjectiveSpec,
        bounds: Option<Vec<(f64, f64)>>,
        overrides: CfoOverrides,
        sweep: Option<SweepSpec>,
        outputs: Outputs,
    ) -> Result<Self> {
        let registered = lookup(&objective.id);
        if registered.is_err() && objective.external.is_none() {
            return Err(BenchError::config(format!("objective.id: unknown objective `{}`", objective.id)));
        }
        if let Some(n) = &objective.noise {
            if !(n.sigma >= 0.0 && n.sigma.is_finite()) || !n.mu.is_finite() {
                return Err(BenchError::config("objective.noise: sigma must be finite and >= 0"));
            }
        }
        if let Some(e) = &objective.external {
            if !(e.timeout_secs > 0.0 && e.timeout_secs.is_finite()) {
                return Err(BenchError::config("objective.external.timeout_secs: must be > 0"));
            }
        }

        let bounds = match (bounds, &registered) {
            (Some(b), _) => b,
            (None, Ok(id)) => {
                if objective.external.is_none() && *id == FunctionId::Pbm4 {
                    return Err(BenchError::config(
                        "objective.id: PBM_4 needs a full-wave solver; supply objective.external",
                    ));
                }
                default_bounds(*id, &objective.options()).map_err(|e| BenchError::config(format!("objective: {e}")))?
            }
            (None, Err(_)) => {
                return Err(BenchError::config("bounds: required for an external objective without a registered id"))
            }
        };
        let space = DecisionSpace::new(bounds).map_err(|e| BenchError::config(format!("bounds: {e}")))?;
        if let (Ok(id), None) = (&registered, &objective.external) {
            let expected = default_bounds(*id, &objective.options()).map(|b| b.len()).unwrap_or(space.n_dims());
            if expected != space.n_dims() {
                return Err(BenchError::config(format!(
                    "bounds: {} has {expected} dimensions, got {} bound pairs",
                    objective.id,
                    space.n_dims()
                )));
            }
        }

        let base = default_cfo(registered.ok(), space.n_dims());
        let mut cfo = apply_overrides(base, overrides)?;
        if outputs.emit.probe_snapshots || outputs.emit.trajectories {
            match cfo.history {
                HistoryMode::Streaming => {
                    return Err(BenchError::config(
                        "cfo.history: probe snapshots and trajectories need the full history",
                    ))
                }
                _ => cfo.history = HistoryMode::Full,
            }
        }
        cfo.validate(&space).map_err(cfo_config_error)?;

        if let Some(s) = &sweep {
            if s.count < 2 {
                return Err(BenchError::config(format!("sweep.count: need at least 2 runs, got {}", s.count)));
            }
            if !s.start.is_finite() || !s.stop.is_finite() {
                return Err(BenchError::config("sweep: start and stop must be finite"));
            }
            if s.parameter == SweepParameter::Seed && objective.noise.is_none() {
                return Err(BenchError::config("sweep.parameter: seed sweeps need objective.noise"));
            }
            if matches!(s.parameter, SweepParameter::NProbes | SweepParameter::Seed) && s.start.min(s.stop) < 0.0 {
                return Err(BenchError::config("sweep: integer parameters must be >= 0"));
            }
        }
        let spec = RunSpec { objective, space, cfo, sweep, outputs };
        for variant in spec.sweep_variants() {
            variant.cfo.validate(&variant.space).map_err(|e| match cfo_config_error(e) {
                BenchError::Config(m) => BenchError::config(format!("sweep value: {m}")),
                other => other,
            })?;
        }
        Ok(spec)
    }

    /// One spec per sweep value (the spec itself when there is no sweep),
    /// paired with the value.
    pub fn sweep_values(&self) -> Vec<(Option<f64>, RunSpec)> {
        let Some(sweep) = &self.sweep else {
            return vec![(None, self.clone())];
        };
        sweep
            .values()
            .into_iter()
            .map(|v| {
                let mut s = self.clone();
                s.sweep = None;
                match sweep.parameter {
                    SweepParameter::Gamma => s.cfo.gamma = v,
                    SweepParameter::FrepInit => s.cfo.frep.init = v,
                    SweepParameter::NProbes => s.cfo.n_probes = v as usize,
                    SweepParameter::Seed => {
                        if let Some(n) = s.objective.noise.as_mut() {
                            n.seed = v as u64;
                        }
                    }
                }
                (Some(v), s)
            })
            .collect()
    }

    fn sweep_variants(&self) -> Vec<RunSpec> {
        self.sweep_values().into_iter().map(|(_, s)| s).collect()
    }

    /// Replaces the noise seed, if the objective is noisy.
    pub fn set_seed(&mut self, seed: u64) {
        if let Some(n) = self.objective.noise.as_mut() {
            n.seed = seed;
            n.wall_clock = false;
        }
    }

    /// Short name for output files.
    pub fn label(&self) -> String {
        match lookup(&self.objective.id) {
            Ok(id) => id.name().to_string(),
            Err(_) => self.objective.id.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect(),
        }
    }
}

fn cfo_config_error(e: CfoError) -> BenchError {
    match e {
        CfoError::InvalidConfig { field, reason } => BenchError::config(format!("cfo.{field}: {reason}")),
        other => BenchError::config(format!("cfo: {other}")),
    }
}

/// Probes per axis for the on-axis default of the analytic functions.
pub const ANALYTIC_PROBES_PER_AXIS: usize = 8;
/// Anchor fraction for the on-axis default of the analytic functions.
pub const ANALYTIC_GAMMA: f64 = 0.25;

/// Per-objective defaults on top of G = 2, dt = 1, alpha = beta = 2 and the
/// adaptive repositioning factor.
///
/// | objective | init | N_p | N_t |
/// |---|---|---|---|
/// | PARROTT_F4 | on-axis | 3 | 500 |
/// | other analytic | on-axis, gamma 0.25 | 8 per axis | 500 |
/// | PBM_1 | the four symmetric probes around (1.75, pi/4) | 4 | 100 |
/// | PBM_2 | 6 x 4 lattice | 24 | 250 |
/// | PBM_3 | on-axis, gamma 0 | 10 | 100 |
/// | PBM_5 | on-diagonal | 2 per spacing | 100 |
/// | external or PBM_4 | on-axis | 4 per axis | 100 |
///
/// PBM_1 also averages its saturation detector over 10 steps instead of 50.
pub fn default_cfo(id: Option<FunctionId>, n_dims: usize) -> CfoConfig {
    let on_axis = |per_axis: usize, steps: usize, gamma: f64| {
        let mut c = CfoConfig::new(per_axis * n_dims, steps, InitScheme::OnAxis);
        c.gamma = gamma;
        c
    };
    match id {
        Some(FunctionId::ParrottF4) => CfoConfig::new(3, 500, InitScheme::OnAxis),
        Some(FunctionId::Pbm1) => {
            let points = vec![
                vec![1.333, PI / 4.0],
                vec![2.167, PI / 4.0],
                vec![1.75, PI / 6.0],
                vec![1.75, PI / 3.0],
            ];
            let mut c = CfoConfig::new(4, 100, InitScheme::Custom(points));
            c.detectors.n_avg_steps = 10;
            c
        }
        Some(FunctionId::Pbm2) => CfoConfig::new(24, 250, InitScheme::Lattice(vec![6, 4])),
        Some(FunctionId::Pbm3) => on_axis(5, 100, 0.0),
        Some(FunctionId::Pbm5) => CfoConfig::new(2 * n_dims, 100, InitScheme::OnDiagonal),
        Some(FunctionId::Pbm4) | None => on_axis(4, 100, 0.5),
        Some(_) => on_axis(ANALYTIC_PROBES_PER_AXIS, 500, ANALYTIC_GAMMA),
    }
}

fn apply_overrides(mut c: CfoConfig, o: CfoOverrides) -> Result<CfoConfig> {
    macro_rules! set {
        ($src:expr => $dst:expr) => {
            if let Some(v) = $src {
                $dst = v;
            }
        };
    }
    if let Some(mode) = o.frep_mode {
        c.frep = match mode {
            FrepModeSpec::Adaptive => FrepPolicy::default(),
            FrepModeSpec::Cycling => FrepPolicy::cycling(),
            FrepModeSpec::Fixed => FrepPolicy { mode: FrepMode::Fixed, ..FrepPolicy::default() },
        };
    }
    if let Some(floor) = o.frep_floor {
        match &mut c.frep.mode {
            FrepMode::Cycling { floor: f } => *f = floor,
            _ => return Err(BenchError::config("cfo.frep_floor: only applies to frep_mode \"cycling\"")),
        }
    }
    set!(o.g => c.g);
    set!(o.delta_t => c.delta_t);
    set!(o.alpha => c.alpha);
    set!(o.beta => c.beta);
    set!(o.n_probes => c.n_probes);
    set!(o.n_steps => c.n_steps);
    if let Some(init) = o.init {
        c.init_scheme = init.into();
    }
    set!(o.gamma => c.gamma);
    set!(o.frep_init => c.frep.init);
    set!(o.frep_increment => c.frep.increment);
    set!(o.frep_fit_tol => c.frep.fit_tol);
    set!(o.frep_n_saved => c.frep.n_saved);
    set!(o.frep_n_sat => c.frep.n_sat);
    if o.initial_acceleration.is_some() {
        c.initial_acceleration = o.initial_acceleration;
    }
    set!(o.n_avg_steps => c.detectors.n_avg_steps);
    set!(o.fitness_sat_tol => c.detectors.fitness_sat_tol);
    set!(o.davg_sat_tol => c.detectors.davg_sat_tol);
    set!(o.early_termination => c.early_termination);
    if let Some(h) = o.history {
        c.history = match h {
            HistorySpec::Auto => HistoryMode::Auto,
            HistorySpec::Full => HistoryMode::Full,
            HistorySpec::Streaming => HistoryMode::Streaming,
        };
    }
    set!(o.perturb_on_oscillation => c.mitigations.perturb_on_oscillation);
    set!(o.perturb_sigma => c.mitigations.perturb_sigma);
    set!(o.perturb_seed => c.mitigations.perturb_seed);
    if o.shrink_interval.is_some() {
        c.mitigations.shrink_interval = o.shrink_interval;
    }
    Ok(c)
}

/// Whether an id names a function with a configurable dimension.
pub fn is_configurable(id: FunctionId) -> bool {
    matches!(id.dims(), Dims::Configurable { .. })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        match parse_config(text) {
            Err(BenchError::Config(m)) => m,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_takes_registry_defaults() {
        let spec = parse_config(r#"{"objective": "GP"}"#).unwrap();
        assert_eq!(spec.space.bounds(), &[(-2.0, 2.0), (-2.0, 2.0)]);
        assert_eq!((spec.cfo.g, spec.cfo.delta_t, spec.cfo.alpha, spec.cfo.beta), (2.0, 1.0, 2.0, 2.0));
        assert_eq!(spec.cfo.init_scheme, InitScheme::OnAxis);
        assert_eq!(spec.cfo.n_steps, 500);
    }

    #[test]
    fn dipole_setup_parses_to_four_custom_probes() {
        let spec = parse_config(
            r#"{
                "schema_version": 1,
                "objective": {"id": "PBM_1"},
                "cfo": {
                    "n_probes": 4,
                    "n_steps": 100,
                    "init": {"custom": [[1.333, 0.7853981633974483], [2.167, 0.7853981633974483],
                                        [1.75, 0.5235987755982988], [1.75, 1.0471975511965976]]}
                }
            }"#,
        )
        .unwrap();
        match &spec.cfo.init_scheme {
            InitScheme::Custom(p) => assert_eq!(p.len(), 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(spec.cfo.n_probes, 4);
    }

    #[test]
    fn out_of_range_frep_names_the_field() {
        let m = err(r#"{"objective": "GP", "cfo": {"frep_init": 1.5}}"#);
        assert!(m.contains("frep_init"), "{m}");
    }

    #[test]
    fn schema_errors_name_the_field() {
        assert!(err(r#"{"objective": "GP", "cfo": {"gamma": "high"}}"#).contains("cfo.gamma"));
        assert!(err(r#"{"objective": "GP", "cfo": {"n_prbes": 4}}"#).contains("n_prbes"));
        assert!(err(r#"{"objective": {"id": "PBM_2", "noise": {"sigma": "x"}}}"#).contains("noise.sigma"));
        assert!(err(r#"{"cfo": {}}"#).contains("objective"));
        assert!(err(r#"{"objective": "GP", "schema_version": 2}"#).contains("schema_version"));
    }

    #[test]
    fn unknown_objective_is_rejected() {
        assert!(err(r#"{"objective": "ROSENBROCK"}"#).contains("unknown objective"));
    }

    #[test]
    fn single_value_sweep_is_rejected() {
        let m = err(r#"{"objective": "SGO", "sweep": {"parameter": "gamma", "start": 0, "stop": 1, "count": 1}}"#);
        assert!(m.contains("sweep.count"), "{m}");
    }

    #[test]
    fn sweep_values_are_inclusive() {
        let spec =
            parse_config(r#"{"objective": "SGO", "sweep": {"parameter": "gamma", "start": 0, "stop": 1, "count": 11}}"#)
                .unwrap();
        let v: Vec<f64> = spec.sweep_values().into_iter().map(|(v, _)| v.unwrap()).collect();
        assert_eq!(v.len(), 11);
        assert_eq!((v[0], v[10]), (0.0, 1.0));
        assert!((v[3] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn seed_sweep_requires_noise() {
        let m = err(r#"{"objective": "PBM_2", "sweep": {"parameter": "seed", "start": 1, "stop": 5, "count": 5}}"#);
        assert!(m.contains("noise"), "{m}");
    }

    #[test]
    fn invalid_sweep_value_is_caught_up_front() {
        let m = err(r#"{"objective": "GP", "sweep": {"parameter": "gamma", "start": 0, "stop": 2, "count": 3}}"#);
        assert!(m.contains("gamma"), "{m}");
    }

    #[test]
    fn pbm4_needs_an_external_evaluator() {
        assert!(err(r#"{"objective": "PBM_4"}"#).contains("external"));
        let spec = parse_config(r#"{"objective": {"id": "PBM_4", "external": {"command": "nec-eval"}}}"#).unwrap();
        assert_eq!(spec.space.n_dims(), 2);
    }

    #[test]
    fn bounds_override_must_match_dimension() {
        assert!(err(r#"{"objective": "GP", "bounds": [[0, 1]]}"#).contains("bounds"));
        let spec = parse_config(r#"{"objective": "GP", "bounds": [[-1, 1], [-3, 0]]}"#).unwrap();
        assert_eq!(spec.space.bounds()[1], (-3.0, 0.0));
    }

    #[test]
    fn collinear_probe_count_follows_elements() {
        let spec = parse_config(r#"{"objective": {"id": "PBM_5", "n_elements": 10}}"#).unwrap();
        assert_eq!(spec.space.n_dims(), 9);
        assert_eq!(spec.cfo.n_probes, 18);
        assert_eq!(spec.cfo.init_scheme, InitScheme::OnDiagonal);
    }
}
