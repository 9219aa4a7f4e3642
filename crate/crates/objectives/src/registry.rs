//! Lookup of objectives by name.
//!
//! Names match case-insensitively with `_` and `-` ignored, so `PBM_1`,
//! `pbm1` and `Pbm-1` are the same objective. Functions whose reference
//! implementation shifts the optimum are registered twice: the plain name is
//! the textbook form, the `_OFFSET` name carries the reference offsets.

use std::fmt;
use std::str::FromStr;

use cfo_core::{BoxError, DecisionSpace, EvalContext, Objective};

use crate::analytic;
use crate::error::{ObjectiveError, Result};
use crate::pbm::{Pbm, DEFAULT_COLLINEAR_ELEMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Sphere,
    ParrottF4,
    Sgo,
    SgoOffset,
    GoldsteinPrice,
    GoldsteinPriceOffset,
    Step,
    StepOffset,
    Schwefel226,
    Colville,
    ColvilleOffset,
    Griewank,
    GriewankOffset,
    Himmelblau,
    Pbm1,
    Pbm2,
    Pbm3,
    Pbm4,
    Pbm5,
}

/// Dimensionality of a registered function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dims {
    Fixed(usize),
    Configurable { default: usize },
}

impl FunctionId {
    pub const ALL: [FunctionId; 19] = [
        FunctionId::Sphere,
        FunctionId::ParrottF4,
        FunctionId::Sgo,
        FunctionId::SgoOffset,
        FunctionId::GoldsteinPrice,
        FunctionId::GoldsteinPriceOffset,
        FunctionId::Step,
        FunctionId::StepOffset,
        FunctionId::Schwefel226,
        FunctionId::Colville,
        FunctionId::ColvilleOffset,
        FunctionId::Griewank,
        FunctionId::GriewankOffset,
        FunctionId::Himmelblau,
        FunctionId::Pbm1,
        FunctionId::Pbm2,
        FunctionId::Pbm3,
        FunctionId::Pbm4,
        FunctionId::Pbm5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::Sphere => "F1",
            FunctionId::ParrottF4 => "PARROTT_F4",
            FunctionId::Sgo => "SGO",
            FunctionId::SgoOffset => "SGO_OFFSET",
            FunctionId::GoldsteinPrice => "GP",
            FunctionId::GoldsteinPriceOffset => "GP_OFFSET",
            FunctionId::Step => "STEP",
            FunctionId::StepOffset => "STEP_OFFSET",
            FunctionId::Schwefel226 => "SCHWEFEL_226",
            FunctionId::Colville => "COLVILLE",
            FunctionId::ColvilleOffset => "COLVILLE_OFFSET",
            FunctionId::Griewank => "GRIEWANK",
            FunctionId::GriewankOffset => "GRIEWANK_OFFSET",
            FunctionId::Himmelblau => "HIMMELBLAU",
            FunctionId::Pbm1 => "PBM_1",
            FunctionId::Pbm2 => "PBM_2",
            FunctionId::Pbm3 => "PBM_3",
            FunctionId::Pbm4 => "PBM_4",
            FunctionId::Pbm5 => "PBM_5",
        }
    }

    pub fn dims(self) -> Dims {
        match self {
            FunctionId::Sphere => Dims::Configurable { default: 30 },
            FunctionId::ParrottF4 => Dims::Fixed(1),
            FunctionId::Colville | FunctionId::ColvilleOffset => Dims::Fixed(4),
            FunctionId::Step | FunctionId::StepOffset => Dims::Configurable { default: 2 },
            FunctionId::Griewank | FunctionId::GriewankOffset => Dims::Configurable { default: 2 },
            FunctionId::Schwefel226 => Dims::Configurable { default: 30 },
            FunctionId::Pbm5 => Dims::Configurable { default: DEFAULT_COLLINEAR_ELEMENTS - 1 },
            _ => Dims::Fixed(2),
        }
    }

    pub fn is_antenna(self) -> bool {
        matches!(self, FunctionId::Pbm1 | FunctionId::Pbm2 | FunctionId::Pbm3 | FunctionId::Pbm4 | FunctionId::Pbm5)
    }

    /// Default search box per axis for `n_dims` coordinates.
    fn axis_bounds(self, n_dims: usize) -> Vec<(f64, f64)> {
        let uniform = |lo: f64, hi: f64| vec![(lo, hi); n_dims];
        match self {
            FunctionId::Sphere => uniform(-100.0, 100.0),
            FunctionId::ParrottF4 => uniform(0.0, 1.0),
            FunctionId::Sgo | FunctionId::SgoOffset => uniform(-50.0, 50.0),
            FunctionId::GoldsteinPrice => uniform(-2.0, 2.0),
            FunctionId::GoldsteinPriceOffset => uniform(-100.0, 100.0),
            FunctionId::Step | FunctionId::StepOffset => uniform(-100.0, 100.0),
            FunctionId::Schwefel226 => uniform(-500.0, 500.0),
            FunctionId::Colville | FunctionId::ColvilleOffset => uniform(-10.0, 10.0),
            FunctionId::Griewank | FunctionId::GriewankOffset => uniform(-600.0, 600.0),
            FunctionId::Himmelblau => uniform(-6.0, 6.0),
            FunctionId::Pbm1 | FunctionId::Pbm2 | FunctionId::Pbm3 | FunctionId::Pbm4 | FunctionId::Pbm5 => {
                unreachable!("antenna bounds come from the constructed benchmark")
            }
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn normalize(id: &str) -> String {
    id.chars().filter(|c| *c != '_' && *c != '-').flat_map(char::to_uppercase).collect()
}

impl FromStr for FunctionId {
    type Err = ObjectiveError;

    fn from_str(s: &str) -> Result<Self> {
        let key = normalize(s);
        match key.as_str() {
            "GOLDSTEINPRICE" => return Ok(FunctionId::GoldsteinPrice),
            "SPHERE" => return Ok(FunctionId::Sphere),
            _ => {}
        }
        FunctionId::ALL
            .into_iter()
            .find(|id| normalize(id.name()) == key)
            .ok_or_else(|| ObjectiveError::UnknownId(s.to_string()))
    }
}

/// Resolves a name to a registered function.
pub fn lookup(id: &str) -> Result<FunctionId> {
    id.parse()
}

/// Construction options. Fields that do not apply to the chosen function are
/// rejected rather than ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ObjectiveOptions {
    /// Dimension count for configurable functions.
    pub n_dims: Option<usize>,
    /// Element count for the collinear array benchmark.
    pub n_elements: Option<usize>,
    /// Shift of the Parrott F4 peak.
    pub parrott_offset: Option<f64>,
}

#[derive(Debug, Clone)]
enum Kind {
    Sphere,
    Parrott(f64),
    Sgo([f64; 2]),
    GoldsteinPrice([f64; 2]),
    Step(Vec<f64>),
    Schwefel,
    Colville(f64),
    Griewank(f64),
    Himmelblau,
    Antenna(Pbm),
}

/// A constructed objective with its default search box.
///
/// Evaluation is pure, so a shared reference can be used from many threads.
#[derive(Debug, Clone)]
pub struct Registered {
    id: FunctionId,
    space: DecisionSpace,
    kind: Kind,
}

/// A value together with whether the point lay outside the default box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub out_of_bounds: bool,
}

impl Registered {
    pub fn new(id: FunctionId, opts: &ObjectiveOptions) -> Result<Self> {
        let reject = |name: &'static str| {
            Err(ObjectiveError::InvalidOption { name, reason: format!("not applicable to {id}") })
        };
        if opts.parrott_offset.is_some() && id != FunctionId::ParrottF4 {
            return reject("parrott_offset");
        }
        if opts.n_elements.is_some() && id != FunctionId::Pbm5 {
            return reject("n_elements");
        }
        let n_dims = match (id.dims(), opts.n_dims) {
            (Dims::Fixed(n), None) => n,
            (Dims::Fixed(n), Some(m)) if m == n => n,
            (Dims::Fixed(_), Some(_)) => return reject("n_dims"),
            (Dims::Configurable { .. }, Some(0)) => {
                return Err(ObjectiveError::InvalidOption { name: "n_dims", reason: "must be positive".into() })
            }
            (Dims::Configurable { default }, n) => n.unwrap_or(default),
        };

        let kind = match id {
            FunctionId::Sphere => Kind::Sphere,
            FunctionId::ParrottF4 => Kind::Parrott(opts.parrott_offset.unwrap_or(0.0)),
            FunctionId::Sgo => Kind::Sgo([0.0, 0.0]),
            FunctionId::SgoOffset => Kind::Sgo([40.0, 10.0]),
            FunctionId::GoldsteinPrice => Kind::GoldsteinPrice([0.0, 0.0]),
            FunctionId::GoldsteinPriceOffset => Kind::GoldsteinPrice([20.0, -10.0]),
            FunctionId::Step => Kind::Step(vec![0.0; n_dims]),
            FunctionId::StepOffset => Kind::Step(analytic::step_reference_offsets(n_dims)),
            FunctionId::Schwefel226 => Kind::Schwefel,
            FunctionId::Colville => Kind::Colville(0.0),
            FunctionId::ColvilleOffset => Kind::Colville(7.123),
            FunctionId::Griewank => Kind::Griewank(0.0),
            FunctionId::GriewankOffset => Kind::Griewank(75.123),
            FunctionId::Himmelblau => Kind::Himmelblau,
            FunctionId::Pbm1 => Kind::Antenna(Pbm::new(1, 0)?),
            FunctionId::Pbm2 => Kind::Antenna(Pbm::new(2, 0)?),
            FunctionId::Pbm3 => Kind::Antenna(Pbm::new(3, 0)?),
            FunctionId::Pbm4 => Kind::Antenna(Pbm::new(4, 0)?),
            FunctionId::Pbm5 => {
                let n_el = match (opts.n_elements, opts.n_dims) {
                    (Some(e), Some(d)) if d + 1 != e => {
                        return Err(ObjectiveError::InvalidOption {
                            name: "n_dims",
                            reason: format!("{e} elements need {} spacings, got {d}", e - 1),
                        })
                    }
                    (Some(e), _) => e,
                    (None, Some(d)) => d + 1,
                    (None, None) => DEFAULT_COLLINEAR_ELEMENTS,
                };
                Kind::Antenna(Pbm::new(5, n_el)?)
            }
        };
        let bounds = match &kind {
            Kind::Antenna(pbm) => pbm.bounds(),
            _ => id.axis_bounds(n_dims),
        };
        let space = DecisionSpace::new(bounds).expect("registered bounds are valid");
        Ok(Self { id, space, kind })
    }

    pub fn id(&self) -> FunctionId {
        self.id
    }

    pub fn n_dims(&self) -> usize {
        self.space.n_dims()
    }

    /// Default search box.
    pub fn space(&self) -> &DecisionSpace {
        &self.space
    }

    /// The antenna benchmark behind this objective, if any.
    pub fn antenna(&self) -> Option<&Pbm> {
        match &self.kind {
            Kind::Antenna(pbm) => Some(pbm),
            _ => None,
        }
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_dims() {
            return Err(ObjectiveError::Dimension { id: self.id.name(), expected: self.n_dims(), got: x.len() });
        }
        Ok(match &self.kind {
            Kind::Sphere => analytic::sphere(x),
            Kind::Parrott(offset) => analytic::parrott_f4(x[0], *offset),
            Kind::Sgo(offset) => analytic::sgo(x, *offset),
            Kind::GoldsteinPrice(offset) => analytic::goldstein_price(x, *offset),
            Kind::Step(offsets) => analytic::step(x, offsets),
            Kind::Schwefel => analytic::schwefel_226(x),
            Kind::Colville(offset) => analytic::colville(x, *offset),
            Kind::Griewank(offset) => analytic::griewank(x, *offset),
            Kind::Himmelblau => analytic::himmelblau(x),
            Kind::Antenna(pbm) => pbm.directivity(x)?,
        })
    }

    /// Like [`value`](Self::value), also reporting whether `x` lies outside
    /// the default box.
    pub fn evaluate_flagged(&self, x: &[f64]) -> Result<Evaluation> {
        let value = self.value(x)?;
        let out_of_bounds = !self.space.contains(x);
        Ok(Evaluation { value, out_of_bounds })
    }
}

impl Objective for Registered {
    fn evaluate(&mut self, x: &[f64], _ctx: EvalContext) -> Result<f64, BoxError> {
        Ok(self.value(x)?)
    }
}

/// Default search box for a name, including benchmarks that can only be
/// evaluated externally.
pub fn default_bounds(id: FunctionId, opts: &ObjectiveOptions) -> Result<Vec<(f64, f64)>> {
    if id == FunctionId::Pbm4 {
        return Ok(crate::pbm::vee_dipole_bounds());
    }
    Ok(Registered::new(id, opts)?.space().bounds().to_vec())
}

/// Builds an objective by name.
pub fn build(id: &str, opts: &ObjectiveOptions) -> Result<Registered> {
    Registered::new(lookup(id)?, opts)
}

/// Evaluates a named objective with default options.
pub fn evaluate(id: &str, x: &[f64]) -> Result<f64> {
    build(id, &default_options_for(x.len(), id)?)?.value(x)
}

/// Evaluates a named objective with default options and flags points outside
/// its default box.
pub fn evaluate_flagged(id: &str, x: &[f64]) -> Result<Evaluation> {
    build(id, &default_options_for(x.len(), id)?)?.evaluate_flagged(x)
}

// Configurable functions take their dimension from the vector.
fn default_options_for(len: usize, id: &str) -> Result<ObjectiveOptions> {
    let n_dims = match lookup(id)?.dims() {
        Dims::Configurable { .. } => Some(len),
        Dims::Fixed(_) => None,
    };
    Ok(ObjectiveOptions { n_dims, ..Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_forgiving() {
        assert_eq!(lookup("pbm1").unwrap(), FunctionId::Pbm1);
        assert_eq!(lookup("Pbm-1").unwrap(), FunctionId::Pbm1);
        assert_eq!(lookup("ParrottF4").unwrap(), FunctionId::ParrottF4);
        assert_eq!(lookup("schwefel226").unwrap(), FunctionId::Schwefel226);
        assert_eq!(lookup("Goldstein_Price").unwrap(), FunctionId::GoldsteinPrice);
        for id in FunctionId::ALL {
            assert_eq!(lookup(id.name()).unwrap(), id);
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(lookup("rosenbrock"), Err(ObjectiveError::UnknownId(_))));
        assert!(matches!(evaluate("nope", &[0.0]), Err(ObjectiveError::UnknownId(_))));
    }

    #[test]
    fn wrong_length_is_an_error() {
        assert!(matches!(evaluate("GP", &[0.0]), Err(ObjectiveError::Dimension { expected: 2, got: 1, .. })));
    }

    #[test]
    fn inapplicable_options_are_rejected() {
        let opts = ObjectiveOptions { n_dims: Some(3), ..Default::default() };
        assert!(build("GP", &opts).is_err());
        let opts = ObjectiveOptions { n_elements: Some(6), ..Default::default() };
        assert!(build("PBM_1", &opts).is_err());
    }

    #[test]
    fn out_of_bounds_is_flagged_not_refused() {
        let e = evaluate_flagged("GP", &[3.0, 0.0]).unwrap();
        assert!(e.out_of_bounds && e.value.is_finite());
        assert!(!evaluate_flagged("GP", &[0.0, -1.0]).unwrap().out_of_bounds);
    }

    #[test]
    fn pbm4_points_to_external_protocol() {
        assert!(matches!(build("PBM_4", &ObjectiveOptions::default()), Err(ObjectiveError::NeedsExternalSolver)));
    }

    #[test]
    fn collinear_dimension_follows_elements() {
        let opts = ObjectiveOptions { n_elements: Some(10), ..Default::default() };
        assert_eq!(build("PBM_5", &opts).unwrap().n_dims(), 9);
        assert_eq!(build("PBM_5", &ObjectiveOptions::default()).unwrap().n_dims(), 5);
    }
}
