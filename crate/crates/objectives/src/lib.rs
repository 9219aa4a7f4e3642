//! Objectives for the CFO engine, all to be maximized.
//!
//! The registry covers classic analytic test functions, the PBM antenna
//! benchmarks on their far-field surrogates, additive Gaussian noise and a
//! bridge to evaluators running in a separate process.
//!
//! ```
//! use cfo_objectives::registry;
//!
//! assert_eq!(registry::evaluate("GP", &[0.0, -1.0]).unwrap(), -3.0);
//! assert_eq!(registry::evaluate("himmelblau", &[3.0, 2.0]).unwrap(), 200.0);
//! ```

pub mod analytic;
pub mod error;
pub mod external;
pub mod noisy;
pub mod pbm;
pub mod registry;

pub use error::{ExternalError, ObjectiveError};
pub use external::{ExternalCommand, ExternalObjective};
pub use noisy::Noisy;
pub use pbm::Pbm;
pub use registry::{build, default_bounds, evaluate, evaluate_flagged, lookup, Dims, Evaluation, FunctionId, ObjectiveOptions, Registered};
