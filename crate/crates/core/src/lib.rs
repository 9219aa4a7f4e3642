//! Central Force Optimization: a deterministic, gradient-free maximizer that
//! flies a fixed set of probes through a box under a gravity-like attraction
//! toward fitter probes.
//!
//! Each step advances every probe by `a * dt^2 / 2`, pulls probes that left the
//! box back inside with the adaptive repositioning factor, evaluates the
//! objective and recomputes accelerations
//!
//! ```text
//! a_p = G * sum_{k != p} U(M_k - M_p) (M_k - M_p)^alpha (R_k - R_p) / |R_k - R_p|^beta
//! ```
//!
//! There is no randomness in the algorithm itself, so identical inputs give
//! bit-identical [`RunRecord`]s.
//!
//! ```
//! use cfo_core::{run, CfoConfig, DecisionSpace, FnObjective, InitScheme};
//!
//! let space = DecisionSpace::uniform(2, -2.0, 2.0).unwrap();
//! let cfg = CfoConfig::new(8, 100, InitScheme::OnAxis);
//! let record = run(&cfg, &space, FnObjective(|x: &[f64]| -(x[0] - 0.3).powi(2) - x[1].powi(2))).unwrap();
//! assert!(record.best_value > -1e-2);
//! ```

pub mod config;
pub mod diagnostics;
pub mod engine;
pub mod error;
pub mod frep;
pub mod init;
pub mod kinematics;
pub mod matrix;
pub mod noise;
pub mod objective;
pub mod space;

pub use config::{CfoConfig, DetectorConfig, FrepMode, FrepPolicy, HistoryMode, InitScheme, Mitigations};
pub use diagnostics::{best_fitness, d_avg, detect_davg_saturation, detect_fitness_saturation, detect_oscillation, BestFitness};
pub use engine::{run, Engine, RunRecord, RunState, Termination};
pub use error::{BoxError, CfoError};
pub use frep::{saved_slot_index, update_frep, SavedRing};
pub use init::{init_probes, lattice};
pub use kinematics::{advance_positions, cfo_mass, compute_accelerations, retrieve_errant_probes, unit_step};
pub use matrix::ProbeMatrix;
pub use objective::{EvalContext, FnObjective, Objective};
pub use space::DecisionSpace;
