//! Far-field models standing in for a full-wave solver on the PBM antenna
//! benchmarks.
//!
//! Elements are thin dipoles with sinusoidal current; arrays use pattern
//! multiplication. The circular array additionally solves for its terminal
//! currents with induced-EMF mutual impedances, since its closely spaced,
//! individually phased elements load each other strongly. Directivity is
//! `4 pi |F|^2` over the radiated power from a fixed midpoint rule.

pub mod array;
pub mod coupling;
pub mod error;
pub mod pattern;
pub mod quadrature;
pub mod special;
pub mod surrogate;

pub use array::{
    circular_array_pattern, collinear_array_pattern, linear_array_pattern, ArraySpec, Coupling,
};
pub use error::AntennaError;
pub use pattern::{dipole_pattern, Pattern};
pub use quadrature::{directivity, radiated_power, Quadrature};
pub use surrogate::{CircularArraySurrogate, CollinearArraySurrogate, DipoleSurrogate, LinearArraySurrogate};
