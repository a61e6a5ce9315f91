//! Localized ("soliton-like") solutions to the free-particle Schrodinger
//! equation: Bessel beams, paraxial pulses, exact sinc-shaped pulses,
//! finite-energy superpositions and potential-guided pulse trains, together
//! with the numerical machinery (quadrature, Hankel transforms, finite
//! differences, spectral propagation) used to verify every closed form
//! against an independent oracle.

pub mod beams;
pub mod errata;
pub mod error;
pub mod exact;
pub mod field;
pub mod finite_energy;
pub mod io;
pub mod kinematics;
pub mod numerics;
pub mod paraxial;
pub mod potential;
pub mod specfun;
pub mod verify;

pub use error::LwError;
pub use field::{Coords, FieldEvaluator, FieldSample, SampleQuality};
pub use kinematics::{ComovingCoords, KinematicConstants, PhysicalContext};

/// Crate result alias.
pub type Result<T> = std::result::Result<T, LwError>;

pub use num_complex::Complex64;
