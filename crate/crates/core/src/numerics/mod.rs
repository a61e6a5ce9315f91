//! Deterministic quadrature, transforms and finite-difference stencils used
//! both as independent oracles and as propagation engines.

mod grid;
mod hankel;
mod quadrature;
mod stencil;

pub use grid::{FieldGrid, GridSpec};
pub use hankel::Hankel0Transform;
pub use quadrature::{
    integrate_complex, integrate_semiinfinite, pairwise_sum, QuadratureResult, QuadratureSpec,
};
pub use stencil::{
    axis_radial_laplacian, second_derivative, transverse_laplacian_profile, RadialProfile,
};
