//! Monochromatic Bessel-beam solutions and the annular-slit/lens parameter
//! arithmetic for producing them.

use crate::field::{Coords, FieldEvaluator, FieldSample};
use crate::kinematics::PhysicalContext;
use crate::specfun::bessel_j;
use crate::{Complex64, LwError, Result};

/// Parameters of a single Bessel beam: energy E, longitudinal momentum p_z
/// (forward, with E >= p_z^2/2m so the transverse momentum is real), and
/// azimuthal order n.
#[derive(Debug, Clone, Copy)]
pub struct BesselBeamParams {
    pub ctx: PhysicalContext,
    pub energy: f64,
    pub p_z: f64,
    pub order: i32,
}

impl BesselBeamParams {
    pub fn new(ctx: PhysicalContext, energy: f64, p_z: f64, order: i32) -> Result<Self> {
        if order < 0 {
            return Err(LwError::Argument(format!("beam order must be >= 0, got {order}")));
        }
        if p_z < 0.0 {
            return Err(LwError::Domain(format!(
                "p_z = {p_z} < 0: forward-traveling beams require p_z >= 0"
            )));
        }
        let bound = p_z * p_z / (2.0 * ctx.mass);
        if energy < bound - 1e-12 * bound.abs() {
            return Err(LwError::Domain(format!(
                "E = {energy} < p_z^2/(2m) = {bound}: transverse momentum would be imaginary \
                 (evanescent modes are excluded)"
            )));
        }
        Ok(BesselBeamParams { ctx, energy, p_z, order })
    }

    /// p_rho = sqrt(2mE - p_z^2) >= 0.
    pub fn p_rho(&self) -> f64 {
        (2.0 * self.ctx.mass * self.energy - self.p_z * self.p_z).max(0.0).sqrt()
    }
}

/// psi = J_n(rho p_rho/hbar) exp(i(z p_z - E t)/hbar + i n phi).
pub struct BesselBeam {
    params: BesselBeamParams,
    p_rho: f64,
}

impl BesselBeam {
    pub fn new(params: BesselBeamParams) -> Self {
        let p_rho = params.p_rho();
        BesselBeam { params, p_rho }
    }

    pub fn params(&self) -> &BesselBeamParams {
        &self.params
    }
}

pub fn bessel_beam(params: BesselBeamParams) -> BesselBeam {
    BesselBeam::new(params)
}

impl FieldEvaluator for BesselBeam {
    fn sample(&self, c: Coords) -> FieldSample {
        let hbar = self.params.ctx.hbar;
        let radial = bessel_j(self.params.order, c.rho * self.p_rho / hbar)
            .expect("order validated at construction");
        let phase = (c.z * self.params.p_z - self.params.energy * c.t) / hbar
            + self.params.order as f64 * c.phi;
        FieldSample::good(c, Complex64::from_polar(1.0, phase) * radial)
    }
}

/// Momentum triple (p, p_rho, p_z) for a beam produced by an annular slit of
/// radius r in the focal plane of a lens of focal distance f, treating the
/// small-angle rows p = sqrt(2mE), p_rho = (r/f) p, p_z = p sqrt(1 - r^2/f^2)
/// as exact definitions (so p_rho^2 + p_z^2 = p^2 identically).
pub fn slit_parameters(ctx: &PhysicalContext, r: f64, f: f64, energy: f64) -> Result<(f64, f64, f64)> {
    if !(f > 0.0) || r < 0.0 || r >= f {
        return Err(LwError::Geometry(format!(
            "slit radius must satisfy 0 <= r < f (got r = {r}, f = {f})"
        )));
    }
    if energy <= 0.0 {
        return Err(LwError::Domain(format!("slit energy must be > 0, got {energy}")));
    }
    let p = (2.0 * ctx.mass * energy).sqrt();
    let ratio = r / f;
    let p_rho = ratio * p;
    let p_z = p * (1.0 - ratio * ratio).sqrt();
    Ok((p, p_rho, p_z))
}
