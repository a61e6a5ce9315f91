//! Physical parameters, the spectral straight-line constraint E = V p_z + b,
//! and the coordinate/variable transforms every solution family consumes.

use crate::{LwError, Result};

/// The four inputs that fix every kinematic quantity in the crate:
/// hbar, the particle mass, the pulse peak speed V, and the energy
/// intercept b of the spectral straight line E = V p_z + b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalContext {
    pub hbar: f64,
    pub mass: f64,
    pub v: f64,
    pub b: f64,
}

impl PhysicalContext {
    pub fn new(hbar: f64, mass: f64, v: f64, b: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(LwError::Domain(format!("hbar must be > 0, got {hbar}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(LwError::Domain(format!("mass must be > 0, got {mass}")));
        }
        if !(v > 0.0 && v.is_finite()) {
            return Err(LwError::Domain(format!("V must be > 0, got {v}")));
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(LwError::Domain(format!("b must be >= 0, got {b}")));
        }
        Ok(PhysicalContext { hbar, mass, v, b })
    }

    /// Natural units hbar = m = V = 1, b = 0; the default of the test suite
    /// and the CLI.
    pub fn natural() -> Self {
        PhysicalContext { hbar: 1.0, mass: 1.0, v: 1.0, b: 0.0 }
    }

    /// Same context with a different straight-line intercept.
    pub fn with_b(&self, b: f64) -> Result<Self> {
        PhysicalContext::new(self.hbar, self.mass, self.v, b)
    }

    pub fn kinematics(&self) -> KinematicConstants {
        kinematics(self)
    }

    /// Co-moving coordinates for a laboratory point (z, t).
    pub fn comoving(&self, rho: f64, z: f64, t: f64) -> ComovingCoords {
        let k = self.kinematics();
        ComovingCoords {
            zeta: z - self.v * t,
            eta: z - k.v_phase_b * t,
            rho,
            phi: 0.0,
        }
    }
}

/// Derived constants of the straight line E = V p_z + b intersected with the
/// free-particle parabola: the u-transform scale A, offset B, squared
/// transverse-momentum scale P, the spectral window [E_minus, E_plus] of
/// width D = 2A, and the carrier speed v = V + b/(mV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicConstants {
    pub a: f64,
    pub b_const: f64,
    pub p: f64,
    pub d: f64,
    pub e_minus: f64,
    pub e_plus: f64,
    pub v_phase_b: f64,
}

impl KinematicConstants {
    pub fn sqrt_p(&self) -> f64 {
        self.p.sqrt()
    }
}

/// All derived constants as pure functions of the context.
pub fn kinematics(ctx: &PhysicalContext) -> KinematicConstants {
    let m = ctx.mass;
    let v = ctx.v;
    let b = ctx.b;
    let p = m * m * v * v + 2.0 * m * b;
    let a = p.sqrt() * v;
    let b_const = m * v * v + b;
    let root = (1.0 + 2.0 * b / (m * v * v)).sqrt();
    let e_plus = m * v * v * (1.0 + root) + b;
    // E- via B - A rather than a subtractive closed form: identical
    // analytically, and A = m V^2 * root keeps it consistent with D = 2A.
    let e_minus = b_const - a;
    KinematicConstants {
        a,
        b_const,
        p,
        d: e_plus - e_minus,
        e_minus,
        e_plus,
        v_phase_b: v + b / (m * v),
    }
}

/// Transverse momentum on the straight line:
/// p_rho(E) = (1/V) sqrt(-E^2 + (2mV^2 + 2b)E - b^2), for E in [E-, E+].
pub fn p_rho_of_e(ctx: &PhysicalContext, e: f64) -> Result<f64> {
    let k = kinematics(ctx);
    if !(k.e_minus..=k.e_plus).contains(&e) {
        return Err(LwError::Domain(format!(
            "E = {e} outside the allowed interval [{}, {}]",
            k.e_minus, k.e_plus
        )));
    }
    let m = ctx.mass;
    let v = ctx.v;
    let b = ctx.b;
    let radicand = -e * e + (2.0 * m * v * v + 2.0 * b) * e - b * b;
    // Roundoff can push the radicand a hair below zero at the endpoints.
    Ok(radicand.max(0.0).sqrt() / v)
}

/// Longitudinal momentum on the straight line, p_z = (E - b)/V.
/// Negative values are allowed: for b > 0 the low end of the spectral
/// interval always sits below b, so pulse spectra carry a small
/// backward-momentum tail there.
pub fn p_z_of_e(ctx: &PhysicalContext, e: f64) -> Result<f64> {
    let k = kinematics(ctx);
    if !(k.e_minus..=k.e_plus).contains(&e) {
        return Err(LwError::Domain(format!(
            "E = {e} outside the allowed interval [{}, {}]",
            k.e_minus, k.e_plus
        )));
    }
    Ok((e - ctx.b) / ctx.v)
}

/// Map E in [E-, E+] to the normalized variable u in [-1, 1], E = A u + B.
pub fn u_of_e(ctx: &PhysicalContext, e: f64) -> Result<f64> {
    let k = kinematics(ctx);
    if !(k.e_minus..=k.e_plus).contains(&e) {
        return Err(LwError::Domain(format!(
            "E = {e} outside the allowed interval [{}, {}]",
            k.e_minus, k.e_plus
        )));
    }
    Ok(((e - k.b_const) / k.a).clamp(-1.0, 1.0))
}

/// Inverse of [`u_of_e`]: E = A u + B for u in [-1, 1].
pub fn e_of_u(ctx: &PhysicalContext, u: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&u) {
        return Err(LwError::Domain(format!("u = {u} outside [-1, 1]")));
    }
    let k = kinematics(ctx);
    Ok(k.a * u + k.b_const)
}

/// Co-moving longitudinal coordinates zeta = z - Vt and eta = z - vt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComovingCoords {
    pub zeta: f64,
    pub eta: f64,
    pub rho: f64,
    pub phi: f64,
}
