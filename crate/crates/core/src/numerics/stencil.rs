//! Second-order central finite differences on uniform grids, including the
//! cylindrical radial operator with its L'Hopital axis rule
//! (1/rho) d/drho (rho d/drho) -> 2 d^2/drho^2 at rho = 0.

use crate::{LwError, Result};
use num_complex::Complex64;

/// A radial profile sampled uniformly from rho = 0 with step h.
pub struct RadialProfile<'a> {
    pub values: &'a [Complex64],
    pub h: f64,
}

/// Plain second derivative at the interior points (index 1..n-1).
pub fn second_derivative(values: &[Complex64], h: f64) -> Result<Vec<Complex64>> {
    if values.len() < 3 {
        return Err(LwError::Grid("second_derivative needs at least 3 points".into()));
    }
    let h2 = h * h;
    Ok((1..values.len() - 1)
        .map(|i| (values[i + 1] - 2.0 * values[i] + values[i - 1]) / h2)
        .collect())
}

/// Transverse (radial) Laplacian of an axially symmetric profile at indices
/// 0..n-1 (the last point is excluded; one-sided stencils are not used).
/// Index 0 is the axis, handled by the 2 f'' rule with even symmetry.
pub fn transverse_laplacian_profile(p: &RadialProfile) -> Result<Vec<Complex64>> {
    let f = p.values;
    let h = p.h;
    if f.len() < 3 {
        return Err(LwError::Grid("radial Laplacian needs at least 3 points".into()));
    }
    let h2 = h * h;
    let mut out = Vec::with_capacity(f.len() - 1);
    // axis: f(-h) = f(h), so f''(0) = 2 (f1 - f0)/h^2 and lap = 2 f''(0)
    out.push(4.0 * (f[1] - f[0]) / h2);
    for i in 1..f.len() - 1 {
        let rho = i as f64 * h;
        let d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
        let d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
        out.push(d2 + d1 / rho);
    }
    Ok(out)
}

/// The same radial Laplacian applied at a single interior index of a longer
/// profile (used by the PDE residual engine).
pub fn axis_radial_laplacian(f: &[Complex64], i: usize, h: f64) -> Complex64 {
    let h2 = h * h;
    if i == 0 {
        4.0 * (f[1] - f[0]) / h2
    } else {
        let rho = i as f64 * h;
        let d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
        let d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
        d2 + d1 / rho
    }
}
