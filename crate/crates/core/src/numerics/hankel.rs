//! Order-0 quasi-discrete Hankel transform on Bessel-zero sampling
//! (Yu / Guizar-Sicairos scheme). Preserves axial symmetry exactly and is
//! near-unitary for fields supported inside the aperture.

use crate::specfun::bessel_j;
use crate::{LwError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Convention: g(k) = int_0^inf f(rho) J0(k rho) rho drho, and back.
pub struct Hankel0Transform {
    n: usize,
    rho_max: f64,
    big_s: f64,         // j_{N+1}
    zeros: Vec<f64>,    // j_1 .. j_N
    j1_sq: Vec<f64>,    // J1(j_n)^2
    kernel: Vec<f64>,   // J0(j_m j_n / S), row-major N x N, symmetric
}

impl Hankel0Transform {
    pub fn new(n: usize, rho_max: f64) -> Result<Self> {
        if n < 8 {
            return Err(LwError::Grid(format!("Hankel transform needs n >= 8, got {n}")));
        }
        if !(rho_max > 0.0) {
            return Err(LwError::Grid(format!("rho_max must be > 0, got {rho_max}")));
        }
        let zeros = bessel_j0_zeros(n + 1)?;
        let big_s = zeros[n];
        let j1_sq: Vec<f64> = zeros[..n]
            .iter()
            .map(|&j| {
                let v = bessel_j(1, j).expect("finite zero");
                v * v
            })
            .collect();
        let mut kernel = vec![0.0; n * n];
        for m in 0..n {
            for nn in m..n {
                let v = bessel_j(0, zeros[m] * zeros[nn] / big_s).expect("finite product");
                kernel[m * n + nn] = v;
                kernel[nn * n + m] = v;
            }
        }
        Ok(Hankel0Transform { n, rho_max, big_s, zeros: zeros[..n].to_vec(), j1_sq, kernel })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Radial sample points rho_n = j_n R / S.
    pub fn radial_nodes(&self) -> Vec<f64> {
        self.zeros.iter().map(|&j| j * self.rho_max / self.big_s).collect()
    }

    /// Spectral sample points k_m = j_m / R.
    pub fn spectral_nodes(&self) -> Vec<f64> {
        self.zeros.iter().map(|&j| j / self.rho_max).collect()
    }

    /// Quadrature weights for int_0^R |f|^2 rho drho on the radial nodes.
    pub fn radial_weights(&self) -> Vec<f64> {
        let r = self.rho_max;
        let s = self.big_s;
        self.j1_sq.iter().map(|&j1| 2.0 * r * r / (s * s * j1)).collect()
    }

    /// Weights for the spectral-side norm sum.
    pub fn spectral_weights(&self) -> Vec<f64> {
        let r = self.rho_max;
        self.j1_sq.iter().map(|&j1| 2.0 / (r * r * j1)).collect()
    }

    /// True if the sampled field has decayed below `frac` of its peak at the
    /// outermost nodes (support contract for accurate round trips).
    pub fn supported(&self, f: &[Complex64], frac: f64) -> bool {
        let peak = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return true;
        }
        let tail = f[self.n - 1].norm().max(f[self.n - 2].norm());
        tail <= frac * peak
    }

    pub fn forward(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply(f, 2.0 * self.rho_max * self.rho_max / (self.big_s * self.big_s))
    }

    pub fn inverse(&self, g: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply(g, 2.0 / (self.rho_max * self.rho_max))
    }

    fn apply(&self, f: &[Complex64], scale: f64) -> Result<Vec<Complex64>> {
        if f.len() != self.n {
            return Err(LwError::Grid(format!(
                "sample length {} does not match transform size {}",
                f.len(),
                self.n
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for m in 0..self.n {
            let row = &self.kernel[m * self.n..(m + 1) * self.n];
            let mut acc = Complex64::new(0.0, 0.0);
            for nn in 0..self.n {
                acc += f[nn] * (row[nn] / self.j1_sq[nn]);
            }
            out[m] = acc * scale;
        }
        Ok(out)
    }
}

/// First `count` zeros of J0, by Newton refinement of the McMahon guess.
pub fn bessel_j0_zeros(count: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::with_capacity(count);
    for k in 1..=count {
        let a = (k as f64 - 0.25) * PI;
        let mut x = a + 1.0 / (8.0 * a) - 124.0 / (3.0 * (8.0 * a).powi(3));
        for _ in 0..50 {
            let f = bessel_j(0, x)?;
            let df = -bessel_j(1, x)?;
            let step = f / df;
            x -= step;
            if step.abs() < 1e-15 * x {
                break;
            }
        }
        zeros.push(x);
    }
    Ok(zeros)
}
