//! Rectangular sampling lattices in (rho, zeta) x t and the sampled field.

use crate::field::{FieldSample, SampleQuality};
use crate::{Coords, LwError, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sampling lattice: uniform in rho on [0, rho_max], uniform in zeta on
/// [zeta_min, zeta_max], one slab per entry of `t_samples`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub rho_max: f64,
    pub n_rho: usize,
    pub zeta_min: f64,
    pub zeta_max: f64,
    pub n_zeta: usize,
    #[serde(default = "default_t_samples")]
    pub t_samples: Vec<f64>,
    #[serde(default)]
    pub phi: f64,
}

fn default_t_samples() -> Vec<f64> {
    vec![0.0]
}

impl GridSpec {
    pub fn new(rho_max: f64, n_rho: usize, zeta_min: f64, zeta_max: f64, n_zeta: usize) -> Result<Self> {
        let spec = GridSpec {
            rho_max,
            n_rho,
            zeta_min,
            zeta_max,
            n_zeta,
            t_samples: vec![0.0],
            phi: 0.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_rho < 8 || self.n_zeta < 8 {
            return Err(LwError::Grid(format!(
                "grid needs n_rho, n_zeta >= 8 (got {}, {})",
                self.n_rho, self.n_zeta
            )));
        }
        if !(self.rho_max > 0.0) {
            return Err(LwError::Grid(format!("rho_max must be > 0, got {}", self.rho_max)));
        }
        if !(self.zeta_max > self.zeta_min) {
            return Err(LwError::Grid(format!(
                "zeta_max must exceed zeta_min (got [{}, {}])",
                self.zeta_min, self.zeta_max
            )));
        }
        if self.t_samples.is_empty() {
            return Err(LwError::Grid("at least one t sample required".into()));
        }
        Ok(())
    }

    pub fn rho_values(&self) -> Vec<f64> {
        (0..self.n_rho).map(|i| self.rho_step() * i as f64).collect()
    }

    pub fn zeta_values(&self) -> Vec<f64> {
        (0..self.n_zeta).map(|j| self.zeta_min + self.zeta_step() * j as f64).collect()
    }

    pub fn rho_step(&self) -> f64 {
        self.rho_max / (self.n_rho - 1) as f64
    }

    pub fn zeta_step(&self) -> f64 {
        (self.zeta_max - self.zeta_min) / (self.n_zeta - 1) as f64
    }
}

/// Sampled complex field with provenance metadata. Storage is row-major
/// with zeta innermost: index = (it * n_rho + i_rho) * n_zeta + i_zeta.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
    pub metadata: BTreeMap<String, String>,
}

impl FieldGrid {
    /// Fill from an evaluator given the peak speed V (z = zeta + V t).
    /// Parallel over points; indexed writes keep the result independent of
    /// the thread count.
    pub fn sample<F>(spec: &GridSpec, v: f64, eval: F) -> Result<FieldGrid>
    where
        F: Fn(Coords) -> FieldSample + Sync,
    {
        spec.validate()?;
        let rhos = spec.rho_values();
        let zetas = spec.zeta_values();
        let nt = spec.t_samples.len();
        let total = nt * spec.n_rho * spec.n_zeta;
        let samples: Vec<FieldSample> = (0..total)
            .into_par_iter()
            .map(|idx| {
                let it = idx / (spec.n_rho * spec.n_zeta);
                let rest = idx % (spec.n_rho * spec.n_zeta);
                let ir = rest / spec.n_zeta;
                let iz = rest % spec.n_zeta;
                let t = spec.t_samples[it];
                let zeta = zetas[iz];
                eval(Coords::new(rhos[ir], spec.phi, zeta + v * t, t))
            })
            .collect();
        let mut metadata = BTreeMap::new();
        let n_div = samples.iter().filter(|s| s.quality == SampleQuality::Divergent).count();
        let n_unc = samples.iter().filter(|s| s.quality == SampleQuality::Unconverged).count();
        if n_div > 0 {
            metadata.insert("divergent_samples".into(), n_div.to_string());
        }
        if n_unc > 0 {
            metadata.insert("unconverged_samples".into(), n_unc.to_string());
        }
        for s in &samples {
            if s.is_good() && (!s.psi.re.is_finite() || !s.psi.im.is_finite()) {
                return Err(LwError::NonFinite {
                    location: format!("grid point (rho={}, z={}, t={})", s.coords.rho, s.coords.z, s.coords.t),
                });
            }
        }
        Ok(FieldGrid { spec: spec.clone(), values: samples.into_iter().map(|s| s.psi).collect(), metadata })
    }

    pub fn index(&self, it: usize, ir: usize, iz: usize) -> usize {
        (it * self.spec.n_rho + ir) * self.spec.n_zeta + iz
    }

    pub fn value(&self, it: usize, ir: usize, iz: usize) -> Complex64 {
        self.values[self.index(it, ir, iz)]
    }

    /// Relative L2 distance to another grid of identical shape.
    pub fn rel_l2_distance(&self, other: &FieldGrid) -> Result<f64> {
        if self.values.len() != other.values.len() {
            return Err(LwError::Grid("grids have different shapes".into()));
        }
        let num: f64 = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = self.values.iter().map(|a| a.norm_sqr()).sum();
        Ok((num / den.max(1e-300)).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GridSpec::new(5.0, 4, -1.0, 1.0, 16).is_err());
        assert!(GridSpec::new(5.0, 16, 1.0, -1.0, 16).is_err());
        assert!(GridSpec::new(-1.0, 16, -1.0, 1.0, 16).is_err());
        assert!(GridSpec::new(5.0, 16, -1.0, 1.0, 16).is_ok());
    }

    #[test]
    fn sample_layout_and_determinism() {
        let spec = GridSpec::new(2.0, 9, -1.0, 1.0, 9).unwrap();
        let fill = |c: Coords| FieldSample::good(c, Complex64::new(c.rho, c.z));
        let g1 = FieldGrid::sample(&spec, 1.0, fill).unwrap();
        let g2 = FieldGrid::sample(&spec, 1.0, fill).unwrap();
        assert_eq!(g1.values, g2.values);
        // zeta innermost, t = 0 so z = zeta
        assert_eq!(g1.value(0, 0, 0), Complex64::new(0.0, -1.0));
        assert_eq!(g1.value(0, 8, 8), Complex64::new(2.0, 1.0));
    }
}
