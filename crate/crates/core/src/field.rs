use num_complex::Complex64;

/// Cylindrical space-time coordinates of a field sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coords {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
    pub t: f64,
}

impl Coords {
    pub fn new(rho: f64, phi: f64, z: f64, t: f64) -> Self {
        Coords { rho, phi, z, t }
    }

    /// Axially symmetric point at phi = 0.
    pub fn axial(rho: f64, z: f64, t: f64) -> Self {
        Coords { rho, phi: 0.0, z, t }
    }
}

/// Quality tag attached to a sampled amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleQuality {
    Good,
    /// The expression diverges at this point (e.g. log singularity on axis).
    Divergent,
    /// A quadrature behind the value did not meet its tolerance.
    Unconverged,
}

/// A complex amplitude together with the point it was evaluated at.
#[derive(Debug, Clone, Copy)]
pub struct FieldSample {
    pub coords: Coords,
    pub psi: Complex64,
    pub quality: SampleQuality,
}

impl FieldSample {
    pub fn good(coords: Coords, psi: Complex64) -> Self {
        FieldSample { coords, psi, quality: SampleQuality::Good }
    }

    pub fn divergent(coords: Coords) -> Self {
        FieldSample { coords, psi: Complex64::new(0.0, 0.0), quality: SampleQuality::Divergent }
    }

    pub fn is_good(&self) -> bool {
        self.quality == SampleQuality::Good
    }
}

/// The universal currency between solution constructors and verifiers: an
/// immutable, thread-safe map from space-time points to complex amplitudes.
pub trait FieldEvaluator: Send + Sync {
    fn sample(&self, c: Coords) -> FieldSample;

    /// Amplitude at (rho, z, t) with phi = 0; divergent points come back as
    /// NaN so they cannot be silently consumed.
    fn psi(&self, rho: f64, z: f64, t: f64) -> Complex64 {
        let s = self.sample(Coords::axial(rho, z, t));
        if s.is_good() {
            s.psi
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        }
    }
}

impl<T: FieldEvaluator + ?Sized> FieldEvaluator for &T {
    fn sample(&self, c: Coords) -> FieldSample {
        (**self).sample(c)
    }
}

impl<T: FieldEvaluator + ?Sized> FieldEvaluator for std::sync::Arc<T> {
    fn sample(&self, c: Coords) -> FieldSample {
        (**self).sample(c)
    }
}
