//! Python bindings: physical context, the solution-family constructors,
//! grid sampling and the numerical verification oracles.

use lwschro::exact::{
    fourier_coefficients, ExponentialPulse, FourierElement, SeriesPulse,
};
use lwschro::finite_energy::{norm_and_depth, FiniteEnergyPulse, WSpectrum};
use lwschro::numerics::{FieldGrid, GridSpec, QuadratureSpec};
use lwschro::paraxial::{
    width_measurements, ParaxialPulse, ParaxialSpectrum, SpectrumShape,
};
use lwschro::potential::{train_with_offset, Branch, HarmonicGuide, TrainTerm};
use lwschro::verify::{
    free_propagate, rigid_translation_check, schrodinger_residual,
};
use lwschro::{beams, errata, Complex64, Coords, FieldEvaluator, LwError};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::sync::Arc;

fn err(e: LwError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Physical constants and the spectral line E = V p_z + b.
#[pyclass(name = "PhysicalContext")]
#[derive(Clone)]
struct PyContext {
    inner: lwschro::PhysicalContext,
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (hbar=1.0, mass=1.0, v=1.0, b=0.0))]
    fn new(hbar: f64, mass: f64, v: f64, b: f64) -> PyResult<Self> {
        Ok(PyContext {
            inner: lwschro::PhysicalContext::new(hbar, mass, v, b).map_err(err)?,
        })
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.inner.hbar
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass
    }

    #[getter]
    fn v(&self) -> f64 {
        self.inner.v
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }

    /// Derived spectral-interval constants as a dict:
    /// A, B, P, D, E_minus, E_plus, v_phase_b.
    fn kinematics(&self, py: Python<'_>) -> PyResult<PyObject> {
        let k = self.inner.kinematics();
        let d = pyo3::types::PyDict::new_bound(py);
        d.set_item("A", k.a)?;
        d.set_item("B", k.b_const)?;
        d.set_item("P", k.p)?;
        d.set_item("D", k.d)?;
        d.set_item("E_minus", k.e_minus)?;
        d.set_item("E_plus", k.e_plus)?;
        d.set_item("v_phase_b", k.v_phase_b)?;
        Ok(d.into())
    }

    fn __repr__(&self) -> String {
        format!(
            "PhysicalContext(hbar={}, mass={}, v={}, b={})",
            self.inner.hbar, self.inner.mass, self.inner.v, self.inner.b
        )
    }
}

/// A constructed localized solution: a map (rho, z, t) -> complex amplitude.
#[pyclass(name = "Field")]
#[derive(Clone)]
struct PyField {
    evaluator: Arc<dyn FieldEvaluator>,
    ctx: lwschro::PhysicalContext,
    family: String,
}

#[pymethods]
impl PyField {
    /// Amplitude at one point (NaN at documented divergences).
    fn psi(&self, rho: f64, z: f64, t: f64) -> Complex64 {
        self.evaluator.psi(rho, z, t)
    }

    /// |psi|^2 at one point.
    fn intensity(&self, rho: f64, z: f64, t: f64) -> f64 {
        self.evaluator.psi(rho, z, t).norm_sqr()
    }

    /// Sample on a co-moving lattice (z = zeta + V t): returns a list of
    /// rows over rho, each a list of complex values over zeta.
    #[pyo3(signature = (rho_max, n_rho, zeta_min, zeta_max, n_zeta, t=0.0))]
    fn grid(
        &self,
        rho_max: f64,
        n_rho: usize,
        zeta_min: f64,
        zeta_max: f64,
        n_zeta: usize,
        t: f64,
    ) -> PyResult<Vec<Vec<Complex64>>> {
        let grid = self.sample_grid(rho_max, n_rho, zeta_min, zeta_max, n_zeta, t)?;
        Ok((0..n_rho)
            .map(|ir| (0..n_zeta).map(|iz| grid.value(0, ir, iz)).collect())
            .collect())
    }

    /// Finite-difference residual of the governing equation on a grid:
    /// dict with max_residual, l2_residual and convergence_order.
    #[pyo3(signature = (rho_max, n_rho, zeta_min, zeta_max, n_zeta, t=0.0))]
    fn residual(
        &self,
        py: Python<'_>,
        rho_max: f64,
        n_rho: usize,
        zeta_min: f64,
        zeta_max: f64,
        n_zeta: usize,
        t: f64,
    ) -> PyResult<PyObject> {
        let mut spec =
            GridSpec::new(rho_max, n_rho, zeta_min, zeta_max, n_zeta).map_err(err)?;
        spec.t_samples = vec![t];
        let report =
            schrodinger_residual(self.evaluator.as_ref(), &self.ctx, &spec, None)
                .map_err(err)?;
        let d = pyo3::types::PyDict::new_bound(py);
        d.set_item("max_residual", report.max_residual)?;
        d.set_item("l2_residual", report.l2_residual)?;
        d.set_item("convergence_order", report.convergence_order)?;
        Ok(d.into())
    }

    /// Max drift of |psi| along z = V t over a probe set.
    fn translation_drift(&self) -> PyResult<f64> {
        let probes = [
            Coords::axial(0.3, 0.2, 0.0),
            Coords::axial(1.1, -0.7, 0.0),
            Coords::axial(2.3, 1.4, 0.1),
        ];
        let deltas = [0.25, 0.5, 1.0, 2.0];
        rigid_translation_check(self.evaluator.as_ref(), self.ctx.v, &probes, &deltas)
            .map_err(err)
    }

    /// Propagate the t = 0 slab freely by dt and return the relative L2
    /// distance to the evaluator's own samples at t = dt.
    fn propagation_distance(
        &self,
        rho_max: f64,
        n_rho: usize,
        zeta_min: f64,
        zeta_max: f64,
        n_zeta: usize,
        dt: f64,
    ) -> PyResult<f64> {
        let initial = self.sample_grid(rho_max, n_rho, zeta_min, zeta_max, n_zeta, 0.0)?;
        let evolved = free_propagate(&self.ctx, &initial, dt).map_err(err)?;
        let mut target_spec = initial.spec.clone();
        target_spec.t_samples = vec![dt];
        target_spec.zeta_min -= self.ctx.v * dt;
        target_spec.zeta_max -= self.ctx.v * dt;
        let target = FieldGrid::sample(&target_spec, self.ctx.v, |c| {
            self.evaluator.sample(c)
        })
        .map_err(err)?;
        evolved.rel_l2_distance(&target).map_err(err)
    }

    /// Measured 1/e (rho) and 1/e^2 (zeta) intensity half-widths at the
    /// origin.
    fn widths(&self) -> PyResult<(f64, f64)> {
        width_measurements(&self.evaluator.as_ref(), &self.ctx).map_err(err)
    }

    #[getter]
    fn family(&self) -> &str {
        &self.family
    }

    fn __repr__(&self) -> String {
        format!("Field(family={:?})", self.family)
    }
}

impl PyField {
    fn sample_grid(
        &self,
        rho_max: f64,
        n_rho: usize,
        zeta_min: f64,
        zeta_max: f64,
        n_zeta: usize,
        t: f64,
    ) -> PyResult<FieldGrid> {
        let mut spec =
            GridSpec::new(rho_max, n_rho, zeta_min, zeta_max, n_zeta).map_err(err)?;
        spec.t_samples = vec![t];
        FieldGrid::sample(&spec, self.ctx.v, |c| self.evaluator.sample(c)).map_err(err)
    }

    fn wrap<E: FieldEvaluator + 'static>(
        evaluator: E,
        ctx: lwschro::PhysicalContext,
        family: &str,
    ) -> Self {
        PyField {
            evaluator: Arc::new(evaluator),
            ctx,
            family: family.to_string(),
        }
    }
}

/// Nondiffracting Bessel beam at energy E and axial momentum p_z.
#[pyfunction]
#[pyo3(signature = (ctx, energy, p_z, order=0))]
fn bessel_beam(ctx: &PyContext, energy: f64, p_z: f64, order: i32) -> PyResult<PyField> {
    let params =
        beams::BesselBeamParams::new(ctx.inner.clone(), energy, p_z, order).map_err(err)?;
    Ok(PyField::wrap(beams::bessel_beam(params), ctx.inner.clone(), "beam"))
}

/// Well-collimated pulse; family is "g1", "invp", "i0" or "j0".
#[pyfunction]
#[pyo3(signature = (ctx, family, alpha, s=None))]
fn paraxial_pulse(
    ctx: &PyContext,
    family: &str,
    alpha: f64,
    s: Option<f64>,
) -> PyResult<PyField> {
    let need_s = || {
        s.ok_or_else(|| {
            PyValueError::new_err(format!("the {family} family needs the modulation length s"))
        })
    };
    let shape = match family {
        "g1" => SpectrumShape::Gaussian,
        "invp" => SpectrumShape::InversePower,
        "i0" => SpectrumShape::GaussianTimesI0 { s: need_s()? },
        "j0" => SpectrumShape::GaussianTimesJ0 { s: need_s()? },
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown paraxial family {family:?} (expected g1, invp, i0 or j0)"
            )))
        }
    };
    let spectrum = ParaxialSpectrum::new(shape, alpha).map_err(err)?;
    let pulse = ParaxialPulse::new(ctx.inner.clone(), spectrum, 1.0).map_err(err)?;
    Ok(PyField::wrap(pulse, ctx.inner.clone(), "paraxial"))
}

/// Single Fourier element of the spectral interval.
#[pyfunction]
#[pyo3(signature = (ctx, n, a_n=Complex64::new(1.0, 0.0)))]
fn exact_element(ctx: &PyContext, n: i32, a_n: Complex64) -> PyResult<PyField> {
    let element = FourierElement::new(ctx.inner.clone(), n, a_n, 1.0).map_err(err)?;
    Ok(PyField::wrap(element, ctx.inner.clone(), "exact-element"))
}

/// Exponential-spectrum exact pulse; a = 0 is the uniform-spectrum
/// ball-like pulse.
#[pyfunction]
#[pyo3(signature = (ctx, a=0.0, s0=1.0))]
fn mackinnon_pulse(ctx: &PyContext, a: f64, s0: f64) -> PyResult<PyField> {
    let pulse = ExponentialPulse::new(ctx.inner.clone(), a, s0, 1.0).map_err(err)?;
    Ok(PyField::wrap(pulse, ctx.inner.clone(), "exact-mackinnon"))
}

/// Truncated Fourier series of the exponential spectrum.
#[pyfunction]
#[pyo3(signature = (ctx, a=0.0, s0=1.0, n_trunc=8))]
fn series_pulse(ctx: &PyContext, a: f64, s0: f64, n_trunc: u32) -> PyResult<PyField> {
    let e_plus = ctx.inner.kinematics().e_plus;
    let spectrum = move |e: f64| Complex64::new(s0 * (a * (e - e_plus)).exp(), 0.0);
    let coefficients =
        fourier_coefficients(&ctx.inner, spectrum, n_trunc, &QuadratureSpec::default())
            .map_err(err)?;
    let pulse = SeriesPulse::new(ctx.inner.clone(), coefficients, 1.0).map_err(err)?;
    Ok(PyField::wrap(pulse, ctx.inner.clone(), "exact-series"))
}

/// Square-integrable pulse from a Gaussian spectrum in w = sqrt(P).
#[pyfunction]
#[pyo3(signature = (ctx, w0, q_w, a=0.0, s0=1.0))]
fn finite_energy_pulse(
    ctx: &PyContext,
    w0: f64,
    q_w: f64,
    a: f64,
    s0: f64,
) -> PyResult<PyField> {
    let wspec = WSpectrum::new(&ctx.inner, w0, q_w, a, s0).map_err(err)?;
    let pulse = FiniteEnergyPulse::new(
        ctx.inner.clone(),
        wspec,
        QuadratureSpec::default(),
        1.0,
    );
    Ok(PyField::wrap(pulse, ctx.inner.clone(), "finite-energy"))
}

/// (t = 0 squared L2 norm, depth of field) of the finite-energy pulse.
#[pyfunction]
#[pyo3(signature = (ctx, w0, q_w, a=0.0, s0=1.0))]
fn finite_energy_norm_and_depth(
    ctx: &PyContext,
    w0: f64,
    q_w: f64,
    a: f64,
    s0: f64,
) -> PyResult<(f64, f64)> {
    let wspec = WSpectrum::new(&ctx.inner, w0, q_w, a, s0).map_err(err)?;
    norm_and_depth(&ctx.inner, &wspec, &QuadratureSpec::default()).map_err(err)
}

/// Admissible guided modes of the harmonic guide: list of dicts with
/// n, Lambda, p_z_plus, p_z_minus.
#[pyfunction]
fn guided_modes(py: Python<'_>, ctx: &PyContext, omega: f64) -> PyResult<PyObject> {
    let guide = HarmonicGuide::new(ctx.inner.clone(), omega).map_err(err)?;
    let modes = guide.solve_modes().map_err(err)?;
    let list = pyo3::types::PyList::empty_bound(py);
    for mode in modes {
        let d = pyo3::types::PyDict::new_bound(py);
        d.set_item("n", mode.n)?;
        d.set_item("Lambda", mode.lambda())?;
        d.set_item("p_z_plus", mode.p_z(Branch::Plus))?;
        d.set_item("p_z_minus", mode.p_z(Branch::Minus))?;
        list.append(d)?;
    }
    Ok(list.into())
}

/// Pulse train in a transverse harmonic guide; terms are
/// (n, "plus"|"minus", coefficient) tuples, b is taken from the context.
#[pyfunction]
fn pulse_train(
    ctx: &PyContext,
    omega: f64,
    terms: Vec<(u32, String, Complex64)>,
) -> PyResult<PyField> {
    let guide = HarmonicGuide::new(ctx.inner.clone(), omega).map_err(err)?;
    let parsed: Vec<TrainTerm> = terms
        .into_iter()
        .map(|(n, branch, coefficient)| {
            let branch = match branch.as_str() {
                "plus" | "+" => Ok(Branch::Plus),
                "minus" | "-" => Ok(Branch::Minus),
                other => Err(PyValueError::new_err(format!(
                    "branch must be plus or minus, got {other:?}"
                ))),
            }?;
            Ok(TrainTerm::new(n, branch, coefficient))
        })
        .collect::<PyResult<_>>()?;
    let train = train_with_offset(&guide, &parsed, ctx.inner.b).map_err(err)?;
    Ok(PyField::wrap(train, ctx.inner.clone(), "potential-train"))
}

/// The ledger of documented closed-form corrections with recomputed
/// numerical evidence.
#[pyfunction]
fn errata_report() -> PyResult<String> {
    errata::report().map_err(err)
}

#[pymodule(name = "lwschro")]
fn bindings(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(bessel_beam, m)?)?;
    m.add_function(wrap_pyfunction!(paraxial_pulse, m)?)?;
    m.add_function(wrap_pyfunction!(exact_element, m)?)?;
    m.add_function(wrap_pyfunction!(mackinnon_pulse, m)?)?;
    m.add_function(wrap_pyfunction!(series_pulse, m)?)?;
    m.add_function(wrap_pyfunction!(finite_energy_pulse, m)?)?;
    m.add_function(wrap_pyfunction!(finite_energy_norm_and_depth, m)?)?;
    m.add_function(wrap_pyfunction!(guided_modes, m)?)?;
    m.add_function(wrap_pyfunction!(pulse_train, m)?)?;
    m.add_function(wrap_pyfunction!(errata_report, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
