//! Ledger of closed-form corrections: places where the published derivations
//! behind this library are misprinted or ambiguous, what this crate
//! implements instead, and a freshly computed numerical demonstration for
//! each (the independent quadrature oracles are always the arbiter).

use crate::exact::{fourier_element, superposition_quadrature};
use crate::finite_energy::{closed_form_report, WSpectrum};
use crate::kinematics::PhysicalContext;
use crate::numerics::QuadratureSpec;
use crate::paraxial::{
    exact_integrand_quadrature, paraxial_quadrature, paraxial_quadrature_difference,
    ParaxialPulse, ParaxialSpectrum, SpectrumShape,
};
use crate::specfun::{ein_complex, exp_integral_e1_complex};
use crate::{Complex64, FieldEvaluator, Result};

/// One documented correction: what the printed form says, what is
/// implemented, and a closure that recomputes the deciding numbers.
pub struct ErratumEntry {
    pub id: &'static str,
    pub summary: &'static str,
    pub resolution: &'static str,
    pub evidence: fn() -> Result<String>,
}

/// All active corrections, in the order they arise in the construction
/// (paraxial phase, paraxial Gaussian closed form, modulated-spectrum
/// argument, inverse-power regularization, series phase placement,
/// finite-energy closed form).
pub fn entries() -> &'static [ErratumEntry] {
    &ENTRIES
}

/// Identifiers of the active corrections, for export metadata.
pub fn flags() -> Vec<String> {
    ENTRIES.iter().map(|e| e.id.to_string()).collect()
}

/// Render the full ledger, recomputing the numerical evidence.
pub fn report() -> Result<String> {
    let mut out = String::new();
    for e in &ENTRIES {
        out.push_str(&format!(
            "[{}]\n  issue:      {}\n  resolution: {}\n  evidence:   {}\n\n",
            e.id,
            e.summary,
            e.resolution,
            (e.evidence)()?
        ));
    }
    Ok(out)
}

static ENTRIES: [ErratumEntry; 6] = [
    ErratumEntry {
        id: "paraxial-phase-sign",
        summary: "The quadratic phase of the well-collimated expansion is \
                  printed with a plus sign, but expanding sqrt(1 - p^2/(mV)^2) \
                  to second order gives e^{-i p^2 zeta/(2 hbar m V)}.",
        resolution: "PARAXIAL_PHASE_SIGN = -1; the non-expanded reference \
                     integral over the full momentum interval arbitrates.",
        evidence: phase_sign_evidence,
    },
    ErratumEntry {
        id: "paraxial-gaussian-exponent",
        summary: "The Gaussian-spectrum closed form is printed with the \
                  transverse exponent -rho^2/(4 hbar (q hbar - i zeta/(m V))), \
                  inconsistent with the complex width Q it defines next to it.",
        resolution: "Implemented as e^{-rho^2/(4Q)} with \
                     Q = hbar (q hbar + i zeta/(2 m V)).",
        evidence: gaussian_exponent_evidence,
    },
    ErratumEntry {
        id: "paraxial-closed-form-prefactors",
        summary: "The modulated-Gaussian closed forms are printed with \
                  prefactors q hbar/(2Q) and q/(2Q), which are dimensionally \
                  inconsistent with the plain-Gaussian result; the printed \
                  Bessel-modulation arguments also mix s p and s p/hbar.",
        resolution: "Both prefactors are q hbar^2/(2Q); both modulations take \
                     the argument s p/hbar.",
        evidence: modulated_spectrum_evidence,
    },
    ErratumEntry {
        id: "inverse-power-regularization",
        summary: "The 1/p-spectrum superposition is quoted as an incomplete \
                  gamma function gamma(0, rho^2/4Q), but the defining integral \
                  diverges logarithmically at p = 0 for every point, and the \
                  printed difference rule (1/2)[E1(x1) - E1(x2)] misses a \
                  log(rho2/rho1) term.",
        resolution: "Only differences are physical; the regularized finite \
                     part -(1/2)[Ein(rho^2/4Q) + ln(Q/(q hbar^2))] reproduces \
                     every difference, since (1/2)(Ein(x2) - Ein(x1)) = \
                     ln(rho2/rho1) - (1/2)(E1(x2) - E1(x1)).",
        evidence: inverse_power_evidence,
    },
    ErratumEntry {
        id: "series-element-phase-placement",
        summary: "The constant per-term phase e^{i 2 pi n B/D} of the Fourier \
                  elements is attached to different factors in different \
                  statements of the series.",
        resolution: "Carried as a single constant factor per element; any \
                     placement differs by a global constant only, fixed by \
                     matching the spectral quadrature.",
        evidence: series_phase_evidence,
    },
    ErratumEntry {
        id: "finite-energy-closed-form",
        summary: "The complementary-error-function closed form for the \
                  Gaussian-in-sqrt(P) superposition is stated in a mixed \
                  dimensional form and degrades for tight spectra.",
        resolution: "Transcribed verbatim and reported side by side with the \
                     w-quadrature, which remains the authoritative evaluator.",
        evidence: finite_energy_evidence,
    },
];

fn quad_spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-11, max_subdivisions: 4000 }
}

fn phase_sign_evidence() -> Result<String> {
    use crate::paraxial::paraxial_quadrature_signed;
    let ctx = PhysicalContext::natural();
    let spectrum = ParaxialSpectrum::new(SpectrumShape::Gaussian, 1000.0)?;
    let spec = quad_spec();
    let (rho, zeta) = (0.3, 0.5);
    let exact = exact_integrand_quadrature(&ctx, &spectrum, rho, zeta, &spec)?.value;
    let minus = paraxial_quadrature_signed(&ctx, &spectrum, rho, zeta, &spec, -1.0)?.value;
    let plus = paraxial_quadrature_signed(&ctx, &spectrum, rho, zeta, &spec, 1.0)?.value;
    Ok(format!(
        "alpha=1000, (rho,zeta)=({rho},{zeta}): |minus-sign - reference| = {:.2e}, \
         |plus-sign - reference| = {:.2e}",
        (minus - exact).norm(),
        (plus - exact).norm()
    ))
}

fn gaussian_exponent_evidence() -> Result<String> {
    let ctx = PhysicalContext::natural();
    let spectrum = ParaxialSpectrum::new(SpectrumShape::Gaussian, 100.0)?;
    let pulse = ParaxialPulse::new(ctx, spectrum.clone(), 1.0)?;
    let (rho, zeta) = (1.0, 0.7);
    let closed = pulse.psi(rho, zeta, 0.0);
    let quad = paraxial_quadrature(&ctx, &spectrum, rho, zeta, &quad_spec())?.value;
    Ok(format!(
        "alpha=100, (rho,zeta)=({rho},{zeta}): |closed - quadrature|/|quadrature| = {:.2e}",
        (closed - quad).norm() / quad.norm()
    ))
}

fn modulated_spectrum_evidence() -> Result<String> {
    let ctx = PhysicalContext::natural();
    let spectrum =
        ParaxialSpectrum::new(SpectrumShape::GaussianTimesI0 { s: 0.5 }, 100.0)?;
    let pulse = ParaxialPulse::new(ctx, spectrum.clone(), 1.0)?;
    let (rho, zeta) = (0.8, 0.4);
    let closed = pulse.psi(rho, zeta, 0.0);
    let quad = paraxial_quadrature(&ctx, &spectrum, rho, zeta, &quad_spec())?.value;
    Ok(format!(
        "I0-modulated, s=0.5: |closed - quadrature|/|quadrature| = {:.2e} \
         with the implemented prefactor and argument",
        (closed - quad).norm() / quad.norm()
    ))
}

fn inverse_power_evidence() -> Result<String> {
    let ctx = PhysicalContext::natural();
    let spectrum = ParaxialSpectrum::new(SpectrumShape::InversePower, 100.0)?;
    let (rho1, rho2, zeta) = (0.5, 1.5, 0.4);
    let quad =
        paraxial_quadrature_difference(&ctx, &spectrum, rho1, rho2, zeta, &quad_spec())?.value;
    let q = spectrum.q(&ctx);
    let big_q = Complex64::new(q, zeta / 2.0); // hbar = m = V = 1
    let x1 = rho1 * rho1 / (4.0 * big_q);
    let x2 = rho2 * rho2 / (4.0 * big_q);
    let carrier = Complex64::from_polar(1.0, 2.0 * zeta); // e^{2imV zeta/hbar}
    let ein_rule = carrier * 0.5 * (ein_complex(x2)? - ein_complex(x1)?);
    let e1_rule =
        carrier * 0.5 * (exp_integral_e1_complex(x1)? - exp_integral_e1_complex(x2)?);
    Ok(format!(
        "rho 0.5 -> 1.5 at zeta=0.4: quadrature difference deviates from the \
         Ein rule by {:.2e} and from the E1 rule by {:.2e} \
         (= ln(rho2/rho1) = {:.6})",
        (quad - ein_rule).norm(),
        (quad - e1_rule).norm(),
        (rho2 / rho1).ln()
    ))
}

fn series_phase_evidence() -> Result<String> {
    let ctx = PhysicalContext::new(1.0, 1.0, 1.0, 0.5)?;
    let n = 2;
    let element = fourier_element(ctx, n, Complex64::new(1.0, 0.0), 1.0)?;
    let kin = ctx.kinematics();
    let spectrum = move |e: f64| {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * n as f64 * e / kin.d)
    };
    let (rho, z, t) = (0.6, 0.9, 0.2);
    let quad = superposition_quadrature(&ctx, spectrum, rho, z, t, &quad_spec())?.value;
    let closed = element.psi(rho, z, t);
    Ok(format!(
        "single element n=2, b=0.5: |closed - spectral quadrature| = {:.2e}",
        (closed - quad).norm()
    ))
}

fn finite_energy_evidence() -> Result<String> {
    let ctx = PhysicalContext::natural();
    let wspec = WSpectrum::new(&ctx, 1.6, 60.0, 0.4, 1.0)?;
    let report = closed_form_report(&ctx, &wspec, &[0.0, 0.8], &[0.0, 1.0], &quad_spec())?;
    Ok(format!(
        "w0=1.6, q_w=60, a=0.4: max relative closed-form deviation {:.2e} over \
         {} probe points (validated: {})",
        report.max_relative_deviation,
        report.points.len(),
        report.validated
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_is_complete_and_computes() {
        let text = report().unwrap();
        for e in entries() {
            assert!(text.contains(e.id));
        }
        assert_eq!(flags().len(), entries().len());
        // every id unique
        let mut ids = flags();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), entries().len());
    }

    #[test]
    fn evidence_numbers_support_the_resolutions() {
        // recompute the deciding comparisons and check they stay decisive
        use crate::paraxial::paraxial_quadrature_signed;
        let ctx = PhysicalContext::natural();
        let spectrum = ParaxialSpectrum::new(SpectrumShape::Gaussian, 1000.0).unwrap();
        let spec = quad_spec();
        let exact = exact_integrand_quadrature(&ctx, &spectrum, 0.3, 0.5, &spec).unwrap().value;
        let minus =
            paraxial_quadrature_signed(&ctx, &spectrum, 0.3, 0.5, &spec, -1.0).unwrap().value;
        let plus =
            paraxial_quadrature_signed(&ctx, &spectrum, 0.3, 0.5, &spec, 1.0).unwrap().value;
        let (dm, dp) = ((minus - exact).norm(), (plus - exact).norm());
        assert!(dm < 1e-3 && dp > 10.0 * dm, "minus {dm}, plus {dp}");

        let invp = ParaxialSpectrum::new(SpectrumShape::InversePower, 100.0).unwrap();
        let (rho1, rho2, zeta) = (0.5, 1.5, 0.4);
        let quad = paraxial_quadrature_difference(&ctx, &invp, rho1, rho2, zeta, &spec)
            .unwrap()
            .value;
        let big_q = Complex64::new(invp.q(&ctx), zeta / 2.0);
        let x1 = rho1 * rho1 / (4.0 * big_q);
        let x2 = rho2 * rho2 / (4.0 * big_q);
        let carrier = Complex64::from_polar(1.0, 2.0 * zeta);
        let ein_rule =
            carrier * 0.5 * (ein_complex(x2).unwrap() - ein_complex(x1).unwrap());
        let e1_rule = carrier
            * 0.5
            * (exp_integral_e1_complex(x1).unwrap() - exp_integral_e1_complex(x2).unwrap());
        assert!((quad - ein_rule).norm() < 1e-8, "Ein rule should match");
        assert!((quad - e1_rule).norm() > 1e-2, "E1 rule should fail");
    }
}
