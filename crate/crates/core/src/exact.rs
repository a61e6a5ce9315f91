//! Exact localized solutions: the energy superposition over the spectral
//! interval, its sinc-shaped elementary solutions, and arbitrary-spectrum
//! pulses via truncated Fourier series.

use crate::field::{Coords, FieldEvaluator, FieldSample};
use crate::kinematics::{KinematicConstants, PhysicalContext};
use crate::numerics::{integrate_complex, pairwise_sum, QuadratureResult, QuadratureSpec};
use crate::specfun::{bessel_j, csinc};
use crate::{Complex64, LwError, Result};

/// Elementary sinc pulse from the single complex-exponential spectrum
/// S(E) = a_n e^{i 2 pi n E / D}:
/// psi = N a_n 2A csinc(Z) e^{imV eta/hbar} e^{i 2 pi n B / D},
/// Z = sqrt((A zeta/(hbar V) + n pi)^2 + P rho^2/hbar^2).
#[derive(Debug, Clone)]
pub struct FourierElement {
    ctx: PhysicalContext,
    kin: KinematicConstants,
    n: i32,
    a_n: Complex64,
    norm: f64,
}

impl FourierElement {
    pub fn new(ctx: PhysicalContext, n: i32, a_n: Complex64, norm: f64) -> Result<Self> {
        if !a_n.re.is_finite() || !a_n.im.is_finite() || !norm.is_finite() {
            return Err(LwError::Argument(format!(
                "coefficient and norm must be finite (a_n = {a_n}, norm = {norm})"
            )));
        }
        let kin = ctx.kinematics();
        Ok(FourierElement { ctx, kin, n, a_n, norm })
    }

    /// The argument Z at a comoving point; always real and >= 0.
    pub fn z_argument(&self, rho: f64, zeta: f64) -> f64 {
        let hv = self.ctx.hbar * self.ctx.v;
        let long = self.kin.a * zeta / hv + self.n as f64 * std::f64::consts::PI;
        let trans = self.kin.p * rho * rho / (self.ctx.hbar * self.ctx.hbar);
        (long * long + trans).sqrt()
    }
}

impl FieldEvaluator for FourierElement {
    fn sample(&self, c: Coords) -> FieldSample {
        let zeta = c.z - self.ctx.v * c.t;
        let cm = self.ctx.comoving(c.rho, c.z, c.t);
        let z = self.z_argument(c.rho, zeta);
        let phase = self.ctx.mass * self.ctx.v * cm.eta / self.ctx.hbar
            + 2.0 * std::f64::consts::PI * self.n as f64 * self.kin.b_const / self.kin.d;
        let value = self.norm
            * self.a_n
            * 2.0
            * self.kin.a
            * csinc(Complex64::new(z, 0.0))
            * Complex64::from_polar(1.0, phase);
        FieldSample::good(c, value)
    }
}

pub fn fourier_element(ctx: PhysicalContext, n: i32, a_n: Complex64, norm: f64) -> Result<FourierElement> {
    FourierElement::new(ctx, n, a_n, norm)
}

/// Sinc pulse from the real-exponential spectrum S(E) = s0 e^{a(E - E+)}:
/// psi = N s0 2V sqrt(P) e^{imV eta/hbar} e^{-aV sqrt(P)} csinc(Y),
/// Y = (sqrt(P)/hbar) sqrt(rho^2 - (hbar a V + i zeta)^2), principal branch
/// (csinc is even, so the branch does not affect values). a = 0 gives the
/// ball-shaped limit; large a concentrates the spectrum at E+ and stretches
/// X-shaped arms along rho' = |zeta'|.
#[derive(Debug, Clone)]
pub struct ExponentialPulse {
    ctx: PhysicalContext,
    kin: KinematicConstants,
    a: f64,
    s0: f64,
    norm: f64,
}

impl ExponentialPulse {
    pub fn new(ctx: PhysicalContext, a: f64, s0: f64, norm: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(LwError::Argument(format!("spectral decay a must be >= 0, got {a}")));
        }
        if !s0.is_finite() || !norm.is_finite() {
            return Err(LwError::Argument(format!("s0 and norm must be finite ({s0}, {norm})")));
        }
        let kin = ctx.kinematics();
        Ok(ExponentialPulse { ctx, kin, a, s0, norm })
    }

    /// The dimensionless spectral-concentration parameter aA = a V sqrt(P).
    pub fn a_bar(&self) -> f64 {
        self.a * self.ctx.v * self.kin.sqrt_p()
    }

    /// Y at a comoving point, principal square root.
    pub fn y_argument(&self, rho: f64, zeta: f64) -> Complex64 {
        let w = Complex64::new(self.ctx.hbar * self.a * self.ctx.v, zeta);
        let rad = Complex64::new(rho * rho, 0.0) - w * w;
        rad.sqrt() * (self.kin.sqrt_p() / self.ctx.hbar)
    }
}

impl FieldEvaluator for ExponentialPulse {
    fn sample(&self, c: Coords) -> FieldSample {
        let zeta = c.z - self.ctx.v * c.t;
        let cm = self.ctx.comoving(c.rho, c.z, c.t);
        let y = self.y_argument(c.rho, zeta);
        let amp = self.norm * self.s0 * 2.0 * self.ctx.v * self.kin.sqrt_p()
            * (-self.a_bar()).exp();
        let phase = Complex64::from_polar(1.0, self.ctx.mass * self.ctx.v * cm.eta / self.ctx.hbar);
        FieldSample::good(c, amp * phase * csinc(y))
    }
}

pub fn exponential_pulse(ctx: PhysicalContext, a: f64, s0: f64, norm: f64) -> Result<ExponentialPulse> {
    ExponentialPulse::new(ctx, a, s0, norm)
}

/// One Fourier coefficient of a spectrum over [E-, E+].
#[derive(Debug, Clone, Copy)]
pub struct FourierCoefficient {
    pub n: i32,
    pub value: Complex64,
    pub converged: bool,
}

/// a_n = (1/D) int_{E-}^{E+} S(E) e^{-i 2 pi n E / D} dE for
/// n in [-n_trunc, n_trunc].
pub fn fourier_coefficients<F>(
    ctx: &PhysicalContext,
    spectrum: F,
    n_trunc: u32,
    spec: &QuadratureSpec,
) -> Result<Vec<FourierCoefficient>>
where
    F: Fn(f64) -> Complex64,
{
    let kin = ctx.kinematics();
    let mut out = Vec::with_capacity(2 * n_trunc as usize + 1);
    for n in -(n_trunc as i32)..=(n_trunc as i32) {
        let rate = -2.0 * std::f64::consts::PI * n as f64 / kin.d;
        let f = |e: f64| -> Result<Complex64> {
            Ok(spectrum(e) * Complex64::from_polar(1.0, rate * e))
        };
        let res = integrate_complex(f, kin.e_minus, kin.e_plus, spec)?;
        out.push(FourierCoefficient {
            n,
            value: res.value / kin.d,
            converged: res.converged,
        });
    }
    Ok(out)
}

/// Truncated-series pulse: psi = N 2A e^{imV eta/hbar}
/// sum_n a_n e^{i 2 pi n B/D} csinc(Z_n). Any truncation is itself an exact
/// solution, so the only approximation lives in the coefficients.
#[derive(Debug, Clone)]
pub struct SeriesPulse {
    ctx: PhysicalContext,
    kin: KinematicConstants,
    coefficients: Vec<FourierCoefficient>,
    norm: f64,
}

impl SeriesPulse {
    pub fn new(ctx: PhysicalContext, coefficients: Vec<FourierCoefficient>, norm: f64) -> Result<Self> {
        if !norm.is_finite() {
            return Err(LwError::Argument(format!("norm must be finite, got {norm}")));
        }
        for c in &coefficients {
            if !c.value.re.is_finite() || !c.value.im.is_finite() {
                return Err(LwError::NonFinite {
                    location: format!("series coefficient n = {}", c.n),
                });
            }
        }
        let kin = ctx.kinematics();
        Ok(SeriesPulse { ctx, kin, coefficients, norm })
    }

    pub fn coefficients(&self) -> &[FourierCoefficient] {
        &self.coefficients
    }
}

impl FieldEvaluator for SeriesPulse {
    fn sample(&self, c: Coords) -> FieldSample {
        let zeta = c.z - self.ctx.v * c.t;
        let cm = self.ctx.comoving(c.rho, c.z, c.t);
        let hv = self.ctx.hbar * self.ctx.v;
        let trans = self.kin.p * c.rho * c.rho / (self.ctx.hbar * self.ctx.hbar);
        // fixed pairwise order keeps grid fills bit-identical across threads
        let terms: Vec<Complex64> = self
            .coefficients
            .iter()
            .map(|fc| {
                let long = self.kin.a * zeta / hv + fc.n as f64 * std::f64::consts::PI;
                let z = (long * long + trans).sqrt();
                let phase = 2.0 * std::f64::consts::PI * fc.n as f64 * self.kin.b_const / self.kin.d;
                fc.value * Complex64::from_polar(1.0, phase) * csinc(Complex64::new(z, 0.0))
            })
            .collect();
        let sum = pairwise_sum(&terms);
        let carrier =
            Complex64::from_polar(1.0, self.ctx.mass * self.ctx.v * cm.eta / self.ctx.hbar);
        FieldSample::good(c, self.norm * 2.0 * self.kin.a * carrier * sum)
    }
}

pub fn general_solution(
    ctx: PhysicalContext,
    coefficients: Vec<FourierCoefficient>,
    norm: f64,
) -> Result<SeriesPulse> {
    SeriesPulse::new(ctx, coefficients, norm)
}

/// Oracle: direct numerical superposition of Bessel beams over the spectral
/// interval, in the u variable where the integrand endpoints are regular:
/// psi = A e^{imV eta/hbar} int_{-1}^{1} du S(E(u))
///       J0(rho sqrt(P) sqrt(1-u^2)/hbar) e^{i A zeta u/(hbar V)}.
/// The spectrum is given over energy; no normalization constant is applied.
pub fn superposition_quadrature<F>(
    ctx: &PhysicalContext,
    spectrum: F,
    rho: f64,
    z: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    let kin = ctx.kinematics();
    let zeta = z - ctx.v * t;
    let cm = ctx.comoving(rho, z, t);
    let sqrt_p = kin.sqrt_p();
    let rate = kin.a * zeta / (ctx.hbar * ctx.v);
    let f = |u: f64| -> Result<Complex64> {
        let e = kin.a * u + kin.b_const;
        let j0 = bessel_j(0, rho * sqrt_p * (1.0 - u * u).max(0.0).sqrt() / ctx.hbar)?;
        Ok(spectrum(e) * j0 * Complex64::from_polar(1.0, rate * u))
    };
    let mut res = integrate_complex(f, -1.0, 1.0, spec)?;
    res.value *= kin.a * Complex64::from_polar(1.0, ctx.mass * ctx.v * cm.eta / ctx.hbar);
    Ok(res)
}

/// |psi|^2 and (Re psi)^2 sampled over the dimensionless comoving plane
/// rho' = sqrt(P) rho/hbar, zeta' = sqrt(P) zeta/hbar at t = 0.
#[derive(Debug, Clone)]
pub struct NormalizedProfile {
    pub rho_prime: Vec<f64>,
    pub zeta_prime: Vec<f64>,
    /// row-major: index = i_rho * zeta_prime.len() + i_zeta
    pub abs2: Vec<f64>,
    pub re2: Vec<f64>,
}

impl NormalizedProfile {
    pub fn abs2_at(&self, i_rho: usize, i_zeta: usize) -> f64 {
        self.abs2[i_rho * self.zeta_prime.len() + i_zeta]
    }

    pub fn re2_at(&self, i_rho: usize, i_zeta: usize) -> f64 {
        self.re2[i_rho * self.zeta_prime.len() + i_zeta]
    }
}

/// Transverse extent of the pulse at a fixed normalized zeta': the smallest
/// rho' where |psi|^2 drops below `level_ratio` times the global peak
/// |psi(0,0)|^2. The ratio spread(zeta')/spread(0) quantifies the X-arm
/// regime: bounded (< 1 beyond the core) for the ball-shaped a=0 pulse,
/// growing linearly along rho' = |zeta'| once the spectral decay is large.
pub fn contour_spread<E: FieldEvaluator>(
    evaluator: &E,
    ctx: &PhysicalContext,
    zeta_prime: f64,
    level_ratio: f64,
) -> Result<f64> {
    if !(level_ratio > 0.0 && level_ratio < 1.0) {
        return Err(LwError::Argument(format!(
            "level_ratio must lie in (0, 1), got {level_ratio}"
        )));
    }
    let scale = ctx.hbar / ctx.kinematics().sqrt_p();
    let peak = evaluator.psi(0.0, 0.0, 0.0).norm_sqr();
    if !(peak > 0.0 && peak.is_finite()) {
        return Err(LwError::Measurement(format!("non-positive peak intensity {peak}")));
    }
    let level = level_ratio * peak;
    let mut rho_prime = 1e-2;
    while evaluator.psi(rho_prime * scale, zeta_prime * scale, 0.0).norm_sqr() > level {
        rho_prime *= 1.01;
        if rho_prime > 1e4 {
            return Err(LwError::Measurement(
                "intensity never drops below the contour level".into(),
            ));
        }
    }
    Ok(rho_prime)
}

/// Sample an evaluator over [0, rho_max'] x [-zeta_max', zeta_max'] in the
/// normalized coordinates (n_rho x n_zeta points).
pub fn normalized_profile<E: FieldEvaluator>(
    evaluator: &E,
    ctx: &PhysicalContext,
    rho_max_prime: f64,
    n_rho: usize,
    zeta_max_prime: f64,
    n_zeta: usize,
) -> Result<NormalizedProfile> {
    if n_rho < 2 || n_zeta < 2 {
        return Err(LwError::Grid("profile needs at least 2 points per axis".into()));
    }
    let scale = ctx.hbar / ctx.kinematics().sqrt_p();
    let rho_prime: Vec<f64> = (0..n_rho)
        .map(|i| rho_max_prime * i as f64 / (n_rho - 1) as f64)
        .collect();
    let zeta_prime: Vec<f64> = (0..n_zeta)
        .map(|j| -zeta_max_prime + 2.0 * zeta_max_prime * j as f64 / (n_zeta - 1) as f64)
        .collect();
    let mut abs2 = Vec::with_capacity(n_rho * n_zeta);
    let mut re2 = Vec::with_capacity(n_rho * n_zeta);
    for &rp in &rho_prime {
        for &zp in &zeta_prime {
            let psi = evaluator.psi(rp * scale, zp * scale, 0.0);
            if !psi.re.is_finite() || !psi.im.is_finite() {
                return Err(LwError::NonFinite {
                    location: format!("profile point rho' = {rp}, zeta' = {zp}"),
                });
            }
            abs2.push(psi.norm_sqr());
            re2.push(psi.re * psi.re);
        }
    }
    Ok(NormalizedProfile { rho_prime, zeta_prime, abs2, re2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> PhysicalContext {
        PhysicalContext::natural()
    }

    fn qspec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn element_basic_values() {
        // b=0, natural units: A = 1, 2A = 1 with norm 1/2 and a_n = 1.
        let e = fourier_element(ctx(), 0, ONE, 0.5).unwrap();
        assert_relative_eq!(e.psi(0.0, 0.0, 0.0).norm(), 1.0, max_relative = 1e-14);
        // first dark ring: Z = pi at zeta=0, rho = pi (P = 1, hbar = 1)
        assert!(e.psi(std::f64::consts::PI, 0.0, 0.0).norm() < 1e-14);
        // n = 1 on axis at zeta = 0: Z = pi exactly
        let e1 = fourier_element(ctx(), 1, ONE, 0.5).unwrap();
        assert!(e1.psi(0.0, 0.0, 0.0).norm() < 1e-14);
    }

    #[test]
    fn element_matches_u_quadrature() {
        // the closed form against the direct superposition, which also pins
        // the J0/exponential integral identity behind it
        for &(b, n) in &[(0.0, 0), (0.0, 2), (0.5, 1), (0.5, -3)] {
            let c = PhysicalContext::new(1.0, 1.0, 1.0, b).unwrap();
            let kin = c.kinematics();
            let elem = fourier_element(c, n, ONE, 1.0).unwrap();
            let spectrum = move |e: f64| {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * n as f64 * e / kin.d)
            };
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..20 {
                let rho = rng.gen_range(0.0..8.0);
                let z = rng.gen_range(-8.0..8.0);
                let t = rng.gen_range(-3.0..3.0);
                let closed = elem.psi(rho, z, t);
                let quad = superposition_quadrature(&c, spectrum, rho, z, t, &qspec())
                    .unwrap()
                    .checked()
                    .unwrap();
                assert!(
                    (closed - quad).norm() <= 1e-9 * closed.norm().max(1e-9),
                    "b={b} n={n} rho={rho} z={z} t={t}: {closed} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn exponential_pulse_basic_values() {
        let c = ctx();
        // a = 0: peak |psi| = |N s0 2 V sqrt(P)| = 2 with N = s0 = 1
        let p0 = exponential_pulse(c, 0.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(p0.psi(0.0, 0.0, 0.0).norm(), 2.0, max_relative = 1e-14);
        // a = 1: Y(0,0) = i, csinc(i) = sinh(1); amplitude carries e^{-1}
        let p1 = exponential_pulse(c, 1.0, 1.0, 1.0).unwrap();
        let expect = 2.0 * (-1.0_f64).exp() * 1.0_f64.sinh();
        assert_relative_eq!(p1.psi(0.0, 0.0, 0.0).norm(), expect, max_relative = 1e-13);
        assert_relative_eq!(p1.a_bar(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn exponential_even_in_zeta_when_a_zero() {
        let p = exponential_pulse(ctx(), 0.0, 1.0, 1.0).unwrap();
        for &(rho, zeta) in &[(0.5, 2.0), (3.0, 7.0), (0.0, 1.3)] {
            assert_relative_eq!(
                p.psi(rho, zeta, 0.0).norm(),
                p.psi(rho, -zeta, 0.0).norm(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn exponential_matches_quadrature_at_reference_decays() {
        // spectral decay tied to the upper edge: a = E+/5 and a = 5 E+
        let c = ctx();
        let kin = c.kinematics();
        for &a in &[kin.e_plus / 5.0, 5.0 * kin.e_plus] {
            let pulse = exponential_pulse(c, a, 1.0, 1.0).unwrap();
            let spectrum = move |e: f64| Complex64::new((a * (e - kin.e_plus)).exp(), 0.0);
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..12 {
                let rho = rng.gen_range(0.0..6.0);
                let z = rng.gen_range(-6.0..6.0);
                let t = rng.gen_range(-2.0..2.0);
                let closed = pulse.psi(rho, z, t);
                let quad = superposition_quadrature(&c, spectrum, rho, z, t, &qspec())
                    .unwrap()
                    .checked()
                    .unwrap();
                assert!(
                    (closed - quad).norm() <= 1e-8 * closed.norm().max(1e-12),
                    "a={a} rho={rho} z={z}: {closed} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn quadrature_tail_decays() {
        let c = ctx();
        let spectrum = |_: f64| ONE;
        let peak = superposition_quadrature(&c, spectrum, 0.0, 0.0, 0.0, &qspec())
            .unwrap()
            .checked()
            .unwrap()
            .norm();
        // flat spectrum decays like 1/rho': ~5e-3 of the peak at rho' = 50
        let far = superposition_quadrature(&c, spectrum, 50.0, 0.0, 0.0, &qspec())
            .unwrap()
            .checked()
            .unwrap()
            .norm();
        assert!(far < 1e-2 * peak, "far/peak = {}", far / peak);
        let farther = superposition_quadrature(&c, spectrum, 500.0, 0.0, 0.0, &qspec())
            .unwrap()
            .checked()
            .unwrap()
            .norm();
        assert!(farther < 3e-3 * peak, "farther/peak = {}", farther / peak);
    }

    #[test]
    fn coefficients_orthogonality() {
        let c = ctx();
        let kin = c.kinematics();
        let d = kin.d;
        let flat = move |_: f64| Complex64::new(1.0 / d, 0.0);
        let coeffs = fourier_coefficients(&c, flat, 3, &qspec()).unwrap();
        for fc in &coeffs {
            assert!(fc.converged);
            if fc.n == 0 {
                assert_relative_eq!(fc.value.re, 1.0 / d, max_relative = 1e-12);
                assert!(fc.value.im.abs() < 1e-12);
            } else {
                assert!(fc.value.norm() < 1e-12, "n={}: {}", fc.n, fc.value);
            }
        }
        // basis exponential k = 2 picks out a_2 only
        let k = 2;
        let basis = move |e: f64| {
            Complex64::from_polar(1.0 / d, 2.0 * std::f64::consts::PI * k as f64 * e / d)
        };
        let coeffs = fourier_coefficients(&c, basis, 3, &qspec()).unwrap();
        for fc in &coeffs {
            if fc.n == k {
                assert!((fc.value - Complex64::new(1.0 / d, 0.0)).norm() < 1e-12);
            } else {
                assert!(fc.value.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn single_coefficient_degenerates_to_element() {
        let c = ctx();
        let coeffs = vec![FourierCoefficient { n: 0, value: Complex64::new(0.7, 0.1), converged: true }];
        let series = general_solution(c, coeffs, 1.0).unwrap();
        let elem = fourier_element(c, 0, Complex64::new(0.7, 0.1), 1.0).unwrap();
        for &(rho, z, t) in &[(0.0, 0.0, 0.0), (2.0, 1.0, 0.3), (5.0, -4.0, 1.7)] {
            let a = series.psi(rho, z, t);
            let b = elem.psi(rho, z, t);
            assert!((a - b).norm() <= 1e-14 * a.norm().max(1e-14));
        }
    }

    #[test]
    fn empty_series_is_zero() {
        let series = general_solution(ctx(), Vec::new(), 1.0).unwrap();
        assert_eq!(series.psi(1.0, 2.0, 0.5), Complex64::new(0.0, 0.0));
    }

    /// Grid L2 distance between a series pulse and the quadrature oracle.
    fn series_l2_error(c: &PhysicalContext, n_trunc: u32) -> f64 {
        let kin = c.kinematics();
        let d = kin.d;
        let center = kin.b_const;
        let sigma = d / 10.0;
        let spectrum =
            move |e: f64| Complex64::new((-(e - center) * (e - center) / (2.0 * sigma * sigma)).exp(), 0.0);
        let coeffs = fourier_coefficients(c, spectrum, n_trunc, &qspec()).unwrap();
        let series = general_solution(*c, coeffs, 1.0).unwrap();
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..6 {
            for j in -5..=5 {
                let rho = 6.0 * i as f64 / 5.0;
                let z = 6.0 * j as f64 / 5.0;
                let oracle = superposition_quadrature(c, spectrum, rho, z, 0.0, &qspec())
                    .unwrap()
                    .checked()
                    .unwrap();
                let approx = series.psi(rho, z, 0.0);
                num += (approx - oracle).norm_sqr();
                den += oracle.norm_sqr();
            }
        }
        (num / den).sqrt()
    }

    #[test]
    fn gaussian_series_converges_to_oracle() {
        let c = ctx();
        let errs: Vec<f64> = [2, 4, 8, 16].iter().map(|&n| series_l2_error(&c, n)).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2] && errs[2] >= errs[3], "errors {errs:?}");
        assert!(errs[3] < 1e-4, "final error {}", errs[3]);
    }

    #[test]
    fn modulus_rides_with_the_pulse() {
        let c = PhysicalContext::new(1.0, 1.0, 1.0, 0.5).unwrap();
        let evals: Vec<Box<dyn FieldEvaluator>> = vec![
            Box::new(fourier_element(c, 1, ONE, 1.0).unwrap()),
            Box::new(exponential_pulse(c, 0.4, 1.0, 1.0).unwrap()),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for ev in &evals {
            for _ in 0..100 {
                let rho = rng.gen_range(0.0..4.0);
                let z = rng.gen_range(-5.0..5.0);
                let t = rng.gen_range(-3.0..3.0);
                let dt = rng.gen_range(-10.0..10.0);
                let m0 = ev.psi(rho, z, t).norm();
                let m1 = ev.psi(rho, z + c.v * dt, t + dt).norm();
                assert!((m0 - m1).abs() <= 1e-12 * m0.max(1e-12), "{m0} vs {m1}");
            }
        }
    }

    #[test]
    fn carrier_removed_field_depends_only_on_zeta() {
        let c = PhysicalContext::new(1.0, 1.0, 1.0, 0.5).unwrap();
        let ev = exponential_pulse(c, 0.3, 1.0, 1.0).unwrap();
        let strip = |rho: f64, z: f64, t: f64| {
            let cm = c.comoving(rho, z, t);
            ev.psi(rho, z, t) * Complex64::from_polar(1.0, -c.mass * c.v * cm.eta / c.hbar)
        };
        // same zeta via different (z, t)
        for &(rho, zeta) in &[(1.0, 2.0), (0.3, -4.0), (2.5, 0.7)] {
            let a = strip(rho, zeta, 0.0);
            let b = strip(rho, zeta + c.v * 3.7, 3.7);
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-12));
        }
    }

    #[test]
    fn profile_ball_symmetry_at_zero_decay() {
        let c = ctx();
        let pulse = exponential_pulse(c, 0.0, 1.0, 1.0).unwrap();
        let prof = normalized_profile(&pulse, &c, 8.0, 17, 8.0, 33).unwrap();
        let peak = prof.abs2_at(0, 16);
        for i in 0..17 {
            for j in 0..33 {
                // even in zeta'
                assert_relative_eq!(
                    prof.abs2_at(i, j),
                    prof.abs2_at(i, 32 - j),
                    max_relative = 1e-10,
                    epsilon = 1e-14
                );
                assert!(prof.abs2_at(i, j) <= peak * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn profile_x_arms_at_large_decay() {
        // a_bar = 20: the iso-intensity contour opens linearly along
        // rho' = |zeta'| (X arms), so its transverse spread grows with
        // zeta'; the a_bar = 0 ball stays bounded and shrinks instead.
        let c = ctx();
        let level = 1e-6;
        let a = 20.0 / (c.v * c.kinematics().sqrt_p());
        let x_pulse = exponential_pulse(c, a, 1.0, 1.0).unwrap();
        let s0 = contour_spread(&x_pulse, &c, 0.0, level).unwrap();
        let s40 = contour_spread(&x_pulse, &c, 40.0, level).unwrap();
        assert!(s40 / s0 > 1.0, "X contrast {} (spread {s0} -> {s40})", s40 / s0);
        // arm tracks the diagonal: spread at zeta' = 40 close to 40
        assert!((s40 - 40.0).abs() < 8.0, "spread at 40: {s40}");
        let ball = exponential_pulse(c, 0.0, 1.0, 1.0).unwrap();
        let b0 = contour_spread(&ball, &c, 0.0, level).unwrap();
        let b40 = contour_spread(&ball, &c, 40.0, level).unwrap();
        assert!(b40 / b0 < 1.0, "ball contrast {}", b40 / b0);
    }

    #[test]
    fn invalid_arguments_rejected() {
        assert!(exponential_pulse(ctx(), -0.1, 1.0, 1.0).is_err());
        assert!(fourier_element(ctx(), 0, Complex64::new(f64::NAN, 0.0), 1.0).is_err());
        assert!(general_solution(
            ctx(),
            vec![FourierCoefficient { n: 0, value: Complex64::new(f64::INFINITY, 0.0), converged: true }],
            1.0
        )
        .is_err());
    }
}
