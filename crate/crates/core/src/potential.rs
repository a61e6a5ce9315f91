//! Pulse trains guided by a transverse parabolic potential: oscillator
//! eigenmodes, the two longitudinal-momentum branches each mode admits, and
//! the rigidly traveling superpositions built from them. A staggered-grid
//! finite-difference eigensolver cross-checks the analytic spectrum and
//! handles arbitrary radial potentials numerically.

use crate::field::{Coords, FieldEvaluator, FieldSample};
use crate::kinematics::PhysicalContext;
use crate::specfun::laguerre_poly;
use crate::{Complex64, LwError, Result};

/// Transverse harmonic guide U(rho) = (1/2) m omega^2 rho^2.
#[derive(Debug, Clone, Copy)]
pub struct HarmonicGuide {
    pub ctx: PhysicalContext,
    pub omega: f64,
}

impl HarmonicGuide {
    pub fn new(ctx: PhysicalContext, omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(LwError::Domain(format!("omega must be > 0, got {omega}")));
        }
        Ok(HarmonicGuide { ctx, omega })
    }

    /// U(rho) = (1/2) m omega^2 rho^2.
    pub fn potential(&self, rho: f64) -> f64 {
        0.5 * self.ctx.mass * self.omega * self.omega * rho * rho
    }

    pub fn solve_modes(&self) -> Result<Vec<GuideMode>> {
        solve_modes(self)
    }
}

/// Which of the two intersections of the spectral straight line with a mode's
/// parabola supplies the longitudinal momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// One axially symmetric bound mode of the guide: the transverse eigenvalue
/// Lambda_n^2, the unit-normalized Laguerre-Gauss radial profile, and the
/// pair of longitudinal momenta admitted on the line E = V p_z.
#[derive(Debug, Clone, Copy)]
pub struct GuideMode {
    pub n: u32,
    /// Lambda_n^2 = 2 m hbar omega (2n + 1).
    pub lambda_sq: f64,
    /// p_z(+-) = m V (1 +- sqrt(1 - Lambda_n^2/(m V)^2)), both >= 0.
    pub p_z_pair: (f64, f64),
    /// m omega / hbar, the inverse squared width of the Gaussian envelope.
    scale: f64,
    /// sqrt(m omega / (pi hbar)), fixing int |R_n|^2 2 pi rho drho = 1.
    norm: f64,
}

impl GuideMode {
    pub fn lambda(&self) -> f64 {
        self.lambda_sq.sqrt()
    }

    /// R_n(rho) = N_n L_n(m omega rho^2 / hbar) e^{-m omega rho^2 / (2 hbar)}.
    pub fn radial(&self, rho: f64) -> f64 {
        let x = self.scale * rho * rho;
        self.norm * laguerre_poly(self.n, x) * (-0.5 * x).exp()
    }

    pub fn p_z(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.p_z_pair.0,
            Branch::Minus => self.p_z_pair.1,
        }
    }
}

/// All admissible modes (Lambda_n <= m V) of the guide, in order of n. The
/// analytic eigenvalues are cross-checked against the finite-difference
/// radial eigensolver to 0.1% before being returned.
pub fn solve_modes(guide: &HarmonicGuide) -> Result<Vec<GuideMode>> {
    let ctx = &guide.ctx;
    let (m, hbar, v) = (ctx.mass, ctx.hbar, ctx.v);
    let mv = m * v;
    let mut modes = Vec::new();
    let mut n = 0u32;
    loop {
        let lambda_sq = 2.0 * m * hbar * guide.omega * (2.0 * n as f64 + 1.0);
        if lambda_sq > mv * mv {
            break;
        }
        let root = (1.0 - lambda_sq / (mv * mv)).max(0.0).sqrt();
        modes.push(GuideMode {
            n,
            lambda_sq,
            p_z_pair: (mv * (1.0 + root), mv * (1.0 - root)),
            scale: m * guide.omega / hbar,
            norm: (m * guide.omega / (std::f64::consts::PI * hbar)).sqrt(),
        });
        n += 1;
    }
    if modes.is_empty() {
        return Err(LwError::NoAdmissibleModes { threshold: mv });
    }

    // Independent check: the discretized radial operator must reproduce the
    // Laguerre-Gauss spectrum.
    let n_max = modes.last().unwrap().n;
    let rho_max = ((hbar / (m * guide.omega)) * (8.0 * n_max as f64 + 30.0)).sqrt();
    let fd = radial_eigenvalues(ctx, |rho| guide.potential(rho), rho_max, 3000, modes.len())?;
    for (mode, fd_val) in modes.iter().zip(&fd) {
        let rel = (fd_val - mode.lambda_sq).abs() / mode.lambda_sq;
        if rel > 1e-3 {
            return Err(LwError::Measurement(format!(
                "discretized eigenvalue {fd_val} deviates from analytic {} by {rel:.2e} (n = {})",
                mode.lambda_sq, mode.n
            )));
        }
    }
    Ok(modes)
}

/// Lowest `count` eigenvalues Lambda^2 of the radial problem
/// -hbar^2 (1/rho) d/drho (rho dR/drho) + 2 m U(rho) R = Lambda^2 R
/// with a regular axis and R(rho_max) = 0, for an arbitrary potential.
///
/// Discretization: staggered grid rho_i = (i + 1/2) h in conservative flux
/// form, so the axis needs no special casing (the flux through rho = 0
/// vanishes identically). The tridiagonal matrix is symmetrized by the
/// similarity transform with diag(sqrt(rho_i)) and its eigenvalues located
/// by Sturm-sequence bisection.
pub fn radial_eigenvalues(
    ctx: &PhysicalContext,
    potential: impl Fn(f64) -> f64,
    rho_max: f64,
    n_points: usize,
    count: usize,
) -> Result<Vec<f64>> {
    if !(rho_max > 0.0 && rho_max.is_finite()) {
        return Err(LwError::Grid(format!("rho_max must be > 0, got {rho_max}")));
    }
    if n_points < 8 || count == 0 || count > n_points {
        return Err(LwError::Grid(format!(
            "need 8 <= n_points and 1 <= count <= n_points (got {n_points}, {count})"
        )));
    }
    let h = rho_max / n_points as f64;
    let hbar2 = ctx.hbar * ctx.hbar;
    let two_m = 2.0 * ctx.mass;
    let mut diag = Vec::with_capacity(n_points);
    let mut off = Vec::with_capacity(n_points - 1);
    for i in 0..n_points {
        let rho = (i as f64 + 0.5) * h;
        let u = potential(rho);
        if !u.is_finite() {
            return Err(LwError::NonFinite { location: format!("potential at rho = {rho}") });
        }
        // faces at i h and (i+1) h sum to 2 rho_i, so the kinetic diagonal
        // is potential-independent
        diag.push(2.0 * hbar2 / (h * h) + two_m * u);
        if i + 1 < n_points {
            let rho_next = (i as f64 + 1.5) * h;
            off.push(-hbar2 * (i as f64 + 1.0) / (h * (rho * rho_next).sqrt()));
        }
    }

    // Gershgorin bounds bracket the whole spectrum.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n_points {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < n_points - 1 {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }

    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if count_below(&diag, &off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below x, from the signs of the Sturm sequence.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - e2 / q;
        if q.abs() < 1e-300 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// One term of a train: mode index, momentum branch, complex weight.
#[derive(Debug, Clone, Copy)]
pub struct TrainTerm {
    pub n: u32,
    pub branch: Branch,
    pub coefficient: Complex64,
}

impl TrainTerm {
    pub fn new(n: u32, branch: Branch, coefficient: Complex64) -> Self {
        TrainTerm { n, branch, coefficient }
    }
}

/// A resolved train component: the mode, its selected longitudinal momentum,
/// the matching total energy and the weight.
#[derive(Debug, Clone, Copy)]
pub struct TrainComponent {
    pub mode: GuideMode,
    pub p_z: f64,
    pub energy: f64,
    pub coefficient: Complex64,
}

/// Psi = sum_k f_k R_{n_k}(rho) e^{i (p_{z,k} z - E_k t)/hbar}. With all
/// energies on a line E = V p_z + b the modulus depends on (z, t) only
/// through zeta = z - V t.
#[derive(Debug, Clone)]
pub struct PulseTrain {
    ctx: PhysicalContext,
    components: Vec<TrainComponent>,
}

impl PulseTrain {
    pub fn components(&self) -> &[TrainComponent] {
        &self.components
    }
}

impl FieldEvaluator for PulseTrain {
    fn sample(&self, c: Coords) -> FieldSample {
        let hbar = self.ctx.hbar;
        let mut psi = Complex64::new(0.0, 0.0);
        for comp in &self.components {
            let phase = (comp.p_z * c.z - comp.energy * c.t) / hbar;
            psi += comp.coefficient
                * comp.mode.radial(c.rho)
                * Complex64::from_polar(1.0, phase);
        }
        FieldSample::good(c, psi)
    }
}

/// Train on the through-origin line E = V p_z: each selected mode rides at
/// one of its two admissible momenta and the whole superposition translates
/// rigidly at speed V.
pub fn pulse_train(guide: &HarmonicGuide, terms: &[TrainTerm]) -> Result<PulseTrain> {
    train_with_offset(guide, terms, 0.0)
}

/// Same superposition on the offset line E = V p_z + b (b >= 0): the
/// momenta shift to the intersections with each mode's parabola,
/// p_z = m V +- sqrt((m V)^2 - Lambda_n^2 + 2 m b), and the modulus still
/// depends only on zeta.
pub fn train_with_offset(guide: &HarmonicGuide, terms: &[TrainTerm], b: f64) -> Result<PulseTrain> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(LwError::Domain(format!("offset b must be >= 0, got {b}")));
    }
    let modes = solve_modes(guide)?;
    let ctx = &guide.ctx;
    let (m, v) = (ctx.mass, ctx.v);
    let mut components = Vec::with_capacity(terms.len());
    for term in terms {
        if !term.coefficient.re.is_finite() || !term.coefficient.im.is_finite() {
            return Err(LwError::Argument(format!(
                "non-finite coefficient for mode n = {}",
                term.n
            )));
        }
        let mode = *modes.get(term.n as usize).ok_or_else(|| {
            LwError::Domain(format!(
                "mode n = {} is not admissible: only {} mode(s) satisfy Lambda_n <= m V = {}",
                term.n,
                modes.len(),
                m * v
            ))
        })?;
        let radicand = m * v * (m * v) - mode.lambda_sq + 2.0 * m * b;
        if radicand < 0.0 {
            return Err(LwError::Domain(format!(
                "no real intersection for mode n = {} at b = {b}: \
                 (m V)^2 - Lambda_n^2 + 2 m b = {radicand} < 0",
                term.n
            )));
        }
        let root = radicand.sqrt();
        let p_z = match term.branch {
            Branch::Plus => m * v + root,
            Branch::Minus => m * v - root,
        };
        if p_z < 0.0 {
            return Err(LwError::Domain(format!(
                "mode n = {} branch intersection gives p_z = {p_z} < 0 at b = {b}",
                term.n
            )));
        }
        components.push(TrainComponent {
            mode,
            p_z,
            energy: v * p_z + b,
            coefficient: term.coefficient,
        });
    }
    Ok(PulseTrain { ctx: *ctx, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_complex, transverse_laplacian_profile, QuadratureSpec, RadialProfile};
    use approx::assert_relative_eq;

    fn example_guide() -> HarmonicGuide {
        HarmonicGuide::new(PhysicalContext::natural(), 0.05).unwrap()
    }

    #[test]
    fn five_modes_at_example_frequency() {
        let modes = example_guide().solve_modes().unwrap();
        assert_eq!(modes.len(), 5);
        for (n, mode) in modes.iter().enumerate() {
            assert_eq!(mode.n as usize, n);
            assert_relative_eq!(mode.lambda_sq, 0.1 * (2.0 * n as f64 + 1.0), max_relative = 1e-14);
        }
    }

    #[test]
    fn momentum_pair_example() {
        let modes = example_guide().solve_modes().unwrap();
        let (p_plus, p_minus) = modes[0].p_z_pair;
        assert_relative_eq!(p_plus, 1.0 + 0.9f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(p_minus, 1.0 - 0.9f64.sqrt(), max_relative = 1e-12);
        assert!(p_plus >= 0.0 && p_minus >= 0.0);
        for mode in &modes {
            // both roots sit on the free parabola with E = V p_z
            for &p in &[mode.p_z(Branch::Plus), mode.p_z(Branch::Minus)] {
                let e = 1.0 * p;
                assert_relative_eq!(
                    2.0 * e - p * p,
                    mode.lambda_sq,
                    max_relative = 1e-11,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn too_stiff_guide_has_no_modes() {
        // 2 m hbar omega = 1.2 > (m V)^2 = 1
        let guide = HarmonicGuide::new(PhysicalContext::natural(), 0.6).unwrap();
        match guide.solve_modes() {
            Err(LwError::NoAdmissibleModes { threshold }) => {
                assert_relative_eq!(threshold, 1.0);
            }
            other => panic!("expected NoAdmissibleModes, got {other:?}"),
        }
    }

    #[test]
    fn modes_are_orthonormal() {
        let modes = example_guide().solve_modes().unwrap();
        let spec = QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-11, max_subdivisions: 4000 };
        for a in &modes {
            for b in &modes {
                let val = integrate_complex(
                    |rho| {
                        Ok(Complex64::new(
                            a.radial(rho) * b.radial(rho) * 2.0 * std::f64::consts::PI * rho,
                            0.0,
                        ))
                    },
                    0.0,
                    60.0,
                    &spec,
                )
                .unwrap()
                .value;
                let expected = if a.n == b.n { 1.0 } else { 0.0 };
                assert!(
                    (val.re - expected).abs() < 1e-8,
                    "n={}, m={}: {}",
                    a.n,
                    b.n,
                    val.re
                );
            }
        }
    }

    #[test]
    fn fd_eigenvalues_match_analytic() {
        let guide = example_guide();
        let modes = guide.solve_modes().unwrap();
        let fd = radial_eigenvalues(
            &guide.ctx,
            |rho| guide.potential(rho),
            35.0,
            4000,
            modes.len(),
        )
        .unwrap();
        for (mode, fd_val) in modes.iter().zip(&fd) {
            assert_relative_eq!(*fd_val, mode.lambda_sq, max_relative = 1e-3);
        }
    }

    #[test]
    fn fd_eigensolver_handles_other_potentials() {
        // Free disc (U = 0) of radius R: Lambda_k = hbar j_{0,k} / R with
        // j_{0,1} = 2.404825..., j_{0,2} = 5.520078...
        let ctx = PhysicalContext::natural();
        let vals = radial_eigenvalues(&ctx, |_| 0.0, 1.0, 6000, 2).unwrap();
        assert_relative_eq!(vals[0].sqrt(), 2.404_825_557_695_773, max_relative = 1e-4);
        assert_relative_eq!(vals[1].sqrt(), 5.520_078_110_286_311, max_relative = 1e-4);
    }

    #[test]
    fn radial_profiles_satisfy_eigenvalue_equation() {
        // residual of -hbar^2 lap_perp R + 2 m U R - Lambda^2 R decays at O(h^2)
        let guide = example_guide();
        let modes = guide.solve_modes().unwrap();
        let residual_at = |h: f64| -> f64 {
            let n = (12.0 / h) as usize;
            let mut worst = 0.0f64;
            for mode in &modes {
                let values: Vec<Complex64> =
                    (0..n).map(|i| Complex64::new(mode.radial(i as f64 * h), 0.0)).collect();
                let lap =
                    transverse_laplacian_profile(&RadialProfile { values: &values, h }).unwrap();
                for (i, l) in lap.iter().enumerate() {
                    let rho = i as f64 * h;
                    let r = values[i].re;
                    let res = -l.re + 2.0 * guide.potential(rho) * r - mode.lambda_sq * r;
                    worst = worst.max(res.abs());
                }
            }
            worst
        };
        let e1 = residual_at(0.02);
        let e2 = residual_at(0.01);
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn single_mode_modulus_flat_in_z() {
        let guide = example_guide();
        let train = pulse_train(
            &guide,
            &[TrainTerm::new(1, Branch::Plus, Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let m0 = train.psi(0.7, 0.0, 0.0).norm();
        for &(z, t) in &[(1.0, 0.0), (0.0, 3.0), (-4.2, 1.1)] {
            assert_relative_eq!(train.psi(0.7, z, t).norm(), m0, max_relative = 1e-13);
        }
    }

    #[test]
    fn two_branch_beat_period() {
        let guide = example_guide();
        let train = pulse_train(
            &guide,
            &[
                TrainTerm::new(0, Branch::Plus, Complex64::new(1.0, 0.0)),
                TrainTerm::new(0, Branch::Minus, Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        let period = 2.0 * std::f64::consts::PI / (2.0 * 0.9f64.sqrt());
        assert_relative_eq!(period, 3.311_529_421_932_034, max_relative = 1e-12);
        for &z in &[0.0, 0.37, -1.9, 2.5] {
            let a = train.psi(0.0, z, 0.0).norm();
            let b = train.psi(0.0, z + period, 0.0).norm();
            assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-13);
        }
        // constructive at the origin, destructive half a period away
        let peak = train.psi(0.0, 0.0, 0.0).norm();
        let trough = train.psi(0.0, 0.5 * period, 0.0).norm();
        assert!(trough < 1e-12 * peak.max(1.0), "trough = {trough}");
    }

    #[test]
    fn train_translates_rigidly() {
        let guide = example_guide();
        let coeffs: Vec<TrainTerm> = (0..5)
            .flat_map(|n| {
                [
                    TrainTerm::new(n, Branch::Plus, Complex64::new(1.0 / (n as f64 + 1.0), 0.2)),
                    TrainTerm::new(n, Branch::Minus, Complex64::new(0.3, -0.1 * n as f64)),
                ]
            })
            .collect();
        // keep 2 m b < Lambda_0^2 so every minus-branch root stays positive
        for b in [0.0, 0.03] {
            let train = train_with_offset(&guide, &coeffs, b).unwrap();
            for &(rho, z, t, dt) in
                &[(0.0, 0.0, 0.0, 1.3), (2.0, -1.0, 0.5, -0.7), (5.0, 3.0, 2.0, 10.0)]
            {
                let here = train.psi(rho, z, t).norm();
                let there = train.psi(rho, z + 1.0 * dt, t + dt).norm();
                assert_relative_eq!(here, there, max_relative = 1e-12, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn offset_roots_satisfy_quadratic() {
        // intersections of E = V p_z + b with E = (p_z^2 + Lambda_n^2)/(2m):
        // p_z^2 - 2 m V p_z + (Lambda_n^2 - 2 m b) = 0
        let guide = example_guide();
        let b = 0.04;
        let plus = train_with_offset(
            &guide,
            &[TrainTerm::new(0, Branch::Plus, Complex64::new(1.0, 0.0))],
            b,
        )
        .unwrap();
        let minus = train_with_offset(
            &guide,
            &[TrainTerm::new(0, Branch::Minus, Complex64::new(1.0, 0.0))],
            b,
        )
        .unwrap();
        let p_p = plus.components()[0].p_z;
        let p_m = minus.components()[0].p_z;
        let lambda_sq = plus.components()[0].mode.lambda_sq;
        for &p in &[p_p, p_m] {
            assert!((p * p - 2.0 * p + (lambda_sq - 2.0 * b)).abs() < 1e-12);
        }
        assert_relative_eq!(p_p + p_m, 2.0, max_relative = 1e-13);
        assert_relative_eq!(p_p * p_m, lambda_sq - 2.0 * b, max_relative = 1e-12);
        // energies sit on the offset line
        assert_relative_eq!(plus.components()[0].energy, p_p + b, max_relative = 1e-13);
    }

    #[test]
    fn zero_offset_reduces_to_pulse_train() {
        let guide = example_guide();
        let terms = [
            TrainTerm::new(0, Branch::Plus, Complex64::new(0.8, 0.1)),
            TrainTerm::new(3, Branch::Minus, Complex64::new(-0.2, 0.5)),
        ];
        let a = pulse_train(&guide, &terms).unwrap();
        let b = train_with_offset(&guide, &terms, 0.0).unwrap();
        for &(rho, z, t) in &[(0.0, 0.0, 0.0), (1.5, 2.0, 0.7), (6.0, -3.0, 1.2)] {
            let pa = a.psi(rho, z, t);
            let pb = b.psi(rho, z, t);
            assert!((pa - pb).norm() < 1e-14 * pa.norm().max(1.0));
        }
    }

    #[test]
    fn offset_modulus_depends_only_on_zeta() {
        // the b > 0 train picks up a pure time phase per component; |Psi| at
        // fixed zeta is unchanged
        let guide = example_guide();
        let train = train_with_offset(
            &guide,
            &[
                TrainTerm::new(0, Branch::Plus, Complex64::new(1.0, 0.0)),
                TrainTerm::new(2, Branch::Minus, Complex64::new(0.5, 0.5)),
            ],
            0.2,
        )
        .unwrap();
        let zeta = 0.9;
        let m0 = train.psi(1.0, zeta, 0.0).norm();
        for &t in &[0.5, 2.0, -7.0] {
            assert_relative_eq!(train.psi(1.0, zeta + 1.0 * t, t).norm(), m0, max_relative = 1e-12);
        }
    }

    #[test]
    fn inadmissible_mode_index_rejected() {
        let guide = example_guide();
        let err = pulse_train(
            &guide,
            &[TrainTerm::new(7, Branch::Plus, Complex64::new(1.0, 0.0))],
        )
        .unwrap_err();
        assert!(format!("{err}").contains("not admissible"));
    }

    #[test]
    fn negative_momentum_root_rejected() {
        // Lambda_0^2 = 0.1 < 2 m b = 0.4 drives the minus branch below zero
        let guide = example_guide();
        let err = train_with_offset(
            &guide,
            &[TrainTerm::new(0, Branch::Minus, Complex64::new(1.0, 0.0))],
            0.2,
        )
        .unwrap_err();
        assert!(format!("{err}").contains("p_z"));
    }

    #[test]
    fn zero_coefficients_give_zero_field() {
        let guide = example_guide();
        let train = pulse_train(
            &guide,
            &[
                TrainTerm::new(0, Branch::Plus, Complex64::new(0.0, 0.0)),
                TrainTerm::new(1, Branch::Minus, Complex64::new(0.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(train.psi(1.0, 2.0, 3.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn invalid_inputs_rejected() {
        let ctx = PhysicalContext::natural();
        assert!(HarmonicGuide::new(ctx, 0.0).is_err());
        assert!(HarmonicGuide::new(ctx, -1.0).is_err());
        assert!(radial_eigenvalues(&ctx, |_| 0.0, -1.0, 100, 1).is_err());
        assert!(radial_eigenvalues(&ctx, |_| 0.0, 1.0, 4, 1).is_err());
        assert!(radial_eigenvalues(&ctx, |_| 0.0, 1.0, 100, 0).is_err());
        let guide = example_guide();
        assert!(train_with_offset(
            &guide,
            &[TrainTerm::new(0, Branch::Plus, Complex64::new(1.0, 0.0))],
            -0.1
        )
        .is_err());
        assert!(pulse_train(
            &guide,
            &[TrainTerm::new(0, Branch::Plus, Complex64::new(f64::NAN, 0.0))]
        )
        .is_err());
    }
}
