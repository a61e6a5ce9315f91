//! Subcommand dispatch: resolve layered settings, build the requested
//! family, sample/verify, and export.

use crate::config::{layered, Config};
use crate::family::{
    build_beam, build_exact, build_finite_energy, build_from_family_args,
    build_paraxial, build_train,
};
use crate::output::{emit, parse_grid, sample};
use crate::{CheckCommand, Cli, CliError, Command, Format};
use lwschro::finite_energy::{closed_form_report, norm_and_depth};
use lwschro::numerics::{FieldGrid, GridSpec, QuadratureSpec};
use lwschro::paraxial::width_measurements;
use lwschro::potential::Branch;
use lwschro::verify::{free_propagate, rigid_translation_check, schrodinger_residual};
use lwschro::{errata, Coords, PhysicalContext};

/// Globally resolved settings shared by every subcommand.
struct Settings {
    ctx: PhysicalContext,
    grid: GridSpec,
    t: f64,
    format: Format,
    tol: Option<f64>,
    quad: QuadratureSpec,
}

fn section_name(command: &Command) -> &'static str {
    match command {
        Command::Beam(_) => "beam",
        Command::Paraxial(_) => "paraxial",
        Command::Exact(_) => "exact",
        Command::FiniteEnergy(_) => "finite-energy",
        Command::PotentialTrain(_) => "potential-train",
        Command::Verify(_) => "verify",
        Command::Errata => "errata",
    }
}

fn resolve(cli: &Cli, cfg: &Config) -> Result<Settings, CliError> {
    let section = section_name(&cli.command);
    let hbar = layered(cli.hbar, cfg.f64(section, "hbar")?, 1.0);
    let mass = layered(cli.mass, cfg.f64(section, "mass")?, 1.0);
    let v = layered(cli.v, cfg.f64(section, "V")?, 1.0);
    let b = layered(cli.b, cfg.f64(section, "b")?, 0.0);
    let ctx = PhysicalContext::new(hbar, mass, v, b)?;
    let t = layered(cli.t, cfg.f64(section, "t")?, 0.0);
    let grid_text = cli.grid.clone().or(cfg.string(section, "grid")?);
    let mut grid = match grid_text {
        Some(text) => parse_grid(&text)?,
        None => GridSpec::new(6.0, 64, -6.0, 6.0, 96)?,
    };
    grid.t_samples = vec![t];
    let format = match (cli.format, cfg.string(section, "format")?) {
        (Some(f), _) => f,
        (None, Some(name)) => match name.as_str() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => {
                return Err(CliError::validation(format!(
                    "config format must be csv or json, got {other:?}"
                )))
            }
        },
        (None, None) => Format::Csv,
    };
    let tol = match cli.tol {
        Some(t) => Some(t),
        None => cfg.f64(section, "tol")?,
    };
    let quad = match tol {
        Some(t) => {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::validation(format!(
                    "--tol must be a positive finite number, got {t}"
                )));
            }
            QuadratureSpec { abs_tol: t, rel_tol: t, ..QuadratureSpec::default() }
        }
        None => QuadratureSpec::default(),
    };
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => cfg.usize(section, "threads")?,
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::validation("--threads must be >= 1"));
        }
        // ignore the error from a pool that is already initialized
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Settings { ctx, grid, t, format, tol, quad })
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::empty(),
    };
    let settings = resolve(&cli, &cfg)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Beam(args) => {
            let built = build_beam(
                settings.ctx.clone(),
                &cfg,
                "beam",
                args.energy,
                args.p_z,
                args.order,
            )?;
            let grid = sample(&settings.grid, settings.ctx.v, built.evaluator.as_ref())?;
            emit(&grid, &built.meta, out, settings.format)
        }
        Command::Paraxial(args) => {
            let built = build_paraxial(
                settings.ctx.clone(),
                &cfg,
                "paraxial",
                args.family,
                args.alpha,
                args.s,
            )?;
            if args.measure_widths {
                let (d_rho, d_zeta) =
                    width_measurements(&built.evaluator.as_ref(), &settings.ctx)?;
                println!("delta_rho = {d_rho:.6}");
                println!("delta_zeta = {d_zeta:.6}");
                if out.is_none() {
                    return Ok(());
                }
            }
            let grid = sample(&settings.grid, settings.ctx.v, built.evaluator.as_ref())?;
            emit(&grid, &built.meta, out, settings.format)
        }
        Command::Exact(args) => {
            let built = build_exact(
                settings.ctx.clone(),
                &cfg,
                "exact",
                args.family,
                args.n,
                args.an.clone(),
                args.a,
                args.s0,
                args.n_trunc,
                &settings.quad,
            )?;
            let grid = sample(&settings.grid, settings.ctx.v, built.evaluator.as_ref())?;
            emit(&grid, &built.meta, out, settings.format)
        }
        Command::FiniteEnergy(args) => {
            let built = build_finite_energy(
                settings.ctx.clone(),
                &cfg,
                "finite-energy",
                args.w0,
                args.q_w,
                args.a,
                args.s0,
                &settings.quad,
            )?;
            if args.report {
                finite_energy_report(&settings, &cfg, args)?;
                if out.is_none() {
                    return Ok(());
                }
            }
            let grid = sample(&settings.grid, settings.ctx.v, built.evaluator.as_ref())?;
            emit(&grid, &built.meta, out, settings.format)
        }
        Command::PotentialTrain(args) => {
            let (built, guide) = build_train(
                settings.ctx.clone(),
                &cfg,
                "potential-train",
                args.omega,
                &args.terms,
            )?;
            if args.list_modes {
                for mode in guide.solve_modes()? {
                    println!(
                        "n = {}: Lambda = {:.12}, p_z(plus) = {:.12}, p_z(minus) = {:.12}",
                        mode.n,
                        mode.lambda(),
                        mode.p_z(Branch::Plus),
                        mode.p_z(Branch::Minus),
                    );
                }
                if out.is_none() {
                    return Ok(());
                }
            }
            let grid = sample(&settings.grid, settings.ctx.v, built.evaluator.as_ref())?;
            emit(&grid, &built.meta, out, settings.format)
        }
        Command::Verify(args) => verify(&settings, &cfg, &args.check),
        Command::Errata => {
            print!("{}", errata::report()?);
            Ok(())
        }
    }
}

fn finite_energy_report(
    settings: &Settings,
    cfg: &Config,
    args: &crate::FiniteEnergyArgs,
) -> Result<(), CliError> {
    use crate::config::{layered, required};
    use lwschro::finite_energy::WSpectrum;
    let section = "finite-energy";
    let w0 = required(args.w0, cfg.f64(section, "w0")?, "w0")?;
    let q_w = required(args.q_w, cfg.f64(section, "q_w")?, "q-w")?;
    let a = layered(args.a, cfg.f64(section, "a")?, 0.0);
    let s0 = layered(args.s0, cfg.f64(section, "s0")?, 1.0);
    let wspec = WSpectrum::new(&settings.ctx, w0, q_w, a, s0)?;
    let scale = settings.ctx.hbar / settings.ctx.kinematics().sqrt_p().max(1e-6);
    let probes: Vec<f64> = vec![0.0, scale, 3.0 * scale];
    let report =
        closed_form_report(&settings.ctx, &wspec, &probes, &probes, &settings.quad)?;
    println!(
        "closed form vs quadrature: max relative deviation {:.3e} over {} probes \
         (tracks to 1e-3: {})",
        report.max_relative_deviation,
        report.points.len(),
        report.validated
    );
    let (norm, depth) = norm_and_depth(&settings.ctx, &wspec, &settings.quad)?;
    println!("L2 norm^2 = {norm:.6e}, depth of field = {depth:.6e}");
    Ok(())
}

fn verify(settings: &Settings, cfg: &Config, check: &CheckCommand) -> Result<(), CliError> {
    match check {
        CheckCommand::Residual(args) => {
            let built = build_from_family_args(
                settings.ctx.clone(),
                cfg,
                args,
                &settings.quad,
            )?;
            let report = schrodinger_residual(
                built.evaluator.as_ref(),
                &settings.ctx,
                &settings.grid,
                built.potential.as_deref(),
            )?;
            println!(
                "max residual = {:.6e}, L2 residual = {:.6e}, convergence order = {:.3}",
                report.max_residual, report.l2_residual, report.convergence_order
            );
            if !(1.8..=2.2).contains(&report.convergence_order) {
                return Err(CliError::tolerance(format!(
                    "finite-difference convergence order {:.3} outside [1.8, 2.2]: \
                     the field does not satisfy the Schrodinger equation at \
                     second order",
                    report.convergence_order
                )));
            }
            println!("residual check passed");
            Ok(())
        }
        CheckCommand::Translate(args) => {
            let built = build_from_family_args(
                settings.ctx.clone(),
                cfg,
                args,
                &settings.quad,
            )?;
            let scale = settings.ctx.hbar
                / (settings.ctx.mass * settings.ctx.v).max(1e-6);
            let probes = [
                Coords::axial(0.3 * scale, 0.2 * scale, 0.0),
                Coords::axial(1.1 * scale, -0.7 * scale, 0.0),
                Coords::axial(2.3 * scale, 1.4 * scale, 0.1),
            ];
            let deltas = [0.25, 0.5, 1.0, 2.0];
            let worst = rigid_translation_check(
                built.evaluator.as_ref(),
                settings.ctx.v,
                &probes,
                &deltas,
            )?;
            let tol = settings.tol.unwrap_or(1e-12);
            println!("max |Psi| drift along z = V t: {worst:.6e} (tolerance {tol:.1e})");
            if worst > tol {
                return Err(CliError::tolerance(format!(
                    "|Psi| is not invariant along z = V t: drift {worst:.3e} \
                     exceeds {tol:.1e}"
                )));
            }
            println!("translation check passed");
            Ok(())
        }
        CheckCommand::Propagate(args) => {
            let built = build_from_family_args(
                settings.ctx.clone(),
                cfg,
                args,
                &settings.quad,
            )?;
            if built.potential.is_some() {
                return Err(CliError::validation(
                    "the propagation check evolves with the free Hamiltonian; \
                     potential-guided fields are not supported",
                ));
            }
            let dt = if settings.t != 0.0 { settings.t } else { 0.5 };
            let mut initial_spec = settings.grid.clone();
            initial_spec.t_samples = vec![0.0];
            let initial =
                sample(&initial_spec, settings.ctx.v, built.evaluator.as_ref())?;
            let evolved = free_propagate(&settings.ctx, &initial, dt)?;
            // reference on the same lab-frame z values: z = zeta + V dt
            let mut target_spec = initial_spec.clone();
            target_spec.t_samples = vec![dt];
            target_spec.zeta_min -= settings.ctx.v * dt;
            target_spec.zeta_max -= settings.ctx.v * dt;
            let target = FieldGrid::sample(&target_spec, settings.ctx.v, |c| {
                built.evaluator.sample(c)
            })?;
            let dist = evolved.rel_l2_distance(&target)?;
            let tol = settings.tol.unwrap_or(1e-3);
            println!(
                "relative L2 distance after dt = {dt}: {dist:.6e} (tolerance {tol:.1e})"
            );
            if dist > tol {
                return Err(CliError::tolerance(format!(
                    "propagated field deviates from the evaluator by {dist:.3e} \
                     (tolerance {tol:.1e})"
                )));
            }
            println!("propagation check passed");
            Ok(())
        }
    }
}
