//! Construction of solution-family evaluators from layered CLI/config
//! parameters, together with the export metadata that reproduces them.

use crate::config::{layered, required, Config};
use crate::{CliError, ExactFamily, FamilyArgs, FamilyName, ParaxialFamily};
use lwschro::exact::{
    fourier_coefficients, ExponentialPulse, FourierElement, SeriesPulse,
};
use lwschro::finite_energy::{FiniteEnergyPulse, WSpectrum};
use lwschro::io::ExportMeta;
use lwschro::numerics::QuadratureSpec;
use lwschro::paraxial::{ParaxialPulse, ParaxialSpectrum, SpectrumShape};
use lwschro::potential::{train_with_offset, Branch, HarmonicGuide, TrainTerm};
use lwschro::{beams, errata, Complex64, FieldEvaluator, PhysicalContext};

/// A constructed family: the evaluator, the guiding potential if any, and
/// metadata sufficient to reproduce the run.
pub struct BuiltFamily {
    pub evaluator: Box<dyn FieldEvaluator>,
    pub potential: Option<Box<dyn Fn(f64) -> f64 + Sync>>,
    pub meta: ExportMeta,
}

fn base_meta(family: &str, ctx: &PhysicalContext) -> ExportMeta {
    let mut meta = ExportMeta::new(family)
        .with_unit("hbar", ctx.hbar)
        .with_unit("mass", ctx.mass)
        .with_unit("V", ctx.v)
        .with_unit("b", ctx.b);
    meta.errata_flags = errata::flags();
    meta
}

pub fn parse_complex(text: &str, name: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse = |s: &str| {
        s.trim().parse::<f64>().map_err(|e| {
            CliError::validation(format!("--{name}: cannot parse {s:?}: {e}"))
        })
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(CliError::validation(format!(
            "--{name}: expected re or re,im, got {text:?}"
        ))),
    }
}

pub fn build_beam(
    ctx: PhysicalContext,
    cfg: &Config,
    section: &str,
    energy: Option<f64>,
    p_z: Option<f64>,
    order: Option<i32>,
) -> Result<BuiltFamily, CliError> {
    let energy = required(energy, cfg.f64(section, "E")?, "E")?;
    let p_z = required(p_z, cfg.f64(section, "pz")?, "pz")?;
    let order = layered(order, cfg.i32(section, "order")?, 0);
    let params = beams::BesselBeamParams::new(ctx.clone(), energy, p_z, order)?;
    let meta = base_meta("beam", &ctx)
        .with_param("E", energy)
        .with_param("pz", p_z)
        .with_param("order", order);
    Ok(BuiltFamily {
        evaluator: Box::new(beams::bessel_beam(params)),
        potential: None,
        meta,
    })
}

pub fn build_paraxial(
    ctx: PhysicalContext,
    cfg: &Config,
    section: &str,
    family: Option<ParaxialFamily>,
    alpha: Option<f64>,
    s: Option<f64>,
) -> Result<BuiltFamily, CliError> {
    let family = match (family, cfg.string(section, "family")?) {
        (Some(f), _) => f,
        (None, Some(name)) => parse_paraxial_family(&name)?,
        (None, None) => ParaxialFamily::G1,
    };
    let alpha = required(alpha, cfg.f64(section, "alpha")?, "alpha")?;
    let s = layered(s, cfg.f64(section, "s")?, f64::NAN);
    let (shape, label) = match family {
        ParaxialFamily::G1 => (SpectrumShape::Gaussian, "g1"),
        ParaxialFamily::Invp => (SpectrumShape::InversePower, "invp"),
        ParaxialFamily::I0 => {
            if !s.is_finite() {
                return Err(CliError::validation(
                    "the i0 family needs the modulation length --s",
                ));
            }
            (SpectrumShape::GaussianTimesI0 { s }, "i0")
        }
        ParaxialFamily::J0 => {
            if !s.is_finite() {
                return Err(CliError::validation(
                    "the j0 family needs the modulation length --s",
                ));
            }
            (SpectrumShape::GaussianTimesJ0 { s }, "j0")
        }
    };
    let spectrum = ParaxialSpectrum::new(shape, alpha)?;
    let pulse = ParaxialPulse::new(ctx.clone(), spectrum, 1.0)?;
    let mut meta = base_meta("paraxial", &ctx)
        .with_param("family", label)
        .with_param("alpha", alpha);
    if s.is_finite() {
        meta = meta.with_param("s", s);
    }
    Ok(BuiltFamily { evaluator: Box::new(pulse), potential: None, meta })
}

fn parse_paraxial_family(name: &str) -> Result<ParaxialFamily, CliError> {
    match name {
        "g1" => Ok(ParaxialFamily::G1),
        "invp" => Ok(ParaxialFamily::Invp),
        "i0" => Ok(ParaxialFamily::I0),
        "j0" => Ok(ParaxialFamily::J0),
        _ => Err(CliError::validation(format!(
            "unknown paraxial family {name:?} (expected g1, invp, i0 or j0)"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn build_exact(
    ctx: PhysicalContext,
    cfg: &Config,
    section: &str,
    family: Option<ExactFamily>,
    n: Option<i32>,
    an: Option<String>,
    a: Option<f64>,
    s0: Option<f64>,
    n_trunc: Option<u32>,
    quad: &QuadratureSpec,
) -> Result<BuiltFamily, CliError> {
    let family = match (family, cfg.string(section, "family")?) {
        (Some(f), _) => f,
        (None, Some(name)) => parse_exact_family(&name)?,
        (None, None) => ExactFamily::Mackinnon,
    };
    let a = layered(a, cfg.f64(section, "a")?, 0.0);
    let s0 = layered(s0, cfg.f64(section, "s0")?, 1.0);
    match family {
        ExactFamily::Element => {
            let n = layered(n, cfg.i32(section, "n")?, 0);
            let an_text =
                layered(an, cfg.string(section, "an")?, "1".to_string());
            let a_n = parse_complex(&an_text, "an")?;
            let meta = base_meta("exact-element", &ctx)
                .with_param("n", n)
                .with_param("an", &an_text);
            let element = FourierElement::new(ctx, n, a_n, 1.0)?;
            Ok(BuiltFamily { evaluator: Box::new(element), potential: None, meta })
        }
        ExactFamily::Mackinnon => {
            let meta = base_meta("exact-mackinnon", &ctx)
                .with_param("a", a)
                .with_param("s0", s0);
            let pulse = ExponentialPulse::new(ctx, a, s0, 1.0)?;
            Ok(BuiltFamily { evaluator: Box::new(pulse), potential: None, meta })
        }
        ExactFamily::Series => {
            let n_trunc = match n_trunc {
                Some(v) => v,
                None => cfg
                    .usize(section, "n_trunc")?
                    .map(|v| v as u32)
                    .unwrap_or(8),
            };
            let e_plus = ctx.kinematics().e_plus;
            let spectrum = move |e: f64| Complex64::new(s0 * (a * (e - e_plus)).exp(), 0.0);
            let coefficients = fourier_coefficients(&ctx, spectrum, n_trunc, quad)?;
            let meta = base_meta("exact-series", &ctx)
                .with_param("a", a)
                .with_param("s0", s0)
                .with_param("n_trunc", n_trunc);
            let pulse = SeriesPulse::new(ctx, coefficients, 1.0)?;
            Ok(BuiltFamily { evaluator: Box::new(pulse), potential: None, meta })
        }
    }
}

fn parse_exact_family(name: &str) -> Result<ExactFamily, CliError> {
    match name {
        "element" => Ok(ExactFamily::Element),
        "mackinnon" => Ok(ExactFamily::Mackinnon),
        "series" => Ok(ExactFamily::Series),
        _ => Err(CliError::validation(format!(
            "unknown exact family {name:?} (expected element, mackinnon or series)"
        ))),
    }
}

pub fn build_finite_energy(
    ctx: PhysicalContext,
    cfg: &Config,
    section: &str,
    w0: Option<f64>,
    q_w: Option<f64>,
    a: Option<f64>,
    s0: Option<f64>,
    quad: &QuadratureSpec,
) -> Result<BuiltFamily, CliError> {
    let w0 = required(w0, cfg.f64(section, "w0")?, "w0")?;
    let q_w = required(q_w, cfg.f64(section, "q_w")?, "q-w")?;
    let a = layered(a, cfg.f64(section, "a")?, 0.0);
    let s0 = layered(s0, cfg.f64(section, "s0")?, 1.0);
    let wspec = WSpectrum::new(&ctx, w0, q_w, a, s0)?;
    let meta = base_meta("finite-energy", &ctx)
        .with_param("w0", w0)
        .with_param("q_w", q_w)
        .with_param("a", a)
        .with_param("s0", s0);
    let pulse = FiniteEnergyPulse::new(ctx, wspec, quad.clone(), 1.0);
    Ok(BuiltFamily { evaluator: Box::new(pulse), potential: None, meta })
}

pub fn parse_term(text: &str) -> Result<TrainTerm, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(CliError::validation(format!(
            "--term: expected n,branch,re[,im], got {text:?}"
        )));
    }
    let n: u32 = parts[0].trim().parse().map_err(|e| {
        CliError::validation(format!("--term: mode index {:?}: {e}", parts[0]))
    })?;
    let branch = match parts[1].trim() {
        "plus" | "+" => Branch::Plus,
        "minus" | "-" => Branch::Minus,
        other => {
            return Err(CliError::validation(format!(
                "--term: branch must be plus or minus, got {other:?}"
            )))
        }
    };
    let coefficient = parse_complex(&parts[2..].join(","), "term")?;
    Ok(TrainTerm::new(n, branch, coefficient))
}

pub fn build_train(
    ctx: PhysicalContext,
    cfg: &Config,
    section: &str,
    omega: Option<f64>,
    terms: &[String],
) -> Result<(BuiltFamily, HarmonicGuide), CliError> {
    let omega = required(omega, cfg.f64(section, "omega")?, "omega")?;
    let term_texts: Vec<String> = if terms.is_empty() {
        match cfg.string(section, "terms")? {
            Some(joined) => joined.split(';').map(|s| s.trim().to_string()).collect(),
            None => vec!["0,plus,1".to_string()],
        }
    } else {
        terms.to_vec()
    };
    let parsed: Vec<TrainTerm> = term_texts
        .iter()
        .map(|t| parse_term(t))
        .collect::<Result<_, _>>()?;
    let guide = HarmonicGuide::new(ctx.clone(), omega)?;
    let train = train_with_offset(&guide, &parsed, ctx.b)?;
    let meta = base_meta("potential-train", &ctx)
        .with_param("omega", omega)
        .with_param("terms", term_texts.join(";"));
    let potential_guide = HarmonicGuide::new(ctx, omega)?;
    Ok((
        BuiltFamily {
            evaluator: Box::new(train),
            potential: Some(Box::new(move |rho| potential_guide.potential(rho))),
            meta,
        },
        guide,
    ))
}

/// Build the family selected by a `verify` subcommand from the union of
/// family parameters; config values come from the `[verify]` section.
pub fn build_from_family_args(
    ctx: PhysicalContext,
    cfg: &Config,
    args: &FamilyArgs,
    quad: &QuadratureSpec,
) -> Result<BuiltFamily, CliError> {
    let section = "verify";
    let family = match (args.family, cfg.string(section, "family")?) {
        (Some(f), _) => f,
        (None, Some(name)) => parse_family_name(&name)?,
        (None, None) => {
            return Err(CliError::validation("missing required parameter --family"))
        }
    };
    match family {
        FamilyName::Beam => {
            build_beam(ctx, cfg, section, args.energy, args.p_z, args.order)
        }
        FamilyName::Paraxial => build_paraxial(
            ctx,
            cfg,
            section,
            args.paraxial_family,
            args.alpha,
            args.s,
        ),
        FamilyName::Exact => build_exact(
            ctx,
            cfg,
            section,
            args.exact_family,
            args.n,
            args.an.clone(),
            args.a,
            args.s0,
            args.n_trunc,
            quad,
        ),
        FamilyName::FiniteEnergy => build_finite_energy(
            ctx, cfg, section, args.w0, args.q_w, args.a, args.s0, quad,
        ),
        FamilyName::PotentialTrain => {
            build_train(ctx, cfg, section, args.omega, &args.terms).map(|(f, _)| f)
        }
    }
}

fn parse_family_name(name: &str) -> Result<FamilyName, CliError> {
    match name {
        "beam" => Ok(FamilyName::Beam),
        "paraxial" => Ok(FamilyName::Paraxial),
        "exact" => Ok(FamilyName::Exact),
        "finite-energy" => Ok(FamilyName::FiniteEnergy),
        "potential-train" => Ok(FamilyName::PotentialTrain),
        _ => Err(CliError::validation(format!("unknown family {name:?}"))),
    }
}
