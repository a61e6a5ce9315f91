//! Command-line front end: build any solution family, sample it on a grid,
//! run verifications, export plot-ready data.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical-tolerance failure.

mod config;
mod family;
mod output;
mod run;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lwschro",
    about = "Localized solutions of the free-particle Schrodinger equation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Reduced Planck constant
    #[arg(long, global = true)]
    pub hbar: Option<f64>,

    /// Particle mass
    #[arg(long, global = true)]
    pub mass: Option<f64>,

    /// Peak speed of the localized solution
    #[arg(long = "V", global = true)]
    pub v: Option<f64>,

    /// Energy offset of the spectral line E = V p_z + b
    #[arg(long, global = true)]
    pub b: Option<f64>,

    /// Sampling grid as rho_max,n_rho,zeta_min,zeta_max,n_zeta
    #[arg(long, global = true)]
    pub grid: Option<String>,

    /// Time of the sampled slab (co-moving window z = zeta + V t)
    #[arg(long, global = true)]
    pub t: Option<f64>,

    /// Output file; omitted means stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Quadrature tolerance / verification gate
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Worker thread count (results are identical for every N)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Config file (key = value lines in per-subcommand sections);
    /// command-line flags override file values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Single nondiffracting Bessel beam at energy E and axial momentum p_z
    Beam(BeamArgs),
    /// Well-collimated pulse from a transverse-momentum spectrum
    Paraxial(ParaxialArgs),
    /// Exact localized pulses from spectra on the line E = V p_z + b
    Exact(ExactArgs),
    /// Square-integrable pulse from a Gaussian spectrum in sqrt(P)
    FiniteEnergy(FiniteEnergyArgs),
    /// Pulse train guided by a transverse harmonic potential
    PotentialTrain(TrainArgs),
    /// Numerical verification of a constructed family
    Verify(VerifyArgs),
    /// Print the ledger of documented closed-form corrections with
    /// freshly computed numerical evidence
    Errata,
}

#[derive(Args)]
pub struct BeamArgs {
    /// Beam energy E (requires E <= E_+)
    #[arg(long = "E")]
    pub energy: Option<f64>,

    /// Axial momentum p_z (consistency with E is checked)
    #[arg(long = "pz")]
    pub p_z: Option<f64>,

    /// Azimuthal order of the transverse Bessel profile
    #[arg(long)]
    pub order: Option<i32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParaxialFamily {
    /// Gaussian bump spectrum (closed form is a Gaussian pulse)
    G1,
    /// 1/p spectrum; regularized finite part, only differences physical
    Invp,
    /// Gaussian widened by a modified-Bessel factor I0(s p / hbar)
    I0,
    /// Annular Gaussian modulated by J0(s p / hbar)
    J0,
}

#[derive(Args)]
pub struct ParaxialArgs {
    #[arg(long, value_enum)]
    pub family: Option<ParaxialFamily>,

    /// Dimensionless spectral concentration alpha (q = alpha/(mV)^2)
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Modulation length for the i0 / j0 families
    #[arg(long)]
    pub s: Option<f64>,

    /// Print the measured 1/e (rho) and 1/e^2 (zeta) intensity half-widths
    #[arg(long)]
    pub measure_widths: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactFamily {
    /// Single Fourier element of the spectral interval [E-, E+]
    Element,
    /// Exponential spectrum e^{a(E - E_+)}; a = 0 is the uniform-spectrum
    /// ball-like pulse
    Mackinnon,
    /// Truncated Fourier series of the exponential spectrum
    Series,
}

#[derive(Args)]
pub struct ExactArgs {
    #[arg(long, value_enum)]
    pub family: Option<ExactFamily>,

    /// Element index n
    #[arg(long)]
    pub n: Option<i32>,

    /// Element coefficient a_n as re,im
    #[arg(long)]
    pub an: Option<String>,

    /// Spectral decay rate a >= 0 (mackinnon / series)
    #[arg(long)]
    pub a: Option<f64>,

    /// Spectral amplitude s0
    #[arg(long)]
    pub s0: Option<f64>,

    /// Series truncation: indices n in [-n_trunc, n_trunc]
    #[arg(long)]
    pub n_trunc: Option<u32>,
}

#[derive(Args)]
pub struct FiniteEnergyArgs {
    /// Center of the Gaussian spectrum in w = sqrt(P)
    #[arg(long)]
    pub w0: Option<f64>,

    /// Spectral concentration q_w (width 1/sqrt(2 q_w))
    #[arg(long)]
    pub q_w: Option<f64>,

    /// Exponential tilt a of the spectrum
    #[arg(long)]
    pub a: Option<f64>,

    /// Spectral amplitude s0
    #[arg(long)]
    pub s0: Option<f64>,

    /// Print the closed form vs quadrature comparison and the measured
    /// L2 norm and depth of field
    #[arg(long)]
    pub report: bool,
}

#[derive(Args)]
pub struct TrainArgs {
    /// Trap frequency omega of U = (1/2) m omega^2 rho^2
    #[arg(long)]
    pub omega: Option<f64>,

    /// One train term as n,branch,re[,im] with branch plus|minus;
    /// repeatable
    #[arg(long = "term")]
    pub terms: Vec<String>,

    /// Print the admissible modes and their momentum pairs
    #[arg(long)]
    pub list_modes: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: CheckCommand,
}

#[derive(Subcommand)]
pub enum CheckCommand {
    /// Finite-difference Schrodinger residual and its convergence order
    Residual(FamilyArgs),
    /// Rigid-translation invariance of |Psi| along z = V t
    Translate(FamilyArgs),
    /// Spectral free propagation of a sampled slab vs the evaluator
    Propagate(FamilyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Beam,
    Paraxial,
    Exact,
    FiniteEnergy,
    PotentialTrain,
}

/// Union of the family parameters, for the verify subcommands.
#[derive(Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,

    #[arg(long = "E")]
    pub energy: Option<f64>,
    #[arg(long = "pz")]
    pub p_z: Option<f64>,
    #[arg(long)]
    pub order: Option<i32>,

    /// Paraxial sub-family (g1 | invp | i0 | j0)
    #[arg(long)]
    pub paraxial_family: Option<ParaxialFamily>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,

    /// Exact sub-family (element | mackinnon | series)
    #[arg(long)]
    pub exact_family: Option<ExactFamily>,
    #[arg(long)]
    pub n: Option<i32>,
    #[arg(long)]
    pub an: Option<String>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub s0: Option<f64>,
    #[arg(long)]
    pub n_trunc: Option<u32>,

    #[arg(long)]
    pub w0: Option<f64>,
    #[arg(long)]
    pub q_w: Option<f64>,

    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long = "term")]
    pub terms: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Failure with its process exit code: 2 for validation, 3 for a numerical
/// tolerance that was not met.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn tolerance(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl From<lwschro::LwError> for CliError {
    fn from(e: lwschro::LwError) -> Self {
        use lwschro::LwError;
        let code = match e {
            LwError::ToleranceNotMet { .. }
            | LwError::NonFinite { .. }
            | LwError::IntegrationDomain(_)
            | LwError::Measurement(_) => 3,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}
