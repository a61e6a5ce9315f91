//! Grid sampling and export: fill the requested lattice from an evaluator
//! and write CSV or JSON to a file or stdout.

use crate::{CliError, Format};
use lwschro::io::{write_csv, write_json, ExportMeta};
use lwschro::numerics::{FieldGrid, GridSpec};
use lwschro::FieldEvaluator;
use std::io::{BufWriter, Write};
use std::path::Path;

pub fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 5 {
        return Err(CliError::validation(format!(
            "--grid: expected rho_max,n_rho,zeta_min,zeta_max,n_zeta, got {text:?}"
        )));
    }
    let f = |i: usize, name: &str| -> Result<f64, CliError> {
        parts[i].trim().parse().map_err(|e| {
            CliError::validation(format!("--grid {name}: cannot parse {:?}: {e}", parts[i]))
        })
    };
    let u = |i: usize, name: &str| -> Result<usize, CliError> {
        parts[i].trim().parse().map_err(|e| {
            CliError::validation(format!("--grid {name}: cannot parse {:?}: {e}", parts[i]))
        })
    };
    Ok(GridSpec::new(
        f(0, "rho_max")?,
        u(1, "n_rho")?,
        f(2, "zeta_min")?,
        f(3, "zeta_max")?,
        u(4, "n_zeta")?,
    )?)
}

pub fn sample(
    spec: &GridSpec,
    v: f64,
    evaluator: &dyn FieldEvaluator,
) -> Result<FieldGrid, CliError> {
    Ok(FieldGrid::sample(spec, v, |c| evaluator.sample(c))?)
}

pub fn emit(
    grid: &FieldGrid,
    meta: &ExportMeta,
    out: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| {
                CliError::validation(format!("cannot create {}: {e}", path.display()))
            })?;
            let mut w = BufWriter::new(file);
            write(&mut w, grid, meta, format)?;
            w.flush().map_err(|e| CliError::validation(e.to_string()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write(&mut w, grid, meta, format)?;
            w.flush().map_err(|e| CliError::validation(e.to_string()))?;
        }
    }
    Ok(())
}

fn write<W: Write>(
    w: &mut W,
    grid: &FieldGrid,
    meta: &ExportMeta,
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(w, grid)?,
        Format::Json => write_json(w, grid, meta)?,
    }
    Ok(())
}
