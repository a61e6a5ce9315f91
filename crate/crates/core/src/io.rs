//! Plot-ready export and exact re-import of sampled fields: CSV columns for
//! gnuplot-style tooling, JSON documents whose metadata fully determine how
//! the grid was produced.

use crate::numerics::{FieldGrid, GridSpec};
use crate::{Complex64, LwError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

/// Provenance block of a JSON export: which solution family produced the
/// grid, with which parameters and units, under which code version, and
/// which documented closed-form corrections were active.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportMeta {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub units: BTreeMap<String, f64>,
    pub code_version: String,
    pub errata_flags: Vec<String>,
}

impl ExportMeta {
    pub fn new(family: &str) -> Self {
        ExportMeta {
            family: family.to_string(),
            params: BTreeMap::new(),
            units: BTreeMap::new(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            errata_flags: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_unit(mut self, key: &str, value: f64) -> Self {
        self.units.insert(key.to_string(), value);
        self
    }
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    meta: ExportMeta,
    grid: GridSpec,
    #[serde(default)]
    grid_metadata: BTreeMap<String, String>,
    /// (re, im) pairs in grid storage order (t-slab, rho, zeta innermost)
    data: Vec<(f64, f64)>,
}

/// CSV with header `rho,zeta,t,re,im,abs2`, rows in grid storage order
/// (zeta innermost), floats printed as their shortest round-trip decimals.
pub fn write_csv<W: Write>(w: &mut W, grid: &FieldGrid) -> Result<()> {
    writeln!(w, "rho,zeta,t,re,im,abs2")?;
    let spec = &grid.spec;
    let rhos = spec.rho_values();
    let zetas = spec.zeta_values();
    for (it, &t) in spec.t_samples.iter().enumerate() {
        for (ir, &rho) in rhos.iter().enumerate() {
            for (iz, &zeta) in zetas.iter().enumerate() {
                let v = grid.value(it, ir, iz);
                writeln!(w, "{rho},{zeta},{t},{},{},{}", v.re, v.im, v.norm_sqr())?;
            }
        }
    }
    Ok(())
}

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub rho: f64,
    pub zeta: f64,
    pub t: f64,
    pub value: Complex64,
    pub abs2: f64,
}

/// Parse a CSV produced by [`write_csv`], in file order.
pub fn read_csv<R: BufRead>(r: R) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if lineno == 0 {
            if line.trim() != "rho,zeta,t,re,im,abs2" {
                return Err(LwError::Io(format!("unexpected CSV header: {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(LwError::Io(format!(
                "line {}: expected 6 fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| LwError::Io(format!("line {}: {e}", lineno + 1)))
        };
        rows.push(CsvRow {
            rho: parse(fields[0])?,
            zeta: parse(fields[1])?,
            t: parse(fields[2])?,
            value: Complex64::new(parse(fields[3])?, parse(fields[4])?),
            abs2: parse(fields[5])?,
        });
    }
    Ok(rows)
}

/// JSON document `{meta, grid, grid_metadata, data}`; numeric fidelity is
/// bit-exact across a round trip (shortest round-trip decimals).
pub fn write_json<W: Write>(w: &mut W, grid: &FieldGrid, meta: &ExportMeta) -> Result<()> {
    let doc = JsonDocument {
        meta: meta.clone(),
        grid: grid.spec.clone(),
        grid_metadata: grid.metadata.clone(),
        data: grid.values.iter().map(|v| (v.re, v.im)).collect(),
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)?;
    Ok(())
}

/// Re-import a JSON export: the grid (values bit-exact) and its metadata.
pub fn read_json<R: BufRead>(r: R) -> Result<(FieldGrid, ExportMeta)> {
    let doc: JsonDocument = serde_json::from_reader(r)?;
    doc.grid.validate()?;
    let expected = doc.grid.t_samples.len() * doc.grid.n_rho * doc.grid.n_zeta;
    if doc.data.len() != expected {
        return Err(LwError::Io(format!(
            "data length {} does not match grid shape ({} points)",
            doc.data.len(),
            expected
        )));
    }
    let grid = FieldGrid {
        spec: doc.grid,
        values: doc.data.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
        metadata: doc.grid_metadata,
    };
    Ok((grid, doc.meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSample;
    use crate::Coords;
    use std::io::BufReader;

    fn sample_grid() -> FieldGrid {
        let mut spec = GridSpec::new(2.0, 9, -1.0, 1.0, 8).unwrap();
        spec.t_samples = vec![0.0, 0.25];
        FieldGrid::sample(&spec, 1.0, |c: Coords| {
            FieldSample::good(
                c,
                Complex64::new(
                    (c.rho * 1.7 - c.z).sin() * 0.3,
                    (c.z * 0.9 + c.t).cos() / 3.0,
                ),
            )
        })
        .unwrap()
    }

    #[test]
    fn csv_round_trip_preserves_values() {
        let grid = sample_grid();
        let mut buf = Vec::new();
        write_csv(&mut buf, &grid).unwrap();
        let rows = read_csv(BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(rows.len(), grid.values.len());
        // shortest round-trip decimals reparse to the identical bits
        for (row, v) in rows.iter().zip(&grid.values) {
            assert_eq!(row.value, *v);
            assert_eq!(row.abs2, v.norm_sqr());
        }
        // zeta innermost: consecutive rows advance zeta first
        assert_eq!(rows[0].rho, rows[1].rho);
        assert!(rows[1].zeta > rows[0].zeta);
        // second t-slab present
        assert_eq!(rows[grid.values.len() / 2].t, 0.25);
    }

    #[test]
    fn csv_header_and_shape_checked() {
        assert!(read_csv(BufReader::new("bogus\n1,2,3,4,5,6\n".as_bytes())).is_err());
        assert!(read_csv(BufReader::new(
            "rho,zeta,t,re,im,abs2\n1,2,3\n".as_bytes()
        ))
        .is_err());
        assert!(read_csv(BufReader::new(
            "rho,zeta,t,re,im,abs2\n1,2,3,x,5,6\n".as_bytes()
        ))
        .is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let grid = sample_grid();
        let meta = ExportMeta::new("exact-element")
            .with_param("n", 2)
            .with_param("a_n", "1+0i")
            .with_unit("hbar", 1.0)
            .with_unit("mass", 1.0);
        let mut buf = Vec::new();
        write_json(&mut buf, &grid, &meta).unwrap();
        let (back, meta_back) = read_json(BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(back.values, grid.values);
        assert_eq!(back.spec, grid.spec);
        assert_eq!(back.metadata, grid.metadata);
        assert_eq!(meta_back, meta);
        assert_eq!(meta_back.code_version, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn json_shape_mismatch_rejected() {
        let grid = sample_grid();
        let meta = ExportMeta::new("test");
        let mut buf = Vec::new();
        write_json(&mut buf, &grid, &meta).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // drop one data pair
        let truncated = text.replacen("[\n      0.0,", "[\n      [0.0,", 0); // no-op guard
        assert_eq!(truncated, text);
        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        let data = doc["data"].as_array_mut().unwrap();
        data.pop();
        let bad = serde_json::to_string(&doc).unwrap();
        assert!(read_json(BufReader::new(bad.as_bytes())).is_err());
    }
}
