//! Config-file layering: key = value lines grouped in per-subcommand
//! sections, parsed as TOML. Command-line flags override file values,
//! which override the built-in defaults.

use crate::CliError;
use std::path::Path;

pub struct Config {
    table: toml::Table,
}

impl Config {
    pub fn empty() -> Self {
        Config { table: toml::Table::new() }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::validation(format!("cannot read config {}: {e}", path.display()))
        })?;
        let table: toml::Table = text.parse().map_err(|e| {
            CliError::validation(format!("config {}: {e}", path.display()))
        })?;
        Ok(Config { table })
    }

    fn value(&self, section: &str, key: &str) -> Option<&toml::Value> {
        self.table.get(section)?.as_table()?.get(key)
    }

    /// Numeric lookup in `section`, falling back to `[global]`.
    pub fn f64(&self, section: &str, key: &str) -> Result<Option<f64>, CliError> {
        for sec in [section, "global"] {
            if let Some(v) = self.value(sec, key) {
                return match v {
                    toml::Value::Float(f) => Ok(Some(*f)),
                    toml::Value::Integer(i) => Ok(Some(*i as f64)),
                    _ => Err(CliError::validation(format!(
                        "config [{sec}] {key}: expected a number, got {v}"
                    ))),
                };
            }
        }
        Ok(None)
    }

    pub fn usize(&self, section: &str, key: &str) -> Result<Option<usize>, CliError> {
        for sec in [section, "global"] {
            if let Some(v) = self.value(sec, key) {
                return v
                    .as_integer()
                    .filter(|i| *i >= 0)
                    .map(|i| Some(i as usize))
                    .ok_or_else(|| {
                        CliError::validation(format!(
                            "config [{sec}] {key}: expected a non-negative integer, got {v}"
                        ))
                    });
            }
        }
        Ok(None)
    }

    pub fn i32(&self, section: &str, key: &str) -> Result<Option<i32>, CliError> {
        for sec in [section, "global"] {
            if let Some(v) = self.value(sec, key) {
                return v.as_integer().map(|i| Some(i as i32)).ok_or_else(|| {
                    CliError::validation(format!(
                        "config [{sec}] {key}: expected an integer, got {v}"
                    ))
                });
            }
        }
        Ok(None)
    }

    pub fn string(&self, section: &str, key: &str) -> Result<Option<String>, CliError> {
        for sec in [section, "global"] {
            if let Some(v) = self.value(sec, key) {
                return v.as_str().map(|s| Some(s.to_string())).ok_or_else(|| {
                    CliError::validation(format!(
                        "config [{sec}] {key}: expected a string, got {v}"
                    ))
                });
            }
        }
        Ok(None)
    }
}

/// Flag value if given, else config value, else the default.
pub fn layered<T>(flag: Option<T>, from_config: Option<T>, default: T) -> T {
    flag.or(from_config).unwrap_or(default)
}

/// Flag value if given, else config value, else a validation error naming
/// the missing parameter.
pub fn required<T>(
    flag: Option<T>,
    from_config: Option<T>,
    name: &str,
) -> Result<T, CliError> {
    flag.or(from_config)
        .ok_or_else(|| CliError::validation(format!("missing required parameter --{name}")))
}
