//! `key = value` run configuration with `[section]` headers.
//!
//! Keys before the first header (or under `[run]`) are run-wide; every other
//! section is named after a subcommand. Unknown sections and keys are
//! rejected before anything is computed.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

const RUN_KEYS: &[&str] = &["eigen_schedule", "truncation_dim", "seed", "samples", "tolerance", "nodes", "format", "threads"];

const SECTIONS: &[(&str, &[&str])] = &[
    ("transform", &["phi", "subspace", "method"]),
    ("sinogram", &["phi", "directions", "angles", "offsets", "method", "bump_radius", "bump_center"]),
    ("recover", &["input"]),
    ("tower", &["phi", "x", "n_max"]),
    ("ballmass", &["p", "center", "radius", "dims"]),
    ("basis", &["n", "grid"]),
    ("measure", &["subspace"]),
];

/// Keys that must hold strictly positive values.
const POSITIVE: &[&str] = &["truncation_dim", "seed", "samples", "nodes", "threads"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<(String, String), String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut section = "run".to_string();
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = format!("line {}", lineno + 1);
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::invalid(&at, format!("malformed section header `{line}`")))?
                    .trim();
                if name != "run" && !SECTIONS.iter().any(|(s, _)| *s == name) {
                    return Err(CliError::invalid(&at, format!("unknown section [{name}]")));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::invalid(&at, format!("expected key = value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let allowed = if section == "run" {
                RUN_KEYS
            } else {
                SECTIONS.iter().find(|(s, _)| *s == section).map(|(_, k)| *k).unwrap_or(&[])
            };
            let full = format!("{section}.{key}");
            if !allowed.contains(&key) {
                return Err(CliError::invalid(&full, "unknown key"));
            }
            if values.insert((section.clone(), key.to_string()), value.to_string()).is_some() {
                return Err(CliError::invalid(&full, "duplicate key"));
            }
        }
        let config = Self { values };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> CliResult<()> {
        for key in POSITIVE {
            if let Some(v) = self.run::<u64>(key)? {
                if v == 0 {
                    return Err(CliError::invalid(&format!("run.{key}"), "must be positive"));
                }
            }
        }
        if let Some(t) = self.run::<f64>("tolerance")? {
            if !(t > 0.0) {
                return Err(CliError::invalid("run.tolerance", "must be > 0"));
            }
        }
        Ok(())
    }

    /// Raw text of `section.key`.
    pub fn raw(&self, section: &str, key: &str) -> Option<&str> {
        self.values.get(&(section.to_string(), key.to_string())).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, section: &str, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(section, key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::invalid(&format!("{section}.{key}"), e)))
            .transpose()
    }

    pub fn run<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get("run", key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_comments() {
        let c = RunConfig::parse("seed = 7 # comment\n\n[transform]\nphi = 1@1:1\nmethod = mc\n").unwrap();
        assert_eq!(c.run::<u64>("seed").unwrap(), Some(7));
        assert_eq!(c.raw("transform", "phi"), Some("1@1:1"));
        assert_eq!(c.raw("transform", "subspace"), None);
    }

    #[test]
    fn rejects_unknown_keys_and_sections() {
        let err = RunConfig::parse("sede = 7\n").unwrap_err().to_string();
        assert!(err.contains("run.sede"), "{err}");
        assert!(RunConfig::parse("[transform]\nseed = 1\n").is_err());
        assert!(RunConfig::parse("[nope]\n").is_err());
        assert!(RunConfig::parse("seed 7\n").is_err());
        assert!(RunConfig::parse("seed = 1\nseed = 2\n").is_err());
    }

    #[test]
    fn rejects_non_positive_values() {
        for bad in ["seed = 0", "samples = 0", "truncation_dim = 0", "tolerance = 0", "tolerance = -1", "seed = x"] {
            assert!(RunConfig::parse(bad).is_err(), "{bad}");
        }
    }
}
