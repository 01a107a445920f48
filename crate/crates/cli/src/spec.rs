//! Text grammar for subspaces on the command line:
//! `hyperplane:alpha=<a>,v=<coordvec>` or
//! `affine:a=<coordvec>,block=<m>,proj=<file|zero|identity>,tail=<in|out>`.

use std::collections::BTreeMap;
use std::path::Path;

use gaussradon::coord::{AffineSubspace, Hyperplane, Subspace};
use gaussradon::format::parse_f64;
use gaussradon::CoordVec;
use nalgebra::DMatrix;

use crate::error::{CliError, CliResult, WithKey};

/// A parsed subspace; hyperplanes keep their `(alpha, v)` form for the
/// quadrature route.
#[derive(Debug, Clone)]
pub enum SubspaceSpec {
    Hyperplane(Hyperplane),
    Affine(AffineSubspace),
}

impl SubspaceSpec {
    pub fn affine(&self) -> AffineSubspace {
        match self {
            Self::Hyperplane(h) => h.to_affine(),
            Self::Affine(a) => a.clone(),
        }
    }
}

fn fields<'a>(key: &str, body: &'a str, allowed: &[&str]) -> CliResult<BTreeMap<&'a str, &'a str>> {
    let mut out = BTreeMap::new();
    for item in body.split(',') {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::invalid(key, format!("expected name=value, got `{item}`")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(CliError::invalid(key, format!("unknown field `{k}`")));
        }
        if out.insert(k, v.trim()).is_some() {
            return Err(CliError::invalid(key, format!("duplicate field `{k}`")));
        }
    }
    for k in allowed {
        if !out.contains_key(k) {
            return Err(CliError::invalid(key, format!("missing field `{k}`")));
        }
    }
    Ok(out)
}

/// `key` names the flag or config entry for diagnostics. Hyperplane
/// directions are normalized; a relative `proj` file is resolved against
/// the working directory.
pub fn parse_subspace(key: &str, text: &str) -> CliResult<SubspaceSpec> {
    let (kind, body) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| CliError::invalid(key, "expected hyperplane:... or affine:..."))?;
    match kind {
        "hyperplane" => {
            let f = fields(key, body, &["alpha", "v"])?;
            let alpha = parse_f64(f["alpha"]).key(key)?;
            let v = CoordVec::parse(f["v"]).key(key)?;
            Ok(SubspaceSpec::Hyperplane(Hyperplane::normalized(alpha, &v).key(key)?))
        }
        "affine" => {
            let f = fields(key, body, &["a", "block", "proj", "tail"])?;
            let anchor = CoordVec::parse(f["a"]).key(key)?;
            let m: usize = f["block"]
                .parse()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| CliError::invalid(key, "block must be a positive integer"))?;
            let tail_in = match f["tail"] {
                "in" => true,
                "out" => false,
                other => return Err(CliError::invalid(key, format!("tail must be in|out, got `{other}`"))),
            };
            let projector = match f["proj"] {
                "zero" => DMatrix::zeros(m, m),
                "identity" => DMatrix::identity(m, m),
                path => read_matrix(key, Path::new(path), m)?,
            };
            let subspace = Subspace::new(projector, tail_in).key(key)?;
            Ok(SubspaceSpec::Affine(AffineSubspace::new(anchor, subspace).key(key)?))
        }
        other => Err(CliError::invalid(key, format!("unknown subspace kind `{other}`"))),
    }
}

/// `m` rows of `m` numbers separated by commas or whitespace.
fn read_matrix(key: &str, path: &Path, m: usize) -> CliResult<DMatrix<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| l.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(parse_f64).collect())
        .collect::<gaussradon::Result<_>>()
        .key(key)?;
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(CliError::invalid(key, format!("projector file must hold a {m}x{m} matrix")));
    }
    Ok(DMatrix::from_fn(m, m, |i, j| rows[i][j]))
}

/// Comma-separated CoordVecs, each normalized to unit length.
pub fn parse_directions(key: &str, text: &str) -> CliResult<Vec<CoordVec>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let v = CoordVec::parse(s).key(key)?;
            Ok(Hyperplane::normalized(0.0, &v).key(key)?.normal().clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_spec() {
        let SubspaceSpec::Hyperplane(h) = parse_subspace("s", "hyperplane:alpha=1.5,v=1:3;2:4").unwrap() else {
            panic!("expected hyperplane");
        };
        assert_eq!(h.alpha(), 1.5);
        assert!((h.normal().get(1) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn affine_spec() {
        let s = parse_subspace("s", "affine:a=1:2.0,block=2,proj=zero,tail=in").unwrap().affine();
        assert_eq!(s.block_dim(), 2);
        assert!(s.tail_in());
        assert!(parse_subspace("s", "affine:a=3:1,block=2,proj=zero,tail=in").is_err());
        assert!(parse_subspace("s", "affine:a=0,block=2,proj=identity,tail=sideways").is_err());
        assert!(parse_subspace("s", "affine:a=0,block=2,proj=identity").is_err());
    }

    #[test]
    fn malformed_specs_name_the_key() {
        let err = parse_subspace("--subspace", "plane:alpha=1").unwrap_err().to_string();
        assert!(err.starts_with("--subspace:"), "{err}");
        assert!(parse_subspace("k", "hyperplane:alpha=1,v=0").is_err());
        assert!(parse_subspace("k", "hyperplane:alpha=1,v=1:1,w=2").is_err());
    }

    #[test]
    fn directions_are_normalized() {
        let d = parse_directions("d", "1:2,2:-1;3:0").unwrap();
        assert_eq!(d, vec![CoordVec::unit(1).unwrap(), CoordVec::unit(2).unwrap().scale(-1.0)]);
    }
}
