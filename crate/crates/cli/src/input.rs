//! Shared input resolution: knots, matrices, expressions, libraries, and
//! the precision knob. Everything is parsed and validated here before any
//! computation starts.

use std::env;
use std::fs;
use std::io::Read;

use num::rational::BigRational;
use num::Signed;
use serde_json::Value;

use rho_core::error::{Error, Result};
use rho_core::families::KnotLibrary;
use rho_core::infection::{parse_dsl, EvalOptions, ManifoldExpr};
use rho_core::ratio::parse_rational;
use rho_core::seifert::registry::knot_by_name;
use rho_core::SeifertMatrix;

/// Environment variable holding the default rho0 tolerance, read when no
/// --tolerance flag is given. Accepts the same `p/q` / decimal syntax.
pub const TOLERANCE_ENV: &str = "RHO_TOLERANCE";

/// File path, or `-` for standard input.
pub fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(source).map_err(|e| Error::Parse(format!("reading {source:?}: {e}")))
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))
}

/// A Seifert matrix given inline as JSON rows, or `-` to read them from
/// standard input.
pub fn matrix_arg(source: &str) -> Result<SeifertMatrix> {
    let text = if source.trim_start().starts_with('[') {
        source.to_string()
    } else {
        read_source(source)?
    };
    let v = parse_json(&text)?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse("matrix entries must be integers".into()))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SeifertMatrix::new(rows)
}

/// Exactly one of --knot NAME and --matrix JSON. Returns the name when one
/// was given, for echoing in reports.
pub fn knot_arg(
    knot: &Option<String>,
    matrix: &Option<String>,
) -> Result<(Option<String>, SeifertMatrix)> {
    match (knot, matrix) {
        (Some(name), None) => Ok((Some(name.clone()), knot_by_name(name)?)),
        (None, Some(source)) => Ok((None, matrix_arg(source)?)),
        _ => Err(Error::Parse(
            "give exactly one of --knot and --matrix".into(),
        )),
    }
}

/// Exactly one of --dsl PIPELINE and --json FILE (`-` for stdin).
pub fn expr_arg(dsl: &Option<String>, json: &Option<String>) -> Result<ManifoldExpr> {
    match (dsl, json) {
        (Some(pipeline), None) => parse_dsl(pipeline),
        (None, Some(source)) => ManifoldExpr::from_json(&parse_json(&read_source(source)?)?),
        _ => Err(Error::Parse("give exactly one of --dsl and --json".into())),
    }
}

/// Library file (`-` for stdin), or the built-in standard library.
pub fn library_arg(library: &Option<String>) -> Result<KnotLibrary> {
    match library {
        Some(source) => KnotLibrary::from_json(&parse_json(&read_source(source)?)?),
        None => Ok(KnotLibrary::standard()),
    }
}

/// The rho0 accuracy to request: the --tolerance flag if given, else the
/// environment default, else the engine default.
pub fn tolerance_arg(flag: &Option<String>) -> Result<Option<BigRational>> {
    let source = match flag {
        Some(s) => Some(s.clone()),
        None => env::var(TOLERANCE_ENV).ok(),
    };
    match source {
        None => Ok(None),
        Some(s) => {
            let tol = parse_rational(&s)?;
            if !tol.is_positive() {
                return Err(Error::Parse(format!("tolerance must be positive, got {s}")));
            }
            Ok(Some(tol))
        }
    }
}

pub fn eval_options(tolerance: Option<BigRational>, max_depth: usize) -> EvalOptions {
    EvalOptions {
        max_depth,
        tolerance,
    }
}

/// Comma-separated rationals.
pub fn values_arg(source: &str) -> Result<Vec<BigRational>> {
    source
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(Error::Parse("empty value list".into()))
            } else {
                Ok(v)
            }
        })
}

/// Comma-separated registry knot names.
pub fn knots_arg(source: &str) -> Result<Vec<(String, SeifertMatrix)>> {
    let mut out = Vec::new();
    for name in source.split(',') {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Parse("empty knot name in list".into()));
        }
        out.push((name.to_string(), knot_by_name(name)?));
    }
    Ok(out)
}
