//! Output shaping. Every command produces a canonical JSON document plus a
//! text and, where it makes sense, a CSV projection of the same data. JSON
//! objects serialize with sorted keys, so repeated runs are byte-identical.

use serde_json::Value;

use rho_core::error::Error;
use rho_core::ratio::format_rational;
use rho_core::seifert::signature::Breakpoint;
use rho_core::Rho0Value;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Pretty JSON with a trailing newline.
pub fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing owned JSON cannot fail");
    s.push('\n');
    s
}

/// `key: value` lines.
pub fn kv_text(pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(v);
        out.push('\n');
    }
    out
}

/// A `key,value` table with header, quoting nothing: all emitted values
/// are rationals, integers, or bare identifiers.
pub fn kv_csv(pairs: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in pairs {
        out.push_str(k);
        out.push(',');
        out.push_str(v);
        out.push('\n');
    }
    out
}

pub fn value_pair(v: &Rho0Value) -> Value {
    serde_json::json!({
        "value": format_rational(&v.value),
        "error_bound": format_rational(&v.error_bound),
    })
}

/// `p/q` for an exact value, `p/q ~ e` carrying the bound otherwise.
pub fn value_text(v: &Rho0Value) -> String {
    if v.is_exact() {
        format_rational(&v.value)
    } else {
        format!(
            "{} ~ {}",
            format_rational(&v.value),
            format_rational(&v.error_bound)
        )
    }
}

/// Breakpoint angle: the exact rational, or `[lo, hi]` for an enclosure.
pub fn breakpoint_text(b: &Breakpoint) -> String {
    match &b.exact {
        Some(t) => format_rational(t),
        None => format!("[{}, {}]", format_rational(&b.lo), format_rational(&b.hi)),
    }
}

pub fn breakpoint_json(b: &Breakpoint) -> Value {
    serde_json::json!({
        "lo": format_rational(&b.lo),
        "hi": format_rational(&b.hi),
        "exact": b.exact.as_ref().map(format_rational),
    })
}

/// `2*a + 3*b - 1*c` from named coefficients.
pub fn combo_text(combo: &[(String, i64)]) -> String {
    if combo.is_empty() {
        return "(empty)".into();
    }
    let mut out = String::new();
    for (i, (name, c)) in combo.iter().enumerate() {
        if i == 0 {
            out.push_str(&format!("{c}*{name}"));
        } else if *c < 0 {
            out.push_str(&format!(" - {}*{name}", -c));
        } else {
            out.push_str(&format!(" + {c}*{name}"));
        }
    }
    out
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::UnknownKnot(_) => "unknown_knot",
        Error::InvalidSeifertMatrix(_) => "invalid_matrix",
        Error::Precondition(_) => "precondition",
        Error::DepthOverflow { .. } => "depth_overflow",
        Error::TargetUnreachable { .. } => "target_unreachable",
        Error::Internal(_) => "internal",
    }
}

/// Machine-readable single-line error for stderr.
pub fn error_line(e: &Error) -> String {
    serde_json::json!({
        "error": {
            "kind": error_kind(e),
            "message": e.to_string(),
        }
    })
    .to_string()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownKnot(_) | Error::InvalidSeifertMatrix(_) => 2,
        Error::Precondition(_) | Error::TargetUnreachable { .. } => 3,
        Error::DepthOverflow { .. } => 4,
        Error::Internal(_) => 1,
    }
}
