//! Command line front end for the invariant engine. Each subcommand is a
//! batch computation: read inputs, compute, print one document to stdout.
//! Errors go to stderr as single-line JSON with a stable exit code.

mod input;
mod render;

use clap::{Parser, Subcommand};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;
use serde_json::{json, Value};

use rho_core::error::{Error, Result};
use rho_core::families::{
    approximate_target_with, arf_zero_twist_sums, generate_family, independence_certificate,
    RelationVerdict,
};
use rho_core::freegroup::{derived_depth, parse_word, DerivedDepth};
use rho_core::infection::{
    bing_double, check_vanishing_with, infer_link_tags, rho_vector_with, slice_obstruction_with,
    DegreeBound, SliceVerdict,
};
use rho_core::ratio::{format_rational, parse_rational, rat};
use rho_core::seifert::poly::format_poly;
use rho_core::seifert::{rho0, rho0_with_tolerance, signature_function};
use rho_core::{Rho0Value, RhoVector, SeifertMatrix};

use render::Format;

/// Knot concordance calculator: signature integrals over the circle,
/// derived-series depth of curves, infection pipelines, and bounded
/// integer-relation certificates.
#[derive(Parser)]
#[command(name = "rho", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Accuracy requested from real-valued invariants, as a positive
    /// rational like 1/1000000000. Falls back to the RHO_TOLERANCE
    /// environment variable, then to the engine default.
    #[arg(long, global = true)]
    tolerance: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary invariants of one knot.
    KnotInfo {
        /// Registry name: unknot, trefoil, figure8, twist(K), mirror(..),
        /// or a connected sum with #.
        #[arg(long)]
        knot: Option<String>,
        /// Seifert matrix as JSON rows, inline or a file path (- reads
        /// stdin).
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Signature function on the unit circle.
    Sigfn {
        #[arg(long)]
        knot: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// Sample count for csv output: rows t,sigma at t = i/N.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Integral of the signature function, normalized to circle length 1.
    Rho0 {
        #[arg(long)]
        knot: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Derived-series depth of a free-group word.
    Depth {
        /// Word in x1, x2, ... with ^ powers and [a,b] commutators.
        #[arg(long)]
        word: String,
        /// Number of generators the word may use.
        #[arg(long)]
        rank: usize,
        /// Deepest derived subgroup probed before reporting a lower bound.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Evaluate an infection expression to its rho invariant vector.
    Eval {
        /// Pipeline like 'trivial(2) |> infect([x1,x2], knot:"trefoil")'.
        #[arg(long)]
        dsl: Option<String>,
        /// Expression tree as a JSON file (- reads stdin).
        #[arg(long)]
        json: Option<String>,
        /// Depth-search cutoff for infection curves.
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
    /// Iterated Bing double of a knot, presented as an infected trivial
    /// link.
    Bing {
        #[arg(long)]
        knot: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        /// Doubling iterations; curve depth grows by one per step.
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
    /// Infection family over a shared depth-n curve, one member per knot.
    Family {
        /// Derived depth of the infection curve.
        #[arg(long)]
        depth: usize,
        /// Strand count of the underlying trivial link.
        #[arg(long)]
        strands: usize,
        /// Comma-separated registry knot names to infect with.
        #[arg(long)]
        knots: Option<String>,
        /// Use the built-in arf-zero twist-knot sums instead of --knots.
        #[arg(long)]
        twist_sums: bool,
    },
    /// Realize a target rational as the rho0 of a small block sum over a
    /// knot library.
    Approx {
        /// Target value, e.g. 1/2 or -1.25.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Radius the achieved value must land within.
        #[arg(long, default_value = "1/100", allow_hyphen_values = true)]
        eps: String,
        /// Library file (- reads stdin); defaults to the built-in library.
        #[arg(long)]
        library: Option<String>,
        /// Largest coefficient magnitude tried per library entry.
        #[arg(long, default_value_t = 8)]
        budget: i64,
    },
    /// Scan for integer relations among rho0 values and certify the
    /// outcome.
    Independence {
        /// Comma-separated exact rational values.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
        /// Comma-separated registry knot names.
        #[arg(long)]
        knots: Option<String>,
        /// Library file (- reads stdin).
        #[arg(long)]
        library: Option<String>,
        /// Largest coefficient magnitude scanned.
        #[arg(long, default_value_t = 20)]
        bound: i64,
        /// A combination counts as a relation when it lands within this.
        #[arg(long, default_value = "1/1000000", allow_hyphen_values = true)]
        tau: String,
    },
    /// Check an expression's solvability tag against its computed rho
    /// vector.
    Audit {
        #[arg(long)]
        dsl: Option<String>,
        #[arg(long)]
        json: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(doc) => print!("{doc}"),
        Err(e) => {
            eprintln!("{}", render::error_line(&e));
            std::process::exit(render::exit_code(&e));
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    let tol = input::tolerance_arg(&cli.tolerance)?;
    let fmt = cli.format;
    match cli.command {
        Command::KnotInfo { knot, matrix } => knot_info(&knot, &matrix, &tol, fmt),
        Command::Sigfn {
            knot,
            matrix,
            samples,
        } => sigfn(&knot, &matrix, samples, fmt),
        Command::Rho0 { knot, matrix } => rho0_cmd(&knot, &matrix, &tol, fmt),
        Command::Depth { word, rank, max_n } => depth_cmd(&word, rank, max_n, fmt),
        Command::Eval {
            dsl,
            json,
            max_depth,
        } => eval_cmd(&dsl, &json, max_depth, tol, fmt),
        Command::Bing {
            knot,
            matrix,
            iterations,
        } => bing_cmd(&knot, &matrix, iterations, tol, fmt),
        Command::Family {
            depth,
            strands,
            knots,
            twist_sums,
        } => family_cmd(depth, strands, &knots, twist_sums, tol, fmt),
        Command::Approx {
            target,
            eps,
            library,
            budget,
        } => approx_cmd(&target, &eps, &library, budget, fmt),
        Command::Independence {
            values,
            knots,
            library,
            bound,
            tau,
        } => independence_cmd(&values, &knots, &library, bound, &tau, fmt),
        Command::Audit {
            dsl,
            json,
            max_depth,
        } => audit_cmd(&dsl, &json, max_depth, tol, fmt),
    }
}

fn rho0_of(m: &SeifertMatrix, tol: &Option<BigRational>) -> Result<Rho0Value> {
    match tol {
        Some(t) => rho0_with_tolerance(m, t),
        None => rho0(m),
    }
}

fn flat(pairs: &[(&str, String)], fmt: Format) -> String {
    match fmt {
        Format::Csv => render::kv_csv(pairs),
        _ => render::kv_text(pairs),
    }
}

fn knot_info(
    knot: &Option<String>,
    matrix: &Option<String>,
    tol: &Option<BigRational>,
    fmt: Format,
) -> Result<String> {
    let (name, m) = input::knot_arg(knot, matrix)?;
    let alex = m.alexander_polynomial();
    let det = alex.eval_int(&BigInt::from(-1)).abs();
    let sig = signature_function(&m)?.value_right_of(&rat(1, 2));
    let arf = m.arf_invariant();
    let r = rho0_of(&m, tol)?;
    if fmt == Format::Json {
        return Ok(render::json_doc(&json!({
            "knot": name,
            "size": m.size(),
            "genus": m.genus(),
            "alexander": format_poly(&alex, "t"),
            "determinant": det.to_string(),
            "signature": sig,
            "arf": arf,
            "rho0": render::value_pair(&r),
        })));
    }
    let mut pairs: Vec<(&str, String)> = Vec::new();
    if let Some(n) = &name {
        pairs.push(("knot", n.clone()));
    }
    pairs.push(("size", m.size().to_string()));
    pairs.push(("genus", m.genus().to_string()));
    pairs.push(("alexander", format_poly(&alex, "t")));
    pairs.push(("determinant", det.to_string()));
    pairs.push(("signature", sig.to_string()));
    pairs.push(("arf", arf.to_string()));
    pairs.push(("rho0", format_rational(&r.value)));
    pairs.push(("rho0_error_bound", format_rational(&r.error_bound)));
    Ok(flat(&pairs, fmt))
}

fn sigfn(
    knot: &Option<String>,
    matrix: &Option<String>,
    samples: Option<usize>,
    fmt: Format,
) -> Result<String> {
    match (fmt, samples) {
        (Format::Csv, None) => {
            return Err(Error::Parse("csv output needs --samples".into()));
        }
        (Format::Csv, Some(0)) => {
            return Err(Error::Parse("--samples must be at least 1".into()));
        }
        (Format::Csv, Some(_)) => {}
        (_, Some(_)) => {
            return Err(Error::Parse("--samples applies to csv output only".into()));
        }
        (_, None) => {}
    }
    let (name, m) = input::knot_arg(knot, matrix)?;
    let sf = signature_function(&m)?;
    match fmt {
        Format::Csv => {
            let n = samples.unwrap();
            let mut out = String::from("t,sigma\n");
            for i in 0..n {
                let t = BigRational::new(BigInt::from(i), BigInt::from(n));
                out.push_str(&format!(
                    "{:.12},{}\n",
                    i as f64 / n as f64,
                    sf.value_right_of(&t)
                ));
            }
            Ok(out)
        }
        Format::Json => Ok(render::json_doc(&json!({
            "knot": name,
            "size": sf.size,
            "breakpoints": sf.breakpoints.iter().map(render::breakpoint_json).collect::<Vec<_>>(),
            "values": sf.values,
        }))),
        Format::Text => {
            let mut pairs: Vec<(&str, String)> = Vec::new();
            if let Some(n) = &name {
                pairs.push(("knot", n.clone()));
            }
            pairs.push(("size", sf.size.to_string()));
            pairs.push(("breakpoints", sf.breakpoints.len().to_string()));
            let mut out = render::kv_text(&pairs);
            for (i, bp) in sf.breakpoints.iter().enumerate() {
                out.push_str(&format!(
                    "breakpoint[{i}]: {}\n",
                    render::breakpoint_text(bp)
                ));
            }
            for (i, v) in sf.values.iter().enumerate() {
                out.push_str(&format!("value[{i}]: {v}\n"));
            }
            Ok(out)
        }
    }
}

fn rho0_cmd(
    knot: &Option<String>,
    matrix: &Option<String>,
    tol: &Option<BigRational>,
    fmt: Format,
) -> Result<String> {
    let (name, m) = input::knot_arg(knot, matrix)?;
    let r = rho0_of(&m, tol)?;
    if fmt == Format::Json {
        return Ok(render::json_doc(&json!({
            "knot": name,
            "value": format_rational(&r.value),
            "error_bound": format_rational(&r.error_bound),
        })));
    }
    let mut pairs: Vec<(&str, String)> = Vec::new();
    if let Some(n) = &name {
        pairs.push(("knot", n.clone()));
    }
    pairs.push(("value", format_rational(&r.value)));
    pairs.push(("error_bound", format_rational(&r.error_bound)));
    Ok(flat(&pairs, fmt))
}

fn depth_cmd(word: &str, rank: usize, max_n: usize, fmt: Format) -> Result<String> {
    if rank == 0 {
        return Err(Error::Parse("rank must be at least 1".into()));
    }
    let w = parse_word(word)?;
    let used = w.max_generator() as usize;
    if used > rank {
        return Err(Error::Parse(format!(
            "word uses generator x{used} but rank is {rank}"
        )));
    }
    let d = derived_depth(&w, max_n);
    let depth_text = match d {
        DerivedDepth::Identity => "infinite".to_string(),
        DerivedDepth::Exact(n) => n.to_string(),
        DerivedDepth::AtLeast(n) => format!(">= {n}"),
    };
    if fmt == Format::Json {
        let depth_json = match d {
            DerivedDepth::Identity => json!({"kind": "infinite"}),
            DerivedDepth::Exact(n) => json!({"kind": "exact", "value": n}),
            DerivedDepth::AtLeast(n) => json!({"kind": "at_least", "value": n}),
        };
        return Ok(render::json_doc(&json!({
            "word": w.to_string(),
            "rank": rank,
            "max_n": max_n,
            "depth": depth_json,
        })));
    }
    let pairs = [
        ("word", w.to_string()),
        ("rank", rank.to_string()),
        ("max_n", max_n.to_string()),
        ("depth", depth_text),
    ];
    Ok(flat(&pairs, fmt))
}

fn rho_vector_csv(v: &RhoVector) -> String {
    let mut out = String::from("index,value,error_bound\n");
    for (i, e) in v.head().iter().enumerate() {
        out.push_str(&format!(
            "{i},{},{}\n",
            format_rational(&e.value),
            format_rational(&e.error_bound)
        ));
    }
    let t = v.tail();
    out.push_str(&format!(
        "tail,{},{}\n",
        format_rational(&t.value),
        format_rational(&t.error_bound)
    ));
    out
}

fn eval_cmd(
    dsl: &Option<String>,
    json_src: &Option<String>,
    max_depth: usize,
    tol: Option<BigRational>,
    fmt: Format,
) -> Result<String> {
    let expr = input::expr_arg(dsl, json_src)?;
    let opts = input::eval_options(tol, max_depth);
    let v = rho_vector_with(&expr, &opts)?;
    let verdict = slice_obstruction_with(&expr, &opts)?;
    match fmt {
        Format::Json => Ok(render::json_doc(&json!({
            "rho_vector": v.to_json(),
            "obstruction": verdict.to_json(),
        }))),
        Format::Csv => Ok(rho_vector_csv(&v)),
        Format::Text => {
            let ob = match &verdict {
                SliceVerdict::Inconclusive => "inconclusive".to_string(),
                SliceVerdict::Obstructed { index, value } => {
                    format!("nonzero rho_{index} = {}", render::value_text(value))
                }
            };
            Ok(render::kv_text(&[
                ("rho_vector", v.to_string()),
                ("obstruction", ob),
            ]))
        }
    }
}

fn bing_cmd(
    knot: &Option<String>,
    matrix: &Option<String>,
    iterations: usize,
    tol: Option<BigRational>,
    fmt: Format,
) -> Result<String> {
    let (name, m) = input::knot_arg(knot, matrix)?;
    let bd = bing_double(&m, iterations)?;
    let opts = input::eval_options(tol, (bd.curve_depth + 1).max(4));
    let v = rho_vector_with(&bd.expr, &opts)?;
    if fmt == Format::Json {
        return Ok(render::json_doc(&json!({
            "knot": name,
            "iterations": iterations,
            "components": bd.components,
            "curve_depth": bd.curve_depth,
            "link": bd.link.to_json(),
            "rho_vector": v.to_json(),
        })));
    }
    let mut pairs: Vec<(&str, String)> = Vec::new();
    if let Some(n) = &name {
        pairs.push(("knot", n.clone()));
    }
    pairs.push(("iterations", iterations.to_string()));
    pairs.push(("components", bd.components.to_string()));
    pairs.push(("curve_depth", bd.curve_depth.to_string()));
    if fmt == Format::Csv {
        return Ok(render::kv_csv(&pairs));
    }
    pairs.push(("rho_vector", v.to_string()));
    Ok(render::kv_text(&pairs))
}

fn degree_text(d: &Option<DegreeBound>) -> String {
    match d {
        Some(b) => b.to_string(),
        None => "untagged".to_string(),
    }
}

fn family_cmd(
    depth: usize,
    strands: usize,
    knots: &Option<String>,
    twist_sums: bool,
    tol: Option<BigRational>,
    fmt: Format,
) -> Result<String> {
    let named = match (knots, twist_sums) {
        (Some(_), true) => {
            return Err(Error::Parse(
                "give exactly one of --knots and --twist-sums".into(),
            ));
        }
        (Some(list), false) => input::knots_arg(list)?,
        (None, true) => arf_zero_twist_sums(),
        (None, false) => {
            return Err(Error::Parse("give one of --knots and --twist-sums".into()));
        }
    };
    let mats: Vec<SeifertMatrix> = named.iter().map(|(_, m)| m.clone()).collect();
    let members = generate_family(depth, strands, &mats)?;
    let opts = input::eval_options(tol, (depth + 1).max(4));
    let mut tags = Vec::with_capacity(members.len());
    for link in &members {
        tags.push(infer_link_tags(link, &opts)?);
    }
    match fmt {
        Format::Json => {
            let rows: Vec<Value> = named
                .iter()
                .zip(&members)
                .zip(&tags)
                .map(|(((name, _), link), t)| {
                    json!({
                        "knot": name,
                        "link": link.to_json(),
                        "tags": t.to_json(),
                    })
                })
                .collect();
            Ok(render::json_doc(&json!({
                "depth": depth,
                "strands": strands,
                "members": rows,
            })))
        }
        Format::Csv => {
            let mut out = String::from("index,knot,solvable_degree,grope_height\n");
            for (i, ((name, _), t)) in named.iter().zip(&tags).enumerate() {
                out.push_str(&format!(
                    "{i},{name},{},{}\n",
                    degree_text(&t.solvable_degree),
                    degree_text(&t.grope_height)
                ));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = render::kv_text(&[
                ("depth", depth.to_string()),
                ("strands", strands.to_string()),
                ("members", members.len().to_string()),
            ]);
            for (i, ((name, _), t)) in named.iter().zip(&tags).enumerate() {
                out.push_str(&format!(
                    "member[{i}]: {name}, solvable_degree {}, grope_height {}\n",
                    degree_text(&t.solvable_degree),
                    degree_text(&t.grope_height)
                ));
            }
            Ok(out)
        }
    }
}

fn approx_cmd(
    target: &str,
    eps: &str,
    library: &Option<String>,
    budget: i64,
    fmt: Format,
) -> Result<String> {
    let r = parse_rational(target)?;
    let e = parse_rational(eps)?;
    let lib = input::library_arg(library)?;
    let a = approximate_target_with(&r, &e, &lib, budget)?;
    if fmt == Format::Json {
        return Ok(render::json_doc(&a.to_json()));
    }
    let pairs = [
        ("target", format_rational(a.target())),
        ("scale", a.scale().to_string()),
        ("combo", render::combo_text(a.combo())),
        ("achieved", format_rational(&a.achieved().value)),
        (
            "achieved_error_bound",
            format_rational(&a.achieved().error_bound),
        ),
        ("distance", format_rational(a.distance())),
    ];
    Ok(flat(&pairs, fmt))
}

fn independence_cmd(
    values: &Option<String>,
    knots: &Option<String>,
    library: &Option<String>,
    bound: i64,
    tau: &str,
    fmt: Format,
) -> Result<String> {
    let tau_r = parse_rational(tau)?;
    if !tau_r.is_positive() {
        return Err(Error::Parse(format!("tau must be positive, got {tau}")));
    }
    if bound < 1 {
        return Err(Error::Parse("bound must be at least 1".into()));
    }
    let provided = [values.is_some(), knots.is_some(), library.is_some()]
        .iter()
        .filter(|p| **p)
        .count();
    if provided != 1 {
        return Err(Error::Parse(
            "give exactly one of --values, --knots, and --library".into(),
        ));
    }
    let (names, vals): (Vec<String>, Vec<Rho0Value>) = if let Some(list) = values {
        let vs = input::values_arg(list)?;
        (
            vs.iter().map(format_rational).collect(),
            vs.into_iter().map(Rho0Value::exact).collect(),
        )
    } else {
        let sources = match knots {
            Some(list) => input::knots_arg(list)?,
            None => input::library_arg(library)?
                .entries()
                .iter()
                .map(|en| (en.name().to_string(), en.matrix().clone()))
                .collect(),
        };
        if sources.is_empty() {
            return Err(Error::Precondition("the library has no entries".into()));
        }
        let need =
            &tau_r / BigRational::from_integer(BigInt::from(2 * bound * sources.len() as i64));
        let mut names = Vec::with_capacity(sources.len());
        let mut vals = Vec::with_capacity(sources.len());
        for (n, m) in sources {
            vals.push(rho0_with_tolerance(&m, &need)?);
            names.push(n);
        }
        (names, vals)
    };
    let cert = independence_certificate(&vals, bound, &tau_r)?;
    if fmt == Format::Json {
        let mut doc = cert.to_json();
        if let Value::Object(map) = &mut doc {
            map.insert("names".into(), json!(names));
        }
        return Ok(render::json_doc(&doc));
    }
    let mut pairs = vec![
        (
            "names",
            names.join(if fmt == Format::Csv { " " } else { ", " }),
        ),
        ("bound", cert.bound().to_string()),
        ("tolerance", format_rational(cert.tolerance())),
    ];
    match cert.verdict() {
        RelationVerdict::NoRelationUpTo { bound, .. } => {
            pairs.push((
                "verdict",
                format!("no relation with coefficients up to {bound}"),
            ));
        }
        RelationVerdict::RelationFound { coefficients } => {
            pairs.push(("verdict", "relation found".to_string()));
            let sep = if fmt == Format::Csv { " " } else { ", " };
            pairs.push((
                "coefficients",
                coefficients
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(sep),
            ));
        }
    }
    pairs.push(("method", cert.method().to_string()));
    Ok(flat(&pairs, fmt))
}

fn audit_cmd(
    dsl: &Option<String>,
    json_src: &Option<String>,
    max_depth: usize,
    tol: Option<BigRational>,
    fmt: Format,
) -> Result<String> {
    let expr = input::expr_arg(dsl, json_src)?;
    let opts = input::eval_options(tol, max_depth);
    let report = check_vanishing_with(&expr, &opts)?;
    match fmt {
        Format::Json => Ok(render::json_doc(&report.to_json())),
        Format::Csv => {
            let mut out = String::from("index,value,error_bound,passed\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.index,
                    format_rational(&c.value.value),
                    format_rational(&c.value.error_bound),
                    c.passed
                ));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("solvable_degree: {}\n", report.degree);
            for c in &report.checks {
                out.push_str(&format!(
                    "check[{}]: rho_{} = {}, {}\n",
                    c.index,
                    c.index,
                    render::value_text(&c.value),
                    if c.passed { "passed" } else { "FAILED" }
                ));
            }
            out.push_str(&format!("all_passed: {}\n", report.all_passed()));
            Ok(out)
        }
    }
}
