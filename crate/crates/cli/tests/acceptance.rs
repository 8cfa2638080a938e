//! Acceptance gate: nine end-to-end checks, one test each. Every test
//! collects all violations it finds, prints exactly one PASS/FAIL line,
//! and aborts on any violation. Numeric cutoffs sit in the constants
//! below; runtime budgets are enforced where a check carries one.

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{Complex, DMatrix};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rho_core::families::{
    approximate_target, arf_zero_twist_sums, generate_family, independence_certificate,
    RelationVerdict,
};
use rho_core::freegroup::fox::fundamental_identity_holds;
use rho_core::freegroup::laurent::in_second_derived;
use rho_core::freegroup::{canonical_word, commutator, derived_depth, project, DerivedDepth};
use rho_core::infection::{
    bing_double, check_vanishing_with, infer_link_tags, rho_vector_with, DegreeBound, EvalOptions,
    ManifoldExpr,
};
use rho_core::ratio::{parse_rational, rat};
use rho_core::seifert::registry::{self, knot_by_name, random_corpus};
use rho_core::seifert::{rho0, rho0_with_tolerance, signature_function};
use rho_core::{FreeWord, KnotLibrary, SeifertMatrix};

/// Accuracy demanded of the named-knot rho0 values.
const RHO0_TOL: &str = "1/1000000000";
/// Slack allowed for a knot summed with its mirror.
const MIRROR_SUM_TOL: &str = "1/500000000";
/// Agreement demanded between exact rho0 and dense sampling.
const SAMPLING_TOL: f64 = 1e-3;
/// Angles used by the sampling cross-check.
const SAMPLING_ANGLES: usize = 100_000;
/// Coefficient box scanned by the relation search.
const RELATION_BOUND: i64 = 20;
/// A combination inside this of zero counts as a relation.
const RELATION_TOL: &str = "1/1000000";
/// Leaf accuracy used when producing values for the relation search.
const RELATION_LEAF_TOL: &str = "1/1000000000";
/// Radius the density targets must be hit within.
const TARGET_EPS: &str = "1/100";
/// Seed for every randomized corpus in this file.
const SEED: u64 = 0x5eed_ac5e;

struct Criterion {
    label: &'static str,
    budget: Option<Duration>,
    start: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str, budget_secs: Option<u64>) -> Self {
        Criterion {
            label,
            budget: budget_secs.map(Duration::from_secs),
            start: Instant::now(),
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        if let Some(budget) = self.budget {
            if elapsed > budget {
                self.failures
                    .push(format!("runtime {elapsed:?} exceeded budget {budget:?}"));
            }
        }
        let status = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!("[{}] {status} ({elapsed:.2?})", self.label);
        assert!(
            self.failures.is_empty(),
            "{}:\n{}",
            self.label,
            self.failures.join("\n")
        );
    }
}

fn rational(s: &str) -> BigRational {
    parse_rational(s).expect("literal rational")
}

fn to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Signature of (1-w)V + (1-conj w)V^T at w = exp(2 pi i t), computed the
/// blunt way: build the Hermitian matrix in f64 and count eigenvalue signs.
fn sampled_signature(v: &SeifertMatrix, t: f64) -> i64 {
    let n = v.size();
    if n == 0 {
        return 0;
    }
    let (s, c) = (2.0 * std::f64::consts::PI * t).sin_cos();
    let a = Complex::new(1.0 - c, -s);
    let b = a.conj();
    let mut h = DMatrix::<Complex<f64>>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = a * Complex::new(v.entry(i, j) as f64, 0.0)
                + b * Complex::new(v.entry(j, i) as f64, 0.0);
        }
    }
    let eigs = h.symmetric_eigen().eigenvalues;
    let scale = eigs.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let cut = 1e-9 * scale;
    let pos = eigs.iter().filter(|x| **x > cut).count() as i64;
    let neg = eigs.iter().filter(|x| **x < -cut).count() as i64;
    pos - neg
}

fn sampled_rho0(v: &SeifertMatrix, samples: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..samples {
        let t = (k as f64 + 0.5) / samples as f64;
        acc += sampled_signature(v, t) as f64;
    }
    acc / samples as f64
}

#[test]
fn c1_rho0_exactness() {
    let mut c = Criterion::new("c1 rho0 exactness", Some(5));
    let tol = rational(RHO0_TOL);

    let u = rho0(&registry::unknot()).unwrap();
    c.expect(u.value.is_zero() && u.error_bound.is_zero(), || {
        format!(
            "unknot rho0 not exactly zero: {} +- {}",
            u.value, u.error_bound
        )
    });

    let t = rho0(&registry::trefoil()).unwrap();
    let off = (&t.value + rational("4/3")).abs() + &t.error_bound;
    c.expect(off <= tol, || {
        format!(
            "trefoil rho0 {} +- {} too far from -4/3",
            t.value, t.error_bound
        )
    });

    let f = rho0(&registry::figure_eight()).unwrap();
    let off = f.value.abs() + &f.error_bound;
    c.expect(off <= tol, || {
        format!(
            "figure8 rho0 {} +- {} too far from 0",
            f.value, f.error_bound
        )
    });

    for (name, exact) in [("unknot", &u), ("trefoil", &t), ("figure8", &f)] {
        let approx = sampled_rho0(&knot_by_name(name).unwrap(), SAMPLING_ANGLES);
        let err = (to_f64(&exact.value) - approx).abs();
        c.expect(err < SAMPLING_TOL + to_f64(&exact.error_bound), || {
            format!(
                "{name}: exact {} vs sampled {approx} (err {err})",
                exact.value
            )
        });
    }
    c.finish();
}

/// |p(w)| at w = exp(2 pi i t), by complex Horner in f64.
fn alexander_magnitude_on_circle(coeffs: &[BigInt], t: f64) -> f64 {
    let (s, co) = (2.0 * std::f64::consts::PI * t).sin_cos();
    let w = Complex::new(co, s);
    let mut acc = Complex::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * w + Complex::new(c.to_f64().unwrap(), 0.0);
    }
    acc.norm()
}

#[test]
fn c2_signature_invariants_on_corpus() {
    let mut c = Criterion::new("c2 signature invariants on 50-matrix corpus", Some(30));
    let corpus = random_corpus(SEED, 50, 3);
    c.expect(corpus.len() == 50, || "short corpus".into());
    for (i, v) in corpus.iter().enumerate() {
        let sf = signature_function(v).unwrap();
        for val in &sf.values {
            c.expect(val.rem_euclid(2) == 0, || {
                format!("matrix {i}: odd signature value {val}")
            });
            c.expect(val.unsigned_abs() as usize <= v.size(), || {
                format!("matrix {i}: |signature| {val} exceeds size {}", v.size())
            });
        }
        c.expect(*sf.values.last().unwrap() == 0, || {
            format!("matrix {i}: arc through t = 0 is nonzero")
        });

        // symmetry under t -> 1-t, probed inside every arc and at a few
        // fixed angles
        let mut probes: Vec<BigRational> = vec![rat(1, 7), rat(2, 7), rat(3, 7)];
        let est: Vec<BigRational> = sf.breakpoints.iter().map(|b| b.estimate()).collect();
        for w in est.windows(2) {
            probes.push((&w[0] + &w[1]) / rational("2"));
        }
        for t in probes {
            let mirror_t = BigRational::from_integer(BigInt::from(1)) - &t;
            let lhs = sf.value_right_of(&t);
            let rhs = sf.value_right_of(&mirror_t);
            // right limits at symmetric points compare arcs that are
            // mirrors of each other only away from breakpoints
            if sf.value_at(&t).is_some() && sf.value_at(&mirror_t).is_some() {
                c.expect(lhs == rhs, || {
                    format!("matrix {i}: sigma({t}) = {lhs} but sigma(1-{t}) = {rhs}")
                });
            }
        }

        // every jump sits on a root of the Alexander polynomial
        let alex = v.alexander_polynomial();
        let scale: f64 = alex
            .coeffs
            .iter()
            .map(|x| x.to_f64().unwrap().abs())
            .sum::<f64>()
            .max(1.0);
        for bp in &sf.breakpoints {
            let t = to_f64(&bp.estimate());
            let mag = alexander_magnitude_on_circle(&alex.coeffs, t);
            c.expect(mag <= 1e-6 * scale, || {
                format!("matrix {i}: breakpoint near t = {t} but |Alexander| = {mag}")
            });
        }
    }
    c.finish();
}

#[test]
fn c3_additivity_and_mirror() {
    let mut c = Criterion::new("c3 additivity and mirror", Some(60));
    let corpus = random_corpus(SEED, 50, 3);
    let singles: Vec<_> = corpus.iter().map(|v| rho0(v).unwrap()).collect();

    for (i, v) in corpus.iter().enumerate() {
        let m = rho0(&v.mirror()).unwrap();
        let off = (&m.value + &singles[i].value).abs();
        let slack = &m.error_bound + &singles[i].error_bound;
        c.expect(off <= slack, || {
            format!(
                "matrix {i}: mirror rho0 {} vs -({})",
                m.value, singles[i].value
            )
        });
    }

    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            let sum = rho0(&corpus[i].connected_sum(&corpus[j])).unwrap();
            let off = (&sum.value - &singles[i].value - &singles[j].value).abs();
            let slack = &sum.error_bound + &singles[i].error_bound + &singles[j].error_bound;
            c.expect(off <= slack, || {
                format!("pair ({i}, {j}): block sum rho0 differs beyond summed bounds")
            });
        }
    }

    let slice_tol = rational(MIRROR_SUM_TOL);
    let named = [
        "unknot",
        "trefoil",
        "figure8",
        "twist(2)",
        "twist(-2)",
        "twist(3)",
        "twist(-3)",
        "twist(-4)",
        "trefoil # figure8",
        "trefoil # twist(-2)",
    ];
    for name in named {
        let k = knot_by_name(name).unwrap();
        let doubled = rho0(&k.connected_sum(&k.mirror())).unwrap();
        let off = doubled.value.abs() + &doubled.error_bound;
        c.expect(off <= slice_tol, || {
            format!(
                "{name} # mirror: rho0 {} +- {} not within {}",
                doubled.value, doubled.error_bound, slice_tol
            )
        });
    }
    c.finish();
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, gens: u32) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(u32, i8)> = (0..len)
        .map(|_| {
            (
                rng.gen_range(1..=gens),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect();
    FreeWord::from_letters(letters)
}

#[test]
fn c4_depth_correctness() {
    let mut c = Criterion::new("c4 derived depth vs Fox oracle", Some(120));
    let max_n = 3;

    let basic = commutator(&FreeWord::generator(1), &FreeWord::generator(2));
    c.expect(
        derived_depth(&basic, max_n) == DerivedDepth::Exact(1),
        || format!("[x1,x2] depth {:?}", derived_depth(&basic, max_n)),
    );
    for depth in [2usize, 3] {
        let w = canonical_word(depth, 2).unwrap();
        let got = derived_depth(&w, max_n);
        c.expect(got == DerivedDepth::Exact(depth), || {
            format!("canonical depth-{depth} word measured {got:?}")
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..100 {
        // bias toward commutators so the deep strata actually appear
        let w = match case % 3 {
            0 => random_word(&mut rng, 12, 3),
            1 => {
                let a = random_word(&mut rng, 4, 3);
                let b = random_word(&mut rng, 4, 3);
                commutator(&a, &b)
            }
            _ => {
                let a = random_word(&mut rng, 3, 3);
                let b = random_word(&mut rng, 3, 3);
                let d = random_word(&mut rng, 3, 3);
                let e = random_word(&mut rng, 3, 3);
                commutator(&commutator(&a, &b), &commutator(&d, &e))
            }
        };
        let gens = w.max_generator().max(1) as usize;
        let via_quotient = project(&w, 2, gens).is_identity();
        let via_laurent = in_second_derived(&w);
        c.expect(via_quotient == via_laurent, || {
            format!("case {case}: level-2 membership split on {w}")
        });
        let in_second_by_depth = match derived_depth(&w, max_n) {
            DerivedDepth::Identity => true,
            DerivedDepth::Exact(d) => d >= 2,
            DerivedDepth::AtLeast(d) => d >= 2,
        };
        c.expect(in_second_by_depth == via_laurent, || {
            format!("case {case}: depth and Laurent oracle split on {w}")
        });
        c.expect(fundamental_identity_holds(&w), || {
            format!("case {case}: Fox identity fails on {w}")
        });
    }
    c.finish();
}

fn exact_entry(v: &rho_core::RhoVector, n: usize) -> Option<BigRational> {
    let e = v.entry(n);
    e.error_bound.is_zero().then(|| e.value.clone())
}

#[test]
fn c5_rewrite_engine_exact_values() {
    let mut c = Criterion::new("c5 rewrite engine exact values", None);
    let opts = EvalOptions::default();

    let bd = bing_double(&registry::trefoil(), 1).unwrap();
    let v = rho_vector_with(&bd.expr, &opts).unwrap();
    c.expect(
        v.head().len() == 1 && exact_entry(&v, 0) == Some(BigRational::zero()),
        || format!("doubled trefoil vector head: {v}"),
    );
    c.expect(exact_entry(&v, 1) == Some(rational("-4/3")), || {
        format!("doubled trefoil vector tail: {v}")
    });

    let granny = registry::trefoil().connected_sum(&registry::trefoil());
    let member = &generate_family(2, 2, &[granny]).unwrap()[0];
    let v = rho_vector_with(&member.to_manifold(), &opts).unwrap();
    for n in 0..2 {
        c.expect(exact_entry(&v, n) == Some(BigRational::zero()), || {
            format!("depth-2 member entry {n} not exactly zero: {v}")
        });
    }
    c.expect(exact_entry(&v, 2) == Some(rational("-8/3")), || {
        format!("depth-2 member settled value: {v}")
    });

    let eta = commutator(&FreeWord::generator(1), &FreeWord::generator(2));
    let base = ManifoldExpr::trivial_link(2).unwrap();
    let with_unknot = ManifoldExpr::infect(base.clone(), eta.clone(), registry::unknot()).unwrap();
    let before = rho_vector_with(&base, &opts).unwrap();
    let after = rho_vector_with(&with_unknot, &opts).unwrap();
    c.expect(before == after, || {
        format!("unknot infection moved the vector: {before} vs {after}")
    });

    let eta2 = commutator(&eta, &FreeWord::generator(2));
    let ab = ManifoldExpr::infect(
        ManifoldExpr::infect(base.clone(), eta.clone(), registry::trefoil()).unwrap(),
        eta2.clone(),
        registry::twist_knot(-2),
    )
    .unwrap();
    let ba = ManifoldExpr::infect(
        ManifoldExpr::infect(base, eta2, registry::twist_knot(-2)).unwrap(),
        eta,
        registry::trefoil(),
    )
    .unwrap();
    let vab = rho_vector_with(&ab, &opts).unwrap();
    let vba = rho_vector_with(&ba, &opts).unwrap();
    c.expect(vab == vba, || {
        format!("infection order changed the vector: {vab} vs {vba}")
    });
    c.finish();
}

#[test]
fn c6_vanishing_audit() {
    let mut c = Criterion::new("c6 vanishing audit over generated families", None);
    let knots = [
        registry::twist_knot(-2),
        registry::twist_knot(-4),
        registry::twist_knot(-2).connected_sum(&registry::twist_knot(-4)),
        registry::trefoil().connected_sum(&registry::trefoil()),
    ];
    let mut members_seen = 0usize;
    for n in 1..=3usize {
        for m in [2usize, 3] {
            let members = generate_family(n, m, &knots).unwrap();
            let opts = EvalOptions {
                max_depth: (n + 1).max(4),
                tolerance: None,
            };
            for member in &members {
                members_seen += 1;
                let tags = infer_link_tags(member, &opts).unwrap();
                c.expect(tags.solvable_degree == Some(DegreeBound::Finite(n)), || {
                    format!("n = {n}, m = {m}: solvable tag {:?}", tags.solvable_degree)
                });
                let v = rho_vector_with(&member.to_manifold(), &opts).unwrap();
                for idx in 0..n {
                    c.expect(exact_entry(&v, idx) == Some(BigRational::zero()), || {
                        format!("n = {n}, m = {m}: rho_{idx} not exactly zero in {v}")
                    });
                }
                let report = check_vanishing_with(&member.to_manifold(), &opts).unwrap();
                c.expect(report.all_passed(), || {
                    format!("n = {n}, m = {m}: vanishing audit failed")
                });
            }
        }
    }
    c.expect(members_seen >= 20, || {
        format!("only {members_seen} members generated")
    });
    c.finish();
}

#[test]
fn c7_bounded_independence_witness() {
    let mut c = Criterion::new("c7 bounded independence witness", Some(300));
    let library = arf_zero_twist_sums();
    c.expect(library.len() == 5, || "expected five library knots".into());
    let names: Vec<&str> = library.iter().map(|(n, _)| n.as_str()).collect();
    c.expect(
        names.iter().collect::<std::collections::HashSet<_>>().len() == 5,
        || "library knots not distinct".into(),
    );
    for (name, k) in &library {
        c.expect(k.arf_invariant() == 0, || format!("{name} has nonzero arf"));
    }

    let mats: Vec<SeifertMatrix> = library.iter().map(|(_, m)| m.clone()).collect();
    let members = generate_family(2, 2, &mats).unwrap();
    let opts = EvalOptions {
        max_depth: 4,
        tolerance: Some(rational(RELATION_LEAF_TOL)),
    };
    let values: Vec<_> = members
        .iter()
        .map(|member| {
            let v = rho_vector_with(&member.to_manifold(), &opts).unwrap();
            v.entry(2).clone()
        })
        .collect();

    let cert = independence_certificate(&values, RELATION_BOUND, &rational(RELATION_TOL)).unwrap();
    c.expect(cert.reproduces(), || {
        "certificate does not reproduce its own verdict".into()
    });
    match cert.verdict() {
        RelationVerdict::NoRelationUpTo { bound, .. } => {
            c.expect(*bound == RELATION_BOUND, || "wrong bound recorded".into());
        }
        RelationVerdict::RelationFound { coefficients } => {
            c.expect(false, || {
                format!("library admits the relation {coefficients:?}")
            });
        }
    }
    c.finish();
}

#[test]
fn c8_density_targets() {
    let mut c = Criterion::new("c8 density targets with scaling", None);
    let eps = rational(TARGET_EPS);
    let lib = KnotLibrary::standard();
    for (target, wants_scaling) in [("1/2", false), ("-5/4", false), ("3", true)] {
        let r = rational(target);
        match approximate_target(&r, &eps, &lib) {
            Err(e) => c.expect(false, || format!("target {target}: {e}")),
            Ok(a) => {
                c.expect(a.distance() < &eps, || {
                    format!("target {target}: distance {} >= {}", a.distance(), eps)
                });
                c.expect((a.scale() >= 2) == wants_scaling, || {
                    format!("target {target}: scale {}", a.scale())
                });
                // round trip: a fresh enclosure of the realized matrix must
                // land inside eps of the target on its own
                let fresh = rho0_with_tolerance(a.matrix(), &rational(RHO0_TOL)).unwrap();
                let off = (&fresh.value - &r).abs() + &fresh.error_bound;
                c.expect(off < eps, || {
                    format!("target {target}: recomputation off by {off}")
                });
            }
        }
    }
    c.finish();
}

#[test]
fn c9_cli_determinism() {
    let mut c = Criterion::new("c9 cli golden files and determinism", None);
    let cases: [(&[&str], &str); 3] = [
        (&["rho0", "--knot", "trefoil"], "rho0_trefoil.txt"),
        (
            &["depth", "--word", "[x1,x2]", "--rank", "2", "--max-n", "4"],
            "depth_commutator.txt",
        ),
        (
            &[
                "eval",
                "--dsl",
                "trivial(2) |> infect([x1,x2], knot:\"unknot\")",
            ],
            "eval_unknot_infection.txt",
        ),
    ];
    for (args, golden) in cases {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(golden);
        let want = std::fs::read(&path).expect("golden file");
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_rho"))
                .args(args)
                .env_remove("RHO_TOLERANCE")
                .output()
                .expect("binary runs")
        };
        let first = run();
        let second = run();
        c.expect(first.status.success(), || format!("{args:?} failed"));
        c.expect(first.stdout == want, || {
            format!(
                "{args:?} drifted from {golden}:\n{}",
                String::from_utf8_lossy(&first.stdout)
            )
        });
        c.expect(first.stdout == second.stdout, || {
            format!("{args:?} not byte-identical across runs")
        });
    }
    c.finish();
}
