//! Hitting a prescribed rho0 value with a block sum from a knot library.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::library::KnotLibrary;
use crate::ratio::format_rational;
use crate::seifert::matrix::SeifertMatrix;
use crate::seifert::signature::{rho0_with_tolerance, Rho0Value};

const DEFAULT_BUDGET: i64 = 8;
const BOX_CAP: f64 = 2.0e9;

/// A realized approximation: the coefficient combination, the scaling
/// factor, the block-sum Seifert matrix it denotes, and the invariant of
/// that matrix recomputed from scratch.
///
/// The matrix is `scale` copies of the combination, where a negative
/// coefficient contributes mirror copies; its rho0 value is `scale` times
/// the combination's. Scaling is what reaches targets of magnitude 2 and
/// beyond, which no single value in (-2, 2) could hit.
#[derive(Debug, Clone)]
pub struct Approximation {
    target: BigRational,
    scale: i64,
    combo: Vec<(String, i64)>,
    matrix: SeifertMatrix,
    achieved: Rho0Value,
    distance: BigRational,
}

impl Approximation {
    pub fn target(&self) -> &BigRational {
        &self.target
    }

    /// The multiplicity m applied to the whole combination.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Nonzero coefficients by library name, in library order.
    pub fn combo(&self) -> &[(String, i64)] {
        &self.combo
    }

    pub fn matrix(&self) -> &SeifertMatrix {
        &self.matrix
    }

    /// Fresh rho0 enclosure of `matrix`, not the search's arithmetic.
    pub fn achieved(&self) -> &Rho0Value {
        &self.achieved
    }

    /// Certified upper bound on |achieved - target|.
    pub fn distance(&self) -> &BigRational {
        &self.distance
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": format_rational(&self.target),
            "scale": self.scale,
            "combo": self.combo.iter().map(|(name, c)| json!({
                "name": name,
                "coefficient": c,
            })).collect::<Vec<_>>(),
            "matrix": self.matrix.rows(),
            "achieved": {
                "value": format_rational(&self.achieved.value),
                "error_bound": format_rational(&self.achieved.error_bound),
            },
            "distance": format_rational(&self.distance),
        })
    }
}

/// Finds a block sum over the library whose rho0 value lands within `eps`
/// of `r`, with the default coefficient budget.
pub fn approximate_target(
    r: &BigRational,
    eps: &BigRational,
    lib: &KnotLibrary,
) -> Result<Approximation> {
    approximate_target_with(r, eps, lib, DEFAULT_BUDGET)
}

/// As `approximate_target` with an explicit per-coefficient budget.
///
/// Targets of magnitude >= 2 are first divided by the smallest m with
/// |r|/m < 2; the search then runs on r/m with eps/m and the result is
/// realized as m copies. Entries whose rho0 enclosure does not exclude
/// zero are pinned to coefficient zero: they cannot move the sum but
/// would pad the realized matrix. The search is exact branch and bound
/// over the remaining coefficients; failure reports the best certified
/// distance reached and the combination attaining it.
pub fn approximate_target_with(
    r: &BigRational,
    eps: &BigRational,
    lib: &KnotLibrary,
    budget: i64,
) -> Result<Approximation> {
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    if budget < 1 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    let active: Vec<usize> = (0..lib.len())
        .filter(|&i| lib.entries()[i].rho0().excludes_zero())
        .collect();
    if active.is_empty() {
        return Err(Error::Precondition(
            "library has no entry with nonzero rho0".into(),
        ));
    }
    if (2.0 * budget as f64 + 1.0).powi(active.len() as i32) > BOX_CAP {
        return Err(Error::Precondition(format!(
            "coefficient box (2*{budget}+1)^{} exceeds the search budget",
            active.len()
        )));
    }

    // Scaling trick: bring the target into (-2, 2) first.
    let two = BigRational::from_integer(BigInt::from(2));
    let scale = if r.abs() < two {
        1i64
    } else {
        let m = (r.abs() / &two).floor() + BigRational::one();
        m.to_integer()
            .try_into()
            .map_err(|_| Error::Precondition("target magnitude out of range".into()))?
    };
    let scale_rat = BigRational::from_integer(BigInt::from(scale));
    let scaled_target = r / &scale_rat;
    let scaled_eps = eps / &scale_rat;

    // Branch and bound, widest values first so pruning bites early.
    let mut order = active.clone();
    order.sort_by(|&a, &b| {
        let va = lib.entries()[a].rho0().value.abs();
        let vb = lib.entries()[b].rho0().value.abs();
        vb.cmp(&va).then(a.cmp(&b))
    });
    let values: Vec<&Rho0Value> = order.iter().map(|&i| lib.entries()[i].rho0()).collect();
    let mut reach = vec![BigRational::zero(); values.len() + 1];
    for i in (0..values.len()).rev() {
        reach[i] = &reach[i + 1]
            + (&values[i].value.abs() + &values[i].error_bound)
                * BigRational::from_integer(BigInt::from(budget));
    }

    let mut best = Search {
        dist: None,
        coeffs: vec![0; values.len()],
    };
    let mut cur = vec![0i64; values.len()];
    descend(
        0,
        BigRational::zero(),
        BigRational::zero(),
        &values,
        budget,
        &reach,
        &scaled_target,
        &mut cur,
        &mut best,
    );
    let best_dist = best.dist.expect("box always contains the zero vector");

    // Map back to library order.
    let mut coeffs = vec![0i64; lib.len()];
    for (pos, &i) in order.iter().enumerate() {
        coeffs[i] = best.coeffs[pos];
    }
    let combo: Vec<(String, i64)> = lib
        .entries()
        .iter()
        .zip(&coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| (e.name().to_string(), c))
        .collect();

    if best_dist >= scaled_eps {
        return Err(Error::TargetUnreachable {
            target: format_rational(r),
            best_distance: format_rational(&(&best_dist * &scale_rat)),
            best_combo: render_combo(&combo),
        });
    }

    // Realize the block sum and recompute its invariant from scratch.
    let mut one_copy = SeifertMatrix::unknot();
    for (name, c) in &combo {
        let entry = lib.get(name).expect("combo names come from the library");
        let block = if *c > 0 {
            entry.matrix().clone()
        } else {
            entry.matrix().mirror()
        };
        for _ in 0..c.abs() {
            one_copy = one_copy.connected_sum(&block);
        }
    }
    let mut matrix = SeifertMatrix::unknot();
    for _ in 0..scale {
        matrix = matrix.connected_sum(&one_copy);
    }

    let tol = eps / BigRational::from_integer(BigInt::from(8));
    let achieved = rho0_with_tolerance(&matrix, &tol)?;
    let distance = (&achieved.value - r).abs() + &achieved.error_bound;
    if distance >= *eps {
        return Err(Error::Internal(format!(
            "realized matrix recomputes to {} away from target {}, past eps {}",
            format_rational(&distance),
            format_rational(r),
            format_rational(eps),
        )));
    }

    Ok(Approximation {
        target: r.clone(),
        scale,
        combo,
        matrix,
        achieved,
        distance,
    })
}

struct Search {
    /// Best certified distance so far; None until the first leaf.
    dist: Option<BigRational>,
    coeffs: Vec<i64>,
}

/// Walks coefficients for `values[level..]`, carrying the exact partial sum
/// and its slack. Prunes when even spending the whole remaining budget
/// cannot beat the best certified distance.
#[allow(clippy::too_many_arguments)]
fn descend(
    level: usize,
    sum: BigRational,
    slack: BigRational,
    values: &[&Rho0Value],
    budget: i64,
    reach: &[BigRational],
    target: &BigRational,
    cur: &mut Vec<i64>,
    best: &mut Search,
) {
    if let Some(d) = &best.dist {
        let floor = (&sum - target).abs() - &reach[level] - &slack;
        if floor >= *d {
            return;
        }
    }
    if level == values.len() {
        let certified = (&sum - target).abs() + &slack;
        if best.dist.as_ref().is_none_or(|d| certified < *d) {
            best.dist = Some(certified);
            best.coeffs.copy_from_slice(cur);
        }
        return;
    }
    let v = values[level];
    for c in -budget..=budget {
        cur[level] = c;
        let f = BigRational::from_integer(BigInt::from(c));
        descend(
            level + 1,
            &sum + &v.value * &f,
            &slack + &v.error_bound * f.abs(),
            values,
            budget,
            reach,
            target,
            cur,
            best,
        );
    }
    cur[level] = 0;
}

fn render_combo(combo: &[(String, i64)]) -> String {
    if combo.is_empty() {
        return "(empty)".into();
    }
    combo
        .iter()
        .enumerate()
        .map(|(i, (name, c))| {
            if i == 0 {
                format!("{c}*{name}")
            } else if *c < 0 {
                format!(" - {}*{name}", -c)
            } else {
                format!(" + {c}*{name}")
            }
        })
        .collect()
}
