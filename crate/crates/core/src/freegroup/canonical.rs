//! Canonical words of prescribed derived depth.
//!
//! Balanced bracket towers reach depth equal to their height, unlike
//! left-normed ones which stall at depth 1. Every candidate is verified
//! through the quotient machinery before being handed out, so the
//! constructions here are schemes, not proofs.

use crate::error::{Error, Result};
use crate::freegroup::solvable::{derived_depth, DerivedDepth};
use crate::freegroup::word::{commutator, FreeWord};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Pairwise commutators until a single word remains; input length must be a
/// power of two.
pub fn balanced_bracket(leaves: &[FreeWord]) -> FreeWord {
    assert!(!leaves.is_empty() && leaves.len().is_power_of_two());
    let mut layer: Vec<FreeWord> = leaves.to_vec();
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|pair| commutator(&pair[0], &pair[1]))
            .collect();
    }
    layer.into_iter().next().unwrap()
}

fn candidate(depth: usize, gens: usize, variant: usize) -> FreeWord {
    if depth == 0 {
        return FreeWord::generator(1);
    }
    // 2^(depth-1) base commutators [x1, x_{2+(j mod (gens-1))}], the j-th
    // conjugated by x2^(variant + j div (gens-1)), then folded pairwise.
    let pairs = 1usize << (depth - 1);
    let spread = (gens - 1).max(1);
    let leaves: Vec<FreeWord> = (0..pairs)
        .map(|j| {
            let second = 2 + (j % spread) as u32;
            let base = commutator(&FreeWord::generator(1), &FreeWord::generator(second));
            let power = (variant + j / spread) as i64;
            base.conjugate_by(&FreeWord::generator(2).pow(power))
        })
        .collect();
    balanced_bracket(&leaves)
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), FreeWord>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), FreeWord>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A word of verified derived depth exactly `depth` in the free group on
/// `gens` generators. Requires gens >= 2 for depth >= 1.
pub fn canonical_word(depth: usize, gens: usize) -> Result<FreeWord> {
    if depth >= 1 && gens < 2 {
        return Err(Error::Precondition(
            "depth >= 1 needs at least two generators".into(),
        ));
    }
    if let Some(w) = cache().lock().unwrap().get(&(depth, gens)) {
        return Ok(w.clone());
    }
    for variant in 0..8 {
        let w = candidate(depth, gens, variant);
        if w.max_generator() as usize > gens {
            continue;
        }
        if derived_depth(&w, depth + 1) == DerivedDepth::Exact(depth) {
            cache().lock().unwrap().insert((depth, gens), w.clone());
            return Ok(w);
        }
    }
    Err(Error::Precondition(format!(
        "no canonical word of depth {depth} on {gens} generators"
    )))
}
