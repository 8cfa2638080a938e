//! Named Seifert matrices and reproducible random corpora.

use crate::error::{Error, Result};
use crate::seifert::matrix::SeifertMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Genus-one matrix [[-1, 1], [0, k]] of the k-twist knot. k = -1 is the
/// trefoil and k = 1 the figure eight.
pub fn twist_knot(k: i64) -> SeifertMatrix {
    SeifertMatrix::new(vec![vec![-1, 1], vec![0, k]]).expect("twist form is always admissible")
}

pub fn unknot() -> SeifertMatrix {
    SeifertMatrix::unknot()
}

pub fn trefoil() -> SeifertMatrix {
    twist_knot(-1)
}

pub fn figure_eight() -> SeifertMatrix {
    twist_knot(1)
}

/// Look up a knot by name: "unknot", "trefoil", "figure8", "twist(k)", or
/// "mirror(name)". Connected sums are written "a # b".
pub fn knot_by_name(name: &str) -> Result<SeifertMatrix> {
    let name = name.trim();
    if name.contains('#') {
        let mut acc = SeifertMatrix::unknot();
        for part in name.split('#') {
            acc = acc.connected_sum(&knot_by_name(part)?);
        }
        return Ok(acc);
    }
    match name {
        "unknot" => return Ok(unknot()),
        "trefoil" => return Ok(trefoil()),
        "figure8" | "figure-eight" | "figure_eight" => return Ok(figure_eight()),
        _ => {}
    }
    if let Some(inner) = name
        .strip_prefix("mirror(")
        .and_then(|s| s.strip_suffix(')'))
    {
        return Ok(knot_by_name(inner)?.mirror());
    }
    if let Some(arg) = name
        .strip_prefix("twist(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let k: i64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::UnknownKnot(name.to_string()))?;
        return Ok(twist_knot(k));
    }
    Err(Error::UnknownKnot(name.to_string()))
}

/// Deterministic corpus of admissible matrices: direct sums of random
/// genus-one blocks [[a, b+1], [b, c]] with entries in [-5, 5]. The same
/// seed always yields the same matrices.
pub fn random_corpus(seed: u64, count: usize, max_genus: usize) -> Vec<SeifertMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let genus = rng.gen_range(1..=max_genus.max(1));
        let mut m = SeifertMatrix::unknot();
        for _ in 0..genus {
            let a = rng.gen_range(-5..=5);
            let b = rng.gen_range(-5..=5);
            let c = rng.gen_range(-5..=5);
            let block = SeifertMatrix::new(vec![vec![a, b + 1], vec![b, c]])
                .expect("genus-one block is admissible");
            m = m.connected_sum(&block);
        }
        out.push(m);
    }
    out
}
