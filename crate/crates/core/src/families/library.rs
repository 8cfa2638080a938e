//! Named knot collections with cached invariants.

use num::rational::BigRational;
use num::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::seifert::matrix::SeifertMatrix;
use crate::seifert::registry;
use crate::seifert::signature::{rho0, rho0_with_tolerance, Rho0Value};

/// A named Seifert matrix together with its rho0 value and Arf bit. The
/// cached invariants are computed at insertion time, never supplied by the
/// caller, so they cannot drift from the matrix.
#[derive(Debug, Clone)]
pub struct KnotEntry {
    name: String,
    matrix: SeifertMatrix,
    rho0: Rho0Value,
    arf: u8,
}

impl KnotEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &SeifertMatrix {
        &self.matrix
    }

    pub fn rho0(&self) -> &Rho0Value {
        &self.rho0
    }

    pub fn arf(&self) -> u8 {
        self.arf
    }
}

/// An ordered collection of distinct named knots. Order is insertion order
/// and is significant: searches over the library enumerate entries in this
/// order, which keeps their results reproducible.
#[derive(Debug, Clone, Default)]
pub struct KnotLibrary {
    entries: Vec<KnotEntry>,
}

impl KnotLibrary {
    pub fn new() -> Self {
        KnotLibrary::default()
    }

    /// The built-in library: the trefoil, the figure eight and the first few
    /// twist knots on either side.
    pub fn standard() -> Self {
        let mut lib = KnotLibrary::new();
        for (name, matrix) in [
            ("trefoil", registry::trefoil()),
            ("figure8", registry::figure_eight()),
            ("twist(2)", registry::twist_knot(2)),
            ("twist(-2)", registry::twist_knot(-2)),
            ("twist(-3)", registry::twist_knot(-3)),
        ] {
            lib.insert(name, matrix)
                .expect("standard entries are valid");
        }
        lib
    }

    /// Adds a knot under a fresh name, computing its invariants with the
    /// default accuracy.
    pub fn insert(&mut self, name: &str, matrix: SeifertMatrix) -> Result<()> {
        let value = rho0(&matrix)?;
        self.insert_precomputed(name, matrix, value)
    }

    /// Adds a knot with the rho0 enclosure refined until its error bound is
    /// at most `tol`.
    pub fn insert_with_tolerance(
        &mut self,
        name: &str,
        matrix: SeifertMatrix,
        tol: &BigRational,
    ) -> Result<()> {
        let value = rho0_with_tolerance(&matrix, tol)?;
        self.insert_precomputed(name, matrix, value)
    }

    fn insert_precomputed(
        &mut self,
        name: &str,
        matrix: SeifertMatrix,
        value: Rho0Value,
    ) -> Result<()> {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Precondition("library entry needs a name".into()));
        }
        if self.get(name).is_some() {
            return Err(Error::Precondition(format!(
                "library already has an entry named {name:?}"
            )));
        }
        let arf = matrix.arf_invariant();
        self.entries.push(KnotEntry {
            name: name.to_string(),
            matrix,
            rho0: value,
            arf,
        });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&KnotEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn entries(&self) -> &[KnotEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Recomputes every cached invariant from scratch and checks that the
    /// stored enclosures are consistent with the fresh ones. A failure here
    /// means memory corruption or a bug in this crate, not bad input.
    pub fn verify_cache(&self) -> Result<()> {
        for e in &self.entries {
            let fresh = rho0(&e.matrix)?;
            let gap = (&fresh.value - &e.rho0.value).abs();
            if gap > &fresh.error_bound + &e.rho0.error_bound {
                return Err(Error::Internal(format!(
                    "cached rho0 for {:?} disagrees with recomputation",
                    e.name
                )));
            }
            if e.arf != e.matrix.arf_invariant() {
                return Err(Error::Internal(format!(
                    "cached arf bit for {:?} disagrees with recomputation",
                    e.name
                )));
            }
        }
        Ok(())
    }

    /// Serializes as a JSON array of named matrices. Cached invariants are
    /// deliberately left out of the file; they are recomputed on load.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "matrix": e.matrix.rows(),
                    })
                })
                .collect(),
        )
    }

    /// Reads a library back from the `to_json` format. Entries may give the
    /// matrix either as rows or as a registry name string.
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("library file must be a JSON array".into()))?;
        let mut lib = KnotLibrary::new();
        for item in arr {
            let name = item
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("library entry needs a string \"name\"".into()))?;
            let matrix = match item.get("matrix") {
                Some(Value::String(s)) => registry::knot_by_name(s)?,
                Some(m) => matrix_from_rows(m)?,
                None => return Err(Error::Parse(format!("entry {name:?} has no matrix"))),
            };
            lib.insert(name, matrix)?;
        }
        Ok(lib)
    }
}

fn matrix_from_rows(v: &Value) -> Result<SeifertMatrix> {
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
