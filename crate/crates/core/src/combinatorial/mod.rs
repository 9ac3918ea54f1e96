//! Quivers and locally finite posets: path and incidence (co)algebras,
//! truncations of infinite families, and combinatorial semiperfectness.

mod poset;
mod quiver;
mod semiperfect;
mod template;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalgebra::CoalgebraMorphism;
use crate::error::{Error, Result};
use crate::finite_dual::finite_dual_findim;
use crate::linalg::{FieldSpec, SparseMatrix};

pub use poset::Poset;
pub use quiver::{Arrow, Grouping, Path, Quiver};
pub use semiperfect::{semiperfect_check, Family, SemiperfectVerdict};
pub use template::{PosetTemplate, QuiverTemplate, Truncation};

/// Left or right, for comodules and semiperfectness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub fn opposite(self) -> Hand {
        match self {
            Hand::Left => Hand::Right,
            Hand::Right => Hand::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Hand::Left => "left",
            Hand::Right => "right",
        }
    }
}

impl std::str::FromStr for Hand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Hand::Left),
            "right" => Ok(Hand::Right),
            other => Err(Error::Invalid(format!("side must be left or right, got `{other}`"))),
        }
    }
}

/// `p ↦ p*` from the finite dual of the path algebra to the path coalgebra,
/// verified to be a counital coalgebra isomorphism.
pub fn verify_pathdual_iso(q: &Quiver, field: FieldSpec) -> Result<CoalgebraMorphism> {
    let max_len = q.exact_max_len()?;
    let algebra = q.path_algebra(field, max_len);
    debug_assert!(!algebra.is_truncated());
    let dual = Arc::new(finite_dual_findim(algebra.algebra()));
    let coalgebra = Arc::new(q.path_coalgebra(field, max_len));
    canonical_iso(dual, coalgebra)
}

/// `e_{x,y} ↦ δ_{x,y}` from the finite dual of the finitely supported
/// incidence algebra to the incidence coalgebra.
pub fn verify_incidencedual_iso(x: &Poset, field: FieldSpec) -> Result<CoalgebraMorphism> {
    let dual = Arc::new(finite_dual_findim(&x.fia(field)));
    let coalgebra = Arc::new(x.incidence_coalgebra(field));
    canonical_iso(dual, coalgebra)
}

fn canonical_iso(
    dual: Arc<crate::coalgebra::FinCoalgebra>,
    target: Arc<crate::coalgebra::FinCoalgebra>,
) -> Result<CoalgebraMorphism> {
    if dual.dim() != target.dim() {
        return Err(Error::DimensionMismatch("dual and coalgebra differ in dimension".into()));
    }
    let m = CoalgebraMorphism::new(dual.clone(), target, SparseMatrix::identity(dual.field(), dual.dim()))?;
    if !m.preserves_counit() || !m.is_bijective() {
        return Err(Error::Invalid("canonical map is not a counital isomorphism".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests;
