//! Finite-dimensional Hopf algebras are recovered from their duals:
//! `H ≅ (H*)⁰` as coalgebras.

use std::sync::Arc;

use super::decompose::decompose_injectives;
use super::ratdual::{phi_l, phi_l_morphism, rat_dual};
use crate::coalgebra::{dual_algebra, CoalgebraMorphism, FinCoalgebra};
use crate::combinatorial::Hand;
use crate::error::{Error, Result};
use crate::finite_dual::FinBialgebra;
use crate::linalg::SparseMatrix;

#[derive(Clone, Debug)]
pub struct SelfDuality {
    /// `h ↦ (f ↦ f(h))` into the finite dual of `H*`.
    pub canonical: CoalgebraMorphism,
    /// The same map obtained as `φ_l` through the rational dual of `H`.
    pub through_rational_dual: CoalgebraMorphism,
    pub blocks: usize,
}

pub fn hopf_selfdual_check(h: &FinBialgebra, seed: u64) -> Result<SelfDuality> {
    if h.antipode.is_none() {
        return Err(Error::Invalid("self-duality check needs an antipode".into()));
    }
    h.check()?;
    let c = h.coalgebra.clone();
    let hstar = dual_algebra(&c);
    let double = Arc::new(FinCoalgebra::dual_of(&hstar));
    let canonical = CoalgebraMorphism::new(c.clone(), double, SparseMatrix::identity(c.field(), c.dim()))?;
    if !canonical.is_bijective() || !canonical.preserves_counit() {
        return Err(Error::Invalid("canonical map H → (H*)⁰ is not a counital isomorphism".into()));
    }
    let d = decompose_injectives(&c, Hand::Left, seed)?;
    let r = rat_dual(&d)?;
    let phi = phi_l(&r)?;
    let through = phi_l_morphism(&r, &phi)?;
    if !through.is_bijective() || !through.preserves_counit() {
        return Err(Error::Invalid("φ_l is not a counital isomorphism onto (H*)⁰".into()));
    }
    Ok(SelfDuality { canonical, through_rational_dual: through, blocks: d.blocks.len() })
}
