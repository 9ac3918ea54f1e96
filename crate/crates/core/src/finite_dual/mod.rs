//! Finite duals of algebras.
//!
//! In finite dimension every functional is representative, so `A⁰ = A*`
//! with the transposed multiplication. For graded presentations of infinite
//! algebras only finite pieces are ever built: witness spans of single
//! functionals and coefficient coalgebras of representations.

mod bialgebra;
mod graded;
mod linrec;

use std::sync::Arc;

use crate::algebra::{unitalize, AlgebraMorphism, FinAlgebra};
use crate::coalgebra::{counitalize, CoalgebraMorphism, FinCoalgebra};
use crate::comodule::FinModule;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar, SparseMatrix, Subspace, Vector};

pub use bialgebra::{bialgebra_dual, FinBialgebra, FiniteGroup};
pub use graded::{delta_of_functional, membership_bounded, DeltaFamily, Functional, GradedAlgebra, GradedKind, Membership};
pub use linrec::{linrec_analyze, LinRec, LinRecFunctional};

/// `A⁰` for finite-dimensional `A`: the dual coalgebra on the dual basis.
pub fn finite_dual_findim(a: &FinAlgebra) -> FinCoalgebra {
    FinCoalgebra::dual_of(a)
}

/// The transpose of `φ: A -> B`, a coalgebra morphism `B⁰ -> A⁰`.
pub fn dual_of_morphism(phi: &AlgebraMorphism) -> Result<CoalgebraMorphism> {
    CoalgebraMorphism::new(
        Arc::new(finite_dual_findim(&phi.target)),
        Arc::new(finite_dual_findim(&phi.source)),
        phi.matrix.transpose(),
    )
}

/// `(A¹)⁰ -> (A⁰)¹`, `f ↦ f|_A + f(u)e`, checked to be a counital isomorphism.
pub fn unital_dual_compat(a: &Arc<FinAlgebra>) -> Result<CoalgebraMorphism> {
    let f = a.field();
    let n = a.dim();
    let (a1, _) = unitalize(a);
    let source = Arc::new(finite_dual_findim(&a1));
    let (target, _) = counitalize(&Arc::new(finite_dual_findim(a)));
    // basis functional t* of A¹: restriction to A gives coordinates on a_0..a_{n-1},
    // evaluation at u gives the coefficient of e
    let cols: Vec<Vector> = (0..=n)
        .map(|t| {
            let functional = a1.basis_vector(t);
            let mut img: Vector = functional[..n].to_vec();
            img.push(functional[n].clone());
            img
        })
        .collect();
    let m = CoalgebraMorphism::new(source, target, SparseMatrix::from_columns(f, n + 1, &cols))?;
    if !m.is_bijective() || !m.preserves_counit() {
        return Err(Error::Invalid("unital dual map is not a counital isomorphism".into()));
    }
    Ok(m)
}

/// Matrix coefficients `ρ_ij(a) = (a acting on the representation)_{ij}`.
#[derive(Clone, Debug)]
pub struct CoefficientCoalgebra {
    pub algebra: Arc<FinAlgebra>,
    /// Size of the representation; `ρ_ij` is at index `i*n + j`.
    pub n: usize,
    /// Each `ρ_ij` as a vector in `A*` (values on the basis of `A`).
    pub coefficients: Vec<Vector>,
    /// Counit `ρ_ij ↦ δ_ij`, present when `A` and the representation are unital.
    pub counit: Option<Vector>,
}

impl CoefficientCoalgebra {
    /// Coalgebra on the formal symbols `ρ_ij`, `Δρ_ij = Σ_r ρ_ir ⊗ ρ_rj`.
    pub fn formal_coalgebra(&self) -> FinCoalgebra {
        let n = self.n;
        let f = self.algebra.field();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for r in 0..n {
                    entries.push((i * n + j, i * n + r, r * n + j, f.one()));
                }
            }
        }
        FinCoalgebra::from_entries_unchecked(f, n * n, entries, self.counit.clone()).unwrap()
    }

    /// The span of the coefficients inside `A*`.
    pub fn span(&self) -> Subspace {
        Subspace::span(self.algebra.field(), self.algebra.dim(), self.coefficients.iter().cloned())
    }
}

/// Coefficient functions of a representation, verified multiplicative:
/// `ρ_ij(ab) = Σ_r ρ_ir(a) ρ_rj(b)` on every basis pair.
pub fn coefficient_functions(rep: &FinModule) -> Result<CoefficientCoalgebra> {
    let a = rep.algebra.clone();
    let n = rep.dim();
    let f = a.field();
    let mats: Vec<SparseMatrix> = (0..a.dim()).map(|l| rep.action_matrix(&a.basis_vector(l))).collect();
    let coefficients: Vec<Vector> =
        (0..n * n).map(|x| mats.iter().map(|m| m.get(x / n, x % n)).collect()).collect();
    let eval = |x: usize, v: &[Scalar]| -> Scalar {
        coefficients[x].iter().zip(v).fold(f.zero(), |acc, (c, y)| &acc + &(c * y))
    };
    for l in 0..a.dim() {
        for m in 0..a.dim() {
            let ab = a.mul(&a.basis_vector(l), &a.basis_vector(m));
            for i in 0..n {
                for j in 0..n {
                    let lhs = eval(i * n + j, &ab);
                    let mut rhs = f.zero();
                    for r in 0..n {
                        rhs = &rhs + &(&coefficients[i * n + r][l] * &coefficients[r * n + j][m]);
                    }
                    if lhs != rhs {
                        return Err(Error::Invalid(format!("coefficient ({i},{j}) not multiplicative")));
                    }
                }
            }
        }
    }
    let counit = if a.is_unital() && rep.is_unital() {
        Some((0..n * n).map(|x| if x / n == x % n { f.one() } else { f.zero() }).collect())
    } else {
        None
    };
    Ok(CoefficientCoalgebra { algebra: a, n, coefficients, counit })
}

/// Semigroup algebra `K[S]` from a multiplication table on `0..n`.
pub fn semigroup_algebra(field: FieldSpec, table: &[Vec<usize>]) -> Result<FinAlgebra> {
    let n = table.len();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, table[i][j], field.one())));
    Ok(FinAlgebra::new(field, n, entries, None)?.with_detected_unit())
}
