//! The rational dual `R = ⊕_j E(S_j)*` of a decomposition, the map
//! `φ_l: C → R⁰`, `φ_l(c)(r) = r(c)`, and left coreflexivity.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::decompose::InjectiveDecomposition;
use crate::algebra::FinAlgebra;
use crate::coalgebra::{subcoalgebra_generated, CoalgebraMorphism, FinCoalgebra};
use crate::combinatorial::Hand;
use crate::comodule::{comodule_to_dual_module, module_to_comodule, FinComodule, FinModule};
use crate::error::{Error, Result};
use crate::linalg::{dot, FieldSpec, Scalar, SparseMatrix, Vector};

/// Truncation bookkeeping: blocks are read at `radius`, products need
/// structure constants up to `closure_radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Radii {
    pub radius: usize,
    pub closure_radius: usize,
}

#[derive(Clone, Debug)]
pub struct RatDualAlgebra {
    pub decomposition: InjectiveDecomposition,
    /// Indices of the blocks whose duals make up `R`.
    pub included: Vec<usize>,
    /// Basis of `R` as functionals on `C`, block by block.
    pub basis: Vec<Vector>,
    pub ranges: Vec<Range<usize>>,
    /// `e_j` for the included blocks.
    pub idempotents: Vec<Vector>,
    pub radii: Option<Radii>,
    algebra: OnceLock<Arc<FinAlgebra>>,
}

/// `R` from every block of the decomposition; in finite dimension `R = C*`.
pub fn rat_dual(d: &InjectiveDecomposition) -> Result<RatDualAlgebra> {
    rat_dual_of_blocks(d, (0..d.blocks.len()).collect(), None)
}

/// `R` from a chosen set of blocks, e.g. those of a truncation that are
/// already complete.
pub fn rat_dual_of_blocks(d: &InjectiveDecomposition, included: Vec<usize>, radii: Option<Radii>) -> Result<RatDualAlgebra> {
    if let Some(r) = radii {
        if r.closure_radius < 2 * r.radius {
            return Err(Error::InsufficientClosureRadius { have: r.closure_radius, need: 2 * r.radius });
        }
    }
    let c = &d.coalgebra;
    let duals = d.block_duals();
    let mut basis = Vec::new();
    let mut ranges = Vec::new();
    for &j in &included {
        let start = basis.len();
        basis.extend(duals[j].iter().cloned());
        ranges.push(start..basis.len());
    }
    let idempotents: Vec<Vector> = included.iter().map(|&j| d.idempotents[j].clone()).collect();
    for (a, ea) in idempotents.iter().enumerate() {
        for (b, eb) in idempotents.iter().enumerate() {
            let p = c.convolve(ea, eb);
            let expect = if a == b { ea.clone() } else { c.zero_vector() };
            if p != expect {
                return Err(Error::DecompositionFailed("rational dual idempotents are not orthogonal".into()));
            }
        }
    }
    // E(S_j)* = C* e_j (left blocks) or e_j C* (right blocks)
    let cstar_dim = c.dim();
    for (k, &j) in included.iter().enumerate() {
        let e = &idempotents[k];
        let translates: Vec<Vector> = (0..cstar_dim)
            .map(|i| {
                let f = crate::linalg::unit_vec(c.field(), cstar_dim, i);
                match d.side {
                    Hand::Left => c.convolve(&f, e),
                    Hand::Right => c.convolve(e, &f),
                }
            })
            .collect();
        let generated = crate::linalg::Subspace::span(c.field(), cstar_dim, translates);
        let block = crate::linalg::Subspace::span(c.field(), cstar_dim, duals[j].iter().cloned());
        if generated != block {
            return Err(Error::DecompositionFailed(format!("block dual {} is not generated by its idempotent", d.blocks[j].label)));
        }
    }
    Ok(RatDualAlgebra { decomposition: d.clone(), included, basis, ranges, idempotents, radii, algebra: OnceLock::new() })
}

impl RatDualAlgebra {
    pub fn coalgebra(&self) -> &Arc<FinCoalgebra> {
        &self.decomposition.coalgebra
    }

    pub fn field(&self) -> FieldSpec {
        self.coalgebra().field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a functional on `C` in the basis of `R`, if it lies in `R`.
    pub fn coordinates(&self, f: &[Scalar]) -> Option<Vector> {
        let blocks = &self.decomposition.blocks;
        let coords: Vector = self
            .included
            .iter()
            .flat_map(|&j| blocks[j].basis.iter().map(|b| dot(f, b)))
            .collect();
        let mut rebuilt = self.coalgebra().zero_vector();
        for (x, g) in coords.iter().zip(&self.basis) {
            crate::linalg::axpy(&mut rebuilt, x, g);
        }
        (rebuilt == f).then_some(coords)
    }

    /// `R` as an algebra under convolution, on the block dual basis.
    pub fn algebra(&self) -> Result<Arc<FinAlgebra>> {
        if let Some(a) = self.algebra.get() {
            return Ok(a.clone());
        }
        let c = self.coalgebra();
        let field = self.field();
        let mut support: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); c.dim()];
        for (a, g) in self.basis.iter().enumerate() {
            for (i, x) in g.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                support[i].push((a, x.clone()));
            }
        }
        // (r_a * r_b)(c_k) = Σ_{(i,j)} δ_k^{ij} r_a(c_i) r_b(c_j)
        let mut products: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (k, i, j, s) in c.structure_constants() {
            for (a, x) in &support[i] {
                for (b, y) in &support[j] {
                    let slot = products.entry((*a, *b)).or_insert_with(|| c.zero_vector());
                    slot[k] = &slot[k] + &(&(s * x) * y);
                }
            }
        }
        let mut entries = Vec::new();
        for ((a, b), f) in products {
            let coords = self
                .coordinates(&f)
                .ok_or_else(|| Error::DecompositionFailed("rational dual is not closed under products".into()))?;
            entries.extend(coords.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (a, b, k, s)));
        }
        let unit = (self.included.len() == self.decomposition.blocks.len())
            .then(|| c.counit().and_then(|eps| self.coordinates(eps)))
            .flatten();
        let algebra = Arc::new(FinAlgebra::new(field, self.dim(), entries, unit)?);
        Ok(self.algebra.get_or_init(|| algebra).clone())
    }

    /// `e_j` in the coordinates of `R`.
    pub fn idempotent_coordinates(&self) -> Vec<Vector> {
        self.idempotents.iter().map(|e| self.coordinates(e).expect("e_j lies in its block dual")).collect()
    }
}

/// `D^⊥ ∩ R` for the subcoalgebra `D` generated by one basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteDualWitness {
    pub element: usize,
    pub subcoalgebra_dim: usize,
    /// Codimension of `D^⊥ ∩ R` in `R`; at most `subcoalgebra_dim`.
    pub ideal_codim: usize,
}

#[derive(Clone, Debug)]
pub struct PhiL {
    /// Row `a`, column `c`: `r_a(c)`.
    pub matrix: SparseMatrix,
    pub kernel: Vec<Vector>,
    pub witnesses: Vec<FiniteDualWitness>,
}

/// `φ_l` on the basis of `C`, with the cofinite-ideal witness that each
/// `φ_l(c)` lies in `R⁰`.
pub fn phi_l(r: &RatDualAlgebra) -> Result<PhiL> {
    if let Some(radii) = r.radii {
        if radii.closure_radius < 2 * radii.radius {
            return Err(Error::InsufficientClosureRadius { have: radii.closure_radius, need: 2 * radii.radius });
        }
    }
    let c = r.coalgebra();
    let matrix = SparseMatrix::from_rows(r.field(), c.dim(), &r.basis);
    let kernel = matrix.kernel_basis();
    let mut witnesses = Vec::with_capacity(c.dim());
    for k in 0..c.dim() {
        let d = subcoalgebra_generated(c, &c.basis_vector(k));
        if !c.is_subcoalgebra(&d) {
            return Err(Error::Invalid(format!("generated subcoalgebra of basis element {k} is not closed")));
        }
        // x ∈ R (coordinates) with Σ x_a r_a vanishing on D
        let rows: Vec<Vector> = d.basis().iter().map(|v| matrix.mul_vec(v).expect("shape")).collect();
        let restriction = SparseMatrix::from_rows(r.field(), r.dim(), &rows);
        let ideal = restriction.kernel_basis();
        let col = matrix.column(k);
        if ideal.iter().any(|x| !dot(x, &col).is_zero()) {
            return Err(Error::Invalid(format!("φ_l of basis element {k} does not vanish on its cofinite ideal")));
        }
        let codim = r.dim() - ideal.len();
        if codim > d.dim() {
            return Err(Error::Invalid("cofinite ideal is too large".into()));
        }
        witnesses.push(FiniteDualWitness { element: k, subcoalgebra_dim: d.dim(), ideal_codim: codim });
    }
    Ok(PhiL { matrix, kernel, witnesses })
}

/// `φ_l` as a coalgebra morphism `C → R⁰ = R*`.
pub fn phi_l_morphism(r: &RatDualAlgebra, phi: &PhiL) -> Result<CoalgebraMorphism> {
    let target = Arc::new(FinCoalgebra::dual_of(&*r.algebra()?));
    CoalgebraMorphism::new(r.coalgebra().clone(), target, phi.matrix.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Coreflexivity {
    Bijective,
    InjectiveNotSurjectiveAtBound,
    NotInjective { kernel: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreflexiveReport {
    #[serde(flatten)]
    pub verdict: Coreflexivity,
    pub radius: Option<usize>,
    pub kernel_rank: usize,
    pub dim_coalgebra: usize,
    pub dim_rational_dual: usize,
    pub blocks: usize,
    pub note: Option<String>,
}

/// Injectivity by kernel rank, surjectivity onto `R⁰ = R*` by rank, and the
/// blockwise form of surjectivity: on each block, `φ_l` restricted to
/// `E(S_j)` is dual to the identity on `E(S_j)*`.
pub fn left_coreflexive_check(r: &RatDualAlgebra) -> Result<CoreflexiveReport> {
    let phi = phi_l(r)?;
    let c = r.coalgebra();
    let blocks = &r.decomposition.blocks;
    for (range, &j) in r.ranges.iter().zip(&r.included) {
        for (a, b) in range.clone().zip(&blocks[j].basis) {
            let image = phi.matrix.mul_vec(b)?;
            for (row, x) in image.iter().enumerate() {
                let expect = if row == a { x.is_one() } else { x.is_zero() };
                if !expect {
                    return Err(Error::DecompositionFailed(format!("φ_l is not dual to block {}", blocks[j].label)));
                }
            }
        }
    }
    let rank = c.dim() - phi.kernel.len();
    let verdict = if !phi.kernel.is_empty() {
        Coreflexivity::NotInjective {
            kernel: phi.kernel.iter().map(|v| v.iter().map(|s| s.to_string()).collect()).collect(),
        }
    } else if rank == r.dim() {
        Coreflexivity::Bijective
    } else {
        Coreflexivity::InjectiveNotSurjectiveAtBound
    };
    let note = r.radii.map(|radii| {
        format!(
            "finite truncation at radius {} (closure {}); behaviour of the infinite family is certified combinatorially, not by a finite kernel",
            radii.radius, radii.closure_radius
        )
    });
    Ok(CoreflexiveReport {
        verdict,
        radius: r.radii.map(|x| x.radius),
        kernel_rank: phi.kernel.len(),
        dim_coalgebra: c.dim(),
        dim_rational_dual: r.dim(),
        blocks: r.included.len(),
        note,
    })
}

/// `E(f) = Σ_j f(e_j)` for `f` given by its values on the basis of `R`.
pub fn counit_e(r: &RatDualAlgebra, f: &[Scalar]) -> Scalar {
    r.idempotent_coordinates().iter().fold(r.field().zero(), |acc, e| &acc + &dot(f, e))
}

/// Checks `E ∘ φ_l = ε` on every basis element of `C`.
pub fn check_counit_e(r: &RatDualAlgebra, phi: &PhiL) -> Result<()> {
    let c = r.coalgebra();
    let eps = c.counit().ok_or_else(|| Error::Invalid("coalgebra has no counit".into()))?;
    for k in 0..c.dim() {
        // φ_l(c_k) as a functional on R: its value on r_a is r_a(c_k)
        let f = phi.matrix.column(k);
        if counit_e(r, &f) != eps[k] {
            return Err(Error::Invalid(format!("E(φ_l(c_{k})) differs from ε(c_{k})")));
        }
    }
    Ok(())
}

/// A finite-dimensional `R`-module made into a right `C`-comodule through
/// `R⁰` and `φ_l⁻¹`, checked to restrict back to the given action.
pub fn rat_module_to_comodule(r: &RatDualAlgebra, n: &FinModule) -> Result<FinComodule> {
    let report = left_coreflexive_check(r)?;
    if report.verdict != Coreflexivity::Bijective {
        return Err(Error::NotLeftCoreflexive(format!("{:?}", report.verdict)));
    }
    let algebra = r.algebra()?;
    if n.algebra.table() != algebra.table() {
        return Err(Error::IncompatibleStructure("module is not over this rational dual".into()));
    }
    let c = r.coalgebra().clone();
    let over_dual = module_to_comodule(n)?;
    let phi = phi_l(r)?;
    let inv = phi.matrix.inverse().ok_or_else(|| Error::NotLeftCoreflexive("φ_l is not invertible".into()))?;
    let mut entries = Vec::new();
    for (t, s, i, x) in over_dual.structure_constants() {
        for k in 0..c.dim() {
            let w = inv.get(k, i);
            if !w.is_zero() {
                entries.push((t, s, k, &x * &w));
            }
        }
    }
    let m = FinComodule::new(c, n.dim(), entries, n.is_unital())?;
    let back = comodule_to_dual_module(&m)?;
    for (a, g) in r.basis.iter().enumerate() {
        for t in 0..n.dim() {
            let v = crate::linalg::unit_vec(r.field(), n.dim(), t);
            if back.act(g, &v) != n.act(&n.algebra.basis_vector(a), &v) {
                return Err(Error::Invalid("restricted action differs from the given module".into()));
            }
        }
    }
    Ok(m)
}
