//! Decomposition of a counital coalgebra into indecomposable injective
//! comodules `C = ⊕ E(S_j)`, on either side, with the matching orthogonal
//! idempotents `e_j ∈ C*`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{primitive_idempotents, quotient_algebra, radical, FinAlgebra};
use crate::coalgebra::{dual_algebra, FinCoalgebra};
use crate::combinatorial::{Grouping, Hand};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, Scalar, SparseMatrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Name of the simple comodule in the socle.
    pub label: String,
    pub basis: Vec<Vector>,
}

/// How the blocks were found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Method {
    /// A proposed grouping of basis elements, certified by the verifier.
    Grouping { name: String },
    /// Blocks `e_j ⇀ C` (left) or `C ↼ e_j` (right) from lifted primitive
    /// idempotents of `C*`.
    Idempotents { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct InjectiveDecomposition {
    pub coalgebra: Arc<FinCoalgebra>,
    pub side: Hand,
    pub blocks: Vec<Block>,
    /// `e_j = ε ∘ π_j`, where `π_j` projects onto block `j` along the others.
    pub idempotents: Vec<Vector>,
    pub method: Method,
}

impl InjectiveDecomposition {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.basis.len()).collect()
    }

    pub fn block_space(&self, j: usize) -> Subspace {
        Subspace::span(self.coalgebra.field(), self.coalgebra.dim(), self.blocks[j].basis.iter().cloned())
    }

    /// `E(S_j)*` inside `C*`: functionals vanishing on the other blocks,
    /// given on a basis dual to the block basis.
    pub fn block_duals(&self) -> Vec<Vec<Vector>> {
        let (_, inv) = basis_and_inverse(&self.coalgebra, &self.blocks).expect("verified decomposition");
        dual_rows(&inv, &self.blocks)
    }
}

/// `e ⇀ c = Σ c_1 e(c_2)` projects onto the left block of `e`;
/// `c ↼ e = Σ e(c_1) c_2` onto the right block.
pub fn block_projection(c: &FinCoalgebra, side: Hand, e: &[Scalar], v: &[Scalar]) -> Vector {
    match side {
        Hand::Left => c.right_contract(e, v),
        Hand::Right => c.left_contract(e, v),
    }
}

fn basis_and_inverse(c: &FinCoalgebra, blocks: &[Block]) -> Result<(SparseMatrix, SparseMatrix)> {
    let cols: Vec<Vector> = blocks.iter().flat_map(|b| b.basis.iter().cloned()).collect();
    if cols.len() != c.dim() {
        return Err(Error::DecompositionFailed(format!(
            "block dimensions sum to {} but the coalgebra has dimension {}",
            cols.len(),
            c.dim()
        )));
    }
    let b = SparseMatrix::from_columns(c.field(), c.dim(), &cols);
    let inv = b.inverse().ok_or_else(|| Error::DecompositionFailed("blocks do not form a direct sum".into()))?;
    Ok((b, inv))
}

/// Rows of `B⁻¹` grouped by block: the basis of each `E(S_j)*` dual to the block basis.
fn dual_rows(inv: &SparseMatrix, blocks: &[Block]) -> Vec<Vec<Vector>> {
    let mut col = 0;
    blocks
        .iter()
        .map(|b| {
            let rows = (col..col + b.basis.len()).map(|r| inv.row(r)).collect();
            col += b.basis.len();
            rows
        })
        .collect()
}

/// Whether `span(basis)` is a subcomodule on `side`: every tensor factor on
/// the comodule's side of `δ(v)` stays inside.
pub fn is_side_subcomodule(c: &FinCoalgebra, side: Hand, space: &Subspace, basis: &[Vector]) -> bool {
    let n = c.dim();
    basis.iter().all(|v| {
        let mut factors: std::collections::BTreeMap<usize, Vector> = std::collections::BTreeMap::new();
        for ((i, j), s) in c.delta(v) {
            // left comodule: δ(N) ⊆ C ⊗ N, so group by the left index and collect right factors
            let (key, pos) = match side {
                Hand::Left => (i, j),
                Hand::Right => (j, i),
            };
            factors.entry(key).or_insert_with(|| vec![c.field().zero(); n])[pos] = s;
        }
        factors.values().all(|w| space.contains(w))
    })
}

/// Whether `e C* e` is a local algebra, i.e. `e` is primitive in `C*`.
fn corner_is_local(cstar: &FinAlgebra, e: &[Scalar], block_dual: &[Vector], side: Hand, seed: u64) -> Result<bool> {
    let field = cstar.field();
    // C* e_j (left) or e_j C* (right) is spanned by the block dual
    let corner_span: Vec<Vector> = block_dual
        .iter()
        .map(|g| match side {
            Hand::Left => cstar.mul(e, g),
            Hand::Right => cstar.mul(g, e),
        })
        .collect();
    let space = Subspace::span(field, cstar.dim(), corner_span);
    let basis = space.basis();
    let m = basis.len();
    if m == 0 {
        return Ok(false);
    }
    let mut entries = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let coords = space
                .coordinates(&cstar.mul(x, y))
                .ok_or_else(|| Error::DecompositionFailed("corner is not closed under multiplication".into()))?;
            for (k, s) in coords.into_iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                entries.push((a, b, k, s));
            }
        }
    }
    let unit = space.coordinates(e).ok_or_else(|| Error::DecompositionFailed("idempotent outside its corner".into()))?;
    let corner = Arc::new(FinAlgebra::new(field, m, entries, Some(unit))?);
    if m == 1 {
        return Ok(true);
    }
    let j = radical(&corner)?;
    let (quot, _) = quotient_algebra(&corner, &j)?;
    if quot.dim() <= 1 {
        return Ok(true);
    }
    Ok(primitive_idempotents(&quot, seed)?.len() == 1)
}

/// Checks every defining property of a decomposition and returns `e_j = ε∘π_j`:
/// blocks are subcomodules on `side` forming a direct sum equal to `C`; the
/// `e_j` are orthogonal idempotents summing to `ε`; `e_j` projects onto its
/// own block; each `e_j` is primitive, so each block has simple socle.
pub fn verify_decomposition(c: &Arc<FinCoalgebra>, side: Hand, blocks: &[Block], seed: u64) -> Result<Vec<Vector>> {
    let field = c.field();
    let n = c.dim();
    let eps = c.counit().ok_or_else(|| Error::Invalid("injective decomposition needs a counit".into()))?.clone();
    let fail = |m: String| Err(Error::DecompositionFailed(m));
    let (_, inv) = basis_and_inverse(c, blocks)?;
    let spaces: Vec<Subspace> = blocks.iter().map(|b| Subspace::span(field, n, b.basis.iter().cloned())).collect();
    for (b, s) in blocks.iter().zip(&spaces) {
        if b.basis.is_empty() {
            return fail(format!("block {} is empty", b.label));
        }
        if !is_side_subcomodule(c, side, s, &b.basis) {
            return fail(format!("block {} is not a {} subcomodule", b.label, side.name()));
        }
    }
    // e_j(x) = ε(π_j x), π_j x = Σ_{r in block j} (B⁻¹x)_r b_r
    let mut idempotents = Vec::with_capacity(blocks.len());
    let mut col = 0;
    for b in blocks {
        let mut e = vec![field.zero(); n];
        for (r, v) in (col..col + b.basis.len()).zip(&b.basis) {
            let weight = crate::linalg::dot(&eps, v);
            if !weight.is_zero() {
                crate::linalg::axpy(&mut e, &weight, &inv.row(r));
            }
        }
        col += b.basis.len();
        idempotents.push(e);
    }
    let mut total = vec![field.zero(); n];
    for e in &idempotents {
        crate::linalg::axpy(&mut total, &field.one(), e);
    }
    if total != eps {
        return fail("block idempotents do not sum to the counit".into());
    }
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let p = c.convolve(ei, ej);
            let ok = if i == j { &p == ei } else { is_zero_vec(&p) };
            if !ok {
                return fail(format!("e_{i} e_{j} breaks orthogonal idempotency"));
            }
        }
    }
    for (k, b) in blocks.iter().enumerate() {
        for v in &b.basis {
            for (j, e) in idempotents.iter().enumerate() {
                let image = block_projection(c, side, e, v);
                let ok = if j == k { &image == v } else { is_zero_vec(&image) };
                if !ok {
                    return fail(format!("e_{j} does not project onto block {}", blocks[j].label));
                }
            }
        }
    }
    let cstar = dual_algebra(c);
    for ((b, e), dual) in blocks.iter().zip(&idempotents).zip(&dual_rows(&inv, blocks)) {
        if !corner_is_local(&cstar, e, dual, side, seed)? {
            return fail(format!("block {} is decomposable", b.label));
        }
    }
    Ok(idempotents)
}

/// Decomposition through primitive idempotents of `C*`.
pub fn decompose_injectives(c: &Arc<FinCoalgebra>, side: Hand, seed: u64) -> Result<InjectiveDecomposition> {
    let field = c.field();
    let n = c.dim();
    if !c.is_counital() {
        return Err(Error::Invalid("injective decomposition needs a counit".into()));
    }
    let cstar = Arc::new(dual_algebra(c));
    let family = if n == 0 { Vec::new() } else { primitive_idempotents(&cstar, seed)? };
    let blocks: Vec<Block> = family
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let images = (0..n).map(|i| block_projection(c, side, e, &unit_vec(field, n, i)));
            Block { label: format!("S{}", j + 1), basis: Subspace::span(field, n, images).basis() }
        })
        .collect();
    let idempotents = verify_decomposition(c, side, &blocks, seed)?;
    if idempotents != family {
        return Err(Error::DecompositionFailed("block idempotents differ from the lifted family".into()));
    }
    Ok(InjectiveDecomposition { coalgebra: c.clone(), side, blocks, idempotents, method: Method::Idempotents { seed } })
}

/// Tries each named grouping of basis indices in order and keeps the first
/// one the verifier certifies; falls back to the idempotent method.
pub fn decompose_with_candidates(
    c: &Arc<FinCoalgebra>,
    side: Hand,
    candidates: &[(&str, Grouping)],
    seed: u64,
) -> Result<InjectiveDecomposition> {
    let field = c.field();
    let n = c.dim();
    for (name, grouping) in candidates {
        let blocks: Vec<Block> = grouping
            .iter()
            .map(|(label, idx)| Block { label: label.clone(), basis: idx.iter().map(|&i| unit_vec(field, n, i)).collect() })
            .collect();
        if let Ok(idempotents) = verify_decomposition(c, side, &blocks, seed) {
            return Ok(InjectiveDecomposition {
                coalgebra: c.clone(),
                side,
                blocks,
                idempotents,
                method: Method::Grouping { name: name.to_string() },
            });
        }
    }
    decompose_injectives(c, side, seed)
}
