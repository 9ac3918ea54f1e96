//! Finite-dimensional associative algebras given by structure constants,
//! not necessarily unital.

mod idempotent;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, FieldSpec, Scalar, SparseMatrix, Subspace, Vector};

pub use idempotent::{lift_idempotents, minimal_polynomial_in, primitive_idempotents};

/// Which multiplications an ideal must absorb.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// Sparse product entries `a_i a_j = sum_k c_k a_k`; absent keys are zero products.
pub type MultTable = BTreeMap<(usize, usize), Vec<(usize, Scalar)>>;

/// Associative algebra `a_i a_j = sum_k mu_ij^k a_k`, optionally with a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    field: FieldSpec,
    dim: usize,
    mult: MultTable,
    unit: Option<Vector>,
    labels: Option<Vec<String>>,
}

impl FinAlgebra {
    /// Builds and validates an algebra: indices in range, associativity, and
    /// the unit law when a unit is given.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Option<Vector>,
    ) -> Result<Self> {
        let a = Self::from_entries_unchecked(field, dim, entries, unit)?;
        a.check_associative()?;
        a.check_unit()?;
        Ok(a)
    }

    pub(crate) fn from_entries_unchecked(
        field: FieldSpec,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Option<Vector>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(format!("structure constant ({i},{j},{k}) out of range for dim {dim}")));
            }
            if c.field() != field {
                return Err(Error::Invalid("structure constant over a different field".into()));
            }
            let slot = acc.entry((i, j)).or_default();
            let cur = slot.remove(&k).unwrap_or_else(|| field.zero());
            let v = &cur + &c;
            if !v.is_zero() {
                slot.insert(k, v);
            }
        }
        let mult = acc
            .into_iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(key, m)| (key, m.into_iter().collect()))
            .collect();
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::Invalid("unit vector has wrong length".into()));
            }
        }
        Ok(FinAlgebra { field, dim, mult, unit, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("a{i}"),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }
    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }
    pub fn table(&self) -> &MultTable {
        &self.mult
    }

    /// Nonzero structure constants `(i, j, k, mu_ij^k)`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.mult.iter().flat_map(|(&(i, j), v)| v.iter().map(move |(k, c)| (i, j, *k, c)))
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.mult.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vec(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        zero_vec(self.field, self.dim)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (&(i, j), terms) in &self.mult {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let c = &x[i] * &y[j];
            for (k, m) in terms {
                out[*k] = &out[*k] + &(&c * m);
            }
        }
        out
    }

    /// Matrix of `z -> x z` in the basis.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.field, self.dim, self.dim);
        for (&(i, j), terms) in &self.mult {
            if x[i].is_zero() {
                continue;
            }
            for (k, c) in terms {
                m.add_to(*k, j, &(&x[i] * c));
            }
        }
        m
    }

    /// Matrix of `z -> z x` in the basis.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.field, self.dim, self.dim);
        for (&(i, j), terms) in &self.mult {
            if x[j].is_zero() {
                continue;
            }
            for (k, c) in terms {
                m.add_to(*k, i, &(&x[j] * c));
            }
        }
        m
    }

    /// Checks `(a_i a_j) a_k = a_i (a_j a_k)` on all basis triples, touching
    /// only nonzero products.
    pub fn check_associative(&self) -> Result<()> {
        let mut by_left: BTreeMap<usize, Vec<(usize, &Vec<(usize, Scalar)>)>> = BTreeMap::new();
        let mut by_right: BTreeMap<usize, Vec<(usize, &Vec<(usize, Scalar)>)>> = BTreeMap::new();
        for ((i, j), t) in &self.mult {
            by_left.entry(*i).or_default().push((*j, t));
            by_right.entry(*j).or_default().push((*i, t));
        }
        let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        // (a_i a_j) a_k
        for (&(i, j), t) in &self.mult {
            for (l, c) in t {
                for (k, t2) in by_left.get(l).into_iter().flatten() {
                    for (m, d) in t2.iter() {
                        let e = lhs.entry((i, j, *k * self.dim + *m)).or_insert_with(|| self.field.zero());
                        *e = &*e + &(c * d);
                    }
                }
            }
        }
        // a_i (a_j a_k)
        for (&(j, k), t) in &self.mult {
            for (l, c) in t {
                for (i, t2) in by_right.get(l).into_iter().flatten() {
                    for (m, d) in t2.iter() {
                        let e = rhs.entry((*i, j, k * self.dim + *m)).or_insert_with(|| self.field.zero());
                        *e = &*e + &(c * d);
                    }
                }
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        if lhs != rhs {
            let bad = lhs
                .iter()
                .find(|(k, v)| rhs.get(k) != Some(v))
                .map(|(k, _)| *k)
                .or_else(|| rhs.keys().find(|k| !lhs.contains_key(k)).copied())
                .unwrap();
            return Err(Error::Invalid(format!(
                "not associative at basis triple ({}, {}, {})",
                bad.0,
                bad.1,
                bad.2 / self.dim.max(1)
            )));
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        if let Some(u) = &self.unit {
            for i in 0..self.dim {
                let e = self.basis_vector(i);
                if self.mul(u, &e) != e || self.mul(&e, u) != e {
                    return Err(Error::Invalid(format!("unit fails on basis element {i}")));
                }
            }
        }
        Ok(())
    }

    /// Finds a two-sided identity by solving `u a_i = a_i = a_i u`.
    pub fn find_unit(&self) -> Option<Vector> {
        let n = self.dim;
        if n == 0 {
            return Some(Vec::new());
        }
        // unknown u = sum x_l a_l; equations for each (i, coordinate)
        let mut m = SparseMatrix::zeros(self.field, 2 * n * n, n);
        let mut rhs = vec![self.field.zero(); 2 * n * n];
        for i in 0..n {
            for (&(l, j), t) in &self.mult {
                for (k, c) in t {
                    if j == i {
                        m.add_to(i * n + k, l, c);
                    }
                    if l == i {
                        m.add_to(n * n + i * n + k, j, c);
                    }
                }
            }
            rhs[i * n + i] = self.field.one();
            rhs[n * n + i * n + i] = self.field.one();
        }
        m.solve(&rhs).ok().flatten()
    }

    /// Declares the algebra unital with the unique identity, when one exists.
    pub fn with_detected_unit(mut self) -> Self {
        self.unit = self.find_unit();
        self
    }

    pub fn without_unit(mut self) -> Self {
        self.unit = None;
        self
    }

    /// Same algebra in a new basis; column `j` of `basis` is the new `j`-th element.
    pub fn change_basis(&self, basis: &SparseMatrix) -> Result<FinAlgebra> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Invalid("change of basis is not invertible".into()))?;
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| basis.column(j)).collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = inv.mul_vec(&self.mul(&cols[i], &cols[j]))?;
                for (k, c) in p.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        let unit = match &self.unit {
            Some(u) => Some(inv.mul_vec(u)?),
            None => None,
        };
        FinAlgebra::from_entries_unchecked(self.field, n, entries, unit)
    }

    /// The zero algebra structure on `K^dim` (all products vanish).
    pub fn null(field: FieldSpec, dim: usize) -> Self {
        FinAlgebra { field, dim, mult: MultTable::new(), unit: None, labels: None }
    }

    /// The ground field as a 1-dimensional unital algebra.
    pub fn ground_field(field: FieldSpec) -> Self {
        FinAlgebra::from_entries_unchecked(field, 1, [(0, 0, 0, field.one())], Some(vec![field.one()])).unwrap()
    }

    /// `M_n(K)` with basis `E_rc` at index `r*n + c`.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Self {
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    entries.push((a * n + b, b * n + d, a * n + d, field.one()));
                }
            }
        }
        let mut unit = zero_vec(field, n * n);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        let labels = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
        FinAlgebra::from_entries_unchecked(field, n * n, entries, Some(unit)).unwrap().with_labels(labels)
    }

    /// Upper-triangular `n x n` matrices; basis `E_rc` (r <= c) in row-major order.
    pub fn upper_triangular(field: FieldSpec, n: usize) -> Self {
        let idx: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
        let pos = |r: usize, c: usize| idx.iter().position(|&p| p == (r, c)).unwrap();
        let mut entries = Vec::new();
        for (i, &(a, b)) in idx.iter().enumerate() {
            for (j, &(c, d)) in idx.iter().enumerate() {
                if b == c {
                    entries.push((i, j, pos(a, d), field.one()));
                }
            }
        }
        let mut unit = zero_vec(field, idx.len());
        for r in 0..n {
            unit[pos(r, r)] = field.one();
        }
        let labels = idx.iter().map(|(r, c)| format!("E{}{}", r + 1, c + 1)).collect();
        FinAlgebra::from_entries_unchecked(field, idx.len(), entries, Some(unit)).unwrap().with_labels(labels)
    }

    /// `K[X]/(X^n)` with basis `1, X, ..., X^{n-1}`.
    pub fn truncated_polynomial(field: FieldSpec, n: usize) -> Self {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    entries.push((i, j, i + j, field.one()));
                }
            }
        }
        let unit = if n > 0 { Some(unit_vec(field, n, 0)) } else { None };
        FinAlgebra::from_entries_unchecked(field, n, entries, unit).unwrap()
    }

    /// Subalgebra generated by `seeds` (closure under products), with its
    /// inclusion. The new basis is the echelon basis of the closure.
    pub fn subalgebra_generated(self: &Arc<Self>, seeds: &[Vector]) -> Result<AlgebraMorphism> {
        let mut space = Subspace::span(self.field, self.dim, seeds.iter().cloned());
        loop {
            let basis = space.basis();
            let mut products = Vec::new();
            for x in &basis {
                for y in &basis {
                    products.push(self.mul(x, y));
                }
            }
            let next = space.extend(products);
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        let basis = space.basis();
        let mut entries = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let c = space.coordinates(&self.mul(x, y)).expect("closed under products");
                entries.extend(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (i, j, k, v)));
            }
        }
        let unit = self.unit.as_ref().and_then(|u| space.coordinates(u));
        let sub = FinAlgebra::from_entries_unchecked(self.field, basis.len(), entries, unit)?;
        let incl = SparseMatrix::from_columns(self.field, self.dim, &basis);
        AlgebraMorphism::new(Arc::new(sub), self.clone(), incl)
    }
}

/// Linear map between algebras that is multiplicative on basis pairs.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: Arc<FinAlgebra>,
    pub target: Arc<FinAlgebra>,
    /// `dim(target) x dim(source)`; column `j` is the image of `a_j`.
    pub matrix: SparseMatrix,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<FinAlgebra>, target: Arc<FinAlgebra>, matrix: SparseMatrix) -> Result<Self> {
        let m = AlgebraMorphism { source, target, matrix };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.matrix.rows() != t.dim() || self.matrix.cols() != s.dim() {
            return Err(Error::DimensionMismatch("morphism matrix shape".into()));
        }
        let images: Vec<Vector> = (0..s.dim()).map(|j| self.matrix.column(j)).collect();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(&s.mul(&s.basis_vector(i), &s.basis_vector(j)));
                let rhs = t.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::Invalid(format!("not multiplicative on ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// Whether the unit of the source maps to the unit of the target.
    pub fn preserves_unit(&self) -> bool {
        match (self.source.unit(), self.target.unit()) {
            (Some(u), Some(v)) => &self.apply(u) == v,
            _ => false,
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.matrix.mul_vec(x).expect("shape checked")
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn compose(&self, after: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        AlgebraMorphism::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix)?)
    }
}

/// Adjoins a unit `u` as the last basis element:
/// `(a + αu)(b + βu) = ab + αb + βa + αβu`.
pub fn unitalize(a: &Arc<FinAlgebra>) -> (Arc<FinAlgebra>, AlgebraMorphism) {
    let f = a.field();
    let n = a.dim();
    let mut entries: Vec<(usize, usize, usize, Scalar)> =
        a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    for i in 0..n {
        entries.push((i, n, i, f.one()));
        entries.push((n, i, i, f.one()));
    }
    entries.push((n, n, n, f.one()));
    let mut a1 = FinAlgebra::from_entries_unchecked(f, n + 1, entries, Some(unit_vec(f, n + 1, n))).unwrap();
    if let Some(l) = a.labels() {
        let mut l = l.to_vec();
        l.push("u".into());
        a1 = a1.with_labels(l);
    }
    let a1 = Arc::new(a1);
    let mut incl = SparseMatrix::zeros(f, n + 1, n);
    for i in 0..n {
        incl.set(i, i, f.one());
    }
    let m = AlgebraMorphism { source: a.clone(), target: a1.clone(), matrix: incl };
    (a1, m)
}

/// Extends `f: A -> B` to `A¹ -> B¹` by `u ↦ u`.
pub fn unitalize_morphism(f: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    let (a1, _) = unitalize(&f.source);
    let (b1, _) = unitalize(&f.target);
    let field = a1.field();
    let (n, m) = (f.source.dim(), f.target.dim());
    let mut mat = SparseMatrix::zeros(field, m + 1, n + 1);
    for (r, c, v) in f.matrix.entries() {
        mat.set(r, c, v.clone());
    }
    mat.set(m, n, field.one());
    AlgebraMorphism::new(a1, b1, mat)
}

/// `π: A -> End(A¹) ≅ M_{n+1}(K)`, `π(a)(z) = az`.
pub fn regular_matrix_embedding(a: &Arc<FinAlgebra>) -> AlgebraMorphism {
    let f = a.field();
    let n = a.dim();
    let (a1, _) = unitalize(a);
    let size = n + 1;
    let target = Arc::new(FinAlgebra::matrix_algebra(f, size));
    let mut m = SparseMatrix::zeros(f, size * size, n);
    for i in 0..n {
        let l = a1.left_mult_matrix(&unit_vec(f, size, i));
        for (r, c, v) in l.entries() {
            m.set(r * size + c, i, v.clone());
        }
    }
    AlgebraMorphism { source: a.clone(), target, matrix: m }
}

/// A subspace of an algebra closed under the flagged multiplications.
#[derive(Clone, Debug)]
pub struct SubspaceIdeal {
    pub ambient: Arc<FinAlgebra>,
    pub space: Subspace,
    pub side: Side,
}

impl SubspaceIdeal {
    pub fn new(ambient: Arc<FinAlgebra>, space: Subspace, side: Side) -> Result<Self> {
        if !is_closed(&ambient, &space, side) {
            return Err(Error::Invalid(format!("subspace is not a {side:?} ideal")));
        }
        Ok(SubspaceIdeal { ambient, space, side })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.space.dim()
    }

    pub fn is_two_sided(&self) -> bool {
        is_closed(&self.ambient, &self.space, Side::TwoSided)
    }
}

fn is_closed(a: &FinAlgebra, space: &Subspace, side: Side) -> bool {
    let basis = space.basis();
    (0..a.dim()).all(|i| {
        let e = a.basis_vector(i);
        basis.iter().all(|v| {
            let left_ok = side == Side::Right || space.contains(&a.mul(&e, v));
            let right_ok = side == Side::Left || space.contains(&a.mul(v, &e));
            left_ok && right_ok
        })
    })
}

/// Least `side`-ideal containing the seed, by span fixpoint.
pub fn ideal_closure(a: &Arc<FinAlgebra>, seed: &[Vector], side: Side) -> SubspaceIdeal {
    let mut space = Subspace::span(a.field(), a.dim(), seed.iter().cloned());
    loop {
        let basis = space.basis();
        let mut more = Vec::new();
        for i in 0..a.dim() {
            let e = a.basis_vector(i);
            for v in &basis {
                if side != Side::Right {
                    more.push(a.mul(&e, v));
                }
                if side != Side::Left {
                    more.push(a.mul(v, &e));
                }
            }
        }
        let next = space.extend(more);
        if next.dim() == space.dim() {
            break;
        }
        space = next;
    }
    SubspaceIdeal { ambient: a.clone(), space, side }
}

/// `A/I` on the echelon complement basis, with the projection.
pub fn quotient_algebra(a: &Arc<FinAlgebra>, ideal: &SubspaceIdeal) -> Result<(Arc<FinAlgebra>, AlgebraMorphism)> {
    if !ideal.is_two_sided() {
        return Err(Error::NotTwoSided);
    }
    let f = a.field();
    let keep = ideal.space.complement_indices();
    let m = keep.len();
    let project = |v: &[Scalar]| -> Vector {
        let r = ideal.space.reduce(v);
        keep.iter().map(|&i| r[i].clone()).collect()
    };
    let mut entries = Vec::new();
    for (i, &ci) in keep.iter().enumerate() {
        for (j, &cj) in keep.iter().enumerate() {
            let p = project(&a.mul(&a.basis_vector(ci), &a.basis_vector(cj)));
            entries.extend(p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (i, j, k, c)));
        }
    }
    let unit = a.unit().map(|u| project(u));
    let mut q = FinAlgebra::from_entries_unchecked(f, m, entries, unit)?;
    if let Some(l) = a.labels() {
        q = q.with_labels(keep.iter().map(|&i| l[i].clone()).collect());
    }
    let q = Arc::new(q);
    let cols: Vec<Vector> = (0..a.dim()).map(|j| project(&a.basis_vector(j))).collect();
    let proj = SparseMatrix::from_columns(f, m, &cols);
    Ok((q.clone(), AlgebraMorphism { source: a.clone(), target: q, matrix: proj }))
}

/// For a left ideal `I`, the two-sided ideal `I ∩ Ker(φ)` where
/// `φ: A -> End(A/I)` is extended over `A¹`.
pub fn cofinite_two_sided_inside(a: &Arc<FinAlgebra>, ideal: &SubspaceIdeal) -> Result<SubspaceIdeal> {
    if !is_closed(a, &ideal.space, Side::Left) {
        return Err(Error::Invalid("input is not a left ideal".into()));
    }
    let f = a.field();
    let n = a.dim();
    // a ∈ Ker φ over A¹  <=>  a z ∈ I for every z in the basis of A¹
    let mut m = SparseMatrix::zeros(f, (n + 1) * n, n);
    for i in 0..n {
        let ai = a.basis_vector(i);
        for j in 0..=n {
            let prod = if j == n { ai.clone() } else { a.mul(&ai, &a.basis_vector(j)) };
            for (r, v) in ideal.space.reduce(&prod).into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(j * n + r, i, v);
                }
            }
        }
    }
    let space = Subspace::span(f, n, m.kernel_basis());
    let out = SubspaceIdeal::new(a.clone(), space, Side::TwoSided)?;
    debug_assert!(ideal.space.contains_subspace(&out.space));
    Ok(out)
}

/// Jacobson radical as the kernel of `T(a,b) = tr(L_{ab})` on `A¹`, then
/// checked nilpotent. Requires characteristic 0 or `p > dim(A) + 1`.
pub fn radical(a: &Arc<FinAlgebra>) -> Result<SubspaceIdeal> {
    let f = a.field();
    let n = a.dim();
    let p = f.characteristic();
    if p != 0 && p <= n as u64 + 1 {
        return Err(Error::UnsupportedCharacteristic { characteristic: p, dim: n, bound: n + 1 });
    }
    let (a1, _) = unitalize(a);
    let big = n + 1;
    // t_b = tr(L_b) = sum_k coefficient of z_k in b z_k
    let mut traces = vec![f.zero(); big];
    for (&(i, j), terms) in a1.table() {
        for (k, c) in terms {
            if *k == j {
                traces[i] = &traces[i] + c;
            }
        }
    }
    let mut gram = SparseMatrix::zeros(f, big, big);
    for (&(i, j), terms) in a1.table() {
        for (k, c) in terms {
            if !traces[*k].is_zero() {
                gram.add_to(i, j, &(c * &traces[*k]));
            }
        }
    }
    let kernel = Subspace::span(f, big, gram.kernel_basis());
    let inside_a = Subspace::span(f, big, (0..n).map(|i| unit_vec(f, big, i)));
    let rad1 = kernel.intersect(&inside_a);
    let rad = Subspace::span(f, n, rad1.basis().into_iter().map(|mut v| {
        v.pop();
        v
    }));
    check_nilpotent(a, &rad)?;
    SubspaceIdeal::new(a.clone(), rad, Side::TwoSided)
}

/// Verifies some power of the span vanishes; returns the nilpotency index.
pub fn check_nilpotent(a: &FinAlgebra, space: &Subspace) -> Result<usize> {
    let base = space.basis();
    let mut power = space.clone();
    let mut index = 1;
    while !power.is_zero() {
        if index > a.dim() + 1 {
            return Err(Error::Invalid("radical candidate is not nilpotent".into()));
        }
        let pb = power.basis();
        let mut prods = Vec::new();
        for x in &pb {
            for y in &base {
                let p = a.mul(x, y);
                if !is_zero_vec(&p) {
                    prods.push(p);
                }
            }
        }
        power = Subspace::span(a.field(), a.dim(), prods);
        index += 1;
    }
    Ok(index - 1)
}

/// `sum_i c_i x_i`
pub fn combine(field: FieldSpec, n: usize, coeffs: &[Scalar], vecs: &[Vector]) -> Vector {
    let mut out = zero_vec(field, n);
    for (c, v) in coeffs.iter().zip(vecs) {
        axpy(&mut out, c, v);
    }
    out
}
