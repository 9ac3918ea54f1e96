//! Finite-dimensional coassociative coalgebras, counital or not.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{radical, regular_matrix_embedding, unitalize, AlgebraMorphism, FinAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, FieldSpec, Scalar, SparseMatrix, Subspace, Vector};

/// Sparse element of `C ⊗ C`, keyed by basis pairs.
pub type Tensor2 = BTreeMap<(usize, usize), Scalar>;

/// Coalgebra `δ(c_k) = Σ δ_k^{ij} c_i ⊗ c_j`, optionally with a counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCoalgebra {
    field: FieldSpec,
    dim: usize,
    comult: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Option<Vector>,
    labels: Option<Vec<String>>,
}

fn add_into(map: &mut Tensor2, key: (usize, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.remove(&key) {
        Some(old) => {
            let s = &old + &v;
            if !s.is_zero() {
                map.insert(key, s);
            }
        }
        None => {
            map.insert(key, v);
        }
    }
}

impl FinCoalgebra {
    /// Builds and validates: indices in range, coassociativity, counit law.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counit: Option<Vector>,
    ) -> Result<Self> {
        let c = Self::from_entries_unchecked(field, dim, entries, counit)?;
        c.check_coassociative()?;
        c.check_counit()?;
        Ok(c)
    }

    /// Entries are `(k, i, j, c)` meaning `c_i ⊗ c_j` appears in `δ(c_k)` with coefficient `c`.
    pub(crate) fn from_entries_unchecked(
        field: FieldSpec,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counit: Option<Vector>,
    ) -> Result<Self> {
        let mut acc: Vec<Tensor2> = vec![Tensor2::new(); dim];
        for (k, i, j, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(format!("comultiplication entry ({k},{i},{j}) out of range for dim {dim}")));
            }
            if c.field() != field {
                return Err(Error::Invalid("comultiplication entry over a different field".into()));
            }
            add_into(&mut acc[k], (i, j), c);
        }
        if let Some(e) = &counit {
            if e.len() != dim {
                return Err(Error::Invalid("counit has wrong length".into()));
            }
        }
        let comult = acc.into_iter().map(|m| m.into_iter().map(|((i, j), c)| (i, j, c)).collect()).collect();
        Ok(FinCoalgebra { field, dim, comult, counit, labels: None })
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
            None => format!("c{i}"),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn counit(&self) -> Option<&Vector> {
        self.counit.as_ref()
    }
    pub fn is_counital(&self) -> bool {
        self.counit.is_some()
    }

    pub fn without_counit(mut self) -> Self {
        self.counit = None;
        self
    }

    /// Nonzero `(i, j, c)` with `c c_i ⊗ c_j` a term of `δ(c_k)`.
    pub fn comult_of(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[k]
    }

    /// Nonzero `(k, i, j, δ_k^{ij})`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.comult.iter().enumerate().flat_map(|(k, t)| t.iter().map(move |(i, j, c)| (k, *i, *j, c)))
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vec(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        zero_vec(self.field, self.dim)
    }

    pub fn delta(&self, v: &[Scalar]) -> Tensor2 {
        let mut out = Tensor2::new();
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, j, c) in &self.comult[k] {
                add_into(&mut out, (*i, *j), x * c);
            }
        }
        out
    }

    /// `(f ⊗ I)δ(v) = Σ f(v_1) v_2`
    pub fn left_contract(&self, f: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for ((i, j), c) in self.delta(v) {
            if !f[i].is_zero() {
                out[j] = &out[j] + &(&f[i] * &c);
            }
        }
        out
    }

    /// `(I ⊗ f)δ(v) = Σ v_1 f(v_2)`
    pub fn right_contract(&self, f: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for ((i, j), c) in self.delta(v) {
            if !f[j].is_zero() {
                out[i] = &out[i] + &(&f[j] * &c);
            }
        }
        out
    }

    /// Convolution `(f * g)(c) = Σ f(c_1) g(c_2)` of functionals.
    pub fn convolve(&self, f: &[Scalar], g: &[Scalar]) -> Vector {
        (0..self.dim)
            .map(|k| {
                let mut s = self.field.zero();
                for (i, j, c) in &self.comult[k] {
                    if !f[*i].is_zero() && !g[*j].is_zero() {
                        s = &s + &(&(c * &f[*i]) * &g[*j]);
                    }
                }
                s
            })
            .collect()
    }

    pub fn check_coassociative(&self) -> Result<()> {
        for k in 0..self.dim {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (i, j, c) in &self.comult[k] {
                for (a, b, d) in &self.comult[*i] {
                    let e = lhs.entry((*a, *b, *j)).or_insert_with(|| self.field.zero());
                    *e = &*e + &(c * d);
                }
                for (a, b, d) in &self.comult[*j] {
                    let e = rhs.entry((*i, *a, *b)).or_insert_with(|| self.field.zero());
                    *e = &*e + &(c * d);
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(Error::Invalid(format!("not coassociative at basis element {k}")));
            }
        }
        Ok(())
    }

    pub fn check_counit(&self) -> Result<()> {
        if let Some(eps) = &self.counit {
            for k in 0..self.dim {
                let e = self.basis_vector(k);
                if self.left_contract(eps, &e) != e || self.right_contract(eps, &e) != e {
                    return Err(Error::Invalid(format!("counit law fails on basis element {k}")));
                }
            }
        }
        Ok(())
    }

    /// Whether `δ(S) ⊆ S ⊗ S`.
    pub fn is_subcoalgebra(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            let t = self.delta(v);
            tensor_rows_cols(self.field, self.dim, &t).iter().all(|w| s.contains(w))
        })
    }

    /// The finite-dimensional dual coalgebra of `A`: `δ_k^{ij} = μ_{ij}^k`,
    /// counit the unit of `A`.
    pub fn dual_of(a: &FinAlgebra) -> FinCoalgebra {
        let entries = a.structure_constants().map(|(i, j, k, c)| (k, i, j, c.clone()));
        let mut c = FinCoalgebra::from_entries_unchecked(a.field(), a.dim(), entries, a.unit().cloned()).unwrap();
        if let Some(l) = a.labels() {
            c = c.with_labels(l.iter().map(|s| format!("{s}*")).collect());
        }
        c
    }

    /// `δ^cop(c) = Σ c_2 ⊗ c_1`; left comodules over `C` are right comodules over this.
    pub fn co_opposite(&self) -> FinCoalgebra {
        let comult = self
            .comult
            .iter()
            .map(|t| {
                let mut v: Vec<(usize, usize, Scalar)> = t.iter().map(|(i, j, c)| (*j, *i, c.clone())).collect();
                v.sort_by_key(|(i, j, _)| (*i, *j));
                v
            })
            .collect();
        FinCoalgebra { comult, ..self.clone() }
    }

    /// One basis element `g` with `Δ(g) = g ⊗ g`, `ε(g) = 1`.
    pub fn grouplike(field: FieldSpec) -> Self {
        FinCoalgebra::from_entries_unchecked(field, 1, [(0, 0, 0, field.one())], Some(vec![field.one()])).unwrap()
    }

    /// `K^dim` with zero comultiplication.
    pub fn null(field: FieldSpec, dim: usize) -> Self {
        FinCoalgebra { field, dim, comult: vec![Vec::new(); dim], counit: None, labels: None }
    }

    /// Same coalgebra in a new basis; column `j` of `basis` is the new `j`-th element.
    pub fn change_basis(&self, basis: &SparseMatrix) -> Result<FinCoalgebra> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Invalid("change of basis is not invertible".into()))?;
        let n = self.dim;
        let mut entries = Vec::new();
        for k in 0..n {
            let t = self.delta(&basis.column(k));
            // express each c_i ⊗ c_j in the new basis: (inv ⊗ inv)
            let mut acc = Tensor2::new();
            for ((i, j), c) in t {
                let ci = inv.column(i);
                let cj = inv.column(j);
                for (a, x) in ci.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (b, y) in cj.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        add_into(&mut acc, (a, b), &(&c * x) * y);
                    }
                }
            }
            entries.extend(acc.into_iter().map(|((i, j), c)| (k, i, j, c)));
        }
        let counit = match &self.counit {
            Some(e) => Some(basis.transpose().mul_vec(e)?),
            None => None,
        };
        FinCoalgebra::from_entries_unchecked(self.field, n, entries, counit)
    }
}

/// Rows and columns of the coefficient matrix of a tensor, as vectors of `C`.
pub(crate) fn tensor_rows_cols(field: FieldSpec, dim: usize, t: &Tensor2) -> Vec<Vector> {
    let mut rows: BTreeMap<usize, Vector> = BTreeMap::new();
    let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
    for ((i, j), c) in t {
        rows.entry(*i).or_insert_with(|| zero_vec(field, dim))[*j] = c.clone();
        cols.entry(*j).or_insert_with(|| zero_vec(field, dim))[*i] = c.clone();
    }
    rows.into_values().chain(cols.into_values()).collect()
}

/// Linear map commuting with comultiplication.
#[derive(Clone, Debug)]
pub struct CoalgebraMorphism {
    pub source: Arc<FinCoalgebra>,
    pub target: Arc<FinCoalgebra>,
    /// `dim(target) x dim(source)`; column `j` is the image of `c_j`.
    pub matrix: SparseMatrix,
}

impl CoalgebraMorphism {
    pub fn new(source: Arc<FinCoalgebra>, target: Arc<FinCoalgebra>, matrix: SparseMatrix) -> Result<Self> {
        let m = CoalgebraMorphism { source, target, matrix };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.matrix.rows() != t.dim() || self.matrix.cols() != s.dim() {
            return Err(Error::DimensionMismatch("morphism matrix shape".into()));
        }
        let images: Vec<Vector> = (0..s.dim()).map(|j| self.matrix.column(j)).collect();
        for k in 0..s.dim() {
            let lhs = t.delta(&images[k]);
            let mut rhs = Tensor2::new();
            for (i, j, c) in s.comult_of(k) {
                for (a, x) in images[*i].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (b, y) in images[*j].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        add_into(&mut rhs, (a, b), &(c * x) * y);
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::Invalid(format!("not comultiplicative on basis element {k}")));
            }
        }
        Ok(())
    }

    pub fn preserves_counit(&self) -> bool {
        match (self.source.counit(), self.target.counit()) {
            (Some(es), Some(et)) => &self.matrix.transpose().mul_vec(et).unwrap() == es,
            _ => false,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v).expect("shape checked")
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_surjective()
    }

    /// The transpose, an algebra morphism `target* -> source*`.
    pub fn dual(&self) -> Result<AlgebraMorphism> {
        AlgebraMorphism::new(
            Arc::new(dual_algebra(&self.target)),
            Arc::new(dual_algebra(&self.source)),
            self.matrix.transpose(),
        )
    }
}

/// Adjoins `e` last: `Δ(c) = δ(c) + c⊗e + e⊗c`, `Δ(e) = e⊗e`, `ε = e*`.
/// Returns `C¹` and the projection `C¹ -> C` killing `e`.
pub fn counitalize(c: &Arc<FinCoalgebra>) -> (Arc<FinCoalgebra>, CoalgebraMorphism) {
    let f = c.field();
    let n = c.dim();
    let mut entries: Vec<(usize, usize, usize, Scalar)> =
        c.structure_constants().map(|(k, i, j, s)| (k, i, j, s.clone())).collect();
    for k in 0..n {
        entries.push((k, k, n, f.one()));
        entries.push((k, n, k, f.one()));
    }
    entries.push((n, n, n, f.one()));
    let mut c1 = FinCoalgebra::from_entries_unchecked(f, n + 1, entries, Some(unit_vec(f, n + 1, n))).unwrap();
    if let Some(l) = c.labels() {
        let mut l = l.to_vec();
        l.push("e".into());
        c1 = c1.with_labels(l);
    }
    let c1 = Arc::new(c1);
    let mut proj = SparseMatrix::zeros(f, n, n + 1);
    for i in 0..n {
        proj.set(i, i, f.one());
    }
    (c1.clone(), CoalgebraMorphism { source: c1, target: c.clone(), matrix: proj })
}

/// For counital `D` and `f: D -> C`, the counital lift `f̄(d) = f(d) + ε_D(d)e` into `C¹`.
pub fn counital_lift(f: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
    let eps = f
        .source
        .counit()
        .ok_or_else(|| Error::Invalid("lift needs a counital source".into()))?;
    let (c1, _) = counitalize(&f.target);
    let n = f.target.dim();
    let mut m = SparseMatrix::zeros(c1.field(), n + 1, f.source.dim());
    for (r, col, v) in f.matrix.entries() {
        m.set(r, col, v.clone());
    }
    for (col, v) in eps.iter().enumerate() {
        if !v.is_zero() {
            m.set(n, col, v.clone());
        }
    }
    CoalgebraMorphism::new(f.source.clone(), c1, m)
}

/// `C*` on the dual basis: `μ_{ij}^k = δ_k^{ij}`, unit `ε` when present.
pub fn dual_algebra(c: &FinCoalgebra) -> FinAlgebra {
    let entries = c.structure_constants().map(|(k, i, j, s)| (i, j, k, s.clone()));
    let mut a = FinAlgebra::from_entries_unchecked(c.field(), c.dim(), entries, c.counit().cloned()).unwrap();
    if let Some(l) = c.labels() {
        a = a.with_labels(l.iter().map(|s| format!("{s}*")).collect());
    }
    a
}

/// `(C*)¹ -> (C¹)*`, `φ + αu ↦ φ̃ + αε¹` where `φ̃` vanishes on `e`.
pub fn dual_unitalization_iso(c: &Arc<FinCoalgebra>) -> Result<AlgebraMorphism> {
    let f = c.field();
    let n = c.dim();
    let (a1, _) = unitalize(&Arc::new(dual_algebra(c)));
    let (c1, _) = counitalize(c);
    let target = Arc::new(dual_algebra(&c1));
    let eps1 = c1.counit().expect("counitalization is counital").clone();
    let mut cols = Vec::with_capacity(n + 1);
    for k in 0..n {
        // φ = k*, extended by zero on e; coordinates are its values on the basis of C¹
        let phi: Vector = (0..=n).map(|t| if t == k { f.one() } else { f.zero() }).collect();
        cols.push(phi);
    }
    cols.push(eps1);
    let m = AlgebraMorphism::new(a1, target, SparseMatrix::from_columns(f, n + 1, &cols))?;
    if !m.is_bijective() || !m.preserves_unit() {
        return Err(Error::Invalid("dual unitalization map is not a unital isomorphism".into()));
    }
    Ok(m)
}

/// Counital coalgebra with basis `e_ij` (index `i*n + j`), `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`.
pub fn comatrix(field: FieldSpec, n: usize) -> FinCoalgebra {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                entries.push((i * n + j, i * n + k, k * n + j, field.one()));
            }
        }
    }
    let mut eps = zero_vec(field, n * n);
    for i in 0..n {
        eps[i * n + i] = field.one();
    }
    let labels = (0..n * n).map(|x| format!("e{}{}", x / n + 1, x % n + 1)).collect();
    FinCoalgebra::from_entries_unchecked(field, n * n, entries, Some(eps)).unwrap().with_labels(labels)
}

/// A comatrix coalgebra mapping onto `C`.
#[derive(Clone, Debug)]
pub struct ComatrixCover {
    pub n: usize,
    /// `c_ij` at index `i*n + j`.
    pub family: Vec<Vector>,
    pub theta: CoalgebraMorphism,
}

/// Dualizes the regular embedding `C* -> M_{n}(K)`, `n = dim C + 1`:
/// `c_ij = Σ_k π(k*)_ij c_k`.
pub fn comatrix_cover(c: &Arc<FinCoalgebra>) -> Result<ComatrixCover> {
    let f = c.field();
    let d = c.dim();
    let n = d + 1;
    let pi = regular_matrix_embedding(&Arc::new(dual_algebra(c)));
    // θ = π^T : comatrix(n) -> C
    let theta_m = pi.matrix.transpose();
    let family: Vec<Vector> = (0..n * n).map(|x| theta_m.column(x)).collect();
    let theta = CoalgebraMorphism::new(Arc::new(comatrix(f, n)), c.clone(), theta_m)?;
    if !theta.is_surjective() {
        return Err(Error::Invalid("comatrix cover is not surjective".into()));
    }
    Ok(ComatrixCover { n, family, theta })
}

/// Least subcoalgebra containing `v`: close under every row and column of
/// `δ(w)` (that is, all `(f⊗I)δ` and `(I⊗f)δ` for `f` in the dual basis).
pub fn subcoalgebra_generated(c: &FinCoalgebra, v: &[Scalar]) -> Subspace {
    subcoalgebra_generated_by(c, &[v.to_vec()])
}

pub fn subcoalgebra_generated_by(c: &FinCoalgebra, seeds: &[Vector]) -> Subspace {
    let mut space = Subspace::span(c.field(), c.dim(), seeds.iter().filter(|v| !is_zero_vec(v)).cloned());
    loop {
        let mut more = Vec::new();
        for w in space.basis() {
            more.extend(tensor_rows_cols(c.field(), c.dim(), &c.delta(&w)));
        }
        let next = space.extend(more);
        if next.dim() == space.dim() {
            debug_assert!(c.is_subcoalgebra(&space));
            return space;
        }
        space = next;
    }
}

/// Subcoalgebra on a subspace, in its echelon basis, with the inclusion.
pub fn restrict_to_subcoalgebra(c: &Arc<FinCoalgebra>, s: &Subspace) -> Result<CoalgebraMorphism> {
    if !c.is_subcoalgebra(s) {
        return Err(Error::Invalid("subspace is not a subcoalgebra".into()));
    }
    let basis = s.basis();
    let mut entries = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let t = c.delta(b);
        // δ(b) = Σ_i c_i ⊗ row_i; rewrite each row in S-coordinates, then the
        // resulting left factors as well.
        let mut per_coord: BTreeMap<usize, Vector> = BTreeMap::new();
        let mut rows: BTreeMap<usize, Vector> = BTreeMap::new();
        for ((i, j), x) in &t {
            rows.entry(*i).or_insert_with(|| c.zero_vector())[*j] = x.clone();
        }
        for (i, row) in rows {
            let coords = s.coordinates(&row).expect("row lies in subcoalgebra");
            for (q, y) in coords.into_iter().enumerate() {
                if !y.is_zero() {
                    per_coord.entry(q).or_insert_with(|| c.zero_vector())[i] = y;
                }
            }
        }
        for (q, col) in per_coord {
            let coords = s.coordinates(&col).expect("column lies in subcoalgebra");
            for (p, y) in coords.into_iter().enumerate() {
                if !y.is_zero() {
                    entries.push((k, p, q, y));
                }
            }
        }
    }
    let counit = c.counit().map(|e| basis.iter().map(|b| crate::linalg::dot(e, b)).collect());
    let sub = Arc::new(FinCoalgebra::from_entries_unchecked(c.field(), basis.len(), entries, counit)?);
    CoalgebraMorphism::new(sub, c.clone(), SparseMatrix::from_columns(c.field(), c.dim(), &basis))
}

/// `C₀ = J(C*)^⊥` for counital `C`.
pub fn coradical(c: &FinCoalgebra) -> Result<Subspace> {
    if !c.is_counital() {
        return Err(Error::Invalid("coradical needs a counital coalgebra".into()));
    }
    let dual = Arc::new(dual_algebra(c));
    let j = radical(&dual)?;
    let c0 = j.space.annihilator();
    if !c.is_subcoalgebra(&c0) {
        return Err(Error::Invalid("coradical candidate is not a subcoalgebra".into()));
    }
    Ok(c0)
}
