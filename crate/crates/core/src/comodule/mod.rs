//! Right comodules over coalgebras and left modules over algebras, with the
//! passages between them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::FinAlgebra;
use crate::coalgebra::{counitalize, dual_algebra, CoalgebraMorphism, FinCoalgebra, Tensor2};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, FieldSpec, Scalar, SparseMatrix, Subspace, Vector};

fn accumulate(map: &mut Tensor2, key: (usize, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    let s = match map.remove(&key) {
        Some(old) => &old + &v,
        None => v,
    };
    if !s.is_zero() {
        map.insert(key, s);
    }
}

/// Right comodule `ρ(m_t) = Σ ρ_t^{sk} m_s ⊗ c_k`.
#[derive(Clone, Debug)]
pub struct FinComodule {
    pub coalgebra: Arc<FinCoalgebra>,
    dim: usize,
    coaction: Vec<Vec<(usize, usize, Scalar)>>,
    counital: bool,
}

impl FinComodule {
    /// Entries `(t, s, k, c)`: `c m_s ⊗ c_k` is a term of `ρ(m_t)`.
    pub fn new(
        coalgebra: Arc<FinCoalgebra>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counital: bool,
    ) -> Result<Self> {
        let m = Self::from_entries_unchecked(coalgebra, dim, entries, counital)?;
        m.check()?;
        Ok(m)
    }

    pub(crate) fn from_entries_unchecked(
        coalgebra: Arc<FinCoalgebra>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counital: bool,
    ) -> Result<Self> {
        let cd = coalgebra.dim();
        let mut acc = vec![Tensor2::new(); dim];
        for (t, s, k, c) in entries {
            if t >= dim || s >= dim || k >= cd {
                return Err(Error::Invalid(format!("coaction entry ({t},{s},{k}) out of range")));
            }
            accumulate(&mut acc[t], (s, k), c);
        }
        let coaction = acc.into_iter().map(|m| m.into_iter().map(|((s, k), c)| (s, k, c)).collect()).collect();
        Ok(FinComodule { coalgebra, dim, coaction, counital })
    }

    pub fn zero(coalgebra: Arc<FinCoalgebra>) -> Self {
        FinComodule { coalgebra, dim: 0, coaction: Vec::new(), counital: true }
    }

    /// `C` as a right comodule over itself via `δ`.
    pub fn regular_right(c: &Arc<FinCoalgebra>) -> Self {
        let entries = c.structure_constants().map(|(k, i, j, s)| (k, i, j, s.clone()));
        Self::from_entries_unchecked(c.clone(), c.dim(), entries, c.is_counital()).unwrap()
    }

    /// `C` as a left comodule, presented as a right comodule over `C^cop`.
    pub fn regular_left(c: &FinCoalgebra) -> Self {
        Self::regular_right(&Arc::new(c.co_opposite()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> FieldSpec {
        self.coalgebra.field()
    }
    pub fn is_counital(&self) -> bool {
        self.counital
    }

    pub fn coaction_of(&self, t: usize) -> &[(usize, usize, Scalar)] {
        &self.coaction[t]
    }

    /// `ρ(v)` keyed by `(s, k)` for `m_s ⊗ c_k`.
    pub fn coact(&self, v: &[Scalar]) -> Tensor2 {
        let mut out = Tensor2::new();
        for (t, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (s, k, c) in &self.coaction[t] {
                accumulate(&mut out, (*s, *k), x * c);
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let c = &self.coalgebra;
        for t in 0..self.dim {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (s, k, x) in &self.coaction[t] {
                for (s2, k2, y) in &self.coaction[*s] {
                    let e = lhs.entry((*s2, *k2, *k)).or_insert_with(|| self.field().zero());
                    *e = &*e + &(x * y);
                }
                for (i, j, y) in c.comult_of(*k) {
                    let e = rhs.entry((*s, *i, *j)).or_insert_with(|| self.field().zero());
                    *e = &*e + &(x * y);
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(Error::Invalid(format!("coaction not coassociative on basis element {t}")));
            }
        }
        if self.counital {
            if let Some(eps) = c.counit() {
                for t in 0..self.dim {
                    let mut img = zero_vec(self.field(), self.dim);
                    for (s, k, x) in &self.coaction[t] {
                        img[*s] = &img[*s] + &(x * &eps[*k]);
                    }
                    if img != unit_vec(self.field(), self.dim, t) {
                        return Err(Error::Invalid(format!("coaction not counital on basis element {t}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(I ⊗ f)ρ(v) = Σ f(v_[1]) v_[0]`
    pub fn contract(&self, f: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.field(), self.dim);
        for ((s, k), x) in self.coact(v) {
            if !f[k].is_zero() {
                out[s] = &out[s] + &(&x * &f[k]);
            }
        }
        out
    }

    /// The vectors `(I ⊗ k*)ρ(v)` for every `k` with a nonzero column.
    fn translates(&self, v: &[Scalar]) -> Vec<Vector> {
        let mut cols: BTreeMap<usize, Vector> = BTreeMap::new();
        for ((s, k), x) in self.coact(v) {
            cols.entry(k).or_insert_with(|| zero_vec(self.field(), self.dim))[s] = x;
        }
        cols.into_values().collect()
    }

    /// Whether `ρ(S) ⊆ S ⊗ C`.
    pub fn is_subcomodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.translates(v).iter().all(|w| s.contains(w)))
    }

    /// Least subcomodule containing the seeds.
    pub fn subcomodule_generated_by(&self, seeds: &[Vector]) -> Subspace {
        let mut space = Subspace::span(self.field(), self.dim, seeds.iter().filter(|v| !is_zero_vec(v)).cloned());
        loop {
            let more: Vec<Vector> = space.basis().iter().flat_map(|v| self.translates(v)).collect();
            let next = space.extend(more);
            if next.dim() == space.dim() {
                return space;
            }
            space = next;
        }
    }

    /// Same coaction viewed over a larger coalgebra through `incl: self.coalgebra -> D`.
    pub fn corestrict_along(&self, f: &CoalgebraMorphism) -> Result<FinComodule> {
        if !Arc::ptr_eq(&f.source, &self.coalgebra) && *f.source != *self.coalgebra {
            return Err(Error::Invalid("morphism source is not the comodule's coalgebra".into()));
        }
        let mut entries = Vec::new();
        for t in 0..self.dim {
            for (s, k, x) in &self.coaction[t] {
                for (r, y) in f.matrix.column(*k).into_iter().enumerate() {
                    if !y.is_zero() {
                        entries.push((t, *s, r, x * &y));
                    }
                }
            }
        }
        FinComodule::new(f.target.clone(), self.dim, entries, false)
    }

    /// Structure constants `(t, s, k, c)`, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.coaction
            .iter()
            .enumerate()
            .flat_map(|(t, v)| v.iter().map(move |(s, k, c)| (t, *s, *k, c.clone())))
            .collect()
    }
}

/// Left module `a_i · m_t = Σ_s c m_s`.
#[derive(Clone, Debug)]
pub struct FinModule {
    pub algebra: Arc<FinAlgebra>,
    dim: usize,
    action: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    unital: bool,
}

impl FinModule {
    /// Entries `(i, t, s, c)`: `c m_s` is a term of `a_i · m_t`.
    pub fn new(
        algebra: Arc<FinAlgebra>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unital: bool,
    ) -> Result<Self> {
        let m = Self::from_entries_unchecked(algebra, dim, entries, unital)?;
        m.check()?;
        Ok(m)
    }

    pub(crate) fn from_entries_unchecked(
        algebra: Arc<FinAlgebra>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unital: bool,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (i, t, s, c) in entries {
            if i >= algebra.dim() || t >= dim || s >= dim {
                return Err(Error::Invalid(format!("action entry ({i},{t},{s}) out of range")));
            }
            let slot = acc.entry((i, t)).or_default();
            let v = match slot.remove(&s) {
                Some(old) => &old + &c,
                None => c,
            };
            if !v.is_zero() {
                slot.insert(s, v);
            }
        }
        let action = acc
            .into_iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(k, m)| (k, m.into_iter().collect()))
            .collect();
        Ok(FinModule { algebra, dim, action, unital })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &Arc<FinAlgebra>) -> Self {
        let entries = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone()));
        Self::from_entries_unchecked(a.clone(), a.dim(), entries, a.is_unital()).unwrap()
    }

    pub fn zero(a: Arc<FinAlgebra>) -> Self {
        FinModule { algebra: a, dim: 0, action: BTreeMap::new(), unital: true }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Matrix of `m ↦ x·m`.
    pub fn action_matrix(&self, x: &[Scalar]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.field(), self.dim, self.dim);
        for (&(i, t), terms) in &self.action {
            if x[i].is_zero() {
                continue;
            }
            for (s, c) in terms {
                m.add_to(*s, t, &(&x[i] * c));
            }
        }
        m
    }

    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.field(), self.dim);
        for (&(i, t), terms) in &self.action {
            if x[i].is_zero() || v[t].is_zero() {
                continue;
            }
            let c = &x[i] * &v[t];
            for (s, y) in terms {
                out[*s] = &out[*s] + &(&c * y);
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let a = &self.algebra;
        let mats: Vec<SparseMatrix> = (0..a.dim()).map(|i| self.action_matrix(&a.basis_vector(i))).collect();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action_matrix(&a.mul(&a.basis_vector(i), &a.basis_vector(j)));
                if lhs != mats[i].mul(&mats[j])? {
                    return Err(Error::Invalid(format!("action not associative on ({i},{j})")));
                }
            }
        }
        if self.unital {
            if let Some(u) = a.unit() {
                if self.action_matrix(u) != SparseMatrix::identity(self.field(), self.dim) {
                    return Err(Error::Invalid("unit does not act as identity".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let a = &self.algebra;
        s.basis()
            .iter()
            .all(|v| (0..a.dim()).all(|i| s.contains(&self.act(&a.basis_vector(i), v))))
    }

    /// Least submodule containing the seeds (`Km + Am` per seed).
    pub fn submodule_generated_by(&self, seeds: &[Vector]) -> Subspace {
        let a = &self.algebra;
        let mut space = Subspace::span(self.field(), self.dim, seeds.iter().cloned());
        loop {
            let mut more = Vec::new();
            for v in space.basis() {
                for i in 0..a.dim() {
                    more.push(self.act(&a.basis_vector(i), &v));
                }
            }
            let next = space.extend(more);
            if next.dim() == space.dim() {
                return space;
            }
            space = next;
        }
    }

    /// Structure constants `(i, t, s, c)`, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.action
            .iter()
            .flat_map(|(&(i, t), v)| v.iter().map(move |(s, c)| (i, t, *s, c.clone())))
            .collect()
    }
}

/// `ρ¹(m) = ρ(m) + m ⊗ e` over `C¹`.
pub fn comodule_counitalize(m: &FinComodule) -> Result<FinComodule> {
    let (c1, _) = counitalize(&m.coalgebra);
    let e = m.coalgebra.dim();
    let f = m.field();
    let mut entries = m.structure_constants();
    entries.extend((0..m.dim()).map(|t| (t, t, e, f.one())));
    FinComodule::new(c1, m.dim(), entries, true)
}

/// Forgets the `e` terms of a comodule over `C¹`, giving a comodule over `C`.
pub fn comodule_corestrict(m1: &FinComodule, c: &Arc<FinCoalgebra>) -> Result<FinComodule> {
    let e = c.dim();
    if m1.coalgebra.dim() != e + 1 {
        return Err(Error::DimensionMismatch("comodule is not over the counitalization".into()));
    }
    let entries = m1.structure_constants().into_iter().filter(|(_, _, k, _)| *k != e);
    FinComodule::new(c.clone(), m1.dim(), entries, false)
}

/// Left `C*`-module `f·m = Σ f(m_[1]) m_[0]`.
pub fn comodule_to_dual_module(m: &FinComodule) -> Result<FinModule> {
    let a = Arc::new(dual_algebra(&m.coalgebra));
    let entries = m.structure_constants().into_iter().map(|(t, s, k, c)| (k, t, s, c));
    FinModule::new(a, m.dim(), entries, m.is_counital() && m.coalgebra.is_counital())
}

/// Comodule over `A⁰ = A*` with `ρ(m_t) = Σ (a_l · m_t)_s m_s ⊗ a_l*`, so
/// that `a·m = Σ a_l*(a) a_l·m` is recovered by the dual action.
pub fn module_to_comodule(n: &FinModule) -> Result<FinComodule> {
    let c = Arc::new(FinCoalgebra::dual_of(&n.algebra));
    let entries = n.structure_constants().into_iter().map(|(i, t, s, x)| (t, s, i, x));
    FinComodule::new(c, n.dim(), entries, n.is_unital() && n.algebra.is_unital())
}

/// Outcome of comparing the three subobject lattices on sampled subspaces.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LatticeReport {
    pub seed: u64,
    pub exhaustive: bool,
    pub subspaces_checked: usize,
    /// Each counterexample as a list of spanning vectors (decimal strings).
    pub counterexamples: Vec<Vec<Vec<String>>>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every subspace of `F_2^n`, by echelon basis.
pub(crate) fn all_f2_subspaces(n: usize) -> Vec<Subspace> {
    let f2 = FieldSpec::Prime(2);
    let vectors: Vec<Vector> = (1..(1usize << n))
        .map(|mask| (0..n).map(|i| f2.from_i64(((mask >> i) & 1) as i64)).collect())
        .collect();
    let mut seen = BTreeMap::new();
    let mut stack = vec![Subspace::zero(f2, n)];
    while let Some(s) = stack.pop() {
        let key = format!("{:?}", s.basis());
        if seen.contains_key(&key) {
            continue;
        }
        for v in &vectors {
            if !s.contains(v) {
                stack.push(s.extend([v.clone()]));
            }
        }
        seen.insert(key, s);
    }
    seen.into_values().collect()
}

pub(crate) fn random_subspace(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let k = rng.gen_range(1..=n.max(1));
    let vecs = (0..k).map(|_| {
        (0..n)
            .map(|_| match field {
                FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p.min(1 << 31)) as i64),
                FieldSpec::Rationals => field.from_i64(rng.gen_range(-2..=2)),
            })
            .collect()
    });
    Subspace::span(field, n, vecs)
}

/// Subcomodule over `C` ⟺ over `C¹` ⟺ `C*`-submodule, on sampled subspaces
/// (all of them over `F_2` in dimension at most 4).
pub fn lattice_agreement_check(m: &FinComodule, trials: usize, seed: u64) -> Result<LatticeReport> {
    let field = m.field();
    let n = m.dim();
    let m1 = comodule_counitalize(m)?;
    let module = comodule_to_dual_module(m)?;
    let exhaustive = field == FieldSpec::Prime(2) && n <= 4;
    let subspaces = if n == 0 {
        Vec::new()
    } else if exhaustive {
        all_f2_subspaces(n)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials).map(|_| random_subspace(field, n, &mut rng)).collect()
    };
    let mut counterexamples = Vec::new();
    for s in &subspaces {
        let a = m.is_subcomodule(s);
        let b = m1.is_subcomodule(s);
        let c = module.is_submodule(s);
        if a != b || b != c {
            counterexamples.push(s.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect());
        }
    }
    Ok(LatticeReport { seed, exhaustive, subspaces_checked: subspaces.len(), counterexamples })
}

#[cfg(test)]
mod tests;
