//! Graded algebras truncated at a top degree, functionals on them, and
//! bounded certificates of membership in the finite dual.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::FinAlgebra;
use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar, SparseMatrix, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradedKind {
    PathAlgebra,
    Polynomial,
    FiniteIncidence,
    Custom,
}

/// A graded algebra known up to degree `top_degree`, stored as the finite
/// quotient by everything of higher degree. Basis elements are sorted by degree.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    kind: GradedKind,
    algebra: Arc<FinAlgebra>,
    degrees: Vec<usize>,
    top_degree: usize,
    truncated: bool,
    by_left: Vec<Vec<(usize, Vec<(usize, Scalar)>)>>,
    by_right: Vec<Vec<(usize, Vec<(usize, Scalar)>)>>,
}

impl GradedAlgebra {
    /// `truncated` records whether products of degree above `top_degree` were dropped.
    pub fn new(kind: GradedKind, algebra: FinAlgebra, degrees: Vec<usize>, top_degree: usize, truncated: bool) -> Result<Self> {
        if degrees.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("one degree per basis element".into()));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) || degrees.iter().any(|&d| d > top_degree) {
            return Err(Error::Invalid("basis must be sorted by degree and within the top degree".into()));
        }
        let n = algebra.dim();
        let mut by_left = vec![Vec::new(); n];
        let mut by_right = vec![Vec::new(); n];
        for (&(i, j), terms) in algebra.table() {
            for (k, _) in terms {
                if degrees[*k] != degrees[i] + degrees[j] {
                    return Err(Error::Invalid(format!("product ({i},{j}) is not degree-additive")));
                }
            }
            by_left[i].push((j, terms.clone()));
            by_right[j].push((i, terms.clone()));
        }
        Ok(GradedAlgebra { kind, algebra: Arc::new(algebra), degrees, top_degree, truncated, by_left, by_right })
    }

    /// `K[X]` up to `X^top`.
    pub fn polynomial(field: FieldSpec, top: usize) -> Self {
        let mut entries = Vec::new();
        for i in 0..=top {
            for j in 0..=top - i {
                entries.push((i, j, i + j, field.one()));
            }
        }
        let mut unit = vec![field.zero(); top + 1];
        unit[0] = field.one();
        let labels = (0..=top)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            })
            .collect();
        let a = FinAlgebra::from_entries_unchecked(field, top + 1, entries, Some(unit)).unwrap().with_labels(labels);
        GradedAlgebra::new(GradedKind::Polynomial, a, (0..=top).collect(), top, true).unwrap()
    }

    pub fn kind(&self) -> GradedKind {
        self.kind
    }
    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.algebra
    }
    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
    pub fn top_degree(&self) -> usize {
        self.top_degree
    }
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn component_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.top_degree + 1];
        for &d in &self.degrees {
            dims[d] += 1;
        }
        dims
    }

    /// Number of basis elements of degree at most `d`.
    pub fn prefix_len(&self, d: usize) -> usize {
        self.degrees.partition_point(|&x| x <= d)
    }

    /// Basis elements of degree 0 and 1, which generate the algebra.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] <= 1).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&i| self.algebra.label(i) == label)
    }

    /// `(b ⇀ f)(x) = f(xb)`, known up to degree `valid(f) - deg b`.
    pub fn hit(&self, b: usize, f: &Functional) -> Option<Functional> {
        let valid = f.valid_degree.checked_sub(self.degrees[b])?;
        let mut values = vec![self.field().zero(); self.prefix_len(valid)];
        for (x, terms) in &self.by_right[b] {
            if *x < values.len() {
                values[*x] = contract(terms, &f.values);
            }
        }
        Some(Functional { values, valid_degree: valid })
    }

    /// `(f ↼ a)(x) = f(ax)`, known up to degree `valid(f) - deg a`.
    pub fn hit_right(&self, f: &Functional, a: usize) -> Option<Functional> {
        let valid = f.valid_degree.checked_sub(self.degrees[a])?;
        let mut values = vec![self.field().zero(); self.prefix_len(valid)];
        for (x, terms) in &self.by_left[a] {
            if *x < values.len() {
                values[*x] = contract(terms, &f.values);
            }
        }
        Some(Functional { values, valid_degree: valid })
    }
}

fn contract(terms: &[(usize, Scalar)], values: &[Scalar]) -> Scalar {
    let mut s = values[0].field().zero();
    for (k, c) in terms {
        s = &s + &(c * &values[*k]);
    }
    s
}

/// A linear functional known on every basis element of degree at most `valid_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub values: Vec<Scalar>,
    pub valid_degree: usize,
}

impl Functional {
    pub fn from_fn(a: &GradedAlgebra, valid_degree: usize, f: impl Fn(usize) -> Scalar) -> Self {
        let valid_degree = valid_degree.min(a.top_degree());
        Functional { values: (0..a.prefix_len(valid_degree)).map(f).collect(), valid_degree }
    }

    /// The functional `X^n ↦ s_n` on a polynomial carrier.
    pub fn from_sequence(a: &GradedAlgebra, seq: &[Scalar]) -> Result<Self> {
        if a.kind() != GradedKind::Polynomial {
            return Err(Error::Invalid("sequences define functionals on polynomial carriers".into()));
        }
        if seq.is_empty() {
            return Err(Error::InsufficientData { have: 0, need: 1 });
        }
        let valid = (seq.len() - 1).min(a.top_degree());
        Ok(Functional { values: seq[..=valid].to_vec(), valid_degree: valid })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.values.get(i)
    }

    fn window(&self, len: usize) -> Vector {
        self.values[..len].to_vec()
    }

    fn combine(field: FieldSpec, coeffs: &[Scalar], parts: &[Functional]) -> Functional {
        let valid = parts.iter().map(|p| p.valid_degree).min().unwrap_or(0);
        let len = parts.iter().map(|p| p.values.len()).min().unwrap_or(0);
        let mut values = vec![field.zero(); len];
        for (c, p) in coeffs.iter().zip(parts) {
            if c.is_zero() {
                continue;
            }
            for (v, x) in values.iter_mut().zip(&p.values) {
                *v = &*v + &(c * x);
            }
        }
        Functional { values, valid_degree: valid }
    }
}

/// Three-valued membership verdict: never a claim of non-membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Independent translates spanning `Kf + Af + fA + AfA` on the comparison
    /// window (degrees at most `window`).
    Member { spanning: Vec<Functional>, dim: usize, window: usize },
    NotWithinBound { dim_reached: usize, bound: usize },
}

/// Grows the span of translates of `f` by degree-0 and degree-1 generators
/// until it stabilizes or exceeds `bound` dimensions. Functionals are
/// compared on degrees at most `D - bound`, which needs `D >= 2 bound`.
pub fn membership_bounded(a: &GradedAlgebra, f: &Functional, bound: usize, cancel: &CancelToken) -> Result<Membership> {
    let d = f.valid_degree.min(a.top_degree());
    if d < 2 * bound {
        return Err(Error::InsufficientTruncation { have: d, need: 2 * bound });
    }
    let window = d - bound;
    let len = a.prefix_len(window);
    if f.is_zero() {
        return Ok(Membership::Member { spanning: vec![f.clone()], dim: 0, window });
    }
    let gens = a.generators();
    let mut spanning = vec![f.clone()];
    let mut space = Subspace::span(a.field(), len, [f.window(len)]);
    let mut frontier = vec![f.clone()];
    while !frontier.is_empty() {
        cancel.check()?;
        let mut next = Vec::new();
        for g in &frontier {
            for &x in &gens {
                for t in [a.hit(x, g), a.hit_right(g, x)].into_iter().flatten() {
                    if t.values.len() < len {
                        return Err(Error::InsufficientTruncation { have: d, need: 2 * bound });
                    }
                    let w = t.window(len);
                    if !space.contains(&w) {
                        space = space.extend([w]);
                        spanning.push(t.clone());
                        next.push(t);
                        if space.dim() > bound {
                            return Ok(Membership::NotWithinBound { dim_reached: space.dim(), bound });
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(Membership::Member { dim: space.dim(), spanning, window })
}

/// `f(ab) = Σ g_i(a) h_i(b)` with the `g_i` from the witness span.
#[derive(Clone, Debug)]
pub struct DeltaFamily {
    pub pairs: Vec<(Functional, Functional)>,
    /// Basis pairs `(a, b)` on which the identity was checked.
    pub verified_pairs: usize,
    /// Every pair with `deg a + deg b` at most this was checked.
    pub verified_degree: usize,
}

/// Splits `f` along products using a membership witness: with `v_i` a basis
/// of the witness span and points `a_j` where `M = [v_i(a_j)]` is invertible,
/// `h_i = Σ_j (M⁻¹)_{ij} (f ↼ a_j)`.
pub fn delta_of_functional(a: &GradedAlgebra, f: &Functional, witness: &Membership) -> Result<DeltaFamily> {
    let (spanning, window) = match witness {
        Membership::Member { spanning, window, .. } => (spanning, *window),
        Membership::NotWithinBound { .. } => {
            return Err(Error::Invalid("no membership witness within the bound".into()));
        }
    };
    let field = a.field();
    if f.is_zero() {
        return Ok(DeltaFamily { pairs: Vec::new(), verified_pairs: 0, verified_degree: f.valid_degree });
    }
    let len = a.prefix_len(window);
    let m = spanning.len();
    let rows: Vec<Vector> = spanning.iter().map(|v| v.window(len)).collect();
    let red = SparseMatrix::from_rows(field, len, &rows).rref();
    if red.rank() != m {
        return Err(Error::Invalid("witness functionals are not independent on the window".into()));
    }
    let points: Vec<usize> = red.pivots.clone();
    // M_{ji} = v_i(a_j)
    let mut mat = SparseMatrix::zeros(field, m, m);
    for (j, &p) in points.iter().enumerate() {
        for (i, v) in spanning.iter().enumerate() {
            mat.set(j, i, v.values[p].clone());
        }
    }
    let inv = mat.inverse().ok_or_else(|| Error::Invalid("evaluation matrix is singular".into()))?;
    let translates: Vec<Functional> = points
        .iter()
        .map(|&p| a.hit_right(f, p).ok_or(Error::InsufficientTruncation { have: f.valid_degree, need: a.degree(p) }))
        .collect::<Result<_>>()?;
    let pairs: Vec<(Functional, Functional)> = (0..m)
        .map(|i| {
            let coeffs: Vec<Scalar> = (0..m).map(|j| inv.get(i, j)).collect();
            (spanning[i].clone(), Functional::combine(field, &coeffs, &translates))
        })
        .collect();
    // exact check on every basis pair where all factors are known
    let g_valid = pairs.iter().map(|(g, _)| g.valid_degree).min().unwrap_or(0);
    let h_valid = pairs.iter().map(|(_, h)| h.valid_degree).min().unwrap_or(0);
    let top = f.valid_degree;
    let mut checked = 0;
    for x in 0..a.prefix_len(g_valid.min(top)) {
        for y in 0..a.prefix_len(h_valid.min(top - a.degree(x))) {
            let prod = a.algebra().mul(&a.algebra().basis_vector(x), &a.algebra().basis_vector(y));
            let lhs = prod.iter().zip(&f.values).fold(field.zero(), |acc, (c, v)| &acc + &(c * v));
            let rhs = pairs.iter().fold(field.zero(), |acc, (g, h)| &acc + &(&g.values[x] * &h.values[y]));
            if lhs != rhs {
                return Err(Error::Invalid(format!("product identity fails on basis pair ({x},{y})")));
            }
            checked += 1;
        }
    }
    Ok(DeltaFamily { pairs, verified_pairs: checked, verified_degree: g_valid.min(h_valid).min(top) })
}
