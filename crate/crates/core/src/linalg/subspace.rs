//! Subspaces of `K^n` kept in reduced echelon form.

use super::matrix::{is_zero_vec, Rref, SparseMatrix, SparseRow, Vector};
use super::scalar::{FieldSpec, Scalar};

/// A subspace of `K^ambient`, stored as the RREF of a spanning set.
#[derive(Clone, Debug)]
pub struct Subspace {
    red: Rref,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.red.cols == other.red.cols && self.red.pivots == other.red.pivots && self.red.rows == other.red.rows
    }
}
impl Eq for Subspace {}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { red: Rref { field, cols: ambient, rows: Vec::new(), pivots: Vec::new() } }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::span(field, ambient, (0..ambient).map(|i| super::unit_vec(field, ambient, i)))
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<SparseRow> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
                v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Subspace { red: Rref::compute(field, ambient, rows) }
    }

    pub fn field(&self) -> FieldSpec {
        self.red.field
    }
    pub fn ambient(&self) -> usize {
        self.red.cols
    }
    pub fn dim(&self) -> usize {
        self.red.rank()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn pivots(&self) -> &[usize] {
        &self.red.pivots
    }

    /// The echelon basis, one dense vector per pivot.
    pub fn basis(&self) -> Vec<Vector> {
        self.red.dense_rows()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.red.rows.iter().zip(&self.red.pivots) {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (&j, x) in row {
                out[j] = &out[j] - &(&c * x);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.red.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field(), self.ambient(), self.basis().into_iter().chain(other.basis()))
    }

    pub fn extend<I: IntoIterator<Item = Vector>>(&self, more: I) -> Subspace {
        Subspace::span(self.field(), self.ambient(), self.basis().into_iter().chain(more))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let field = self.field();
        let n = self.ambient();
        let a = self.basis();
        let b = other.basis();
        if a.is_empty() || b.is_empty() {
            return Subspace::zero(field, n);
        }
        // columns: a_1..a_r, -b_1..-b_s ; kernel gives combinations equal in both
        let mut cols: Vec<Vector> = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = SparseMatrix::from_columns(field, n, &cols);
        let vecs = m.kernel_basis().into_iter().map(|k| {
            let mut v = vec![field.zero(); n];
            for (coef, basis_vec) in k.iter().zip(&a) {
                super::axpy(&mut v, coef, basis_vec);
            }
            v
        });
        Subspace::span(field, n, vecs)
    }

    /// `{f : f(v) = 0 for every v}` under the dual-basis pairing.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient();
        if self.is_zero() {
            return Subspace::full(self.field(), n);
        }
        let m = SparseMatrix::from_rows(self.field(), n, &self.basis());
        Subspace::span(self.field(), n, m.kernel_basis())
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.red.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&i| !is_pivot[i]).collect()
    }
}
