//! Sparse matrices and exact Gauss-Jordan elimination.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

/// Sparse row: column index to nonzero value.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// A matrix over an exact field with only nonzero entries stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl SparseMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_dense(field: FieldSpec, rows: usize, cols: usize, data: &[Vector]) -> Self {
        assert_eq!(data.len(), rows);
        let mut m = Self::zeros(field, rows, cols);
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vector]) -> Self {
        Self::from_dense(field, rows.len(), cols, rows)
    }

    pub fn from_entries(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols);
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Invalid(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if v.field() != field {
                return Err(Error::Invalid("entry over a different field".into()));
            }
            let cur = m.get(r, c);
            m.set(r, c, &cur + &v);
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn get_ref(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    /// Sets an entry, dropping it when zero.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> Vector {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        let mut out = vec![SparseRow::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].insert(c, v.clone());
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.sparse_rows();
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for (&(r, k), a) in &self.entries {
            for (&c, b) in &rhs_rows[k] {
                out.add_to(r, c, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] = &out[r] + &(a * &v[c]);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &rhs.entries {
            out.add_to(r, c, v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v * s);
        }
        out
    }

    /// Kronecker product; row `(i,k)` maps to `i*rows(N)+k`, same for columns.
    pub fn tensor(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &rhs.entries {
                out.entries.insert((i * rhs.rows + k, j * rhs.cols + l), a * b);
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            if let Some(v) = self.entries.get(&(i, i)) {
                t = &t + v;
            }
        }
        t
    }

    pub fn rref(&self) -> Rref {
        Rref::compute(self.field, self.cols, self.sparse_rows())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right null space, in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.rref().kernel_basis()
    }

    /// Some solution of `Mx = b` with free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut rows = self.sparse_rows();
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() {
                rows[r].insert(self.cols, v.clone());
            }
        }
        let red = Rref::compute(self.field, self.cols + 1, rows);
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            if let Some(v) = row.get(&self.cols) {
                x[p] = v.clone();
            }
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut rows = self.sparse_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(n + i, self.field.one());
        }
        let red = Rref::compute(self.field, 2 * n, rows);
        if red.rank() < n || red.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for (r, row) in red.rows.iter().enumerate() {
            for (&c, v) in row.range(n..) {
                inv.set(r, c - n, v.clone());
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon form: each row has a leading 1 at `pivots[i]`
/// and every other row vanishes in that column.
#[derive(Clone, Debug)]
pub struct Rref {
    pub field: FieldSpec,
    pub cols: usize,
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

/// Switch to dense storage once this fraction of entries is filled.
const DENSE_FILL: f64 = 0.5;
const DENSE_MIN_CELLS: usize = 256;

impl Rref {
    /// Gauss-Jordan elimination. Column by column, the pivot is the first
    /// remaining row (in row order) with a nonzero entry.
    pub fn compute(field: FieldSpec, cols: usize, rows: Vec<SparseRow>) -> Rref {
        let mut rows: Vec<SparseRow> = rows;
        let nrows = rows.len();
        let mut pivots = Vec::new();
        let mut rank = 0;
        let cells = nrows * cols;
        let mut col = 0;
        while col < cols && rank < nrows {
            if cells >= DENSE_MIN_CELLS {
                let nnz: usize = rows.iter().map(|r| r.len()).sum();
                if nnz as f64 > DENSE_FILL * cells as f64 {
                    return dense_finish(field, cols, rows, pivots, rank, col);
                }
            }
            if let Some(found) = (rank..nrows).find(|&r| rows[r].contains_key(&col)) {
                rows.swap(rank, found);
                let inv = rows[rank][&col].inv();
                if !inv.is_one() {
                    for v in rows[rank].values_mut() {
                        *v = &*v * &inv;
                    }
                }
                let pivot_row = rows[rank].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r == rank {
                        continue;
                    }
                    if let Some(f) = row.get(&col).cloned() {
                        for (&c, v) in &pivot_row {
                            let nv = match row.get(&c) {
                                Some(cur) => cur - &(&f * v),
                                None => -(&f * v),
                            };
                            if nv.is_zero() {
                                row.remove(&c);
                            } else {
                                row.insert(c, nv);
                            }
                        }
                    }
                }
                pivots.push(col);
                rank += 1;
            }
            col += 1;
        }
        rows.truncate(rank);
        Rref { field, cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Some(x) = row.get(&free) {
                    v[p] = -x;
                }
            }
            out.push(v);
        }
        out
    }

    pub fn dense_rows(&self) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = vec![self.field.zero(); self.cols];
                for (&c, x) in row {
                    v[c] = x.clone();
                }
                v
            })
            .collect()
    }
}

fn dense_finish(
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseRow>,
    mut pivots: Vec<usize>,
    mut rank: usize,
    start_col: usize,
) -> Rref {
    let zero = field.zero();
    let mut m: Vec<Vector> = rows
        .iter()
        .map(|row| {
            let mut v = vec![zero.clone(); cols];
            for (&c, x) in row {
                v[c] = x.clone();
            }
            v
        })
        .collect();
    let nrows = m.len();
    for col in start_col..cols {
        if rank >= nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let inv = m[rank][col].inv();
        for v in m[rank][col..].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    let rows = m
        .into_iter()
        .map(|v| v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    Rref { field, cols, rows, pivots }
}

/// Serializable literal `{"rows":R,"cols":C,"entries":[[i,j,"num/den"],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixLiteral {
    pub fn from_matrix(m: &SparseMatrix) -> Self {
        MatrixLiteral {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        }
    }

    pub fn to_matrix(&self, field: FieldSpec) -> Result<SparseMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|(r, c, s)| Ok((*r, *c, field.parse_scalar(s)?)))
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_entries(field, self.rows, self.cols, entries)
    }
}

pub fn zero_vec(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vec(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn axpy(acc: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (y, xi) in acc.iter_mut().zip(x) {
        if !xi.is_zero() {
            *y = &*y + &(a * xi);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a.first().or(b.first()).map(Scalar::field);
    let mut acc = match field {
        Some(f) => f.zero(),
        None => return FieldSpec::Rationals.zero(),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}
