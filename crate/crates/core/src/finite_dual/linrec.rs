//! Linearly recursive sequences: functionals on `K[X]` in the finite dual.

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Poly, Scalar, SparseMatrix};

/// A functional on `K[X]` recorded by its values `s_n = f(X^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRecFunctional {
    pub field: FieldSpec,
    pub values: Vec<Scalar>,
}

impl LinRecFunctional {
    pub fn new(field: FieldSpec, values: Vec<Scalar>) -> Self {
        LinRecFunctional { field, values }
    }

    pub fn from_i64(field: FieldSpec, values: &[i64]) -> Self {
        LinRecFunctional { field, values: values.iter().map(|&v| field.from_i64(v)).collect() }
    }

    /// Extends the sequence by `count` terms using a recurrence polynomial.
    pub fn extend_with(&self, p: &Poly, count: usize) -> LinRecFunctional {
        let p = p.monic();
        let d = p.degree().unwrap_or(0);
        let mut values = self.values.clone();
        for _ in 0..count {
            let n = values.len();
            let mut next = self.field.zero();
            for i in 0..d {
                next = &next - &(&p.coeffs()[i] * &values[n - d + i]);
            }
            values.push(next);
        }
        LinRecFunctional { field: self.field, values }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinRec {
    /// `minimal_polynomial` annihilates the sequence; the ideal it generates
    /// is a cofinite ideal inside the kernel of `f`.
    Recursive { minimal_polynomial: Poly, ideal_generator: Poly },
    NotWithinBound { rank_bound: usize },
}

/// Smallest-degree monic `p = X^d + Σ c_i X^i` with
/// `s_{n+d} + Σ c_i s_{n+i} = 0` for every stored window, searched for
/// `d ≤ rank_bound` by solving the Hankel systems.
pub fn linrec_analyze(f: &LinRecFunctional, rank_bound: usize) -> Result<LinRec> {
    let need = 2 * rank_bound + 2;
    let n = f.values.len();
    if n < need {
        return Err(Error::InsufficientData { have: n, need });
    }
    let field = f.field;
    for d in 0..=rank_bound {
        let rows = n - d;
        let mut h = SparseMatrix::zeros(field, rows, d);
        let mut rhs = Vec::with_capacity(rows);
        for r in 0..rows {
            for c in 0..d {
                h.set(r, c, f.values[r + c].clone());
            }
            rhs.push(-&f.values[r + d]);
        }
        if let Some(c) = h.solve(&rhs)? {
            let mut coeffs = c;
            coeffs.push(field.one());
            let p = Poly::new(field, coeffs);
            return Ok(LinRec::Recursive { minimal_polynomial: p.clone(), ideal_generator: p });
        }
    }
    Ok(LinRec::NotWithinBound { rank_bound })
}
