//! Complete families of orthogonal primitive idempotents.
//!
//! Splitting happens in the semisimple quotient `A/J`: an element of a corner
//! `eAe` whose minimal polynomial has a root in the base field and another
//! coprime factor yields an idempotent by the Chinese remainder theorem.
//! Idempotents are lifted back through the nilpotent radical with
//! `x -> 3x^2 - 2x^3`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{quotient_algebra, radical, AlgebraMorphism, FinAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, FieldSpec, Poly, Scalar, SparseMatrix, Vector};

const RANDOM_CANDIDATES: usize = 12;
const LIFT_ROUNDS: usize = 64;

fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Minimal polynomial of `x` inside the corner with identity `e`.
pub fn minimal_polynomial_in(a: &FinAlgebra, e: &[Scalar], x: &[Scalar]) -> Poly {
    let f = a.field();
    let mut powers: Vec<Vector> = vec![e.to_vec()];
    loop {
        let next = a.mul(x, powers.last().unwrap());
        let m = SparseMatrix::from_columns(f, a.dim(), &powers);
        if let Some(c) = m.solve(&next).expect("shapes agree") {
            // next = sum c_i x^i  =>  X^k - sum c_i X^i
            let mut coeffs: Vec<Scalar> = c.iter().map(|v| -v).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        powers.push(next);
    }
}

/// Evaluates `p(x)` in the corner with identity `e`.
fn eval_in(a: &FinAlgebra, e: &[Scalar], p: &Poly, x: &[Scalar]) -> Vector {
    let mut acc = a.zero_vector();
    for c in p.coeffs().iter().rev() {
        acc = a.mul(&acc, x);
        axpy(&mut acc, c, e);
    }
    acc
}

/// A proper nonzero idempotent `f` of `eAe` derived from `x`, if its minimal
/// polynomial has a base-field root and another coprime factor.
fn split_with(a: &FinAlgebra, e: &[Scalar], x: &[Scalar]) -> Option<Vector> {
    let m = minimal_polynomial_in(a, e, x);
    for lambda in m.roots() {
        let lin = Poly::linear(&lambda);
        let mut block = lin.clone();
        let mut rest = m.div_rem(&lin).0;
        while rest.rem(&lin).is_zero() {
            rest = rest.div_rem(&lin).0;
            block = block.mul(&lin);
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        let (g, _, t) = block.ext_gcd(&rest);
        debug_assert_eq!(g.degree(), Some(0));
        let idem = eval_in(a, e, &t.mul(&rest), x);
        if !is_zero_vec(&idem) && idem != e {
            return Some(idem);
        }
    }
    None
}

fn random_element(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vector {
    (0..n).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()
}

/// Splits the unit of a (semisimple, unital) algebra into orthogonal
/// idempotents that no candidate element splits further.
fn split_semisimple(a: &FinAlgebra, seed: u64) -> Result<Vec<Vector>> {
    let unit = a.unit().ok_or_else(|| Error::Invalid("splitting needs a unital algebra".into()))?.clone();
    if is_zero_vec(&unit) {
        return Ok(Vec::new());
    }
    let n = a.dim();
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut todo = vec![unit];
    let mut done = Vec::new();
    while let Some(e) = todo.pop() {
        let corner = |y: &[Scalar]| a.mul(&a.mul(&e, y), &e);
        let mut found = None;
        let mut candidates: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = a.basis_vector(i);
                v[j] = f.from_i64(2);
                candidates.push(v);
            }
        }
        candidates.extend((0..RANDOM_CANDIDATES).map(|_| random_element(f, n, &mut rng)));
        for y in candidates {
            let x = corner(&y);
            if is_zero_vec(&x) {
                continue;
            }
            if let Some(idem) = split_with(a, &e, &x) {
                found = Some(idem);
                break;
            }
        }
        match found {
            Some(idem) => {
                todo.push(sub(&e, &idem));
                todo.push(idem);
            }
            None => done.push(e),
        }
    }
    done.reverse();
    Ok(done)
}

/// Lifts orthogonal idempotents summing to one from `A/J` back to `A`.
pub fn lift_idempotents(projection: &AlgebraMorphism, family: &[Vector]) -> Result<Vec<Vector>> {
    let a = &projection.source;
    let f = a.field();
    let one = a.unit().ok_or_else(|| Error::Invalid("lifting needs a unital algebra".into()))?.clone();
    let mut lifted: Vec<Vector> = Vec::new();
    let mut rest = one.clone();
    for (idx, ebar) in family.iter().enumerate() {
        if idx + 1 == family.len() {
            lifted.push(rest.clone());
            break;
        }
        let y = projection
            .matrix
            .solve(ebar)?
            .ok_or_else(|| Error::DecompositionFailed("idempotent has no preimage".into()))?;
        let mut x = a.mul(&a.mul(&rest, &y), &rest);
        let mut rounds = 0;
        loop {
            let x2 = a.mul(&x, &x);
            if x2 == x {
                break;
            }
            if rounds == LIFT_ROUNDS {
                return Err(Error::DecompositionFailed("idempotent lifting did not converge".into()));
            }
            let x3 = a.mul(&x2, &x);
            x = sub(&scale(&f.from_i64(3), &x2), &scale(&f.from_i64(2), &x3));
            rounds += 1;
        }
        rest = sub(&rest, &x);
        lifted.push(x);
    }
    Ok(lifted)
}

/// Orthogonal idempotents of a unital algebra summing to the unit, each
/// indecomposable as far as the splitting search can tell. Exact when the
/// semisimple quotient is split over the base field.
pub fn primitive_idempotents(a: &Arc<FinAlgebra>, seed: u64) -> Result<Vec<Vector>> {
    if !a.is_unital() {
        return Err(Error::Invalid("primitive idempotents need a unital algebra".into()));
    }
    let j = radical(a)?;
    let (quot, proj) = quotient_algebra(a, &j)?;
    let family = split_semisimple(&quot, seed)?;
    let lifted = lift_idempotents(&proj, &family)?;
    for (i, x) in lifted.iter().enumerate() {
        if a.mul(x, x) != *x || is_zero_vec(x) {
            return Err(Error::DecompositionFailed(format!("lifted element {i} is not a nonzero idempotent")));
        }
        for (k, y) in lifted.iter().enumerate() {
            if i != k && !is_zero_vec(&a.mul(x, y)) {
                return Err(Error::DecompositionFailed("lifted idempotents are not orthogonal".into()));
            }
        }
    }
    Ok(lifted)
}
