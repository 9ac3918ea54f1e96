//! Univariate polynomials over an exact field, coefficients in ascending degree.
//!
//! Only what idempotent splitting and recurrence analysis need: arithmetic,
//! gcd, evaluation at an algebra element, and root finding in the base field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Poly::new(field, vec![c])
    }

    /// `X - a`
    pub fn linear(a: &Scalar) -> Self {
        let f = a.field();
        Poly::new(f, vec![-a, f.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = &r[top] * &inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[shift + i] = &r[shift + i] - &(&c * dc);
                }
                q[shift] = c;
            }
            r.pop();
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(f.one()), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::constant(f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Poly::constant(r0.lead().inv());
        (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Poly::new(self.field, c)
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.field.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots lying in the base field, ascending by representation.
    ///
    /// Over the rationals this is the rational root test and may give up on
    /// coefficients too large to factor by trial division; over `F_p` it is
    /// exact (`gcd` with `X^p - X`, then equal-degree splitting).
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = match self.field {
            FieldSpec::Rationals => rational_roots(self),
            FieldSpec::Prime(p) => prime_field_roots(self, p),
        };
        out.sort_by_key(|s| s.to_string());
        out.dedup();
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{}", mag)?,
                1 => write!(f, "{coef}X")?,
                _ => write!(f, "{coef}X^{i}")?,
            }
        }
        Ok(())
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small = n.to_u64()?;
    if small > TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_roots(p: &Poly) -> Vec<Scalar> {
    let f = FieldSpec::Rationals;
    // clear denominators
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.as_rational().expect("rational").denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().expect("rational");
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let mut roots = Vec::new();
    // strip factors of X
    if ints.first().is_some_and(Zero::is_zero) {
        roots.push(f.zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() < 2 {
        return roots;
    }
    let int_poly = Poly::new(f, ints.iter().map(|c| f.from_bigint(c)).collect());
    let (Some(nums), Some(dens)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    for a in &nums {
        for b in &dens {
            for sign in [1i64, -1] {
                let cand = &f.from_bigint(&(a * sign)) * &f.from_bigint(b).inv();
                if int_poly.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn prime_field_roots(poly: &Poly, p: u64) -> Vec<Scalar> {
    let f = FieldSpec::Prime(p);
    let m = poly.monic();
    if p <= 64 {
        return (0..p as i64).map(|v| f.from_i64(v)).filter(|x| m.eval(x).is_zero()).collect();
    }
    let x = Poly::new(f, vec![f.zero(), f.one()]);
    let xp = x.pow_mod(p as u128, &m);
    let split = m.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    equal_degree_roots(&split, p, 1, &mut out);
    out
}

/// Splits a squarefree product of distinct linear factors.
fn equal_degree_roots(g: &Poly, p: u64, seed: i64, out: &mut Vec<Scalar>) {
    let f = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(-&m.coeffs()[0]);
        }
        Some(_) => {
            let mut a = seed;
            loop {
                // gcd((X + a)^((p-1)/2) - 1, g)
                let shift = Poly::new(f, vec![f.from_i64(a), f.one()]);
                let h = shift.pow_mod(((p - 1) / 2) as u128, g).sub(&Poly::constant(f.one()));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < g.degree().unwrap() {
                    let (q, _) = g.div_rem(&d);
                    equal_degree_roots(&d, p, a + 1, out);
                    equal_degree_roots(&q, p, a + 1, out);
                    return;
                }
                a += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly {
        let f = FieldSpec::Rationals;
        Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn display_and_gcd() {
        assert_eq!(qp(&[-1, -1, 1]).to_string(), "X^2 - X - 1");
        assert_eq!(qp(&[-1, 1]).to_string(), "X - 1");
        let g = qp(&[-1, 0, 1]).gcd(&qp(&[1, 1]));
        assert_eq!(g, qp(&[1, 1]));
    }

    #[test]
    fn rational_roots_found() {
        // (2X - 1)(X + 3)X = 2X^3 + 5X^2 - 3X
        let r = qp(&[0, -3, 5, 2]).roots();
        let f = FieldSpec::Rationals;
        assert_eq!(r.len(), 3);
        assert!(r.contains(&f.from_ratio(1, 2)));
        assert!(r.contains(&f.from_i64(-3)));
        assert!(r.contains(&f.zero()));
        assert!(qp(&[-2, 0, 1]).roots().is_empty());
    }

    #[test]
    fn prime_roots_found() {
        let f = FieldSpec::prime(1_000_003).unwrap();
        // (X-5)(X-7)(X^2+1) has roots 5, 7 and the square roots of -1 when they exist
        let p = Poly::linear(&f.from_i64(5)).mul(&Poly::linear(&f.from_i64(7)));
        let roots = p.roots();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(p.eval(r).is_zero());
        }
    }
}
