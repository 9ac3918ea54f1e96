//! Exact scalars over the rationals and prime fields.
//!
//! Every value is kept in canonical form: rationals as reduced fractions
//! with positive denominator, residues in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime modulus (2^61).
pub const MAX_PRIME: u64 = 1 << 61;

/// The ground field a structure lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Mod {
                value: (v as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    p,
                }
            }
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        &self.from_i64(num) * &self.from_i64(den).inv()
    }

    /// Parses `"n"`, `"-n"` or `"n/d"` into this field.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("invalid scalar literal {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num).map_err(|_| bad())?;
        let d = BigInt::from_str(den).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let dn = self.from_bigint(&d);
        if dn.is_zero() {
            return Err(Error::Parse(format!(
                "denominator of {s:?} vanishes in characteristic {}",
                self.characteristic()
            )));
        }
        Ok(&self.from_bigint(&n) * &dn.inv())
    }

    /// `"q"` or `"fp:<p>"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {s:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidField(format!("unknown field {s:?}")))
    }

    /// Enumerates every element when the field is finite and tiny.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Prime(p) if p <= 16 => Some((0..p as i64).map(|v| self.from_i64(v)).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Mod { value, p } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Mod {
                    value: pow_mod(*value, p - 2, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// Rough size used to keep random sampling and pivots tame.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rat(r) => r.numer().bits() + r.denom().bits(),
            Scalar::Mod { .. } => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mixed() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mixed(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mixed(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => mixed(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rationals() {
        let q = FieldSpec::Rationals;
        let a = q.parse_scalar("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!((&a + &q.parse_scalar("3/2").unwrap()), q.zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.to_string(), "100");
        assert!((&a * &a).is_one());
        assert!((&f.from_i64(7) * &f.from_i64(7).inv()).is_one());
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(51));
    }

    #[test]
    fn large_prime_inverse() {
        let p = (1u64 << 61) - 1;
        let f = FieldSpec::prime(p).unwrap();
        let a = f.from_i64(123_456_789);
        assert!((&a * &a.inv()).is_one());
    }

    #[test]
    fn rejects_composites_and_zero_denominators() {
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::parse("fp:4").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("1/0").is_err());
        assert!(FieldSpec::prime(5).unwrap().parse_scalar("1/10").is_err());
    }
}
