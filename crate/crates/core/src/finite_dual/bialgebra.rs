//! Finite-dimensional bialgebras and Hopf algebras, and their duals.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::FinAlgebra;
use crate::coalgebra::{dual_algebra, FinCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar, SparseMatrix, Vector};

/// A finite group by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("group table must be square with entries in range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("group table is not associative".into()));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid("group table has an element without inverse".into()))?;
        Ok(FiniteGroup { table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap()
    }

    /// Permutations of three points, composed as functions (`(ab)(x) = a(b(x))`).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table(table).unwrap()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

/// Algebra and coalgebra on one space, compatible, with optional antipode.
#[derive(Clone, Debug)]
pub struct FinBialgebra {
    pub algebra: Arc<FinAlgebra>,
    pub coalgebra: Arc<FinCoalgebra>,
    pub antipode: Option<SparseMatrix>,
}

impl FinBialgebra {
    pub fn new(algebra: FinAlgebra, coalgebra: FinCoalgebra, antipode: Option<SparseMatrix>) -> Result<Self> {
        let h = FinBialgebra { algebra: Arc::new(algebra), coalgebra: Arc::new(coalgebra), antipode };
        h.check()?;
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    /// Comultiplication and counit are multiplicative; unit conditions and the
    /// antipode identity when those are present.
    pub fn check(&self) -> Result<()> {
        let (a, c) = (&self.algebra, &self.coalgebra);
        let bad = |m: &str| Err(Error::IncompatibleStructure(m.to_string()));
        if a.dim() != c.dim() || a.field() != c.field() {
            return bad("algebra and coalgebra live on different spaces");
        }
        a.check_associative().map_err(|e| Error::IncompatibleStructure(e.to_string()))?;
        c.check_coassociative().map_err(|e| Error::IncompatibleStructure(e.to_string()))?;
        let n = a.dim();
        let f = a.field();
        let tensor_mul = |x: &BTreeMap<(usize, usize), Scalar>, y: &BTreeMap<(usize, usize), Scalar>| {
            let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for ((i1, i2), s) in x {
                for ((j1, j2), t) in y {
                    let coef = s * t;
                    for (k1, u) in a.basis_product(*i1, *j1) {
                        for (k2, v) in a.basis_product(*i2, *j2) {
                            let e = out.entry((*k1, *k2)).or_insert_with(|| f.zero());
                            *e = &*e + &(&(&coef * u) * v);
                        }
                    }
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        let deltas: Vec<_> = (0..n).map(|i| c.delta(&c.basis_vector(i))).collect();
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                if c.delta(&prod) != tensor_mul(&deltas[i], &deltas[j]) {
                    return bad(&format!("comultiplication not multiplicative on ({i},{j})"));
                }
                if let Some(eps) = c.counit() {
                    let lhs = dot(eps, &prod);
                    if lhs != &eps[i] * &eps[j] {
                        return bad(&format!("counit not multiplicative on ({i},{j})"));
                    }
                }
            }
        }
        if let (Some(u), Some(eps)) = (a.unit(), c.counit()) {
            let mut uu = BTreeMap::new();
            for (x, s) in u.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                for (y, t) in u.iter().enumerate().filter(|(_, t)| !t.is_zero()) {
                    uu.insert((x, y), s * t);
                }
            }
            if c.delta(u) != uu || !dot(eps, u).is_one() {
                return bad("unit is not grouplike");
            }
        }
        if let Some(s) = &self.antipode {
            let (Some(u), Some(eps)) = (a.unit(), c.counit()) else {
                return bad("antipode needs unit and counit");
            };
            for x in 0..n {
                let mut left = a.zero_vector();
                let mut right = a.zero_vector();
                for ((i, j), coef) in &deltas[x] {
                    let si = s.column(*i);
                    let sj = s.column(*j);
                    let l = a.mul(&si, &a.basis_vector(*j));
                    let r = a.mul(&a.basis_vector(*i), &sj);
                    for k in 0..n {
                        left[k] = &left[k] + &(coef * &l[k]);
                        right[k] = &right[k] + &(coef * &r[k]);
                    }
                }
                let expect: Vector = u.iter().map(|v| v * &eps[x]).collect();
                if left != expect || right != expect {
                    return bad(&format!("antipode identity fails on basis element {x}"));
                }
            }
        }
        Ok(())
    }

    /// `K[G]`: grouplike basis, antipode `g ↦ g⁻¹`.
    pub fn group_algebra(field: FieldSpec, g: &FiniteGroup) -> Self {
        let n = g.order();
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, g.table[i][j], field.one())));
        let mut unit = vec![field.zero(); n];
        unit[g.identity] = field.one();
        let algebra = FinAlgebra::from_entries_unchecked(field, n, entries, Some(unit)).unwrap();
        let coalgebra = FinCoalgebra::from_entries_unchecked(
            field,
            n,
            (0..n).map(|i| (i, i, i, field.one())),
            Some(vec![field.one(); n]),
        )
        .unwrap();
        let mut s = SparseMatrix::zeros(field, n, n);
        for x in 0..n {
            s.set(g.inverse[x], x, field.one());
        }
        FinBialgebra::new(algebra, coalgebra, Some(s)).expect("group algebras are Hopf algebras")
    }

    /// `K[S]` of a finite semigroup: elements grouplike, unital when `S` is a monoid.
    pub fn semigroup_algebra(field: FieldSpec, table: &[Vec<usize>]) -> Result<Self> {
        let algebra = super::semigroup_algebra(field, table)?;
        let n = table.len();
        let coalgebra = FinCoalgebra::from_entries_unchecked(
            field,
            n,
            (0..n).map(|i| (i, i, i, field.one())),
            Some(vec![field.one(); n]),
        )?;
        FinBialgebra::new(algebra, coalgebra, None)
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    crate::linalg::dot(a, b)
}

/// `H*` with the convolution product and transposed multiplication.
pub fn bialgebra_dual(h: &FinBialgebra) -> Result<FinBialgebra> {
    let algebra = dual_algebra(&h.coalgebra);
    let coalgebra = FinCoalgebra::dual_of(&h.algebra);
    let antipode = h.antipode.as_ref().map(SparseMatrix::transpose);
    FinBialgebra::new(algebra, coalgebra, antipode)
}
