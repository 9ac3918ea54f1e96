//! Finite posets, their incidence coalgebra, and the algebra of finitely
//! supported functions on intervals.

use serde::Serialize;

use crate::algebra::FinAlgebra;
use crate::coalgebra::FinCoalgebra;
use crate::error::{Error, Result};
use crate::finite_dual::{GradedAlgebra, GradedKind};
use crate::linalg::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poset {
    pub elements: Vec<String>,
    /// `leq[x][y]` iff `x ≤ y`; reflexive and transitively closed.
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of the given relations and
    /// rejects it unless antisymmetric.
    pub fn new(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        if relations.iter().any(|&(x, y)| x >= n || y >= n) {
            return Err(Error::Invalid("relation mentions an unknown element".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in relations {
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x][y] && leq[y][x] {
                    return Err(Error::Invalid(format!(
                        "relation is not antisymmetric: {} and {}",
                        elements[x], elements[y]
                    )));
                }
            }
        }
        Ok(Poset { elements, leq })
    }

    pub fn antichain(k: usize) -> Self {
        Poset::new((1..=k).map(|i| i.to_string()).collect(), &[]).unwrap()
    }

    pub fn chain(k: usize) -> Self {
        let rel: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::new((1..=k).map(|i| i.to_string()).collect(), &rel).unwrap()
    }

    /// `b < x, y < t`, plus `b < t`.
    pub fn diamond() -> Self {
        Poset::new(vec!["b".into(), "x".into(), "y".into(), "t".into()], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// All pairs `x ≤ y`, lexicographic.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).filter(move |&y| self.leq[x][y]).map(move |y| (x, y))).collect()
    }

    /// `{z | x ≤ z ≤ y}` in index order.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.leq[x][z] && self.leq[z][y]).collect()
    }

    /// Length of the longest chain from `x` to `y`.
    pub fn rank(&self, x: usize, y: usize) -> usize {
        let inner = self.interval(x, y);
        let mut best = vec![0usize; self.len()];
        // process in an order compatible with ≤: fewer elements below first
        let mut order = inner.clone();
        order.sort_by_key(|&z| (0..self.len()).filter(|&w| self.leq[w][z]).count());
        for &z in &order {
            for &w in &inner {
                if w != z && self.leq[w][z] {
                    best[z] = best[z].max(best[w] + 1);
                }
            }
        }
        best[y]
    }

    /// Interval indices grouped by lower endpoint and by upper endpoint.
    pub fn endpoint_groupings(&self) -> [super::Grouping; 2] {
        let iv = self.intervals();
        let group = |upper: bool| -> super::Grouping {
            (0..self.len())
                .map(|v| {
                    let members = (0..iv.len()).filter(|&i| if upper { iv[i].1 == v } else { iv[i].0 == v }).collect();
                    (self.elements[v].clone(), members)
                })
                .collect()
        };
        [group(false), group(true)]
    }

    fn interval_label(&self, x: usize, y: usize) -> String {
        format!("e({},{})", self.elements[x], self.elements[y])
    }

    fn interval_index(&self) -> (Vec<(usize, usize)>, std::collections::HashMap<(usize, usize), usize>) {
        let iv = self.intervals();
        let idx = iv.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        (iv, idx)
    }

    /// `Δ(e_{x,y}) = Σ_{x≤z≤y} e_{x,z} ⊗ e_{z,y}`, `ε(e_{x,y}) = δ_{x,y}`.
    pub fn incidence_coalgebra(&self, field: FieldSpec) -> FinCoalgebra {
        let (iv, idx) = self.interval_index();
        let mut entries = Vec::new();
        for (k, &(x, y)) in iv.iter().enumerate() {
            for z in self.interval(x, y) {
                entries.push((k, idx[&(x, z)], idx[&(z, y)], field.one()));
            }
        }
        let counit = iv.iter().map(|&(x, y)| if x == y { field.one() } else { field.zero() }).collect();
        FinCoalgebra::from_entries_unchecked(field, iv.len(), entries, Some(counit))
            .unwrap()
            .with_labels(iv.iter().map(|&(x, y)| self.interval_label(x, y)).collect())
    }

    /// Convolution of functions on intervals, on the basis of interval
    /// indicators: `δ_{x,y} · δ_{z,w} = [y = z] δ_{x,w}`.
    pub fn incidence_algebra(&self, field: FieldSpec) -> FinAlgebra {
        let (iv, idx) = self.interval_index();
        let mut entries = Vec::new();
        for (i, &(x, y)) in iv.iter().enumerate() {
            for (j, &(z, w)) in iv.iter().enumerate() {
                if y == z {
                    entries.push((i, j, idx[&(x, w)], field.one()));
                }
            }
        }
        let unit = (!iv.is_empty()).then(|| iv.iter().map(|&(x, y)| if x == y { field.one() } else { field.zero() }).collect());
        FinAlgebra::from_entries_unchecked(field, iv.len(), entries, unit)
            .unwrap()
            .with_labels(iv.iter().map(|&(x, y)| self.interval_label(x, y)).collect())
    }

    /// Finitely supported functions; for a finite poset this is the whole
    /// incidence algebra.
    pub fn fia(&self, field: FieldSpec) -> FinAlgebra {
        self.incidence_algebra(field)
    }

    /// The incidence algebra graded by interval rank, for posets whose
    /// rank is additive along every chain (chains, products of chains).
    pub fn fia_graded(&self, field: FieldSpec) -> Result<GradedAlgebra> {
        let algebra = self.incidence_algebra(field);
        let iv = self.intervals();
        let degrees: Vec<usize> = iv.iter().map(|&(x, y)| self.rank(x, y)).collect();
        for (i, &(x, y)) in iv.iter().enumerate() {
            for z in self.interval(x, y) {
                let (a, b) = (iv.iter().position(|&p| p == (x, z)).unwrap(), iv.iter().position(|&p| p == (z, y)).unwrap());
                if degrees[a] + degrees[b] != degrees[i] {
                    return Err(Error::Invalid("interval rank is not additive on this poset".into()));
                }
            }
        }
        let mut order: Vec<usize> = (0..iv.len()).collect();
        order.sort_by_key(|&i| (degrees[i], i));
        let top = degrees.iter().copied().max().unwrap_or(0);
        let perm = crate::linalg::SparseMatrix::from_entries(
            field,
            iv.len(),
            iv.len(),
            order.iter().enumerate().map(|(new, &old)| (old, new, field.one())),
        )?;
        let labels: Vec<String> = order.iter().map(|&i| algebra.label(i)).collect();
        let sorted = algebra.change_basis(&perm)?.with_labels(labels);
        GradedAlgebra::new(GradedKind::FiniteIncidence, sorted, order.iter().map(|&i| degrees[i]).collect(), top, false)
    }
}
