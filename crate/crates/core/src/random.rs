//! Seeded generators of small instances: algebras, coalgebras, morphisms,
//! comodules, quivers, and posets.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraMorphism, FinAlgebra};
use crate::coalgebra::{CoalgebraMorphism, FinCoalgebra};
use crate::combinatorial::{Poset, Quiver};
use crate::comodule::{module_to_comodule, FinComodule, FinModule};
use crate::error::Result;
use crate::finite_dual::dual_of_morphism;
use crate::linalg::{FieldSpec, SparseMatrix, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(field: FieldSpec, rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> crate::linalg::Scalar {
    field.from_i64(rng.gen_range(lo..=hi))
}

pub fn random_vector(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vector {
    (0..n).map(|_| small(field, rng, -2, 2)).collect()
}

/// A random invertible matrix with entries in `{-1, 0, 1}`.
pub fn random_invertible(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> SparseMatrix {
    loop {
        let cols: Vec<Vector> = (0..n).map(|_| (0..n).map(|_| small(field, rng, -1, 1)).collect()).collect();
        let m = SparseMatrix::from_columns(field, n, &cols);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Subalgebra of upper triangular `3×3` matrices generated by one to three
/// random elements (plus the identity when `unital`), of dimension
/// `1..=max_dim`, presented in a random basis.
pub fn random_algebra(field: FieldSpec, max_dim: usize, unital: bool, rng: &mut ChaCha8Rng) -> FinAlgebra {
    let t3 = Arc::new(FinAlgebra::upper_triangular(field, 3));
    loop {
        let count = rng.gen_range(1..=3);
        let mut gens: Vec<Vector> = (0..count)
            .map(|_| {
                // sparse-ish generators keep the dimension small
                (0..6).map(|_| if rng.gen_bool(0.5) { field.zero() } else { small(field, rng, -2, 2) }).collect()
            })
            .collect();
        if unital {
            gens.push(t3.unit().unwrap().clone());
        }
        let incl = t3.subalgebra_generated(&gens).expect("generators live in T3");
        let d = incl.source.dim();
        if d == 0 || d > max_dim {
            continue;
        }
        let a = (*incl.source).clone().with_detected_unit();
        let a = if unital || rng.gen_bool(0.5) { a } else { a.without_unit() };
        return a.change_basis(&random_invertible(field, d, rng)).expect("invertible change of basis");
    }
}

/// The dual of a random algebra, counital exactly when the algebra is unital.
pub fn random_coalgebra(field: FieldSpec, max_dim: usize, counital: bool, rng: &mut ChaCha8Rng) -> FinCoalgebra {
    FinCoalgebra::dual_of(&random_algebra(field, max_dim, counital, rng))
}

/// `(D, C, f)` with `D` counital and `f: D → C` the dual of the inclusion of
/// a random subalgebra `C*` of the unital algebra `D*`. `C` has its counit
/// removed so that lifting through the counitalization is meaningful.
pub fn random_morphism_pair(field: FieldSpec, max_dim: usize, rng: &mut ChaCha8Rng) -> Result<CoalgebraMorphism> {
    let b = Arc::new(random_algebra(field, max_dim, true, rng));
    let seeds: Vec<Vector> = (0..rng.gen_range(1..=2)).map(|_| random_vector(field, b.dim(), rng)).collect();
    let incl: AlgebraMorphism = b.subalgebra_generated(&seeds)?;
    let f = dual_of_morphism(&incl)?;
    let c = Arc::new((*f.target).clone().without_counit());
    CoalgebraMorphism::new(f.source.clone(), c, f.matrix.clone())
}

/// Right comodules: regular comodules of random coalgebras, and comodules
/// over finite duals coming from random modules.
pub fn random_comodule(field: FieldSpec, max_dim: usize, rng: &mut ChaCha8Rng) -> Result<FinComodule> {
    if rng.gen_bool(0.5) {
        let counital = rng.gen_bool(0.5);
        Ok(FinComodule::regular_right(&Arc::new(random_coalgebra(field, max_dim, counital, rng))))
    } else {
        let a = Arc::new(random_algebra(field, max_dim, rng.gen_bool(0.5), rng));
        module_to_comodule(&FinModule::regular(&a))
    }
}

/// An acyclic quiver on `1..=max_vertices` vertices with at most
/// `max_arrows` arrows (parallel arrows allowed), vertices shuffled.
pub fn random_dag(max_vertices: usize, max_arrows: usize, rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let m = if n > 1 { rng.gen_range(0..=max_arrows) } else { 0 };
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            (order[i], order[j])
        })
        .collect();
    Quiver::from_edges(n, &edges).expect("edges are in range")
}

/// Strict relations `i < j` (as a bit mask over pairs) that are transitively closed.
fn closed_masks(n: usize) -> Vec<u32> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let bit = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    (0u32..1 << pairs.len())
        .filter(|&mask| {
            let has = |i: usize, j: usize| mask >> bit(i, j) & 1 == 1;
            (0..n).all(|i| (i + 1..n).all(|j| !has(i, j) || (j + 1..n).all(|k| !has(j, k) || has(i, k))))
        })
        .collect()
}

fn relation_of(n: usize, mask: u32) -> Vec<(usize, usize)> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.into_iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, p)| p).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical form of a relation: the least sorted edge list over relabellings.
fn canonical(rel: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut r: Vec<(usize, usize)> = rel.iter().map(|&(x, y)| (p[x], p[y])).collect();
            r.sort();
            r
        })
        .min()
        .unwrap_or_default()
}

/// One representative of every isomorphism class of posets on `n` points.
/// Every finite poset has a linear extension, so naturally labelled
/// relations cover all classes.
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in closed_masks(n) {
        let rel = relation_of(n, mask);
        if seen.insert(canonical(&rel, &perms)) {
            out.push(Poset::new((1..=n).map(|i| i.to_string()).collect(), &rel).expect("closed strict order"));
        }
    }
    out
}

/// A random poset on `n` points: random strict relations along a random
/// linear order, transitively closed.
pub fn random_poset(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Poset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((order[i], order[j]));
            }
        }
    }
    Poset::new((1..=n).map(|i| i.to_string()).collect(), &rel).expect("relations follow a linear order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_bounds() {
        let mut r = rng(7);
        for field in [FieldSpec::Rationals, FieldSpec::prime(101).unwrap()] {
            for _ in 0..20 {
                let a = random_algebra(field, 4, false, &mut r);
                assert!((1..=4).contains(&a.dim()));
                a.check_associative().unwrap();
                let u = random_algebra(field, 4, true, &mut r);
                u.check_unit().unwrap();
                let f = random_morphism_pair(field, 4, &mut r).unwrap();
                assert!(f.source.is_counital() && !f.target.is_counital());
                random_comodule(field, 5, &mut r).unwrap().check().unwrap();
            }
        }
        for _ in 0..50 {
            let q = random_dag(6, 10, &mut r);
            assert!(q.is_acyclic() && q.vertex_count() <= 6 && q.arrows.len() <= 10);
        }
    }

    #[test]
    fn small_poset_classes() {
        let counts: Vec<usize> = (0..=4).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }
}
