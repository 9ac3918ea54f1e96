//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and fails
//! when its criterion does not hold. Library results are compared against
//! oracles written here from raw structure constants: a dense Gaussian rank,
//! hand-built (co)multiplication tables, path counts from adjacency powers and
//! brute-force enumeration of posets and subspaces.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use dualis::cancel::CancelToken;
use dualis::coalgebra::{comatrix_cover, counital_lift, dual_unitalization_iso, subcoalgebra_generated, FinCoalgebra};
use dualis::combinatorial::{
    semiperfect_check, verify_incidencedual_iso, verify_pathdual_iso, Family, Hand, Poset, PosetTemplate, Quiver,
    QuiverTemplate,
};
use dualis::comodule::{comodule_counitalize, comodule_to_dual_module, lattice_agreement_check, FinComodule};
use dualis::finite_dual::{
    bialgebra_dual, delta_of_functional, linrec_analyze, membership_bounded, unital_dual_compat, FinBialgebra,
    FiniteGroup, Functional, GradedAlgebra, LinRec, LinRecFunctional, Membership,
};
use dualis::linalg::{FieldSpec, Scalar, SparseMatrix, Subspace, Vector};
use dualis::random::{
    posets_up_to_iso, random_algebra, random_coalgebra, random_comodule, random_dag, random_morphism_pair, random_poset,
    random_vector, rng,
};
use dualis::reflexivity::{
    check_counit_e, decompose_injectives, decompose_with_candidates, left_coreflexive_check, phi_l, rat_dual,
    semiperfect_iff_injective_harness, Coreflexivity, PhiL, RatDualAlgebra, TemplateFamily,
};
use dualis::spec::{builtin_suite, SuiteKnobs, SuiteName};
use rand::Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const F101: FieldSpec = FieldSpec::Prime(101);

fn field_for(t: usize) -> FieldSpec {
    if t.is_multiple_of(2) {
        Q
    } else {
        F101
    }
}

/// Prints the criterion line outside the test harness capture, then fails on
/// any recorded problem.
fn verdict(n: u32, title: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n:2}: {status}  {title}");
    for f in failures.iter().take(5) {
        let _ = writeln!(out, "    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {}", failures.join("; "));
}

mod oracle {
    use super::*;

    /// `Δ(c_k)` as a list of `(i, j, s)` for `s c_i ⊗ c_j`.
    pub type Comult = Vec<Vec<(usize, usize, Scalar)>>;
    /// `(i, j, k, s)`: `s a_k` is a term of `a_i a_j`.
    pub type Mult = Vec<(usize, usize, usize, Scalar)>;
    pub type Tensor = BTreeMap<(usize, usize), Scalar>;

    pub fn rank(mut rows: Vec<Vector>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].inv();
            let pivot: Vector = rows[r].iter().map(|x| x * &inv).collect();
            for row in rows.iter_mut().skip(r + 1) {
                if !row[c].is_zero() {
                    let f = row[c].clone();
                    for j in c..cols {
                        row[j] = &row[j] - &(&f * &pivot[j]);
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }

    pub fn same_span(a: &[Vector], b: &[Vector]) -> bool {
        let ra = rank(a.to_vec());
        let rb = rank(b.to_vec());
        ra == rb && rank(a.iter().chain(b).cloned().collect()) == ra
    }

    pub fn contains(space: &[Vector], v: &[Scalar]) -> bool {
        let mut with = space.to_vec();
        with.push(v.to_vec());
        rank(with) == rank(space.to_vec())
    }

    /// Coordinates of `v` in the basis `basis`, when it lies in their span.
    pub fn solve(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
        let k = basis.len();
        let n = v.len();
        let field = v.first().map(Scalar::field)?;
        // rows of the augmented system [b_0 .. b_{k-1} | v]
        let mut rows: Vec<Vector> =
            (0..n).map(|i| basis.iter().map(|b| b[i].clone()).chain(std::iter::once(v[i].clone())).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].inv();
            rows[r] = rows[r].iter().map(|x| x * &inv).collect();
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for j in 0..=k {
                        row[j] = &row[j] - &(&f * &pivot[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| !row[k].is_zero()) {
            return None;
        }
        let mut x = vec![field.zero(); k];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rows[i][k].clone();
        }
        Some(x)
    }

    pub fn dense(m: &SparseMatrix) -> Vec<Vector> {
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect()
    }

    pub fn is_invertible(m: &SparseMatrix) -> bool {
        m.rows() == m.cols() && rank(dense(m)) == m.rows()
    }

    pub fn comult(c: &FinCoalgebra) -> Comult {
        let mut d = vec![Vec::new(); c.dim()];
        for (k, i, j, s) in c.structure_constants() {
            d[k].push((i, j, s.clone()));
        }
        d
    }

    /// Adjoins `e` last: `Δ(c) + c⊗e + e⊗c`, `Δ(e) = e⊗e`.
    pub fn counitalize(field: FieldSpec, d: &Comult) -> Comult {
        let n = d.len();
        let mut out = d.clone();
        for (k, terms) in out.iter_mut().enumerate() {
            terms.push((k, n, field.one()));
            terms.push((n, k, field.one()));
        }
        out.push(vec![(n, n, field.one())]);
        out
    }

    pub fn mult(a: &dualis::algebra::FinAlgebra) -> Mult {
        a.structure_constants().map(|(i, j, k, s)| (i, j, k, s.clone())).collect()
    }

    /// Adjoins a unit `u` last.
    pub fn unitalize(field: FieldSpec, n: usize, m: &Mult) -> Mult {
        let mut out = m.clone();
        for x in 0..n {
            out.push((n, x, x, field.one()));
            out.push((x, n, x, field.one()));
        }
        out.push((n, n, n, field.one()));
        out
    }

    /// The convolution algebra of a comultiplication, on the dual basis.
    pub fn dual_mult(d: &Comult) -> Mult {
        d.iter().enumerate().flat_map(|(k, t)| t.iter().map(move |(i, j, s)| (*i, *j, k, s.clone()))).collect()
    }

    /// The dual coalgebra of a multiplication, on the dual basis.
    pub fn dual_comult(n: usize, m: &Mult) -> Comult {
        let mut d = vec![Vec::new(); n];
        for (i, j, k, s) in m {
            d[*k].push((*i, *j, s.clone()));
        }
        d
    }

    fn add(t: &mut Tensor, key: (usize, usize), v: Scalar) {
        let field = v.field();
        let e = t.entry(key).or_insert_with(|| field.zero());
        *e = &*e + &v;
    }

    fn clean(mut t: Tensor) -> Tensor {
        t.retain(|_, v| !v.is_zero());
        t
    }

    pub fn delta(d: &Comult, v: &[Scalar]) -> Tensor {
        let mut t = Tensor::new();
        for (k, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (i, j, s) in &d[k] {
                add(&mut t, (*i, *j), x * s);
            }
        }
        clean(t)
    }

    pub fn product(field: FieldSpec, n: usize, m: &Mult, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![field.zero(); n];
        for (i, j, k, s) in m {
            if !x[*i].is_zero() && !y[*j].is_zero() {
                out[*k] = &out[*k] + &(&(&x[*i] * &y[*j]) * s);
            }
        }
        out
    }

    /// `Δ_T(f(c_j)) = (f⊗f)Δ_S(c_j)` for every basis element of the source.
    pub fn is_coalgebra_morphism(f: &SparseMatrix, source: &Comult, target: &Comult) -> bool {
        let cols: Vec<Vector> = (0..f.cols()).map(|j| f.column(j)).collect();
        (0..f.cols()).all(|j| {
            let lhs = delta(target, &cols[j]);
            let mut rhs = Tensor::new();
            for (i, l, s) in &source[j] {
                for (a, x) in cols[*i].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (b, y) in cols[*l].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        add(&mut rhs, (a, b), &(s * x) * y);
                    }
                }
            }
            lhs == clean(rhs)
        })
    }

    pub fn is_algebra_morphism(field: FieldSpec, f: &SparseMatrix, source: &Mult, target: &Mult) -> bool {
        let (n, m) = (f.cols(), f.rows());
        let cols: Vec<Vector> = (0..n).map(|j| f.column(j)).collect();
        let apply = |v: &[Scalar]| -> Vector {
            let mut out = vec![field.zero(); m];
            for (j, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for r in 0..m {
                    out[r] = &out[r] + &(x * &cols[j][r]);
                }
            }
            out
        };
        let unit = |i: usize| -> Vector { (0..n).map(|t| if t == i { field.one() } else { field.zero() }).collect() };
        (0..n).all(|i| {
            (0..n).all(|j| {
                apply(&product(field, n, source, &unit(i), &unit(j))) == product(field, m, target, &cols[i], &cols[j])
            })
        })
    }

    /// Convolution `(f*g)(c) = Σ f(c₁)g(c₂)` of functionals.
    pub fn convolve(field: FieldSpec, d: &Comult, f: &[Scalar], g: &[Scalar]) -> Vector {
        d.iter()
            .map(|terms| terms.iter().fold(field.zero(), |acc, (i, j, s)| &acc + &(&(s * &f[*i]) * &g[*j])))
            .collect()
    }

    /// Number of paths of each length, from powers of the adjacency matrix.
    pub fn path_counts(q: &Quiver) -> Vec<u64> {
        let n = q.vertex_count();
        let mut adj = vec![vec![0u64; n]; n];
        for a in &q.arrows {
            adj[a.source][a.target] += 1;
        }
        let mut power: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let mut counts = Vec::new();
        loop {
            let total: u64 = power.iter().flatten().sum();
            if total == 0 {
                return counts;
            }
            counts.push(total);
            power = (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * adj[k][j]).sum()).collect())
                .collect();
        }
    }

    /// Paths of length at most `max_len` starting (`out`) or ending at `v`.
    pub fn paths_at(q: &Quiver, v: usize, max_len: usize, out: bool) -> usize {
        let mut frontier = vec![v];
        let mut total = 1;
        for _ in 0..max_len {
            let next: Vec<usize> = frontier
                .iter()
                .flat_map(|&x| {
                    q.arrows
                        .iter()
                        .filter(move |a| if out { a.source == x } else { a.target == x })
                        .map(move |a| if out { a.target } else { a.source })
                })
                .collect();
            total += next.len();
            frontier = next;
        }
        total
    }

    /// Is the coaction-closed subspace spanned by `basis` a subcomodule:
    /// every `(I⊗k*)ρ(w)` lies in it.
    pub fn is_subcomodule(m: &FinComodule, basis: &[Vector]) -> bool {
        let field = m.field();
        let n = m.dim();
        let consts = m.structure_constants();
        basis.iter().all(|w| {
            let mut by_k: BTreeMap<usize, Vector> = BTreeMap::new();
            for (t, s, k, x) in &consts {
                if !w[*t].is_zero() {
                    let v = by_k.entry(*k).or_insert_with(|| vec![field.zero(); n]);
                    v[*s] = &v[*s] + &(&w[*t] * x);
                }
            }
            by_k.values().all(|v| contains(basis, v))
        })
    }

    /// `span{m, (I⊗k*)ρ(m)}`.
    pub fn subcomodule_formula(m: &FinComodule, v: &[Scalar]) -> Vec<Vector> {
        let field = m.field();
        let mut by_k: BTreeMap<usize, Vector> = BTreeMap::new();
        for (t, s, k, x) in m.structure_constants() {
            if !v[t].is_zero() {
                let e = by_k.entry(k).or_insert_with(|| vec![field.zero(); m.dim()]);
                e[s] = &e[s] + &(&v[t] * &x);
            }
        }
        std::iter::once(v.to_vec()).chain(by_k.into_values()).collect()
    }

    /// `span{v, (f⊗I)Δv, (I⊗g)Δv, (f⊗I⊗g)Δ²v}` over dual-basis `f`, `g`.
    pub fn subcoalgebra_formula(field: FieldSpec, d: &Comult, v: &[Scalar]) -> Vec<Vector> {
        let n = d.len();
        let t = delta(d, v);
        let mut out = vec![v.to_vec()];
        for a in 0..n {
            let row: Vector = (0..n).map(|j| t.get(&(a, j)).cloned().unwrap_or_else(|| field.zero())).collect();
            let col: Vector = (0..n).map(|i| t.get(&(i, a)).cloned().unwrap_or_else(|| field.zero())).collect();
            out.push(row);
            out.push(col);
        }
        // Δ²v = (Δ⊗I)Δv, sliced on its outer legs
        let mut middle: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for ((i, j), s) in &t {
            for (a, b, x) in &d[*i] {
                let e = middle.entry((*a, *j)).or_insert_with(|| vec![field.zero(); n]);
                e[*b] = &e[*b] + &(s * x);
            }
        }
        out.extend(middle.into_values());
        out
    }
}

use oracle::Comult;

#[test]
fn criterion_01_counital_lift() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(101);
    for t in 0..100 {
        let field = field_for(t);
        let f = random_morphism_pair(field, 4, &mut r).expect("random pair");
        let (m, n) = (f.source.dim(), f.target.dim());
        let source = oracle::comult(&f.source);
        let target = oracle::comult(&f.target);
        if m > 4 || !oracle::is_coalgebra_morphism(&f.matrix, &source, &target) {
            failures.push(format!("pair {t}: generated pair is not a morphism at dims <= 4"));
            continue;
        }
        let lift = match counital_lift(&f) {
            Ok(l) => l,
            Err(e) => {
                failures.push(format!("pair {t}: {e}"));
                continue;
            }
        };
        let eps_d = f.source.counit().expect("source is counital");
        let g = &lift.matrix;
        let projects = (0..n).all(|i| (0..m).all(|j| g.get(i, j) == f.matrix.get(i, j)));
        let counital = (0..m).all(|j| g.get(n, j) == eps_d[j]);
        let c1 = oracle::counitalize(field, &target);
        if !projects || !counital || !oracle::is_coalgebra_morphism(g, &source, &c1) {
            failures.push(format!("pair {t}: lift fails proj∘f̄ = f, ε¹∘f̄ = ε or comultiplicativity"));
        }
        // Two lifts differ by X with proj∘X = 0 and ε¹∘X = 0. Stacking the
        // projection rows over ε¹ gives the system; its nullity is the
        // dimension of the space of differences.
        let mut system: Vec<Vector> = (0..n).map(|i| (0..=n).map(|c| if c == i { field.one() } else { field.zero() }).collect()).collect();
        system.push((0..=n).map(|c| if c == n { field.one() } else { field.zero() }).collect());
        if n + 1 - oracle::rank(system) != 0 {
            failures.push(format!("pair {t}: counital lifts are not unique"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(10) {
        failures.push(format!("took {elapsed:?}, limit 10s"));
    }
    verdict(1, "counital lift of 100 pairs over Q and F_101, dims <= 4, unique and projecting to f", &failures);
}

#[test]
fn criterion_02_dual_of_counitalization() {
    let mut failures = Vec::new();
    let mut r = rng(102);
    for t in 0..100 {
        let field = field_for(t);
        let c = Arc::new(random_coalgebra(field, 5, t % 3 == 0, &mut r));
        let n = c.dim();
        let phi = match dual_unitalization_iso(&c) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("coalgebra {t}: {e}"));
                continue;
            }
        };
        let d = oracle::comult(&c);
        let source = oracle::unitalize(field, n, &oracle::dual_mult(&d));
        let target = oracle::dual_mult(&oracle::counitalize(field, &d));
        let unit_to_unit = (0..=n).all(|r| phi.matrix.get(r, n) == if r == n { field.one() } else { field.zero() });
        if n > 5
            || !oracle::is_invertible(&phi.matrix)
            || !unit_to_unit
            || !oracle::is_algebra_morphism(field, &phi.matrix, &source, &target)
        {
            failures.push(format!("coalgebra {t}: (C*)¹ -> (C¹)* is not a unital algebra isomorphism"));
        }
    }
    verdict(2, "(C*)¹ ≅ (C¹)* on 100 coalgebras over Q and F_101, dims <= 5", &failures);
}

#[test]
fn criterion_03_finite_dual_of_unitalization() {
    let mut failures = Vec::new();
    let mut r = rng(103);
    for t in 0..100 {
        let field = field_for(t);
        let a = Arc::new(random_algebra(field, 5, t % 3 == 0, &mut r));
        let n = a.dim();
        let m = match unital_dual_compat(&a) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("algebra {t}: {e}"));
                continue;
            }
        };
        let mult = oracle::mult(&a);
        let source = oracle::dual_comult(n + 1, &oracle::unitalize(field, n, &mult));
        let target = oracle::counitalize(field, &oracle::dual_comult(n, &mult));
        // ε of (A¹)⁰ is evaluation at u; ε of (A⁰)¹ is e*; both are the last coordinate
        let counital = (0..=n).all(|j| m.matrix.get(n, j) == if j == n { field.one() } else { field.zero() });
        if !oracle::is_invertible(&m.matrix) || !counital || !oracle::is_coalgebra_morphism(&m.matrix, &source, &target) {
            failures.push(format!("algebra {t}: (A¹)⁰ -> (A⁰)¹ is not a counital coalgebra isomorphism"));
        }
    }
    verdict(3, "(A¹)⁰ ≅ (A⁰)¹ on 100 algebras over Q and F_101", &failures);
}

#[test]
fn criterion_04_generated_subobjects_and_comatrix() {
    let mut failures = Vec::new();
    let mut r = rng(104);
    for t in 0..200 {
        let field = field_for(t);
        let c = random_coalgebra(field, 5, t % 2 == 0, &mut r);
        let v = random_vector(field, c.dim(), &mut r);
        let got = subcoalgebra_generated(&c, &v);
        let expected = oracle::subcoalgebra_formula(field, &oracle::comult(&c), &v);
        if !oracle::same_span(&got.basis(), &expected) {
            failures.push(format!("subcoalgebra trial {t}: closure differs from the one-shot formula"));
        }
    }
    let mut r = rng(105);
    for t in 0..200 {
        let field = field_for(t);
        let m = random_comodule(field, 5, &mut r).expect("random comodule");
        let v = random_vector(field, m.dim(), &mut r);
        let got = m.subcomodule_generated_by(std::slice::from_ref(&v));
        if !oracle::same_span(&got.basis(), &oracle::subcomodule_formula(&m, &v)) {
            failures.push(format!("subcomodule trial {t}: closure differs from span{{m, (I⊗f)ρm}}"));
        }
    }
    let mut r = rng(106);
    for t in 0..50 {
        let field = field_for(t);
        let c = Arc::new(random_coalgebra(field, 5, t % 2 == 0, &mut r));
        let cover = match comatrix_cover(&c) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("comatrix {t}: {e}"));
                continue;
            }
        };
        let n = cover.n;
        let d = oracle::comult(&c);
        for i in 0..n {
            for j in 0..n {
                let mut expected = BTreeMap::new();
                for k in 0..n {
                    for (a, x) in cover.family[i * n + k].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (b, y) in cover.family[k * n + j].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                            let e = expected.entry((a, b)).or_insert_with(|| field.zero());
                            *e = &*e + &(x * y);
                        }
                    }
                }
                expected.retain(|_, v: &mut Scalar| !v.is_zero());
                if oracle::delta(&d, &cover.family[i * n + j]) != expected {
                    failures.push(format!("comatrix {t}: δ(c_{i}{j}) differs from Σ c_ik ⊗ c_kj"));
                }
            }
        }
        let mut mat = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mat.push((i * n + j, i * n + k, k * n + j));
                }
            }
        }
        let mut comatrix: Comult = vec![Vec::new(); n * n];
        for (x, a, b) in mat {
            comatrix[x].push((a, b, field.one()));
        }
        let columns_match = (0..n * n).all(|x| cover.theta.matrix.column(x) == cover.family[x]);
        if !columns_match
            || oracle::rank(oracle::dense(&cover.theta.matrix)) != c.dim()
            || !oracle::is_coalgebra_morphism(&cover.theta.matrix, &comatrix, &d)
        {
            failures.push(format!("comatrix {t}: θ is not a surjective coalgebra map e_ij ↦ c_ij"));
        }
    }
    verdict(4, "generated subcoalgebras and subcomodules (200 trials each) and comatrix covers", &failures);
}

fn f2_subspaces(n: usize) -> Vec<Vec<Vector>> {
    let f2 = FieldSpec::Prime(2);
    let size = 1usize << n;
    let to_vec = |x: usize| -> Vector { (0..n).map(|i| f2.from_i64((x >> i & 1) as i64)).collect() };
    let mut out = Vec::new();
    // a subset of F_2^n (as a bit mask over its 2^n vectors) is a subspace
    // when it contains 0 and is closed under addition
    for mask in 0u64..1 << size {
        let has = |x: usize| mask >> x & 1 == 1;
        if !has(0) || !(0..size).all(|x| !has(x) || (0..size).all(|y| !has(y) || has(x ^ y))) {
            continue;
        }
        out.push((1..size).filter(|&x| has(x)).map(to_vec).collect());
    }
    out
}

#[test]
fn criterion_05_lattice_agreement() {
    let mut failures = Vec::new();
    let f2 = FieldSpec::Prime(2);
    let mut r = rng(105);
    let agree = |m: &FinComodule, basis: &[Vector]| -> Option<bool> {
        let s = Subspace::span(m.field(), m.dim(), basis.iter().cloned());
        let expected = oracle::is_subcomodule(m, basis);
        let m1 = comodule_counitalize(m).ok()?;
        let module = comodule_to_dual_module(m).ok()?;
        Some(m.is_subcomodule(&s) == expected && m1.is_subcomodule(&s) == expected && module.is_submodule(&s) == expected)
    };
    for t in 0..20 {
        let m = random_comodule(f2, 4, &mut r).expect("random comodule");
        let subspaces = f2_subspaces(m.dim());
        for (k, basis) in subspaces.iter().enumerate() {
            if agree(&m, basis) != Some(true) {
                failures.push(format!("F_2 comodule {t}: lattices disagree on subspace {k}"));
            }
        }
        match lattice_agreement_check(&m, 0, t as u64) {
            Ok(rep) if rep.passed() && rep.exhaustive && rep.subspaces_checked == subspaces.len() => {}
            Ok(rep) => failures.push(format!("F_2 comodule {t}: report {rep:?}, {} subspaces expected", subspaces.len())),
            Err(e) => failures.push(format!("F_2 comodule {t}: {e}")),
        }
    }
    for t in 0..20 {
        let m = random_comodule(Q, 4, &mut r).expect("random comodule");
        for k in 0..100 {
            let basis: Vec<Vector> = if k % 2 == 0 {
                (0..r.gen_range(1..=m.dim().max(1))).map(|_| random_vector(Q, m.dim(), &mut r)).collect()
            } else {
                oracle::subcomodule_formula(&m, &random_vector(Q, m.dim(), &mut r))
            };
            if agree(&m, &basis) != Some(true) {
                failures.push(format!("Q comodule {t}: lattices disagree on sample {k}"));
            }
        }
        match lattice_agreement_check(&m, 100, t as u64) {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => failures.push(format!("Q comodule {t}: {} counterexamples", rep.counterexamples.len())),
            Err(e) => failures.push(format!("Q comodule {t}: {e}")),
        }
    }
    verdict(5, "subcomodule and C*-submodule lattices agree: 20 F_2 comodules exhaustively, 20 Q comodules x 100", &failures);
}

/// The canonical isomorphisms send basis to basis.
fn is_permutation(m: &SparseMatrix) -> bool {
    let mut rows = BTreeSet::new();
    m.rows() == m.cols()
        && (0..m.cols()).all(|c| {
            let col = m.column(c);
            let nz: Vec<usize> = (0..col.len()).filter(|&r| !col[r].is_zero()).collect();
            nz.len() == 1 && col[nz[0]].is_one() && rows.insert(nz[0])
        })
}

#[test]
fn criterion_06_path_coalgebra_duality() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(106);
    let mut quivers = vec![Quiver::from_edges(1, &[]).unwrap(), Quiver::from_edges(6, &[]).unwrap()];
    while quivers.len() < 200 {
        quivers.push(random_dag(6, 10, &mut r));
    }
    for (t, q) in quivers.iter().enumerate() {
        if q.vertex_count() > 6 || q.arrows.len() > 10 {
            failures.push(format!("quiver {t} exceeds 6 vertices or 10 arrows"));
        }
        let m = match verify_pathdual_iso(q, Q) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("quiver {t}: {e}"));
                continue;
            }
        };
        let counts = oracle::path_counts(q);
        let paths: u64 = counts.iter().sum();
        // every path of length L has L + 1 splittings
        let splittings: u64 = counts.iter().enumerate().map(|(l, c)| (l as u64 + 1) * c).sum();
        let target = oracle::comult(&m.target);
        let terms: usize = target.iter().map(Vec::len).sum();
        let counit_total = m.target.counit().map(|e| e.iter().filter(|x| x.is_one()).count());
        if m.matrix.rows() as u64 != paths
            || terms as u64 != splittings
            || counit_total != Some(q.vertex_count())
            || !is_permutation(&m.matrix)
            || !oracle::is_coalgebra_morphism(&m.matrix, &oracle::comult(&m.source), &target)
        {
            failures.push(format!("quiver {t}: {paths} paths; the dual of the path algebra does not match"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}, limit 60s"));
    }
    verdict(6, "finite dual of the path algebra ≅ path coalgebra on 200 acyclic quivers", &failures);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..=p.len()).map(move |i| {
                let mut q = p.clone();
                q.insert(i, n - 1);
                q
            })
        })
        .collect()
}

/// Labelled partial orders on `n` points, by brute force over relations.
fn labelled_posets(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(b, &p)| (p, b)).collect();
    let mut count = 0;
    for mask in 0u64..1 << pairs.len() {
        let lt = |i: usize, j: usize| i != j && mask >> index[&(i, j)] & 1 == 1;
        let antisymmetric = pairs.iter().all(|&(i, j)| !(lt(i, j) && lt(j, i)));
        if antisymmetric && pairs.iter().all(|&(i, j)| !lt(i, j) || (0..n).all(|k| !lt(j, k) || lt(i, k))) {
            count += 1;
        }
    }
    count
}

#[test]
fn criterion_07_incidence_coalgebra_duality() {
    let mut failures = Vec::new();
    let check = |p: &Poset, label: String, failures: &mut Vec<String>| {
        let n = p.len();
        let comparable: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| p.leq(x, y)).collect();
        // Δ(δ_xy) has one term per z in [x, y]
        let terms: usize = comparable.iter().map(|&(x, y)| (0..n).filter(|&z| p.leq(x, z) && p.leq(z, y)).count()).sum();
        match verify_incidencedual_iso(p, Q) {
            Ok(m) => {
                let target = oracle::comult(&m.target);
                if m.matrix.rows() != comparable.len()
                    || target.iter().map(Vec::len).sum::<usize>() != terms
                    || !is_permutation(&m.matrix)
                    || !oracle::is_coalgebra_morphism(&m.matrix, &oracle::comult(&m.source), &target)
                {
                    failures.push(format!("{label}: incidence duality does not match"));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    };
    for (n, classes) in [(1usize, 1usize), (2, 2), (3, 5), (4, 16), (5, 63)] {
        let posets = posets_up_to_iso(n);
        if posets.len() != classes {
            failures.push(format!("n = {n}: {} classes, expected {classes}", posets.len()));
        }
        // orbit-stabilizer: the classes account for every labelled poset exactly once
        let perms = permutations(n);
        let orbits: u64 = posets
            .iter()
            .map(|p| {
                let aut = perms.iter().filter(|s| (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == p.leq(s[x], s[y])))).count();
                (perms.len() / aut) as u64
            })
            .sum();
        let labelled = labelled_posets(n);
        if orbits != labelled {
            failures.push(format!("n = {n}: classes cover {orbits} labelled posets of {labelled}"));
        }
        for (k, p) in posets.iter().enumerate() {
            check(p, format!("poset {n}.{k}"), &mut failures);
        }
    }
    let mut r = rng(107);
    for t in 0..50 {
        check(&random_poset(6, 0.4, &mut r), format!("random poset {t}"), &mut failures);
    }
    verdict(7, "finite dual of the incidence algebra ≅ incidence coalgebra on posets up to iso (n <= 5) and 50 at n = 6", &failures);
}

#[test]
fn criterion_08_linearly_recursive_sequences() {
    let mut failures = Vec::new();
    let fib: Vec<i64> = (0..41).scan((0i64, 1i64), |s, _| {
        let out = s.0;
        *s = (s.1, s.0 + s.1);
        Some(out)
    }).collect();
    for (i, w) in fib.windows(3).enumerate() {
        if w[2] != w[1] + w[0] {
            failures.push(format!("oracle: X^2 - X - 1 misses index {i}"));
        }
    }
    match linrec_analyze(&LinRecFunctional::from_i64(Q, &fib[..40]), 10) {
        Ok(LinRec::Recursive { minimal_polynomial: p, .. }) => {
            // no degree-one relation fits f(1) = c f(0) with f(0) = 0, f(1) = 1
            if p.coeffs() != [Q.from_i64(-1), Q.from_i64(-1), Q.one()] || p.to_string() != "X^2 - X - 1" {
                failures.push(format!("Fibonacci minimal polynomial {p}"));
            }
        }
        other => failures.push(format!("Fibonacci: {other:?}")),
    }

    let a = GradedAlgebra::polynomial(Q, 40);
    let values: Vec<Scalar> = fib.iter().map(|&x| Q.from_i64(x)).collect();
    let f = Functional::from_sequence(&a, &values).expect("41 values");
    let witness = membership_bounded(&a, &f, 5, &CancelToken::new()).expect("membership runs");
    if !matches!(witness, Membership::Member { .. }) {
        failures.push(format!("Fibonacci functional not found in the finite dual: {witness:?}"));
    } else {
        match delta_of_functional(&a, &f, &witness) {
            Ok(family) => {
                if family.verified_degree < 20 {
                    failures.push(format!("delta verified only to degree {}", family.verified_degree));
                }
                let degrees_ok = (0..=20).all(|i| a.degree(i) == i);
                let pairs_ok = (0..=20usize).all(|p| {
                    (0..=20 - p).all(|q| {
                        let sum = family.pairs.iter().fold(Q.zero(), |acc, (g, h)| match (g.get(p), h.get(q)) {
                            (Some(x), Some(y)) => &acc + &(x * y),
                            _ => Q.from_i64(i64::MIN),
                        });
                        sum == Q.from_i64(fib[p + q])
                    })
                });
                if !degrees_ok || !pairs_ok {
                    failures.push("Σ g_i(X^p) h_i(X^q) differs from f(X^(p+q)) below degree 20".into());
                }
            }
            Err(e) => failures.push(format!("delta: {e}")),
        }
    }

    match linrec_analyze(&LinRecFunctional::from_i64(Q, &[1; 40]), 10) {
        Ok(LinRec::Recursive { minimal_polynomial: p, .. }) if p.coeffs() == [Q.from_i64(-1), Q.one()] => {}
        other => failures.push(format!("constant sequence: {other:?}")),
    }

    let factorial: Vec<Scalar> = (0..40i64)
        .scan(Q.one(), |acc, k| {
            let out = acc.clone();
            *acc = &*acc * &Q.from_i64(k + 1);
            Some(out)
        })
        .collect();
    // a recursion of order d <= 15 would make the 16 x 16 Hankel matrix singular
    let hankel: Vec<Vector> = (0..16).map(|i| (0..16).map(|j| factorial[i + j].clone()).collect()).collect();
    if oracle::rank(hankel) != 16 {
        failures.push("oracle: factorial Hankel matrix is singular".into());
    }
    match linrec_analyze(&LinRecFunctional::new(Q, factorial), 15) {
        Ok(LinRec::NotWithinBound { rank_bound: 15 }) => {}
        other => failures.push(format!("factorial: {other:?}")),
    }
    verdict(8, "Fibonacci gives X^2 - X - 1 with δ verified to degree 20; constant gives X - 1; factorial exceeds rank 15", &failures);
}

struct CoreflexiveInstance {
    label: String,
    coalgebra: Arc<FinCoalgebra>,
    expected_dim: usize,
    rat: dualis::Result<RatDualAlgebra>,
}

fn grouped(c: FinCoalgebra, groups: [dualis::combinatorial::Grouping; 2]) -> dualis::Result<(Arc<FinCoalgebra>, RatDualAlgebra)> {
    let c = Arc::new(c);
    let [by_source, by_target] = groups;
    let d = decompose_with_candidates(&c, Hand::Left, &[("source", by_source), ("target", by_target)], 0)?;
    Ok((c, rat_dual(&d)?))
}

/// 150 random counital coalgebras, 100 path coalgebras and 50 incidence coalgebras.
fn coreflexive_corpus() -> &'static [CoreflexiveInstance] {
    static CORPUS: OnceLock<Vec<CoreflexiveInstance>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        let mut r = rng(109);
        for t in 0..150 {
            let c = Arc::new(random_coalgebra(field_for(t), 5, true, &mut r));
            let rat = decompose_injectives(&c, Hand::Left, t as u64).and_then(|d| rat_dual(&d));
            out.push(CoreflexiveInstance { label: format!("coalgebra {t}"), expected_dim: c.dim(), coalgebra: c, rat });
        }
        for t in 0..100 {
            let q = random_dag(6, 10, &mut r);
            let len = q.exact_max_len().expect("acyclic");
            let paths: u64 = oracle::path_counts(&q).iter().sum();
            let c = q.path_coalgebra(field_for(t), len);
            let (c, rat) = match grouped(c.clone(), q.endpoint_groupings(len)) {
                Ok((c, rat)) => (c, Ok(rat)),
                Err(e) => (Arc::new(c), Err(e)),
            };
            out.push(CoreflexiveInstance { label: format!("path coalgebra {t}"), coalgebra: c, expected_dim: paths as usize, rat });
        }
        for t in 0..50 {
            let p = random_poset(6, 0.4, &mut r);
            let n = p.len();
            let intervals = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| p.leq(x, y)).count();
            let c = p.incidence_coalgebra(field_for(t));
            let (c, rat) = match grouped(c.clone(), p.endpoint_groupings()) {
                Ok((c, rat)) => (c, Ok(rat)),
                Err(e) => (Arc::new(c), Err(e)),
            };
            out.push(CoreflexiveInstance { label: format!("incidence coalgebra {t}"), coalgebra: c, expected_dim: intervals, rat });
        }
        out
    })
}

#[test]
fn criterion_09_left_coreflexive() {
    let mut failures = Vec::new();
    let corpus = coreflexive_corpus();
    for inst in corpus {
        let r = match &inst.rat {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{}: {e}", inst.label));
                continue;
            }
        };
        match (left_coreflexive_check(r), phi_l(r)) {
            (Ok(rep), Ok(phi)) => {
                let dim = inst.expected_dim;
                if rep.verdict != Coreflexivity::Bijective
                    || rep.kernel_rank != 0
                    || rep.dim_coalgebra != dim
                    || rep.dim_rational_dual != dim
                    || inst.coalgebra.dim() != dim
                    || !oracle::is_invertible(&phi.matrix)
                {
                    failures.push(format!("{}: {rep:?}", inst.label));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{}: {e}", inst.label)),
        }
    }
    if corpus.len() < 300 {
        failures.push(format!("only {} coalgebras", corpus.len()));
    }
    verdict(9, "φ_l is bijective with zero kernel and matching dimensions on 300 coalgebras", &failures);
}

#[test]
fn criterion_10_semiperfect_iff_injective() {
    let mut failures = Vec::new();
    let finite = Quiver::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let quivers = [QuiverTemplate::Ray, QuiverTemplate::IntegerLine, QuiverTemplate::Star { arms: 3 }, QuiverTemplate::SingleLoop];
    let mut families: Vec<(TemplateFamily, Vec<usize>)> = vec![(TemplateFamily::FiniteQuiver(finite), vec![2, 3, 4, 5, 6])];
    families.extend(quivers.iter().map(|t| (TemplateFamily::Quiver(*t), vec![2, 3, 4, 5, 6])));
    families.push((TemplateFamily::Poset(PosetTemplate::NaturalChain), vec![2, 3, 4]));
    for (family, radii) in &families {
        let mut holds = Vec::new();
        for side in [Hand::Left, Hand::Right] {
            match semiperfect_iff_injective_harness(family, side, radii, 10, Q) {
                Ok(rep) if rep.disagreements == 0 && rep.rows.iter().all(|r| r.agree) && rep.rows.len() == radii.len() => {
                    holds.push(rep.rows.last().map(|r| r.combinatorial.holds()).unwrap_or(false));
                }
                Ok(rep) => failures.push(format!("{} {side:?}: {} disagreements", family.name(), rep.disagreements)),
                Err(e) => failures.push(format!("{} {side:?}: {e}", family.name())),
            }
        }
        // paths (or comparable elements) into and out of the base point: a
        // side can hold only if the matching count stays bounded as the radius grows
        let growth = |out: bool| -> Option<bool> {
            match family {
                TemplateFamily::FiniteQuiver(_) => Some(false),
                TemplateFamily::Quiver(t) => {
                    let count = |r: usize| {
                        let tr = t.truncate(r);
                        let v = tr.ids.iter().position(|&x| x == 0).expect("base point");
                        oracle::paths_at(&tr.quiver, v, tr.max_len, out)
                    };
                    Some(count(6) > count(3))
                }
                TemplateFamily::Poset(t) => {
                    let count = |r: usize| {
                        let p = t.truncate(r);
                        let v = p.elements.iter().position(|e| e == "0").expect("base point");
                        (0..p.len()).filter(|&y| if out { p.leq(v, y) } else { p.leq(y, v) }).count()
                    };
                    Some(count(6) > count(3))
                }
                TemplateFamily::FinitePoset(_) => None,
            }
        };
        if let (2, Some(out), Some(inward)) = (holds.len(), growth(true), growth(false)) {
            let mut got = holds.clone();
            let mut bounded = vec![!out, !inward];
            got.sort();
            bounded.sort();
            // a side that holds must be one whose count is bounded
            if got.iter().filter(|&&h| h).count() > bounded.iter().filter(|&&b| b).count() {
                failures.push(format!("{}: holds on {holds:?} but bounded on {bounded:?}", family.name()));
            }
        }
    }
    for side in [Hand::Left, Hand::Right] {
        for radius in 2..=6 {
            if !semiperfect_check(Family::QuiverTemplate { template: QuiverTemplate::IntegerLine, radius }, side, 10).fails() {
                failures.push(format!("integer line does not fail on {side:?} at radius {radius}"));
            }
        }
    }
    verdict(10, "semiperfect iff injective blocks: templates at radii 2..6, both sides, no disagreements", &failures);
}

#[test]
fn criterion_11_counit_through_rational_dual() {
    let mut failures = Vec::new();
    let check = |label: &str, c: &FinCoalgebra, r: &RatDualAlgebra, phi: &PhiL, failures: &mut Vec<String>| {
        let field = c.field();
        let eps = c.counit().expect("counital");
        if let Err(e) = check_counit_e(r, phi) {
            failures.push(format!("{label}: {e}"));
        }
        // E∘φ_l(c) = Σ_j e_j(c), so E∘φ_l = ε means the idempotents sum to ε;
        // they must also be orthogonal idempotents in C*
        let d = oracle::comult(c);
        let sum = r.idempotents.iter().fold(vec![field.zero(); c.dim()], |acc, e| acc.iter().zip(e).map(|(a, b)| a + b).collect());
        let orthogonal = r.idempotents.iter().enumerate().all(|(i, ei)| {
            r.idempotents.iter().enumerate().all(|(j, ej)| {
                let p = oracle::convolve(field, &d, ei, ej);
                if i == j {
                    p == *ei
                } else {
                    p.iter().all(Scalar::is_zero)
                }
            })
        });
        if sum != *eps || !orthogonal {
            failures.push(format!("{label}: idempotents do not resolve ε"));
        }
    };
    for inst in coreflexive_corpus() {
        match &inst.rat {
            Ok(r) => match phi_l(r) {
                Ok(phi) => check(&inst.label, &inst.coalgebra, r, &phi, &mut failures),
                Err(e) => failures.push(format!("{}: {e}", inst.label)),
            },
            Err(e) => failures.push(format!("{}: {e}", inst.label)),
        }
    }
    for radius in 1..=6 {
        let t = QuiverTemplate::Ray.truncate(radius);
        let c = t.quiver.path_coalgebra(Q, t.max_len);
        match grouped(c, t.quiver.endpoint_groupings(t.max_len)).and_then(|(c, r)| Ok((phi_l(&r)?, c, r))) {
            Ok((phi, c, r)) => check(&format!("ray at radius {radius}"), &c, &r, &phi, &mut failures),
            Err(e) => failures.push(format!("ray at radius {radius}: {e}")),
        }
    }
    verdict(11, "E∘φ_l = ε on the 300 coalgebras and on ray truncations up to radius 6", &failures);
}

#[test]
fn criterion_12_hopf_self_duality() {
    let mut failures = Vec::new();
    for field in [Q, F101] {
        let s3 = FinBialgebra::group_algebra(field, &FiniteGroup::symmetric3());
        let cases = [
            ("K[Z/2]", Ok(FinBialgebra::group_algebra(field, &FiniteGroup::cyclic(2))), 2),
            ("K[Z/4]", Ok(FinBialgebra::group_algebra(field, &FiniteGroup::cyclic(4))), 4),
            ("K[S3]", Ok(s3.clone()), 6),
            ("functions on S3", bialgebra_dual(&s3), 6),
        ];
        for (name, h, order) in cases {
            let label = format!("{name} over {field}");
            let h = match h {
                Ok(h) => h,
                Err(e) => {
                    failures.push(format!("{label}: {e}"));
                    continue;
                }
            };
            match dualis::reflexivity::hopf_selfdual_check(&h, 0) {
                Ok(s) => {
                    // H**'s coalgebra on the double-dual basis has H's structure constants
                    let d = oracle::comult(&h.coalgebra);
                    let target = oracle::dual_comult(h.dim(), &oracle::dual_mult(&d));
                    // the rational dual R = H* sits on its own basis r_a; φ_l(c)(r_a) = r_a(c),
                    // and R⁰ carries the dual of convolution on that basis
                    let through_ok = decompose_injectives(&h.coalgebra, Hand::Left, 0)
                        .and_then(|dec| rat_dual(&dec))
                        .map(|r| {
                            let field = h.field();
                            let n = r.basis.len();
                            let mut mult = Vec::new();
                            for (a, ra) in r.basis.iter().enumerate() {
                                for (b, rb) in r.basis.iter().enumerate() {
                                    let Some(coords) = oracle::solve(&r.basis, &oracle::convolve(field, &d, ra, rb)) else {
                                        return false;
                                    };
                                    mult.extend(coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (a, b, k, x)));
                                }
                            }
                            let m = &s.through_rational_dual.matrix;
                            n == h.dim()
                                && (0..n).all(|a| (0..n).all(|c| m.get(a, c) == r.basis[a][c]))
                                && oracle::is_coalgebra_morphism(m, &d, &oracle::dual_comult(n, &mult))
                        })
                        .unwrap_or(false);
                    if h.dim() != order
                        || !through_ok
                        || !oracle::is_invertible(&s.through_rational_dual.matrix)
                        || !oracle::is_invertible(&s.canonical.matrix)
                        || !oracle::is_coalgebra_morphism(&s.canonical.matrix, &d, &target)
                    {
                        failures.push(format!("{label}: H -> (H*)⁰ is not the canonical isomorphism"));
                    }
                }
                Err(e) => failures.push(format!("{label}: {e}")),
            }
        }
    }
    verdict(12, "Hopf self-duality for K[Z/2], K[Z/4], K[S3] and functions on S3 over Q and F_101", &failures);
}

#[test]
fn criterion_13_suite_is_deterministic() {
    let mut failures = Vec::new();
    let run = || builtin_suite(SuiteName::PaperTheorems, SuiteKnobs::default());
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            if !a.passed {
                failures.push(format!("{} of {} rows fail", a.failed, a.total));
            }
            if a.to_json().as_bytes() != b.to_json().as_bytes() {
                failures.push("two runs differ".into());
            }
        }
        (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
    }
    verdict(13, "the built-in theorem suite passes and its JSON report is byte-identical across runs", &failures);
}
