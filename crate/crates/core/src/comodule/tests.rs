use super::*;
use crate::coalgebra::comatrix;
use proptest::prelude::*;

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn qi(x: i64) -> Scalar {
    q().from_i64(x)
}

#[test]
fn counitalize_comodule_examples() {
    let c = Arc::new(FinCoalgebra::null(q(), 1));
    let zero = FinComodule::zero(c.clone());
    assert_eq!(comodule_counitalize(&zero).unwrap().dim(), 0);

    // ρ(m) = m ⊗ c is not coassociative when δ(c) = 0
    assert!(FinComodule::new(c.clone(), 1, [(0, 0, 0, qi(1))], false).is_err());
    // ρ(m0) = m1 ⊗ c, ρ(m1) = 0
    let m = FinComodule::new(c.clone(), 2, [(0, 1, 0, qi(1))], false).unwrap();
    let m1 = comodule_counitalize(&m).unwrap();
    assert_eq!(m1.structure_constants(), vec![(0, 0, 1, qi(1)), (0, 1, 0, qi(1)), (1, 1, 1, qi(1))]);
    m1.check().unwrap();
    let back = comodule_corestrict(&m1, &c).unwrap();
    assert_eq!(back.structure_constants(), m.structure_constants());
}

#[test]
fn dual_module_examples() {
    let g = Arc::new(FinCoalgebra::grouplike(q()));
    let m = FinComodule::new(g.clone(), 1, [(0, 0, 0, qi(1))], true).unwrap();
    let module = comodule_to_dual_module(&m).unwrap();
    assert_eq!(module.action_matrix(&[qi(1)]), SparseMatrix::identity(q(), 1));
    assert_eq!(comodule_to_dual_module(&FinComodule::zero(g)).unwrap().dim(), 0);

    // C over itself: the action of f is v ↦ (I⊗f)δ(v)
    let c2 = Arc::new(comatrix(q(), 2));
    let reg = FinComodule::regular_right(&c2);
    let module = comodule_to_dual_module(&reg).unwrap();
    for i in 0..4 {
        let f = c2.basis_vector(i);
        for t in 0..4 {
            let v = c2.basis_vector(t);
            assert_eq!(module.act(&f, &v), c2.right_contract(&f, &v));
        }
    }
}

#[test]
fn generated_subcomodules() {
    let c2 = Arc::new(comatrix(q(), 2));
    let reg = FinComodule::regular_right(&c2);
    assert!(reg.subcomodule_generated_by(&[c2.zero_vector()]).is_zero());
    let s = reg.subcomodule_generated_by(&[c2.basis_vector(0)]);
    assert_eq!(s, Subspace::span(q(), 4, vec![c2.basis_vector(0), c2.basis_vector(1)]));
    let g = Arc::new(FinCoalgebra::grouplike(q()));
    let one = FinComodule::new(g, 1, [(0, 0, 0, qi(1))], true).unwrap();
    assert_eq!(one.subcomodule_generated_by(&[vec![qi(5)]]).dim(), 1);
}

#[test]
fn lattice_examples() {
    let c = Arc::new(FinCoalgebra::null(q(), 1));
    let r = lattice_agreement_check(&FinComodule::zero(c), 10, 1).unwrap();
    assert!(r.passed());
    assert_eq!(r.subspaces_checked, 0);

    let f2 = FieldSpec::Prime(2);
    let c = Arc::new(comatrix(f2, 1));
    let m = FinComodule::new(c, 2, [(0, 0, 0, f2.one()), (1, 1, 0, f2.one())], true).unwrap();
    let r = lattice_agreement_check(&m, 0, 1).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.subspaces_checked, 5);
    assert!(r.passed());

    let c2 = Arc::new(comatrix(q(), 2));
    let reg = FinComodule::regular_right(&c2);
    let s = Subspace::span(q(), 4, vec![c2.basis_vector(0), c2.basis_vector(1)]);
    assert!(reg.is_subcomodule(&s));
    assert!(comodule_counitalize(&reg).unwrap().is_subcomodule(&s));
    assert!(comodule_to_dual_module(&reg).unwrap().is_submodule(&s));
    assert!(lattice_agreement_check(&reg, 40, 3).unwrap().passed());
}

#[test]
fn module_round_trips() {
    let a = Arc::new(FinAlgebra::null(q(), 1));
    let zero = FinModule::zero(a.clone());
    assert_eq!(module_to_comodule(&zero).unwrap().dim(), 0);

    let (a1, _) = crate::algebra::unitalize(&a);
    // A¹ as a left A-module: a·a = 0, a·u = a
    let n = FinModule::new(a.clone(), 2, [(0, 1, 0, qi(1))], false).unwrap();
    let c = module_to_comodule(&n).unwrap();
    let back = comodule_to_dual_module(&c).unwrap();
    assert_eq!(back.structure_constants(), n.structure_constants());
    let _ = a1;

    let t = Arc::new(FinAlgebra::upper_triangular(q(), 2));
    let reg = FinModule::regular(&t);
    let c = module_to_comodule(&reg).unwrap();
    assert!(c.is_counital());
    // transported comultiplication: ρ(m_t) has m_s ⊗ a_l* with coefficient μ_{lt}^s
    let dual = FinCoalgebra::dual_of(&t);
    for (t_, s, l, x) in c.structure_constants() {
        assert!(dual.comult_of(s).contains(&(l, t_, x)));
    }
}

fn random_comodule(bits: &[u8]) -> FinComodule {
    let f2 = FieldSpec::Prime(2);
    let t = Arc::new(FinAlgebra::upper_triangular(f2, 3));
    let gens: Vec<Vector> = bits
        .chunks(6)
        .map(|c| (0..6).map(|i| f2.from_i64(c.get(i).copied().unwrap_or(0) as i64)).collect())
        .collect();
    let sub = t.subalgebra_generated(&gens).unwrap();
    let c = Arc::new(FinCoalgebra::dual_of(&sub.source).without_counit());
    FinComodule::regular_right(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattices_agree(bits in prop::collection::vec(0u8..2, 12)) {
        let m = random_comodule(&bits);
        prop_assume!(m.dim() <= 4);
        let r = lattice_agreement_check(&m, 0, 0).unwrap();
        prop_assert!(r.exhaustive);
        prop_assert!(r.passed());
    }

    #[test]
    fn counitalize_round_trip(bits in prop::collection::vec(0u8..2, 12)) {
        let m = random_comodule(&bits);
        let m1 = comodule_counitalize(&m).unwrap();
        let back = comodule_corestrict(&m1, &m.coalgebra).unwrap();
        prop_assert_eq!(back.structure_constants(), m.structure_constants());
    }

    #[test]
    fn generated_subcomodule_is_least(bits in prop::collection::vec(0u8..2, 12), pick in 0usize..32) {
        let m = random_comodule(&bits);
        prop_assume!(m.dim() >= 1 && m.dim() <= 5);
        let f2 = m.field();
        let v: Vector = (0..m.dim()).map(|i| f2.from_i64(((pick >> i) & 1) as i64)).collect();
        let s = m.subcomodule_generated_by(std::slice::from_ref(&v));
        prop_assert!(s.contains(&v));
        prop_assert!(m.is_subcomodule(&s));
        let brute = all_f2_subspaces(m.dim())
            .into_iter()
            .filter(|t| t.contains(&v) && m.is_subcomodule(t))
            .fold(Subspace::full(f2, m.dim()), |acc, t| acc.intersect(&t));
        prop_assert_eq!(s, brute);
    }
}
