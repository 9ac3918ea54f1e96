//! Injective decompositions, the rational dual `R = ⊕ E(S_j)*`, the map
//! `φ_l: C → R⁰`, left coreflexivity, and self-duality of finite Hopf algebras.

mod decompose;
mod harness;
mod hopf;
mod ratdual;

pub use decompose::{
    block_projection, decompose_injectives, decompose_with_candidates, is_side_subcomodule, verify_decomposition, Block,
    InjectiveDecomposition, Method,
};
pub use harness::{semiperfect_iff_injective_harness, HarnessReport, RadiusRow, TemplateFamily};
pub use hopf::{hopf_selfdual_check, SelfDuality};
pub use ratdual::{
    check_counit_e, counit_e, left_coreflexive_check, phi_l, phi_l_morphism, rat_dual, rat_dual_of_blocks,
    rat_module_to_comodule, CoreflexiveReport, Coreflexivity, FiniteDualWitness, PhiL, Radii, RatDualAlgebra,
};
