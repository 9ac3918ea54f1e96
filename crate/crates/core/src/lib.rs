//! Exact linear algebra for algebras without units and coalgebras without
//! counits: unitalization, finite duals, injective decompositions of
//! comodules and coreflexivity checks, over `Q` and prime fields.

pub mod algebra;
pub mod cancel;
pub mod coalgebra;
pub mod combinatorial;
pub mod comodule;
pub mod error;
pub mod finite_dual;
pub mod linalg;
pub mod random;
pub mod reflexivity;
pub mod spec;

pub use error::{Error, Result};
