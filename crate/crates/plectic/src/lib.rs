//! Exact-arithmetic exterior calculus on polynomial charts, Lie algebra
//! cohomology, L∞-algebras, and homotopy moment maps.
//!
//! Everything is computed over arbitrary-precision rationals; identities are
//! decided by exact coefficient equality on coordinate charts, or by exact
//! evaluation on rational sample points with tangent frames on polynomial
//! level sets.

// dense index arithmetic reads best with explicit loops
#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod chart;
pub mod coalgebra;
pub mod cochain;
pub mod equivariant;
pub mod form;
pub mod invariant;
pub mod levelset;
pub mod lie;
pub mod linalg;
pub mod linfty;
pub mod moment;
pub mod morphism;
pub mod multivec;
pub mod observables;
pub mod perm;
pub mod poly;
pub mod quaternion;
pub mod rational;
pub mod rng;
pub mod space;
pub mod sphere;
pub mod suite;
pub mod value;

pub use action::{fundamental_fields_linear, insert_g_k, ActionData};
pub use chart::Chart;
pub use cochain::{is_ce_coboundary, CECochain};
pub use equivariant::{
    check_extension, extension_from_exact, product_extension, CartanCochain, TotalCochain,
};
pub use form::{interior, lie_derivative, poincare_homotopy, PolyForm};
pub use invariant::{symtrace_poly, InvariantPoly};
pub use levelset::{levelset_equal, LevelSetChart};
pub use lie::{LinearAction, StructLieAlgebra};
pub use linalg::{solve_linear, LinSolve, LinearSystem};
pub use linfty::{central_extension, check_generalized_jacobi, BracketTable, GradedSpace};
pub use moment::{
    moment_from_cartan, moment_from_extension, obstruction, verify_moment, MomentMap,
    ObstructionClass,
};
pub use morphism::{
    check_ext_morphism, check_lie_to_linfty_morphism, cocycle_quasi_iso, MorphismData,
};
pub use multivec::{schouten, PolyMultiVec};
pub use observables::{hamiltonian_pair_check, HamPair, ObsElem, ObservablesAlgebra};
pub use perm::{koszul_sign, unshuffles, varsigma, Perm};
pub use poly::Poly;
pub use rational::Rat;
pub use space::Space;
