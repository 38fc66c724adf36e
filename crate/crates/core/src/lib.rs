//! Exact construction and verification of the commutative families of
//! the generic Toda system, classical and quantum, together with a small
//! numerical simulator for the associated flows.
//!
//! The layers, bottom up:
//!
//! - [`rational`], [`gens`], [`pbw`], [`weyl`], [`comm`], [`quantum`]:
//!   exact arithmetic and the three coefficient rings — the enveloping
//!   algebra of gl_n in a mixed PBW basis, symmetric-algebra polynomials
//!   with the Kirillov-Kostant bracket, and differential operators in the
//!   spectral variable.
//! - [`matrix`], [`det`]: the spectral pencils, chopped matrices, and the
//!   commutative/noncommutative determinants (permutation sum as the
//!   production route, antisymmetrizer trace as the oracle).
//! - [`family`]: expansion of the characteristic polynomials, extraction
//!   of the graded families, chopped minors, and the commutativity,
//!   grading and symbol checks.
//! - [`aks`]: the normal-ordering split, Borel characters, the eta twist,
//!   and denominator-free verification of the reduced family.
//! - [`sim`]: RK4 flows of the open chain and of Hamiltonians on the dual
//!   Borel algebra with conserved-quantity drift reports.
//! - [`json`], [`report`], [`verify`]: canonical documents and the named
//!   check suites.
//!
//! All algebraic values are immutable and all operations are pure
//! functions, so independent computations can run concurrently without
//! shared state.

pub mod aks;
pub mod comm;
pub mod det;
pub mod error;
pub mod family;
pub mod gens;
pub mod json;
pub mod matrix;
pub mod pbw;
pub mod quantum;
pub mod rational;
pub mod report;
pub mod sim;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rational;
