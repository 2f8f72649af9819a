//! Generalized Eagon-Northcott complexes attached to simplicial complexes,
//! exact linear algebra over the rationals and prime fields, and a
//! brute-force Koszul oracle for graded Betti numbers of determinantal
//! facet ideals.
//!
//! The crate is organized around a pipeline:
//!
//! * [`combinatorics`] — simplicial complexes, uniform clutters, clique
//!   complexes, f-vectors, minimal nonfaces, banner predicates.
//! * [`algebra`] — exact scalars (arbitrary-precision rationals or a prime
//!   field), sparse multivariate polynomials in the entries of a generic
//!   matrix, maximal minors, and exact rank/kernel computations.
//! * [`encomplex`] — construction of the chain complex `C(Δ;φ)` with its
//!   `Z^m x Z^n` multigrading, symbolic `∂² = 0` / augmentation checks, and
//!   homology of multigraded pieces.
//! * [`betti`] — graded Betti numbers of the ideal generated by the minors
//!   indexed by a clutter, computed independently via Koszul homology, plus
//!   closed-form linear-strand values.
//! * [`theorems`] — executable verifiers that confront the structural
//!   statements relating the above on concrete instances.
//! * [`io`] — JSON instance/result formats and Betti table rendering.

pub mod algebra;
pub mod betti;
pub mod combinatorics;
pub mod encomplex;
pub mod io;
pub mod jobs;
pub mod theorems;

pub use algebra::{FieldCfg, Monomial, PolyMatrix, Polynomial, Scalar, ScalarMatrix};
pub use betti::{BettiError, BettiOracle, BettiTable};
pub use combinatorics::{Clutter, CombinatoricsError, FVector, Face, SimplicialComplex};
pub use encomplex::{BasisElement, GenComplex, Multidegree};
pub use theorems::{SuiteConfig, VerdictReport, Witness};
