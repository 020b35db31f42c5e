//! Exact computations around perturbative Chern–Simons link invariants:
//! Reshetikhin–Turaev evaluation of braid closures checked against the
//! Kauffman bracket, Chevalley–Eilenberg cohomology of deformation
//! complexes, Clifford/spinor partition functions, Lie-theoretic weights of
//! trivalent graphs, and numerical Gauss linking integrals.

#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod ce;
pub mod clifford;
pub mod confint;
pub mod diagram;
pub mod kauffman;
pub mod lie;
pub mod linalg;
pub mod quantum_group;
pub mod ring;
pub mod rt;
pub mod weights;
