//! Exact computation of decomposition and Cartan data for one-parameter
//! deformations of finite-dimensional algebras, together with a truncated
//! deformed category O for sl2.
//!
//! The scalar tower is k = Q(zeta_n) inside K = k(t), with the local ring R
//! of functions regular at t = 0 sitting between them. An algebra over R has
//! a generic fiber over K and a special fiber over k; lattices inside
//! K-modules connect the two, and the decomposition matrix D, Cartan matrix
//! C and multiplicity matrix E = D^t tie their module categories together,
//! with C = D D^t. The same machinery drives the truncated category O for
//! sl2, where it yields the reciprocity between Verma multiplicities in
//! projectives and simple multiplicities in Vermas.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod algebra;
pub mod cde;
pub mod error;
pub mod hecke;
pub mod lattices;
pub mod linalg;
pub mod osl2;
pub mod par;
pub mod cli;
pub mod scalars;
