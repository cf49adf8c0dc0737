//! Exact decision procedures for multiplicative matrix equations over the
//! rationals.
//!
//! The library decides questions of the form "do integer exponents exist so
//! that a product of matrix powers equals the identity?" for several matrix
//! classes, using only arbitrary-precision rational arithmetic:
//!
//! - perfect-power equality `A1^k1 = A2^k2` ([`knapsack::power_equality`]),
//! - the identity knapsack for commuting diagonalizable matrices
//!   ([`knapsack::commuting_knapsack`]),
//! - the same questions inside the Heisenberg group of upper unitriangular
//!   3x3 matrices ([`heisenberg`]),
//! - torsion detection via cyclotomic factors ([`spectra::torsion_order`]),
//! - and an exhaustive census of multiplicatively dependent pairs and tuples
//!   of symmetric 2x2 integer matrices ([`census`]).
//!
//! Every solver reduces its question to the lattice of integer exponent
//! vectors satisfying a simultaneous multiplicative relation among nonzero
//! rationals ([`multrel::relation_lattice`]), which in turn reduces to
//! integer kernel computations ([`lattice::integer_kernel`]).

pub mod arith;
pub mod census;
pub mod heisenberg;
pub mod io;
pub mod knapsack;
pub mod lattice;
pub mod multrel;
pub mod spectra;

pub use arith::{Mat, PrimeExpVec, Rat};
