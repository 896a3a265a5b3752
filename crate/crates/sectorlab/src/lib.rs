//! sectorlab: dense complex matrix analysis for sector (sectorial) matrices
//! and a seeded randomized verification harness for Hadamard-product
//! inequalities in the Loewner order.
//!
//! The library is organized as:
//! - [`matrix`]: complex matrices, Cartesian decomposition, Hadamard and
//!   Kronecker products, the canonical isometry, norms, eigensolvers, and
//!   Loewner comparison.
//! - [`functions`]: principal fractional powers of accretive matrices, a
//!   catalog of operator monotone scalar functions, and Kubo-Ando operator
//!   means with adjoints.
//! - [`sector`]: sector membership, sector-angle certification,
//!   numerical-range sampling, and seeded random sector-matrix generators.
//! - [`maps`]: a catalog of unital positive linear maps with verified
//!   capability flags (in particular Hadamard-multiplicativity).
//! - [`inequalities`]: one checkable predicate per inequality, each
//!   reporting a signed Loewner or norm residual.
//! - [`harness`]: campaign engine with deterministic per-trial seeding,
//!   counterexample shrinking, JSON reports, and replay.

pub mod error;
pub mod functions;
pub mod harness;
pub mod inequalities;
pub mod maps;
pub mod matrix;
pub mod sector;
pub mod witness;

pub use error::{Error, Result};
pub use matrix::{
    canonical_isometry, eig_general, loewner_leq, ComplexMatrix, GeneralEig, HermitianMatrix,
    LoewnerVerdict, MatrixJson, NormKind, TolerancePolicy,
};
