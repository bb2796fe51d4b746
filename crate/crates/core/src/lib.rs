//! Frobenius-orbit spectral coding over finite-field towers.
//!
//! The DFT of a vector over `K = GF(q)` taken in `L = GF(q^m)` is
//! constrained by `V[q·s] = V[s]^q`, so one value per q-cyclotomic class
//! determines it.  This crate provides:
//!
//! * [`field`]: the tower `GF(p) ⊂ GF(q) ⊂ GF(q^m)` with Frobenius, traces,
//!   subfield tests, discrete logs and normal bases;
//! * [`cyclotomic`]: class enumeration and the class-counting formulas;
//! * [`spectral`]: naive DFT/IDFT, orbit-seed encode/decode, the product-group
//!   descent check and the factorization of `X^n - 1`;
//! * [`trace`]: the trace-table direct transform for class-consistent vectors;
//! * [`residual`]: `g = f + h` decomposition of arbitrary vectors with exact
//!   support minimization;
//! * [`analysis`]: weight enumerator, covering radii and counting bounds;
//! * [`sparse`]: the sparse cyclic-polynomial residual model and Prony recovery;
//! * [`format`]: the plain-text file formats used by the CLI.

pub mod analysis;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod format;
pub mod numtheory;
pub mod poly;
pub mod residual;
pub mod sparse;
pub mod spectral;
pub mod trace;

pub use cyclotomic::{CyclotomicClass, CyclotomicPartition};
pub use error::{Error, Result, TowerLevel};
pub use field::{Basis, Elem, FieldTower, NormalBasis};
pub use residual::{ResidualMode, ResidualPackage};
pub use sparse::{ResidualBackend, SparseResidualModel};
pub use spectral::{Dft, OrbitSeedVector};
pub use trace::TraceTableSet;
