//! Exact computations with the tropicalization of the positive-semidefinite
//! cone over real Puiseux series.
//!
//! * [`tropical`]: rationals, min-plus matrices, tropical determinants.
//! * [`psd_cone`]: membership tests and the rays/lineality description.
//! * [`puiseux`]: Puiseux polynomials and PSD witnesses for cone members.
//! * [`subdiv`]: regular subdivisions of `2Δ_{n-1}` and upper facets.
//! * [`factor`]: rank-one decompositions, symmetric Barvinok rank, `B ⊙ Bᵀ`.
//! * [`cli`]: the `tropsd` command line and its JSON document format.
//!
//! Indices are 0-based throughout the API; the CLI prints them 1-based.

pub mod cli;
pub mod error;
pub mod exec;
pub mod factor;
pub mod psd_cone;
pub mod puiseux;
pub mod random;
pub mod subdiv;
pub mod sweep;
pub mod tropical;

pub use error::{Error, Result};
pub use exec::Exec;
pub use tropical::{Matrix, Permutation, Rat, SymMatrix};
