//! Puiseux polynomials over ℚ and PSD witnesses for tropical PSD matrices.

mod poly;
mod witness;

pub use poly::PuiseuxPoly;
pub use witness::{
    construct_witness, convergence_threshold, principal_minors, principal_minors_with,
    rational_det, specialize_and_check, specialize_and_check_with, verify_witness,
    verify_witness_with, IndexSet, Minors, PuiseuxMatrix, Sign, SignPattern, MINORS_MAX_N,
};
