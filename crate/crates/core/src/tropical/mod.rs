//! Exact rationals and the min-plus semiring: matrices, products,
//! determinants and the symmetric rank-one predicate.

mod det;
mod matrix;
mod rat;

pub use det::{trop_det_assignment, trop_det_bruteforce, TropDet, BRUTE_FORCE_MAX_N};
pub use matrix::{
    evaluate_quadratic_form, is_rank_one_symmetric, rank_one_from_vector, trop_mat_mul, Matrix,
    Permutation, SymMatrix,
};
pub use rat::Rat;

pub(crate) use matrix::packed_index;
pub(crate) use rat::to_common_integers;
