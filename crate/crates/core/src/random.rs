//! Seeded random instances for the property sweeps and `tropsd random`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::puiseux::{Sign, SignPattern};
use crate::tropical::{Rat, SymMatrix};

/// `{−2, −1, −1/2, 0, 1/2, 1, 2}`: small enough that the inequalities are
/// often tight.
pub const ENTRY_GRID: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];

/// Nonnegative ray coefficients, 0 included so members land on the boundary.
pub const RAY_GRID: [(i64, i64); 5] = [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick<R: Rng + ?Sized>(rng: &mut R, grid: &[(i64, i64)]) -> Rat {
    let (p, q) = grid[rng.random_range(0..grid.len())];
    Rat::frac(p, q)
}

/// Unconstrained symmetric matrix with entries from [`ENTRY_GRID`].
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| pick(rng, &ENTRY_GRID))
}

/// Cone member `Σ λ_i L_i + Σ μ_ij e_ij` with `λ` from [`ENTRY_GRID`] and
/// `μ >= 0` from [`RAY_GRID`].
pub fn random_member<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymMatrix {
    let lambda: Vec<Rat> = (0..n).map(|_| pick(rng, &ENTRY_GRID)).collect();
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            lambda[i].double()
        } else {
            &lambda[i] + &lambda[j] + pick(rng, &RAY_GRID)
        }
    })
}

/// `n × r` matrix with entries from [`ENTRY_GRID`].
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> crate::Matrix {
    crate::Matrix::from_fn(rows, cols, |_, _| pick(rng, &ENTRY_GRID))
}

pub fn random_sign_pattern<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SignPattern {
    let m = n * n.saturating_sub(1) / 2;
    let signs = (0..m)
        .map(|_| {
            if rng.random_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SignPattern::new(n, signs).expect("length matches")
}
