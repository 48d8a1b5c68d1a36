//! Rank-one decompositions of tropical PSD matrices.
//!
//! Every upper facet of the lifted point configuration is an affine function
//! `λ` dominating the heights, i.e. a rank-one matrix `λ ⊙ λᵀ` lying
//! entrywise above `A`. Facets whose touching sets cover all lattice points
//! give `A = ⊕_k λ_k ⊙ λ_kᵀ`, and the columns `λ_k` form `B` with
//! `A = B ⊙ Bᵀ`.

mod cover;
mod oracle;

pub use oracle::{rank_oracle_small, ORACLE_MAX_N, ORACLE_MAX_R};

use crate::error::{capacity, rejected, Result};
use crate::exec::Exec;
use crate::psd_cone::is_trop_psd_inequalities;
use crate::subdiv::{lattice_points, upper_facets_with, UpperFacet};
use crate::tropical::{rank_one_from_vector, trop_mat_mul, Matrix, Rat, SymMatrix};

/// Largest `n` for the exact symmetric Barvinok rank.
pub const RANK_MAX_N: usize = 6;

/// `A = ⊕_k u_k ⊙ u_kᵀ`, scalars folded into the vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneDecomposition {
    pub vectors: Vec<Vec<Rat>>,
}

impl RankOneDecomposition {
    /// Entrywise minimum of the rank-one terms.
    pub fn reconstruct(&self) -> SymMatrix {
        self.vectors
            .iter()
            .map(|u| rank_one_from_vector(u))
            .reduce(|acc, m| acc.trop_add(&m).expect("vectors share a length"))
            .expect("decompositions are nonempty")
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// `A = B ⊙ Bᵀ` with `B` of size `n × r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramFactor {
    pub b: Matrix,
}

impl GramFactor {
    pub fn product(&self) -> Matrix {
        trop_mat_mul(&self.b, &self.b.transpose()).expect("B and Bᵀ are compatible")
    }
}

fn require_member(a: &SymMatrix) -> Result<()> {
    match is_trop_psd_inequalities(a).violated_pair {
        None => Ok(()),
        Some((i, j)) => Err(rejected(format!(
            "not tropically PSD (symmetric Barvinok rank is infinite): a[{0},{0}] + a[{1},{1}] > 2*a[{0},{1}]",
            i + 1,
            j + 1
        ))),
    }
}

fn touching_mask(f: &UpperFacet, n: usize) -> u32 {
    let points = lattice_points(n);
    f.touching
        .iter()
        .map(|p| {
            1u32 << points
                .binary_search(p)
                .expect("touching points are lattice points")
        })
        .fold(0, |a, b| a | b)
}

/// Greedy facet cover: repeatedly take the facet touching the most uncovered
/// points, earliest in canonical order on ties. Not necessarily minimum.
pub fn decompose_rank_one(a: &SymMatrix) -> Result<RankOneDecomposition> {
    decompose_rank_one_with(a, Exec::default())
}

pub fn decompose_rank_one_with(a: &SymMatrix, exec: Exec) -> Result<RankOneDecomposition> {
    require_member(a)?;
    let n = a.n();
    let facets = upper_facets_with(a, exec)?;
    let masks: Vec<u32> = facets.iter().map(|f| touching_mask(f, n)).collect();
    let universe = (1u32 << lattice_points(n).len()) - 1;
    let mut covered = 0u32;
    let mut vectors = Vec::new();
    while covered != universe {
        let (best, gain) = masks
            .iter()
            .enumerate()
            .map(|(k, m)| (k, (m & !covered).count_ones()))
            .fold(
                (usize::MAX, 0),
                |acc, (k, g)| if g > acc.1 { (k, g) } else { acc },
            );
        assert!(
            gain > 0,
            "upper facets of a cone member cover every lattice point"
        );
        covered |= masks[best];
        vectors.push(facets[best].functional.lambda.clone());
    }
    Ok(RankOneDecomposition { vectors })
}

/// A minimum-cardinality facet cover, the lexicographically least one in
/// canonical facet order.
pub fn minimum_decomposition(a: &SymMatrix) -> Result<RankOneDecomposition> {
    minimum_decomposition_with(a, Exec::default())
}

pub fn minimum_decomposition_with(a: &SymMatrix, exec: Exec) -> Result<RankOneDecomposition> {
    require_member(a)?;
    let n = a.n();
    if n > RANK_MAX_N {
        return Err(capacity(format!(
            "n = {n} exceeds the exact rank limit {RANK_MAX_N}"
        )));
    }
    let facets = upper_facets_with(a, exec)?;
    let masks: Vec<u32> = facets.iter().map(|f| touching_mask(f, n)).collect();
    let universe = (1u32 << lattice_points(n).len()) - 1;
    let chosen = cover::minimum_cover(&masks, universe)
        .expect("upper facets of a cone member cover every lattice point");
    Ok(RankOneDecomposition {
        vectors: chosen
            .into_iter()
            .map(|k| facets[k].functional.lambda.clone())
            .collect(),
    })
}

/// Minimum number of symmetric rank-one matrices with entrywise minimum `A`.
pub fn symmetric_barvinok_rank(a: &SymMatrix) -> Result<usize> {
    Ok(minimum_decomposition(a)?.len())
}

/// `max(n, ⌊n²/4⌋)`, the known upper bound on the symmetric Barvinok rank of
/// tropical PSD matrices.
pub fn rank_upper_bound(n: usize) -> usize {
    n.max(n * n / 4)
}

pub fn gram_factor(a: &SymMatrix) -> Result<GramFactor> {
    gram_factor_with(a, Exec::default())
}

pub fn gram_factor_with(a: &SymMatrix, exec: Exec) -> Result<GramFactor> {
    let d = decompose_rank_one_with(a, exec)?;
    let cols = &d.vectors;
    Ok(GramFactor {
        b: Matrix::from_fn(a.n(), cols.len(), |i, k| cols[k][i].clone()),
    })
}
