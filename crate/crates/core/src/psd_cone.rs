//! Membership in the tropical PSD cone and its generator description.
//!
//! A symmetric matrix is tropically PSD iff `a_ii + a_jj <= 2 a_ij` for all
//! `i != j`, iff the identity permutation attains its tropical determinant.
//! The cone is generated by the rays `e_ij` (`i < j`) modulo the lineality
//! space spanned by `L_i = 2 e_ii + Σ_{j≠i} e_ij`.

use std::collections::BTreeMap;

use crate::error::{rejected, Result};
use crate::tropical::{
    trop_det_assignment, trop_det_bruteforce, Rat, SymMatrix, BRUTE_FORCE_MAX_N,
};

/// Outcome of the inequality test. `violated_pair` is the lexicographically
/// smallest `(i, j)`, `i < j` (0-based), with `a_ii + a_jj > 2 a_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub is_member: bool,
    pub violated_pair: Option<(usize, usize)>,
}

impl MembershipVerdict {
    fn member() -> Self {
        MembershipVerdict {
            is_member: true,
            violated_pair: None,
        }
    }

    fn violated(i: usize, j: usize) -> Self {
        MembershipVerdict {
            is_member: false,
            violated_pair: Some((i, j)),
        }
    }
}

pub fn is_trop_psd_inequalities(a: &SymMatrix) -> MembershipVerdict {
    let n = a.n();
    for i in 0..n {
        for j in i + 1..n {
            if a.get(i, i) + a.get(j, j) > a.get(i, j).double() {
                return MembershipVerdict::violated(i, j);
            }
        }
    }
    MembershipVerdict::member()
}

/// Determinant route: the diagonal sum equals the tropical determinant.
pub fn is_trop_psd_det(a: &SymMatrix) -> bool {
    let det = trop_det_assignment(&a.to_matrix()).expect("symmetric matrices are square");
    a.trace() == det
}

/// Whether the identity attains the tropical determinant of `A[S, S]`.
/// `subset` holds 0-based indices; order and duplicates are rejected.
pub fn principal_minor_identity_optimal(a: &SymMatrix, subset: &[usize]) -> Result<bool> {
    if subset.is_empty() {
        return Err(rejected("principal minor index set is empty"));
    }
    if subset.iter().any(|&i| i >= a.n()) {
        return Err(rejected(format!("index out of range for n = {}", a.n())));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(rejected("index set must be strictly increasing"));
    }
    if subset.len() > BRUTE_FORCE_MAX_N {
        return Err(crate::error::capacity(format!(
            "|S| = {} exceeds the brute-force limit {BRUTE_FORCE_MAX_N}",
            subset.len()
        )));
    }
    let sub = a.principal(subset);
    Ok(trop_det_bruteforce(&sub.to_matrix())?.attained_at_identity())
}

/// Coefficients of `A = Σ λ_i L_i + Σ_{i<j} μ_ij e_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCombination {
    pub lineality_coeffs: Vec<Rat>,
    /// Keyed by 0-based `(i, j)`, `i < j`.
    pub ray_coeffs: BTreeMap<(usize, usize), Rat>,
}

impl ConeCombination {
    /// Membership certificate: every ray coefficient is nonnegative.
    pub fn certifies_membership(&self) -> bool {
        self.ray_coeffs.values().all(|m| !m.is_negative())
    }

    /// The classical linear combination of generators.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.lineality_coeffs.len();
        let lam = &self.lineality_coeffs;
        SymMatrix::from_fn(n, |i, j| {
            if i == j {
                lam[i].double()
            } else {
                &lam[i] + &lam[j] + &self.ray_coeffs[&(i, j)]
            }
        })
    }
}

/// `λ_i = a_ii / 2`, `μ_ij = a_ij − (a_ii + a_jj) / 2`.
pub fn cone_decompose(a: &SymMatrix) -> ConeCombination {
    let n = a.n();
    let lineality_coeffs: Vec<Rat> = (0..n).map(|i| a.get(i, i).half()).collect();
    let mut ray_coeffs = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let mu = a.get(i, j) - &lineality_coeffs[i] - &lineality_coeffs[j];
            ray_coeffs.insert((i, j), mu);
        }
    }
    ConeCombination {
        lineality_coeffs,
        ray_coeffs,
    }
}

/// Inverse of [`cone_decompose`]: a member whenever every `μ >= 0`.
pub fn from_cone_coefficients(
    lambda: &[Rat],
    mu: &BTreeMap<(usize, usize), Rat>,
) -> Result<SymMatrix> {
    let n = lambda.len();
    if n == 0 {
        return Err(rejected("need at least one lineality coefficient"));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !mu.contains_key(&(i, j)) {
                return Err(rejected(format!("missing ray coefficient for ({i}, {j})")));
            }
        }
    }
    Ok(ConeCombination {
        lineality_coeffs: lambda.to_vec(),
        ray_coeffs: mu.clone(),
    }
    .reconstruct())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    /// `e_ij` for `i < j`, lexicographic.
    pub rays: Vec<SymMatrix>,
    /// `L_1, …, L_n`.
    pub lineality_basis: Vec<SymMatrix>,
}

pub fn generators(n: usize) -> Result<Generators> {
    if n == 0 {
        return Err(rejected("n must be at least 1"));
    }
    let rays = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| SymMatrix::unit_pair(n, i, j))
        .collect();
    let lineality_basis = (0..n).map(|i| SymMatrix::lineality(n, i)).collect();
    Ok(Generators {
        rays,
        lineality_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_ints(rows).unwrap()
    }

    fn j3() -> SymMatrix {
        sym(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
    }

    #[test]
    fn inequality_examples() {
        for n in 1..5 {
            assert!(is_trop_psd_inequalities(&SymMatrix::zeros(n)).is_member);
        }
        let v = is_trop_psd_inequalities(&sym(&[&[0, -1], &[-1, 0]]));
        assert_eq!(v, MembershipVerdict::violated(0, 1));
        assert!(is_trop_psd_inequalities(&j3()).is_member);
    }

    #[test]
    fn reports_smallest_violated_pair() {
        let a = sym(&[&[0, 0, -1], &[0, 0, -1], &[-1, -1, 0]]);
        assert_eq!(is_trop_psd_inequalities(&a).violated_pair, Some((0, 2)));
    }

    #[test]
    fn det_examples() {
        assert!(is_trop_psd_det(&SymMatrix::zeros(3)));
        assert!(!is_trop_psd_det(&sym(&[&[0, -1], &[-1, 0]])));
        assert!(is_trop_psd_det(&j3()));
    }

    #[test]
    fn principal_minor_examples() {
        let a = sym(&[&[0, -1], &[-1, 0]]);
        assert!(principal_minor_identity_optimal(&a, &[1]).unwrap());
        assert!(!principal_minor_identity_optimal(&a, &[0, 1]).unwrap());
        let subsets: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
        for s in subsets {
            assert!(principal_minor_identity_optimal(&j3(), s).unwrap());
        }
        assert!(principal_minor_identity_optimal(&a, &[]).is_err());
        assert!(principal_minor_identity_optimal(&a, &[1, 0]).is_err());
        assert!(principal_minor_identity_optimal(&a, &[2]).is_err());
    }

    #[test]
    fn cone_decompose_examples() {
        let c = cone_decompose(&sym(&[&[0, 1], &[1, 0]]));
        assert_eq!(c.lineality_coeffs, vec![Rat::zero(), Rat::zero()]);
        assert_eq!(c.ray_coeffs[&(0, 1)], Rat::one());

        let c = cone_decompose(&SymMatrix::lineality(2, 0));
        assert_eq!(c.lineality_coeffs, vec![Rat::one(), Rat::zero()]);
        assert_eq!(c.ray_coeffs[&(0, 1)], Rat::zero());

        let a = sym(&[&[0, -1], &[-1, 0]]);
        let c = cone_decompose(&a);
        assert_eq!(c.ray_coeffs[&(0, 1)], Rat::int(-1));
        assert!(!c.certifies_membership());
        assert_eq!(c.reconstruct(), a);
    }

    #[test]
    fn generator_examples() {
        let g = generators(1).unwrap();
        assert!(g.rays.is_empty());
        assert_eq!(g.lineality_basis, vec![sym(&[&[2]])]);

        let g = generators(2).unwrap();
        assert_eq!(g.rays, vec![sym(&[&[0, 1], &[1, 0]])]);
        assert_eq!(
            g.lineality_basis,
            vec![sym(&[&[2, 1], &[1, 0]]), sym(&[&[0, 1], &[1, 2]])]
        );

        // each ray is tight exactly on the pairs other than its own
        let g = generators(3).unwrap();
        assert_eq!(g.rays.len(), 3);
        assert_eq!(g.lineality_basis.len(), 3);
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (ray, &(p, q)) in g.rays.iter().zip(&pairs) {
            assert!(is_trop_psd_inequalities(ray).is_member);
            for &(i, j) in &pairs {
                let tight = ray.get(i, i) + ray.get(j, j) == ray.get(i, j).double();
                assert_eq!(tight, (i, j) != (p, q));
            }
        }
        for l in &g.lineality_basis {
            assert!(crate::tropical::is_rank_one_symmetric(l));
        }
        assert!(generators(0).is_err());
    }
}
