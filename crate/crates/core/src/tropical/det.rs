//! Tropical determinant: the min-plus permanent `min_σ Σ_i A[i, σ(i)]`.

use std::collections::BTreeSet;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::matrix::{Matrix, Permutation};
use super::rat::{to_common_integers, Rat};
use crate::error::{capacity, rejected, Result};

/// Largest `n` accepted by [`trop_det_bruteforce`].
pub const BRUTE_FORCE_MAX_N: usize = 9;

/// Value of the tropical determinant together with every minimizing
/// permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropDet {
    pub value: Rat,
    pub argmins: BTreeSet<Permutation>,
}

impl TropDet {
    pub fn attained_at_identity(&self) -> bool {
        self.argmins.iter().any(Permutation::is_identity)
    }
}

fn check_square(a: &Matrix) -> Result<usize> {
    if !a.is_square() || a.rows() == 0 {
        return Err(rejected(format!(
            "tropical determinant needs a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.rows())
}

/// Enumerates all `n!` permutations. Entries are rescaled to a common
/// denominator so the enumeration runs on machine integers when they fit.
pub fn trop_det_bruteforce(a: &Matrix) -> Result<TropDet> {
    let n = check_square(a)?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(capacity(format!(
            "n = {n} exceeds the brute-force limit {BRUTE_FORCE_MAX_N}; use trop_det_assignment"
        )));
    }
    let flat: Vec<Rat> = (0..n).flat_map(|i| a.row_vec(i).to_vec()).collect();
    let (ints, scale) = to_common_integers(&flat);

    let small: Option<Vec<i128>> = ints.iter().map(|v| v.to_i64().map(i128::from)).collect();
    let (best, perms) = match small {
        Some(costs) => {
            let (b, p) = enumerate(n, &costs, 0i128);
            (BigInt::from(b), p)
        }
        None => enumerate(n, &ints, BigInt::from(0)),
    };
    let value = Rat::new(best, scale).expect("scale is positive");
    let argmins = perms
        .into_iter()
        .map(|p| Permutation::new(p).expect("enumeration yields permutations"))
        .collect();
    Ok(TropDet { value, argmins })
}

fn enumerate<T>(n: usize, costs: &[T], zero: T) -> (T, Vec<Vec<usize>>)
where
    T: Clone + Ord,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    struct State<'c, T> {
        n: usize,
        costs: &'c [T],
        perm: Vec<usize>,
        used: Vec<bool>,
        best: Option<T>,
        argmins: Vec<Vec<usize>>,
    }

    fn go<T>(s: &mut State<'_, T>, row: usize, acc: T)
    where
        T: Clone + Ord,
        for<'a> &'a T: Add<&'a T, Output = T>,
    {
        if row == s.n {
            match &s.best {
                Some(b) if acc > *b => {}
                Some(b) if acc == *b => s.argmins.push(s.perm.clone()),
                _ => {
                    s.best = Some(acc);
                    s.argmins.clear();
                    s.argmins.push(s.perm.clone());
                }
            }
            return;
        }
        for col in 0..s.n {
            if s.used[col] {
                continue;
            }
            s.used[col] = true;
            s.perm[row] = col;
            let next = &acc + &s.costs[row * s.n + col];
            go(s, row + 1, next);
            s.used[col] = false;
        }
    }

    let mut s = State {
        n,
        costs,
        perm: vec![0; n],
        used: vec![false; n],
        best: None,
        argmins: Vec::new(),
    };
    go(&mut s, 0, zero);
    (s.best.expect("n >= 1"), s.argmins)
}

/// Tropical determinant as an exact min-cost assignment (Hungarian method
/// with dual potentials), `O(n³)` rational operations.
pub fn trop_det_assignment(a: &Matrix) -> Result<Rat> {
    let n = check_square(a)?;
    // 1-based potentials; p[j] is the row matched to column j, 0 = none.
    let mut u = vec![Rat::zero(); n + 1];
    let mut v = vec![Rat::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Rat>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rat> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = a.get(i0 - 1, j - 1) - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("just set");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains while the row is unmatched");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    Ok((1..=n).map(|j| a.get(p[j] - 1, j - 1)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let a = Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        let d = trop_det_bruteforce(&a).unwrap();
        assert_eq!(d.value, Rat::zero());
        assert_eq!(d.argmins, BTreeSet::from([perm(&[0, 1])]));

        let z = Matrix::from_ints(&[&[0, 0], &[0, 0]]).unwrap();
        let d = trop_det_bruteforce(&z).unwrap();
        assert_eq!(d.argmins, BTreeSet::from([perm(&[0, 1]), perm(&[1, 0])]));

        let a = Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        let d = trop_det_bruteforce(&a).unwrap();
        assert_eq!(d.value, Rat::zero());
        assert_eq!(d.argmins, BTreeSet::from([perm(&[0, 1, 2])]));
    }

    #[test]
    fn bruteforce_capacity_guard() {
        let a = Matrix::from_fn(10, 10, |_, _| Rat::zero());
        assert!(matches!(
            trop_det_bruteforce(&a),
            Err(crate::Error::Capacity(_))
        ));
        assert!(trop_det_assignment(&a).is_ok());
    }

    #[test]
    fn bruteforce_big_entries_take_bigint_path() {
        let huge: Rat = "123456789012345678901234567890".parse().unwrap();
        let a = Matrix::from_fn(3, 3, |i, j| {
            if i == j {
                huge.clone()
            } else {
                Rat::frac(1, 3)
            }
        });
        let d = trop_det_bruteforce(&a).unwrap();
        assert_eq!(d.value, Rat::one());
        assert_eq!(d.argmins.len(), 2);
        assert_eq!(trop_det_assignment(&a).unwrap(), Rat::one());
    }

    #[test]
    fn assignment_examples() {
        let a = Matrix::from_fn(4, 4, |i, j| if i == j { Rat::zero() } else { Rat::one() });
        assert_eq!(trop_det_assignment(&a).unwrap(), Rat::zero());
        let b = Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(trop_det_assignment(&b).unwrap(), Rat::zero());
        let c = Matrix::from_ints(&[&[5, 1, 9], &[2, 8, 3], &[7, 4, 6]]).unwrap();
        assert_eq!(
            trop_det_assignment(&c).unwrap(),
            trop_det_bruteforce(&c).unwrap().value
        );
    }

    #[test]
    fn rejects_non_square() {
        let a = Matrix::from_ints(&[&[0, 1, 2], &[1, 0, 2]]).unwrap();
        assert!(trop_det_bruteforce(&a).is_err());
        assert!(trop_det_assignment(&a).is_err());
    }
}
