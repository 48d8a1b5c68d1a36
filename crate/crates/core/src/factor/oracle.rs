//! Independent brute-force check of the symmetric Barvinok rank for small
//! matrices. It never looks at the hull: lattice points are distributed over
//! `r` groups and each group is tested for an affine functional that equals
//! the heights on the group and dominates them elsewhere, by exact
//! Fourier–Motzkin elimination.

use std::collections::BTreeMap;

use crate::error::{capacity, Result};
use crate::subdiv::lattice_points;
use crate::tropical::{Rat, SymMatrix};

pub const ORACLE_MAX_N: usize = 4;
pub const ORACLE_MAX_R: usize = 4;

/// True iff `r` dominating functionals touch every lattice point between them.
pub fn rank_oracle_small(a: &SymMatrix, r: usize) -> Result<bool> {
    let n = a.n();
    if n > ORACLE_MAX_N || r > ORACLE_MAX_R || r == 0 {
        return Err(capacity(format!(
            "rank oracle supports n <= {ORACLE_MAX_N} and 1 <= r <= {ORACLE_MAX_R}, got n = {n}, r = {r}"
        )));
    }
    let points = lattice_points(n);
    let m = points.len();
    let rows: Vec<(Vec<Rat>, Rat)> = points
        .iter()
        .map(|p| {
            let mut c = vec![Rat::zero(); n];
            c[p.i] += Rat::one();
            c[p.j] += Rat::one();
            (c, a.get(p.i, p.j).clone())
        })
        .collect();
    let feasible: Vec<bool> = (0u32..(1 << m))
        .map(|mask| group_feasible(n, &rows, mask))
        .collect();

    // Canonical assignments: point k joins an existing group or opens the
    // next one. Feasibility is closed under subsets, so infeasible partial
    // groups are pruned.
    fn assign(k: usize, m: usize, r: usize, groups: &mut Vec<u32>, feasible: &[bool]) -> bool {
        if k == m {
            return true;
        }
        for g in 0..groups.len() {
            let grown = groups[g] | 1 << k;
            if feasible[grown as usize] {
                let old = std::mem::replace(&mut groups[g], grown);
                if assign(k + 1, m, r, groups, feasible) {
                    return true;
                }
                groups[g] = old;
            }
        }
        if groups.len() < r && feasible[1usize << k] {
            groups.push(1 << k);
            if assign(k + 1, m, r, groups, feasible) {
                return true;
            }
            groups.pop();
        }
        false
    }
    Ok(assign(0, m, r, &mut Vec::new(), &feasible))
}

/// Is there `λ` with `c·λ = h` on the group and `c·λ >= h` elsewhere?
fn group_feasible(n: usize, rows: &[(Vec<Rat>, Rat)], mask: u32) -> bool {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        if mask >> k & 1 == 1 {
            eqs.push(row.clone());
        } else {
            ineqs.push(row.clone());
        }
    }
    let mut vars: Vec<usize> = (0..n).collect();
    // Substitute equalities away.
    while let Some((coef, rhs)) = eqs.pop() {
        let Some(&v) = vars.iter().find(|&&v| !coef[v].is_zero()) else {
            if rhs.is_zero() {
                continue;
            }
            return false;
        };
        let pivot = coef[v].clone();
        let eliminate = |row: &mut (Vec<Rat>, Rat)| {
            if row.0[v].is_zero() {
                return;
            }
            let f = &row.0[v] / &pivot;
            for (x, c) in row.0.iter_mut().zip(&coef) {
                *x -= &(&f * c);
            }
            row.1 -= &(&f * &rhs);
        };
        eqs.iter_mut().for_each(eliminate);
        ineqs.iter_mut().for_each(eliminate);
        vars.retain(|&x| x != v);
    }
    // Fourier–Motzkin on `coef·λ >= rhs`.
    let mut cons = normalize(ineqs);
    for &v in &vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cons {
            if c.0[v].is_positive() {
                pos.push(c);
            } else if c.0[v].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for (pc, pr) in &pos {
            for (nc, nr) in &neg {
                // scale so the v coefficients cancel
                let a = -&nc[v];
                let b = pc[v].clone();
                let coef: Vec<Rat> = pc
                    .iter()
                    .zip(nc)
                    .map(|(x, y)| &(x * &a) + &(y * &b))
                    .collect();
                let rhs = &(pr * &a) + &(nr * &b);
                rest.push((coef, rhs));
            }
        }
        cons = normalize(rest);
    }
    cons.iter().all(|(_, rhs)| !rhs.is_positive())
}

/// Scales each constraint so its first nonzero coefficient is ±1, keeps the
/// tightest right-hand side per coefficient vector, and checks constant
/// constraints eagerly by keeping them with a zero vector.
fn normalize(cons: Vec<(Vec<Rat>, Rat)>) -> Vec<(Vec<Rat>, Rat)> {
    let mut best: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
    for (coef, rhs) in cons {
        let (coef, rhs) = match coef.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let s = lead.abs();
                (coef.iter().map(|c| c / &s).collect(), &rhs / &s)
            }
            None => (coef, rhs),
        };
        best.entry(coef)
            .and_modify(|r| {
                if rhs > *r {
                    *r = rhs.clone();
                }
            })
            .or_insert(rhs);
    }
    best.into_iter().collect()
}
