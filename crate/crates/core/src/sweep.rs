//! Batch evaluation over many matrices, parallel across instances.
//!
//! Within a batch each instance runs its own inner loops sequentially; the
//! fan-out happens at the instance level only.

use crate::error::Result;
use crate::exec::Exec;
use crate::factor::decompose_rank_one_with;
use crate::psd_cone::{is_trop_psd_det, is_trop_psd_inequalities};
use crate::puiseux::{
    construct_witness, specialize_and_check_with, verify_witness_with, SignPattern,
};
use crate::subdiv::lower_subdivision_with;
use crate::tropical::{Rat, SymMatrix};

/// The three membership verdicts for one matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub inequalities: bool,
    pub det: bool,
    pub subdivision: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.inequalities == self.det && self.det == self.subdivision
    }
}

pub fn classify_one(a: &SymMatrix) -> Result<Verdicts> {
    Ok(Verdicts {
        inequalities: is_trop_psd_inequalities(a).is_member,
        det: is_trop_psd_det(a),
        subdivision: lower_subdivision_with(a, Exec::Sequential)?.cells.len() == 1,
    })
}

pub fn classify(mats: &[SymMatrix], exec: Exec) -> Result<Vec<Verdicts>> {
    exec.map(mats, classify_one).into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub verified: bool,
    pub specialized: bool,
}

/// Builds and checks the Puiseux witness of each member under its sign
/// pattern, specializing at `u`.
pub fn certify(
    mats: &[SymMatrix],
    signs: &[SignPattern],
    u: &Rat,
    exec: Exec,
) -> Result<Vec<WitnessCheck>> {
    let jobs: Vec<(&SymMatrix, &SignPattern)> = mats.iter().zip(signs).collect();
    exec.map(&jobs, |(a, s)| {
        let w = construct_witness(a, s)?;
        Ok(WitnessCheck {
            verified: verify_witness_with(&w, a, Exec::Sequential)?,
            specialized: specialize_and_check_with(&w, u, Exec::Sequential)?,
        })
    })
    .into_iter()
    .collect()
}

/// Whether the greedy decomposition of each member reconstructs it.
pub fn reconstruct_all(mats: &[SymMatrix], exec: Exec) -> Result<Vec<bool>> {
    exec.map(mats, |a| {
        Ok(decompose_rank_one_with(a, Exec::Sequential)?.reconstruct() == *a)
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_member, random_sign_pattern, random_symmetric, rng};

    #[test]
    fn modes_agree() {
        let mut r = rng(3);
        let mats: Vec<SymMatrix> = (0..40).map(|_| random_symmetric(3, &mut r)).collect();
        let seq = classify(&mats, Exec::Sequential).unwrap();
        assert_eq!(seq, classify(&mats, Exec::Parallel).unwrap());
        assert!(seq.iter().all(Verdicts::agree));

        let members: Vec<SymMatrix> = (0..10).map(|_| random_member(3, &mut r)).collect();
        let signs: Vec<SignPattern> = (0..10).map(|_| random_sign_pattern(3, &mut r)).collect();
        let u = Rat::frac(1, 1000);
        let checks = certify(&members, &signs, &u, Exec::Parallel).unwrap();
        assert!(checks.iter().all(|c| c.verified && c.specialized));
        assert!(reconstruct_all(&members, Exec::Parallel)
            .unwrap()
            .into_iter()
            .all(|b| b));
    }
}
