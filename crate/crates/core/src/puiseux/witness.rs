//! PSD witnesses over the Puiseux field for tropical PSD matrices.
//!
//! A member `A` lifts to `α_ii = n!·t^{a_ii}`, `α_ij = ±t^{a_ij}`: in every
//! principal minor the diagonal product has the unique lowest exponent and
//! its coefficient dominates, so all principal minors are positive.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::poly::PuiseuxPoly;
use crate::error::{capacity, rejected, Error, Result};
use crate::exec::Exec;
use crate::psd_cone::is_trop_psd_inequalities;
use crate::tropical::{packed_index, Rat, SymMatrix};

/// Largest `n` for which all `2^n − 1` symbolic principal minors are computed.
pub const MINORS_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxMatrix {
    n: usize,
    upper: Vec<PuiseuxPoly>,
}

impl PuiseuxMatrix {
    /// Builds from `f(i, j)` on `i <= j`; zero entries are rejected.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> PuiseuxPoly) -> Result<Self> {
        if n == 0 {
            return Err(rejected("n must be at least 1"));
        }
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                let p = f(i, j);
                if p.is_zero() {
                    return Err(rejected(format!("entry ({}, {}) is zero", i + 1, j + 1)));
                }
                upper.push(p);
            }
        }
        Ok(PuiseuxMatrix { n, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxPoly {
        assert!(i < self.n && j < self.n, "index ({i},{j}) out of bounds");
        &self.upper[packed_index(self.n, i, j)]
    }

    /// Entrywise valuation.
    pub fn valuation(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| {
            self.get(i, j).valuation().expect("entries are nonzero")
        })
    }

    /// Least common multiple of all exponent denominators.
    pub fn exponent_lcm(&self) -> BigInt {
        self.upper
            .iter()
            .flat_map(|p| p.terms().iter().map(|(e, _)| e.denom()))
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    pub fn rows(&self) -> Vec<Vec<PuiseuxPoly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl fmt::Display for PuiseuxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_rat(self) -> Rat {
        match self {
            Sign::Plus => Rat::one(),
            Sign::Minus => Rat::int(-1),
        }
    }
}

/// Signs of the off-diagonal witness entries, one per pair `i < j` in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern {
    n: usize,
    signs: Vec<Sign>,
}

impl SignPattern {
    pub fn new(n: usize, signs: Vec<Sign>) -> Result<Self> {
        let want = n * n.saturating_sub(1) / 2;
        if signs.len() != want {
            return Err(rejected(format!(
                "sign pattern for n = {n} needs {want} signs, got {}",
                signs.len()
            )));
        }
        Ok(SignPattern { n, signs })
    }

    pub fn uniform(n: usize, sign: Sign) -> Self {
        SignPattern {
            n,
            signs: vec![sign; n * n.saturating_sub(1) / 2],
        }
    }

    /// Parses a `+`/`-` string of length `n(n−1)/2`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(Error::Parse(format!("invalid sign {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SignPattern::new(n, signs)
    }

    /// Pattern number `index` among the `2^{n(n−1)/2}` patterns; bit `k` set
    /// makes the `k`-th pair negative.
    pub fn from_index(n: usize, index: u64) -> Self {
        let m = n * n.saturating_sub(1) / 2;
        SignPattern {
            n,
            signs: (0..m)
                .map(|k| {
                    if k < 64 && index >> k & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sign at the pair `{i, j}`, `i != j`.
    pub fn get(&self, i: usize, j: usize) -> Sign {
        let (i, j) = (i.min(j), i.max(j));
        assert!(i < j && j < self.n, "({i},{j}) is not an off-diagonal pair");
        let k = i * self.n - i * (i + 1) / 2 + (j - i - 1);
        self.signs[k]
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("invalid sign {s:?}"))),
        }
    }
}

fn factorial(n: usize) -> Rat {
    Rat::from_bigint((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// Lifts a cone member to a Puiseux matrix with positive principal minors
/// and entrywise valuation `A`.
pub fn construct_witness(a: &SymMatrix, signs: &SignPattern) -> Result<PuiseuxMatrix> {
    let n = a.n();
    if signs.n() != n {
        return Err(rejected(format!(
            "sign pattern is for n = {}, matrix has n = {n}",
            signs.n()
        )));
    }
    if let Some((i, j)) = is_trop_psd_inequalities(a).violated_pair {
        return Err(rejected(format!(
            "not tropically PSD: a[{0},{0}] + a[{1},{1}] > 2*a[{0},{1}]",
            i + 1,
            j + 1
        )));
    }
    let diag = factorial(n);
    PuiseuxMatrix::from_fn(n, |i, j| {
        let coeff = if i == j {
            diag.clone()
        } else {
            signs.get(i, j).as_rat()
        };
        PuiseuxPoly::monomial(coeff, a.get(i, j).clone())
    })
}

/// A nonempty index set, ordered by size and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet(pub Vec<usize>);

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Rendered 1-based, e.g. `{1,3}`.
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn nonempty_subsets(n: usize) -> Vec<IndexSet> {
    let mut out: Vec<IndexSet> = (1u32..(1 << n))
        .map(|mask| IndexSet((0..n).filter(|&i| mask >> i & 1 == 1).collect()))
        .collect();
    out.sort();
    out
}

/// Determinant by Laplace expansion along the last row, memoized over column
/// subsets. Uses only ring operations, so it is exact over any ring.
fn laplace_det<T, Z, M, S>(
    k: usize,
    entry: impl Fn(usize, usize) -> T,
    zero: Z,
    one: T,
    mul: M,
    add_signed: S,
) -> T
where
    T: Clone,
    Z: Fn() -> T,
    M: Fn(&T, &T) -> T,
    S: Fn(&T, &T, bool) -> T,
{
    let full = (1usize << k) - 1;
    let mut memo: Vec<Option<T>> = vec![None; full + 1];
    memo[0] = Some(one);
    let mut by_size: Vec<usize> = (1..=full).collect();
    by_size.sort_by_key(|m| m.count_ones());
    for mask in by_size {
        let row = mask.count_ones() as usize - 1;
        let mut acc = zero();
        let mut pos = 0usize;
        for col in 0..k {
            if mask >> col & 1 == 0 {
                continue;
            }
            let rest = memo[mask & !(1 << col)]
                .as_ref()
                .expect("smaller masks first");
            let term = mul(&entry(row, col), rest);
            acc = add_signed(&acc, &term, (row + pos) % 2 == 1);
            pos += 1;
        }
        memo[mask] = Some(acc);
    }
    memo[full].take().expect("full mask computed")
}

fn puiseux_det(m: &PuiseuxMatrix, idx: &[usize]) -> PuiseuxPoly {
    laplace_det(
        idx.len(),
        |r, c| m.get(idx[r], idx[c]).clone(),
        PuiseuxPoly::zero,
        PuiseuxPoly::one(),
        |a, b| a * b,
        |acc, t, neg| if neg { acc - t } else { acc + t },
    )
}

/// Exact determinant of a square rational matrix (Gaussian elimination).
pub fn rational_det(rows: &[Vec<Rat>]) -> Rat {
    let k = rows.len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut det = Rat::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * &pivot;
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            let (top, rest) = m.split_at_mut(r);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &(&f * y);
            }
        }
    }
    det
}

pub type Minors = BTreeMap<IndexSet, PuiseuxPoly>;

pub fn principal_minors(m: &PuiseuxMatrix) -> Result<Minors> {
    principal_minors_with(m, Exec::default())
}

pub fn principal_minors_with(m: &PuiseuxMatrix, exec: Exec) -> Result<Minors> {
    if m.n() > MINORS_MAX_N {
        return Err(capacity(format!(
            "n = {} exceeds the symbolic minor limit {MINORS_MAX_N}",
            m.n()
        )));
    }
    let subsets = nonempty_subsets(m.n());
    let dets = exec.map(&subsets, |s| puiseux_det(m, &s.0));
    Ok(subsets.into_iter().zip(dets).collect())
}

/// Valuation matches `A` entrywise and every principal minor is positive.
pub fn verify_witness(m: &PuiseuxMatrix, a: &SymMatrix) -> Result<bool> {
    verify_witness_with(m, a, Exec::default())
}

pub fn verify_witness_with(m: &PuiseuxMatrix, a: &SymMatrix, exec: Exec) -> Result<bool> {
    if m.n() != a.n() {
        return Err(rejected(format!(
            "dimension mismatch: {} vs {}",
            m.n(),
            a.n()
        )));
    }
    if m.valuation() != *a {
        return Ok(false);
    }
    Ok(principal_minors_with(m, exec)?
        .values()
        .all(PuiseuxPoly::is_positive))
}

/// Sufficient bound `u*`: for `0 < u < u*`, substituting `t = u^L` (with `L`
/// the exponent lcm) gives every nonzero principal minor the sign of its
/// leading coefficient. Writing a minor as `s^{k}(c_0 + Σ_{m≥1} c_m s^{d_m})`
/// with integers `d_m ≥ 1`, the tail is at most `s·Σ|c_m|` in absolute value
/// for `s < 1`, so `u* = min(1, |c_0| / Σ|c_m|)` over all minors.
pub fn convergence_threshold(m: &PuiseuxMatrix) -> Result<Rat> {
    let mut best = Rat::one();
    for p in principal_minors(m)?.values() {
        let Some((c0, tail)) = p.terms().split_first() else {
            continue;
        };
        let tail_mass: Rat = tail.iter().map(|(_, c)| c.abs()).sum();
        if tail_mass.is_zero() {
            continue;
        }
        let bound = c0.1.abs() / tail_mass;
        if bound < best {
            best = bound;
        }
    }
    Ok(best)
}

/// Substitutes `t = u^L` and checks that every principal minor of the
/// resulting rational matrix is strictly positive.
pub fn specialize_and_check(m: &PuiseuxMatrix, u: &Rat) -> Result<bool> {
    specialize_and_check_with(m, u, Exec::default())
}

pub fn specialize_and_check_with(m: &PuiseuxMatrix, u: &Rat, exec: Exec) -> Result<bool> {
    if !u.is_positive() || *u >= Rat::one() {
        return Err(rejected(format!("u = {u} is outside (0, 1)")));
    }
    let root = m
        .exponent_lcm()
        .to_i64()
        .ok_or_else(|| capacity("exponent denominators too large to specialize"))?;
    let n = m.n();
    let mut vals = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            vals.push(m.get(i, j).eval_at_power(u, root)?);
        }
    }
    let subsets = nonempty_subsets(n);
    let signs = exec.map(&subsets, |s| {
        let rows: Vec<Vec<Rat>> =
            s.0.iter()
                .map(|&i| s.0.iter().map(|&j| vals[i * n + j].clone()).collect())
                .collect();
        rational_det(&rows).is_positive()
    });
    Ok(signs.into_iter().all(|b| b))
}
