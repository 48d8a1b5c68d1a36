//! Regular subdivisions of the dilated simplex `2Δ_{n-1}`.
//!
//! A symmetric matrix lifts the lattice point `e_i + e_j` to height `a_ij`.
//! Lower facets of the lifted hull project to the cells of the regular
//! subdivision; upper facets are the affine functions that dominate every
//! height and drive the rank-one decompositions in [`crate::factor`].
//!
//! Affine functions on the hyperplane `Σx = 2` are stored as a vector
//! `λ` with value `λ_i + λ_j` at `e_i + e_j` (the constant is folded in).
//! A facet is spanned by `n` affinely independent lattice points. Reading
//! the chosen points as edges `{i, j}` of a graph on `n` vertices (loops for
//! `2e_i`), the system `λ_i + λ_j = h_ij` is nonsingular iff every connected
//! component contains exactly one cycle and that cycle is odd. The hull is
//! enumerated over such edge sets with exact integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{capacity, Result};
use crate::exec::Exec;
use crate::tropical::{to_common_integers, Rat, SymMatrix};

/// Largest `n` handled by the exact hull enumeration (28 lattice points).
pub const HULL_MAX_N: usize = 7;

/// The lattice point `e_i + e_j`, `i <= j`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub i: usize,
    pub j: usize,
}

impl LatticePoint {
    pub fn new(i: usize, j: usize) -> Self {
        LatticePoint {
            i: i.min(j),
            j: i.max(j),
        }
    }

    /// Coordinates in `ℤ^n`; nonnegative and summing to 2.
    pub fn coords(&self, n: usize) -> Vec<i64> {
        let mut x = vec![0; n];
        x[self.i] += 1;
        x[self.j] += 1;
        x
    }
}

/// 1-based, e.g. `(1,2)`.
impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.j + 1)
    }
}

/// All `e_i + e_j`, lexicographic; position `k` matches `SymMatrix::upper()[k]`.
pub fn lattice_points(n: usize) -> Vec<LatticePoint> {
    (0..n)
        .flat_map(|i| (i..n).map(move |j| LatticePoint { i, j }))
        .collect()
}

/// Affine function on `2Δ_{n-1}` with value `λ_i + λ_j` at `e_i + e_j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineFunctional {
    pub lambda: Vec<Rat>,
}

impl AffineFunctional {
    pub fn value_at(&self, p: LatticePoint) -> Rat {
        &self.lambda[p.i] + &self.lambda[p.j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperFacet {
    pub functional: AffineFunctional,
    /// Sorted lattice points where the functional meets the heights.
    pub touching: Vec<LatticePoint>,
}

/// Cells are identified by their lattice-point sets, each sorted; cells are
/// listed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub cells: Vec<Vec<LatticePoint>>,
}

pub fn is_trivial(sub: &Subdivision) -> bool {
    sub.cells.len() == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// Functionals below every height.
    Lower,
    /// Functionals above every height.
    Upper,
}

pub fn lower_subdivision(a: &SymMatrix) -> Result<Subdivision> {
    lower_subdivision_with(a, Exec::default())
}

pub fn lower_subdivision_with(a: &SymMatrix, exec: Exec) -> Result<Subdivision> {
    let faces = supporting_faces(a, Side::Lower, exec)?;
    Ok(Subdivision {
        cells: faces.into_iter().map(|(_, t)| t).collect(),
    })
}

/// Tropical PSD test through the subdivision: a single lower cell.
pub fn is_psd_by_subdivision(a: &SymMatrix) -> Result<bool> {
    Ok(is_trivial(&lower_subdivision(a)?))
}

pub fn upper_facets(a: &SymMatrix) -> Result<Vec<UpperFacet>> {
    upper_facets_with(a, Exec::default())
}

pub fn upper_facets_with(a: &SymMatrix, exec: Exec) -> Result<Vec<UpperFacet>> {
    Ok(supporting_faces(a, Side::Upper, exec)?
        .into_iter()
        .map(|(functional, touching)| UpperFacet {
            functional,
            touching,
        })
        .collect())
}

/// Integer arithmetic needed by the enumeration.
trait HullInt: Clone + Ord + Send + Sync
where
    for<'a> &'a Self: Add<&'a Self, Output = Self> + Sub<&'a Self, Output = Self>,
{
    fn zero() -> Self;
    fn neg(&self) -> Self;
    fn half(&self) -> Self;
    fn to_big(&self) -> BigInt;
    fn double(&self) -> Self {
        self + self
    }
}

impl HullInt for i128 {
    fn zero() -> Self {
        0
    }
    fn neg(&self) -> Self {
        -self
    }
    fn half(&self) -> Self {
        debug_assert!(self % 2 == 0);
        self / 2
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl HullInt for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn half(&self) -> Self {
        self / 2
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// All supporting faces of dimension `n − 1` on the requested side, as
/// `(functional, touching set)` in canonical order.
fn supporting_faces(
    a: &SymMatrix,
    side: Side,
    exec: Exec,
) -> Result<Vec<(AffineFunctional, Vec<LatticePoint>)>> {
    let n = a.n();
    if n > HULL_MAX_N {
        return Err(capacity(format!(
            "n = {n} exceeds the exact hull limit {HULL_MAX_N}"
        )));
    }
    let points = lattice_points(n);
    let (heights, scale) = to_common_integers(a.upper());
    let small: Option<Vec<i128>> = heights
        .iter()
        .map(|h| {
            h.to_i64()
                .filter(|v| v.unsigned_abs() < 1 << 60)
                .map(i128::from)
        })
        .collect();
    let found: BTreeMap<u32, Vec<BigInt>> = match small {
        Some(h) => enumerate(n, &points, &h, side, exec),
        None => enumerate(n, &points, &heights, side, exec),
    };

    // μ = 2λ·scale
    let denom: BigInt = scale * 2;
    let mut faces: Vec<(AffineFunctional, Vec<LatticePoint>)> = found
        .into_iter()
        .map(|(mask, mu)| {
            let lambda = mu
                .into_iter()
                .map(|m| Rat::new(m, denom.clone()).expect("positive scale"))
                .collect();
            let touching = (0..points.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| points[k])
                .collect();
            (AffineFunctional { lambda }, touching)
        })
        .collect();
    faces.sort_by(|x, y| x.1.cmp(&y.1));
    Ok(faces)
}

/// Incremental independence state for the even-cycle structure of the
/// chosen edge set.
#[derive(Clone)]
struct Forest {
    comp: [u8; HULL_MAX_N],
    color: [u8; HULL_MAX_N],
    has_cycle: [bool; HULL_MAX_N],
}

impl Forest {
    fn new(n: usize) -> Self {
        let mut comp = [0u8; HULL_MAX_N];
        for (v, c) in comp.iter_mut().enumerate().take(n) {
            *c = v as u8;
        }
        Forest {
            comp,
            color: [0; HULL_MAX_N],
            has_cycle: [false; HULL_MAX_N],
        }
    }

    /// Adds edge `{i, j}` if the edge set stays independent.
    fn add(&self, n: usize, i: usize, j: usize) -> Option<Forest> {
        let (ci, cj) = (self.comp[i], self.comp[j]);
        let mut next = self.clone();
        if ci == cj {
            // closes a cycle; odd iff endpoints share a color (loops included)
            if self.has_cycle[ci as usize] || self.color[i] != self.color[j] {
                return None;
            }
            next.has_cycle[ci as usize] = true;
        } else {
            if self.has_cycle[ci as usize] && self.has_cycle[cj as usize] {
                return None;
            }
            let flip = self.color[i] == self.color[j];
            for v in 0..n {
                if self.comp[v] == cj {
                    next.comp[v] = ci;
                    if flip {
                        next.color[v] ^= 1;
                    }
                }
            }
            next.has_cycle[ci as usize] =
                self.has_cycle[ci as usize] || self.has_cycle[cj as usize];
        }
        Some(next)
    }
}

fn enumerate<T>(
    n: usize,
    points: &[LatticePoint],
    heights: &[T],
    side: Side,
    exec: Exec,
) -> BTreeMap<u32, Vec<BigInt>>
where
    T: HullInt,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let total = points.len();
    // The lexicographically first point of each basis picks the task.
    let partial = exec.map_range(total, |first| {
        let mut out = BTreeMap::new();
        let p = points[first];
        if let Some(forest) = Forest::new(n).add(n, p.i, p.j) {
            let mut chosen = vec![first];
            search(n, points, heights, side, &forest, &mut chosen, &mut out);
        }
        out
    });
    let mut merged = BTreeMap::new();
    for part in partial {
        for (mask, mu) in part {
            merged.entry(mask).or_insert(mu);
        }
    }
    merged
}

fn search<T>(
    n: usize,
    points: &[LatticePoint],
    heights: &[T],
    side: Side,
    forest: &Forest,
    chosen: &mut Vec<usize>,
    out: &mut BTreeMap<u32, Vec<BigInt>>,
) where
    T: HullInt,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    if chosen.len() == n {
        let mu = solve_doubled(n, points, heights, chosen);
        if let Some(mask) = support_mask(points, heights, &mu, side) {
            out.entry(mask)
                .or_insert_with(|| mu.iter().map(HullInt::to_big).collect());
        }
        return;
    }
    let last = *chosen.last().expect("nonempty");
    let remaining = n - chosen.len();
    for k in last + 1..=points.len() - remaining {
        let p = points[k];
        if let Some(next) = forest.add(n, p.i, p.j) {
            chosen.push(k);
            search(n, points, heights, side, &next, chosen, out);
            chosen.pop();
        }
    }
}

/// Solves `μ_i + μ_j = 2 h_ij` on the chosen independent edge set (so
/// `μ = 2λ`, which keeps every quantity integral).
fn solve_doubled<T>(n: usize, points: &[LatticePoint], heights: &[T], chosen: &[usize]) -> Vec<T>
where
    T: HullInt,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    // Spanning forest by union-find; the remaining edges close the cycles.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = v;
        while parent[c] != r {
            let up = parent[c];
            parent[c] = r;
            c = up;
        }
        r
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut closing = Vec::new();
    for &k in chosen {
        let p = points[k];
        let (ri, rj) = (find(&mut parent, p.i), find(&mut parent, p.j));
        if ri == rj {
            closing.push(k);
        } else {
            parent[ri] = rj;
            adj[p.i].push((p.j, k));
            adj[p.j].push((p.i, k));
        }
    }

    // μ_v = s_v·x_root + b_v along tree edges.
    let mut sign = vec![true; n];
    let mut offset: Vec<T> = vec![T::zero(); n];
    let mut root_of = vec![usize::MAX; n];
    for r in 0..n {
        if root_of[r] != usize::MAX {
            continue;
        }
        root_of[r] = r;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &(w, k) in &adj[v] {
                if root_of[w] == usize::MAX {
                    root_of[w] = r;
                    sign[w] = !sign[v];
                    offset[w] = &heights[k].double() - &offset[v];
                    stack.push(w);
                }
            }
        }
    }

    // Each odd closing edge (a, b) has s_a = s_b and fixes its root value.
    let mut root_value: Vec<Option<T>> = vec![None; n];
    for &k in &closing {
        let p = points[k];
        let rhs = &(&heights[k].double() - &offset[p.i]) - &offset[p.j];
        let x = rhs.half();
        let x = if sign[p.i] { x } else { x.neg() };
        root_value[root_of[p.i]] = Some(x);
    }
    (0..n)
        .map(|v| {
            let x = root_value[root_of[v]]
                .as_ref()
                .expect("every component has a cycle");
            if sign[v] {
                x + &offset[v]
            } else {
                &offset[v] - x
            }
        })
        .collect()
}

/// Touching mask when `μ` lies on the requested side of every doubled height.
fn support_mask<T>(points: &[LatticePoint], heights: &[T], mu: &[T], side: Side) -> Option<u32>
where
    T: HullInt,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let mut mask = 0u32;
    for (k, p) in points.iter().enumerate() {
        let value = &mu[p.i] + &mu[p.j];
        let h2 = heights[k].double();
        match (value.cmp(&h2), side) {
            (std::cmp::Ordering::Equal, _) => mask |= 1 << k,
            (std::cmp::Ordering::Less, Side::Upper)
            | (std::cmp::Ordering::Greater, Side::Lower) => return None,
            _ => {}
        }
    }
    Some(mask)
}
