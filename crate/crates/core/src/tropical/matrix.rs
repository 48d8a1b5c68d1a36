//! Dense and symmetric matrices over exact rationals, with the min-plus
//! product and the rank-one constructions.

use std::fmt;

use super::rat::Rat;
use crate::error::{rejected, Result};

/// A dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(rejected("ragged rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Shorthand for tests and fixtures: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::int(v)).collect())
                .collect(),
        )
    }

    pub fn column(v: &[Rat]) -> Self {
        Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn row(v: &[Rat]) -> Self {
        Matrix::from_fn(1, v.len(), |_, j| v[j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn row_vec(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Interprets a square matrix as symmetric, failing if it is not.
    pub fn to_sym(&self) -> Result<SymMatrix> {
        if !self.is_square() || self.rows == 0 {
            return Err(rejected(format!(
                "expected a nonempty square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return Err(rejected(format!(
                        "matrix is not symmetric at ({}, {})",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(SymMatrix::from_fn(self.rows, |i, j| self.get(i, j).clone()))
    }
}

/// An `n × n` symmetric matrix, stored as its upper triangle. Symmetry is
/// structural: `get(i, j)` and `get(j, i)` read the same cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<Rat>,
}

/// Index of `(i, j)`, `i <= j`, in the packed upper triangle.
#[inline]
pub(crate) fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl SymMatrix {
    /// Builds from `f(i, j)` evaluated on `i <= j`. Panics if `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        assert!(n > 0, "symmetric matrices have n >= 1");
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        SymMatrix { n, upper }
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix::from_fn(n, |_, _| Rat::zero())
    }

    /// Full row-major input; rejects asymmetric or ragged data.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        Matrix::from_rows(rows)?.to_sym()
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_ints(rows)?.to_sym()
    }

    /// The ray generator `e_ij`: 1 at `(i, j)` and `(j, i)`, 0 elsewhere.
    pub fn unit_pair(n: usize, i: usize, j: usize) -> Self {
        SymMatrix::from_fn(n, |a, b| {
            if (a, b) == (i.min(j), i.max(j)) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    }

    /// The lineality generator `L_i = 2 e_ii + Σ_{j≠i} e_ij`.
    pub fn lineality(n: usize, i: usize) -> Self {
        SymMatrix::from_fn(n, |a, b| match (a == i, b == i) {
            (true, true) => Rat::int(2),
            (true, false) | (false, true) => Rat::one(),
            _ => Rat::zero(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        assert!(i < self.n && j < self.n, "index ({i},{j}) out of bounds");
        &self.upper[packed_index(self.n, i, j)]
    }

    /// Entries of the upper triangle in row-major order `(0,0), (0,1), …`.
    pub fn upper(&self) -> &[Rat] {
        &self.upper
    }

    pub fn diagonal(&self) -> Vec<Rat> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j).clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        SymMatrix {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    /// Classical entrywise sum.
    pub fn add(&self, other: &SymMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Classical scalar multiple.
    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|a| a * c)
    }

    /// Tropical sum: entrywise minimum.
    pub fn trop_add(&self, other: &SymMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Self> {
        if self.n != other.n {
            return Err(rejected(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(SymMatrix {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Principal submatrix on the (sorted, distinct) index set.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.to_rows())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row_vec(i).to_vec()).collect();
        write_rows(f, &rows)
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<Rat>]) -> fmt::Result {
    write!(f, "[")?;
    for (k, row) in rows.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "[")?;
        for (m, v) in row.iter().enumerate() {
            if m > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(rejected(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &s)| i == s)
    }
}

/// Min-plus product: `(A ⊙ B)[i,k] = min_j (A[i,j] + B[j,k])`.
pub fn trop_mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(rejected(format!(
            "dimension mismatch: {}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    if a.cols == 0 {
        return Err(rejected(
            "empty inner dimension has no finite min-plus product",
        ));
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, k| {
        (0..a.cols)
            .map(|j| a.get(i, j) + b.get(j, k))
            .min()
            .expect("inner dimension is nonzero")
    }))
}

/// The tropical quadratic form `yᵀ ⊙ A ⊙ y = min_{i,j} (A[i,j] + y_i + y_j)`.
pub fn evaluate_quadratic_form(a: &SymMatrix, y: &[Rat]) -> Result<Rat> {
    if y.len() != a.n() {
        return Err(rejected(format!(
            "vector has length {}, matrix is {}x{}",
            y.len(),
            a.n(),
            a.n()
        )));
    }
    let n = a.n();
    Ok((0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j) + &y[i] + &y[j])
        .min()
        .expect("n >= 1"))
}

/// Symmetric tropical rank one: `2 A[i,j] = A[i,i] + A[j,j]` for all `i < j`.
pub fn is_rank_one_symmetric(a: &SymMatrix) -> bool {
    let n = a.n();
    (0..n).all(|i| (i + 1..n).all(|j| a.get(i, j).double() == a.get(i, i) + a.get(j, j)))
}

/// `u ⊙ uᵀ`, i.e. entries `u_i + u_j`. Panics on an empty vector.
pub fn rank_one_from_vector(u: &[Rat]) -> SymMatrix {
    SymMatrix::from_fn(u.len(), |i, j| &u[i] + &u[j])
}
