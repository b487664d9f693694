use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix over a [`Scalar`] field.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::new",
                detail: format!("{} entries for {rows}x{cols}", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                op: "Matrix::from_rows",
                detail: "ragged rows".into(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                detail: format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(i, j)], S::zero());
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                detail: format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// Rows `rows` and columns `cols`, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    dim: self.rows,
                });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    dim: self.cols,
                });
            }
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        }))
    }

    pub fn principal(&self, idx: &[usize]) -> Result<Self> {
        self.submatrix(idx, idx)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Assembles a matrix from a grid of blocks; block rows share heights and block
    /// columns share widths.
    pub fn from_blocks(grid: &[Vec<Self>]) -> Result<Self> {
        let heights: Vec<usize> = grid.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = grid
            .first()
            .map(|row| row.iter().map(|b| b.cols).collect())
            .unwrap_or_default();
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::DimensionMismatch {
                    op: "from_blocks",
                    detail: format!("block row {bi} has {} blocks", row.len()),
                });
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch {
                        op: "from_blocks",
                        detail: format!("block ({bi},{bj}) is {}x{}", b.rows, b.cols),
                    });
                }
            }
        }
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn max_row_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.magnitude().powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks(self.cols.max(1)) {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Skew-symmetric matrix: `A(i,j) = -A(j,i)`, zero diagonal.
#[derive(Clone, PartialEq, Debug)]
pub struct SkewMatrix<S>(Matrix<S>);

/// Tolerance for the skew check on float matrices.
pub const SKEW_TOL: f64 = 1e-9;

impl<S: Scalar> SkewMatrix<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        m.ensure_square("SkewMatrix::new")?;
        let scale = m.data.iter().map(Scalar::magnitude).fold(1.0, f64::max);
        for i in 0..m.rows {
            for j in i..m.cols {
                let sum = m[(i, j)].clone() + m[(j, i)].clone();
                if !sum.near_zero(SKEW_TOL * scale) {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds from the strict upper triangle, filling the rest by skewness.
    pub fn from_upper(dim: usize, mut upper: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = upper(i, j);
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        Self(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(Matrix::zeros(dim, dim))
    }

    /// Block diagonal with `[[0,1],[-1,0]]` on each of `points` 2x2 blocks.
    pub fn standard_j(points: usize) -> Self {
        Self::from_upper(2 * points, |i, j| {
            if i % 2 == 0 && j == i + 1 {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.0
    }

    pub fn principal(&self, idx: &[usize]) -> Result<Self> {
        Ok(Self(self.0.principal(idx)?))
    }

    /// Congruence `B^T A B`, which stays skew.
    pub fn congruence(&self, b: &Matrix<S>) -> Result<Self> {
        let m = b.transpose().mul(&self.0)?.mul(b)?;
        Ok(Self(m))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.add(&other.0)?))
    }
}

impl<S> Index<(usize, usize)> for SkewMatrix<S> {
    type Output = S;
    fn index(&self, ij: (usize, usize)) -> &S {
        &self.0[ij]
    }
}

/// Strictly increasing list of row/column positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SubsetIndex(Vec<usize>);

impl SubsetIndex {
    pub fn new(indices: Vec<usize>, dim: usize) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid(format!(
                    "subset indices not strictly increasing: {indices:?}"
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= dim {
                return Err(Error::IndexOutOfRange { index: last, dim });
            }
        }
        Ok(Self(indices))
    }

    /// Positions of the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(vec![vec![q(1)], vec![q(1), q(2)]]).is_err());
        assert!(Matrix::<Q>::new(2, 2, vec![q(1)]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let b = a.transpose();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_rows(), vec![vec![q(5), q(11)], vec![q(11), q(25)]]);
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn blocks_round_trip() {
        let a = Matrix::<Q>::identity(2);
        let b = Matrix::from_fn(2, 1, |i, _| q(i as i64 + 7));
        let c = Matrix::zeros(1, 2);
        let d = Matrix::from_fn(1, 1, |_, _| q(9));
        let m = Matrix::from_blocks(&[vec![a.clone(), b.clone()], vec![c, d]]).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.block(0, 0, 2, 2), a);
        assert_eq!(m.block(0, 2, 2, 1), b);
        assert_eq!(m[(2, 2)], q(9));
    }

    #[test]
    fn skew_validation() {
        let bad = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(
            SkewMatrix::new(bad).unwrap_err(),
            Error::NotSkew { row: 0, col: 1 }
        );
        let j = SkewMatrix::<Q>::standard_j(2);
        assert_eq!(j[(0, 1)], q(1));
        assert_eq!(j[(1, 0)], q(-1));
        assert_eq!(j[(1, 2)], q(0));
    }

    #[test]
    fn subset_index_validation() {
        assert!(SubsetIndex::new(vec![0, 2], 3).is_ok());
        assert!(SubsetIndex::new(vec![2, 0], 3).is_err());
        assert!(SubsetIndex::new(vec![1, 1], 3).is_err());
        assert_eq!(
            SubsetIndex::new(vec![0, 3], 3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, dim: 3 }
        );
        assert_eq!(SubsetIndex::from_mask(0b1010).as_slice(), &[1, 3]);
    }
}
