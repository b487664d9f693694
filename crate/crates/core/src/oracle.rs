//! Slow reference routines that share no code path with the fast ones.
//!
//! They exist to check the elimination, Pfaffian and kernel code by brute force
//! and are only practical at desk scale.

use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::Scalar;

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.rows();
    assert_eq!(n, m.cols(), "cofactor_det needs a square matrix");
    let cols: Vec<usize> = (0..n).collect();
    expand(m, 0, &cols)
}

fn expand<S: Scalar>(m: &Matrix<S>, row: usize, cols: &[usize]) -> S {
    if cols.is_empty() {
        return S::one();
    }
    let mut acc = S::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[(row, c)];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.clone() * expand(m, row + 1, &rest);
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Pfaffian as the signed sum over perfect matchings, pairing the first free
/// index with each later one in turn.
pub fn matching_pfaffian<S: Scalar>(m: &SkewMatrix<S>) -> S {
    let idx: Vec<usize> = (0..m.dim()).collect();
    matchings(m, &idx)
}

fn matchings<S: Scalar>(m: &SkewMatrix<S>, idx: &[usize]) -> S {
    if idx.is_empty() {
        return S::one();
    }
    if idx.len() % 2 == 1 {
        return S::zero();
    }
    let first = idx[0];
    let mut acc = S::zero();
    for k in 1..idx.len() {
        let entry = &m[(first, idx[k])];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != k)
            .map(|(_, &v)| v)
            .collect();
        let term = entry.clone() * matchings(m, &rest);
        // pairing idx[0] with idx[k] moves idx[k] across k-1 entries
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn cofactor_small() {
        let m = Matrix::from_rows(vec![
            vec![Q::from_i64(1), Q::from_i64(2)],
            vec![Q::from_i64(3), Q::from_i64(4)],
        ])
        .unwrap();
        assert_eq!(cofactor_det(&m), Q::from_i64(-2));
    }

    #[test]
    fn matching_four() {
        let vals = [[0, 2, 3, 5], [0, 0, 7, 11], [0, 0, 0, 13], [0, 0, 0, 0]];
        let m = SkewMatrix::from_upper(4, |i, j| Q::from_i64(vals[i][j]));
        assert_eq!(matching_pfaffian(&m), Q::from_i64(2 * 13 - 3 * 11 + 5 * 7));
    }
}
