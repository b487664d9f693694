//! Determinants and inverses.
//!
//! Exact scalars go through Bareiss fraction-free elimination; floats use
//! Gaussian elimination with partial pivoting.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Relative singularity threshold for float inverses: `|det| < 1e-12 * (max row norm)^n`.
pub const SINGULAR_REL: f64 = 1e-12;

/// Picks the pivot row for column `col` among rows `col..n`.
fn pivot_row<S: Scalar>(m: &Matrix<S>, col: usize) -> Option<usize> {
    let n = m.rows();
    if S::EXACT {
        (col..n).find(|&r| !m[(r, col)].is_zero())
    } else {
        let (best, mag) = (col..n)
            .map(|r| (r, m[(r, col)].magnitude()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (mag > 0.0).then_some(best)
    }
}

fn swap_rows<S: Scalar>(m: &mut Matrix<S>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let tmp = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = tmp;
    }
}

pub fn det<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    let n = a.ensure_square("det")?;
    if n == 0 {
        return Ok(S::one());
    }
    if S::EXACT {
        Ok(bareiss(a.clone()))
    } else {
        Ok(lu_det(a.clone()))
    }
}

fn bareiss<S: Scalar>(mut m: Matrix<S>) -> S {
    let n = m.rows();
    let mut sign_flip = false;
    let mut prev = S::one();
    for k in 0..n - 1 {
        let Some(p) = pivot_row(&m, k) else {
            return S::zero();
        };
        if p != k {
            swap_rows(&mut m, p, k);
            sign_flip = !sign_flip;
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[(i, j)].clone() * pivot.clone() - m[(i, k)].clone() * m[(k, j)].clone())
                    / prev.clone();
                m[(i, j)] = v;
            }
            m[(i, k)] = S::zero();
        }
        prev = pivot;
    }
    let d = m[(n - 1, n - 1)].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

fn lu_det<S: Scalar>(mut m: Matrix<S>) -> S {
    let n = m.rows();
    let mut acc = S::one();
    for k in 0..n {
        let Some(p) = pivot_row(&m, k) else {
            return S::zero();
        };
        if p != k {
            swap_rows(&mut m, p, k);
            acc = -acc;
        }
        let pivot = m[(k, k)].clone();
        acc = acc * pivot.clone();
        for i in k + 1..n {
            let f = m[(i, k)].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
    }
    acc
}

/// Gauss-Jordan inverse. Singular input is reported with its determinant.
pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    let n = a.ensure_square("inverse")?;
    let threshold = if S::EXACT {
        0.0
    } else {
        SINGULAR_REL * a.max_row_norm().powi(n as i32)
    };
    let mut m = a.clone();
    let mut inv = Matrix::<S>::identity(n);
    let mut det = S::one();
    for k in 0..n {
        let Some(p) = pivot_row(&m, k) else {
            return Err(Error::Singular {
                det: S::zero().render(),
            });
        };
        if p != k {
            swap_rows(&mut m, p, k);
            swap_rows(&mut inv, p, k);
            det = -det;
        }
        let pivot = m[(k, k)].clone();
        det = det * pivot.clone();
        for j in 0..n {
            let v = m[(k, j)].clone() / pivot.clone();
            m[(k, j)] = v;
            let w = inv[(k, j)].clone() / pivot.clone();
            inv[(k, j)] = w;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[(i, k)].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
                let w = inv[(i, j)].clone() - f.clone() * inv[(k, j)].clone();
                inv[(i, j)] = w;
            }
        }
    }
    if !S::EXACT && det.magnitude() < threshold {
        return Err(Error::Singular { det: det.render() });
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{C, Q};

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Q::from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_and_identity() {
        assert_eq!(det(&Matrix::<Q>::zeros(0, 0)).unwrap(), Q::from_i64(1));
        assert_eq!(det(&Matrix::<Q>::identity(2)).unwrap(), Q::from_i64(1));
        assert_eq!(det(&Matrix::<C>::zeros(0, 0)).unwrap(), C::new(1.0, 0.0));
    }

    #[test]
    fn two_by_two_minor_read_off() {
        // [[0,1],[-p,0]] has determinant p.
        let m = qm(&[&[0, 1], &[-7, 0]]);
        assert_eq!(det(&m).unwrap(), Q::from_i64(7));
    }

    #[test]
    fn pivoting_needed() {
        let m = qm(&[&[0, 2, 1], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(det(&m).unwrap(), Q::from_i64(-6));
        let f = m.map(|x| x.to_complex());
        assert!((det(&f).unwrap() - C::new(-6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_square_rejected() {
        let m = Matrix::<Q>::zeros(2, 3);
        assert!(matches!(det(&m), Err(Error::NotSquare { .. })));
        assert!(matches!(inverse(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn diagonal_inverse() {
        let m = qm(&[&[2, 0], &[0, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[(0, 0)], Q::from_ratio(1, 2));
        assert_eq!(inv[(1, 1)], Q::from_ratio(1, 4));
        assert_eq!(inv[(0, 1)], Q::from_i64(0));
        assert_eq!(inverse(&Matrix::<Q>::identity(3)).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn singular_reports_det() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            inverse(&m).unwrap_err(),
            Error::Singular {
                det: "0/1".into()
            }
        );
        let f = Matrix::from_rows(vec![
            vec![C::new(1.0, 0.0), C::new(1.0, 0.0)],
            vec![C::new(1.0, 0.0), C::new(1.0 + 1e-15, 0.0)],
        ])
        .unwrap();
        assert!(matches!(inverse(&f), Err(Error::Singular { .. })));
    }
}
