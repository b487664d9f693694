use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::Scalar;

/// Pfaffian by skew Gaussian elimination (Parlett-Reid style).
///
/// Convention: `pf [[0,1],[-1,0]] = 1`; odd dimension gives 0, the empty matrix 1.
pub fn pfaffian<S: Scalar>(a: &SkewMatrix<S>) -> S {
    let n = a.dim();
    if n % 2 == 1 {
        return S::zero();
    }
    let mut m: Matrix<S> = a.as_matrix().clone();
    let mut acc = S::one();
    // Each pass eliminates the leading 2x2 block and shrinks the active range by two.
    let mut base = 0;
    while base < n {
        let pick = if S::EXACT {
            (base + 1..n).find(|&k| !m[(base, k)].is_zero())
        } else {
            let (k, mag) = (base + 1..n)
                .map(|k| (k, m[(base, k)].magnitude()))
                .fold((base + 1, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > 0.0).then_some(k)
        };
        let Some(k) = pick else {
            return S::zero();
        };
        if k != base + 1 {
            swap_sym(&mut m, base + 1, k);
            acc = -acc;
        }
        let pivot = m[(base, base + 1)].clone();
        acc = acc * pivot.clone();
        for i in base + 2..n {
            for j in i + 1..n {
                let upd = (m[(base + 1, i)].clone() * m[(base, j)].clone()
                    - m[(base, i)].clone() * m[(base + 1, j)].clone())
                    / pivot.clone();
                let v = m[(i, j)].clone() + upd;
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        base += 2;
    }
    acc
}

/// Simultaneous row and column swap, which flips the Pfaffian's sign.
fn swap_sym<S: Scalar>(m: &mut Matrix<S>, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..n {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
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
    fn small_closed_forms() {
        assert_eq!(pfaffian(&SkewMatrix::<Q>::zeros(0)), q(1));
        assert_eq!(pfaffian(&SkewMatrix::<Q>::zeros(3)), q(0));
        let two = SkewMatrix::from_upper(2, |_, _| q(5));
        assert_eq!(pfaffian(&two), q(5));
        assert_eq!(pfaffian(&SkewMatrix::<Q>::standard_j(3)), q(1));
    }

    #[test]
    fn four_by_four_formula() {
        // a12 a34 - a13 a24 + a14 a23 with distinct primes as entries
        let vals = [[0, 2, 3, 5], [0, 0, 7, 11], [0, 0, 0, 13], [0, 0, 0, 0]];
        let m = SkewMatrix::from_upper(4, |i, j| q(vals[i][j]));
        let expect = 2 * 13 - 3 * 11 + 5 * 7;
        assert_eq!(pfaffian(&m), q(expect));
    }

    #[test]
    fn zero_leading_row_needs_pivot() {
        // a01 = 0 forces a swap; value is -a02*a13 + a03*a12
        let vals = [[0, 0, 3, 5], [0, 0, 7, 11], [0, 0, 0, 13], [0, 0, 0, 0]];
        let m = SkewMatrix::from_upper(4, |i, j| q(vals[i][j]));
        assert_eq!(pfaffian(&m), q(-3 * 11 + 5 * 7));
    }
}
