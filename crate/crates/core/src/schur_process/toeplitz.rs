use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::Scalar;
use crate::symfunc::{epsilon_entry, h_at_index, Specialization};

use super::Window;

/// `W(u, v) = sum_{m = floor}^{min(u, v)} h_{u-m}(ρ⁻) h_{v-m}(ρ⁺)` over the window.
///
/// With `floor = -N` this is the transition matrix of `N`-row interlacing
/// pairs; as `floor -> -inf` it becomes the Toeplitz matrix of the symbol
/// `H(ρ⁻; z) H(ρ⁺; 1/z)`.
pub fn toeplitz_w<S: Scalar>(
    rho_minus: &Specialization<S>,
    rho_plus: &Specialization<S>,
    window: Window,
    floor: i64,
) -> Matrix<S> {
    let depth = (window.hi - floor).max(0) as usize;
    let (hm, hp) = (rho_minus.h_values(depth), rho_plus.h_values(depth));
    Matrix::from_fn(window.len(), window.len(), |a, b| {
        let (u, v) = (window.lo + a as i64, window.lo + b as i64);
        let mut acc = S::zero();
        for m in floor..=u.min(v) {
            acc = acc + h_at_index(&hm, u - m) * h_at_index(&hp, v - m);
        }
        acc
    })
}

/// Toeplitz matrix of the full symbol, summed deep enough that the dropped
/// terms are below `1e-20` (exact when either side is empty).
pub fn toeplitz_w_symbol<S: Scalar>(
    rho_minus: &Specialization<S>,
    rho_plus: &Specialization<S>,
    window: Window,
) -> Matrix<S> {
    toeplitz_w(rho_minus, rho_plus, window, deep_floor(rho_minus, rho_plus, window))
}

/// Summation floor for [`toeplitz_w_symbol`].
///
/// Terms with `m = min(u, v) - d` are at most `C(d + w + a, a) C(d + b, b) r^{2d}`
/// in modulus, with `a, b` the variable counts, `w` the window width and `r`
/// the largest modulus.
pub fn deep_floor<S: Scalar>(
    rho_minus: &Specialization<S>,
    rho_plus: &Specialization<S>,
    window: Window,
) -> i64 {
    if rho_minus.is_empty() || rho_plus.is_empty() {
        return window.lo;
    }
    let r = rho_minus.max_abs() * rho_plus.max_abs();
    let (a, b) = (rho_minus.len() as f64, rho_plus.len() as f64);
    let w = window.len() as f64;
    let mut d = 1.0f64;
    while d < 1e5 {
        let log_term = d * r.ln() + a * (d + w + a).ln() + b * (d + b).ln();
        // Geometric tail of the remaining terms, with room to spare.
        if log_term - (1.0 - r.sqrt()).ln() < -46.0 {
            break;
        }
        d += 1.0;
    }
    window.lo - d as i64
}

/// Skew matrix `sum_{a >= floor} (h_{u-a-1} h_{v-a} - h_{u-a} h_{v-a-1})` over
/// the window: the Toeplitz matrix of `(1/z - z) H(ρ; z) H(ρ; 1/z)` cut at `floor`.
pub fn epsilon_toeplitz<S: Scalar>(rho: &Specialization<S>, window: Window, floor: i64) -> SkewMatrix<S> {
    let depth = (window.hi - floor + 1).max(0) as usize;
    let h = rho.h_values(depth);
    SkewMatrix::from_upper(window.len(), |a, b| {
        epsilon_entry(&h, window.lo + a as i64, window.lo + b as i64, floor)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn empty_symbol_is_identity() {
        let w = Window::new(-3, 2).unwrap();
        let e = Specialization::<Q>::empty();
        assert_eq!(toeplitz_w_symbol(&e, &e, w), Matrix::identity(6));
    }

    #[test]
    fn one_sided_powers() {
        let w = Window::new(-2, 3).unwrap();
        let x = q(2, 5);
        let m = toeplitz_w_symbol(&Specialization::single(x.clone()), &Specialization::empty(), w);
        for a in 0..6 {
            for b in 0..6 {
                let expect = if a >= b { Scalar::pow(&x, (a - b) as u32) } else { Q::zero() };
                assert_eq!(m[(a, b)], expect);
            }
        }
    }

    #[test]
    fn epsilon_of_empty() {
        let w = Window::new(-3, 3).unwrap();
        let m = epsilon_toeplitz(&Specialization::<Q>::empty(), w, -10);
        for a in 0..7 {
            for b in 0..7 {
                let expect = if a == b + 1 {
                    Q::one()
                } else if a + 1 == b {
                    -Q::one()
                } else {
                    Q::zero()
                };
                assert_eq!(m[(a, b)], expect);
            }
        }
    }

    #[test]
    fn floor_truncation_matches_products() {
        // Clipped W with floor -1 from one variable each side: sum over m = -1..min.
        let w = Window::new(-1, 2).unwrap();
        let (x, y) = (q(1, 3), q(1, 2));
        let m = toeplitz_w(&Specialization::single(x.clone()), &Specialization::single(y.clone()), w, -1);
        // u = v = 0: m = -1, 0 -> x y + 1
        assert_eq!(m[(1, 1)], x.clone() * y.clone() + Q::one());
        // u = 2, v = -1: m = -1 only -> x^3
        assert_eq!(m[(3, 0)], Scalar::pow(&x, 3));
    }
}
