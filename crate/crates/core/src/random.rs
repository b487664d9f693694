//! Seeded generators for random test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::{Scalar, C, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `p/q` with `|p| <= 6`, `1 <= q <= 4`.
pub fn small_rational(rng: &mut impl Rng) -> Q {
    Q::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn rational_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Q> {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng))
}

pub fn rational_skew(rng: &mut impl Rng, dim: usize) -> SkewMatrix<Q> {
    SkewMatrix::from_upper(dim, |_, _| small_rational(rng))
}

/// Random rational matrix conditioned on being invertible.
pub fn invertible_rational(rng: &mut impl Rng, n: usize) -> Matrix<Q> {
    loop {
        let m = rational_matrix(rng, n, n);
        if !crate::linalg::det(&m).expect("square").is_zero() {
            return m;
        }
    }
}

pub fn complex_unit(rng: &mut impl Rng) -> C {
    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Lifts a rational matrix into the float backend.
pub fn to_complex(m: &Matrix<Q>) -> Matrix<C> {
    m.map(Scalar::to_complex)
}
