//! Dense linear algebra generic over [`Scalar`](crate::scalar::Scalar).

mod dense;
mod matrix;
mod pfaffian;

pub use dense::{det, inverse, SINGULAR_REL};
pub use matrix::{Matrix, SkewMatrix, SubsetIndex, SKEW_TOL};
pub use pfaffian::pfaffian;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The four blocks of `[[A,B],[C,D]]^{-1}` together with `BD^{-1}C - A`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockInverse<S> {
    pub top_left: Matrix<S>,
    pub top_right: Matrix<S>,
    pub bottom_left: Matrix<S>,
    pub bottom_right: Matrix<S>,
    pub schur: Matrix<S>,
}

impl<S: Scalar> BlockInverse<S> {
    pub fn assemble(&self) -> Result<Matrix<S>> {
        Matrix::from_blocks(&[
            vec![self.top_left.clone(), self.top_right.clone()],
            vec![self.bottom_left.clone(), self.bottom_right.clone()],
        ])
    }
}

/// Inverse of a 2x2 block matrix through `M = BD^{-1}C - A`:
///
/// ```text
/// [[-M^-1,        M^-1 B D^-1                ],
///  [D^-1 C M^-1,  D^-1 - D^-1 C M^-1 B D^-1  ]]
/// ```
pub fn block_inverse<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    c: &Matrix<S>,
    d: &Matrix<S>,
) -> Result<BlockInverse<S>> {
    let n = a.ensure_square("block_inverse(A)")?;
    let m = d.ensure_square("block_inverse(D)")?;
    if b.rows() != n || b.cols() != m || c.rows() != m || c.cols() != n {
        return Err(Error::DimensionMismatch {
            op: "block_inverse",
            detail: format!(
                "A {n}x{n}, B {}x{}, C {}x{}, D {m}x{m}",
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            ),
        });
    }
    let d_inv = inverse(d)?;
    let b_dinv = b.mul(&d_inv)?;
    let dinv_c = d_inv.mul(c)?;
    let schur = b_dinv.mul(c)?.sub(a)?;
    let s_inv = inverse(&schur)?;
    let top_right = s_inv.mul(&b_dinv)?;
    let bottom_left = dinv_c.mul(&s_inv)?;
    let bottom_right = d_inv.sub(&bottom_left.mul(&b_dinv)?)?;
    Ok(BlockInverse {
        top_left: s_inv.neg(),
        top_right,
        bottom_left,
        bottom_right,
        schur,
    })
}

/// Principal minor: determinant for plain matrices, Pfaffian for skew ones.
pub trait PrincipalMinor<S> {
    fn principal_minor(&self, subset: &SubsetIndex) -> Result<S>;
}

impl<S: Scalar> PrincipalMinor<S> for Matrix<S> {
    fn principal_minor(&self, subset: &SubsetIndex) -> Result<S> {
        self.ensure_square("principal_minor")?;
        det(&self.principal(subset.as_slice())?)
    }
}

impl<S: Scalar> PrincipalMinor<S> for SkewMatrix<S> {
    fn principal_minor(&self, subset: &SubsetIndex) -> Result<S> {
        Ok(pfaffian(&self.principal(subset.as_slice())?))
    }
}
