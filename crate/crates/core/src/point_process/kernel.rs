use crate::error::{Error, Result};
use crate::linalg::{det, pfaffian, Matrix, SkewMatrix};
use crate::point_process::{doubled_rows, Config, GroundSet};
use crate::scalar::Scalar;

/// Determinantal correlation kernel: `rho(Y) = det K_Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<S> {
    pub ground: GroundSet,
    pub k: Matrix<S>,
}

impl<S: Scalar> Kernel<S> {
    pub fn new(ground: GroundSet, k: Matrix<S>) -> Result<Self> {
        if k.rows() != ground.len() || k.cols() != ground.len() {
            return Err(Error::DimensionMismatch {
                op: "Kernel::new",
                detail: format!("{}x{} for {} points", k.rows(), k.cols(), ground.len()),
            });
        }
        Ok(Self { ground, k })
    }

    pub fn correlation(&self, y: Config) -> Result<S> {
        self.ground.check(y)?;
        let idx: Vec<usize> = y.points().collect();
        det(&self.k.principal(&idx)?)
    }

    /// Every correlation, indexed by configuration mask.
    pub fn all_correlations(&self) -> Result<Vec<S>> {
        (0..1u64 << self.ground.len())
            .map(|m| self.correlation(Config(m)))
            .collect()
    }

    /// `D K D^{-1}` for diagonal `D`; leaves every principal minor unchanged.
    pub fn conjugate_diagonal(&self, diag: &[S]) -> Result<Self> {
        let n = self.ground.len();
        if diag.len() != n {
            return Err(Error::DimensionMismatch {
                op: "conjugate_diagonal",
                detail: format!("{} diagonal entries for {n} points", diag.len()),
            });
        }
        let k = Matrix::from_fn(n, n, |i, j| {
            diag[i].clone() * self.k[(i, j)].clone() / diag[j].clone()
        });
        Ok(Self {
            ground: self.ground.clone(),
            k,
        })
    }
}

/// Pfaffian correlation kernel: `rho(Y) = pf K_Y` over the 2x2 blocks of `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfKernel<S> {
    pub ground: GroundSet,
    pub k: SkewMatrix<S>,
}

impl<S: Scalar> PfKernel<S> {
    pub fn new(ground: GroundSet, k: SkewMatrix<S>) -> Result<Self> {
        if k.dim() != 2 * ground.len() {
            return Err(Error::DimensionMismatch {
                op: "PfKernel::new",
                detail: format!("dimension {} for {} points", k.dim(), ground.len()),
            });
        }
        Ok(Self { ground, k })
    }

    /// The 2x2 block `K(x, y)`.
    pub fn block(&self, x: usize, y: usize) -> [[S; 2]; 2] {
        let m = self.k.as_matrix();
        [
            [m[(2 * x, 2 * y)].clone(), m[(2 * x, 2 * y + 1)].clone()],
            [m[(2 * x + 1, 2 * y)].clone(), m[(2 * x + 1, 2 * y + 1)].clone()],
        ]
    }

    pub fn correlation(&self, y: Config) -> Result<S> {
        self.ground.check(y)?;
        Ok(pfaffian(&self.k.principal(&doubled_rows(y))?))
    }

    pub fn all_correlations(&self) -> Result<Vec<S>> {
        (0..1u64 << self.ground.len())
            .map(|m| self.correlation(Config(m)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn diagonal_kernel_correlations() {
        let half = Q::from_ratio(1, 2);
        let k = Kernel::new(
            GroundSet::range(2),
            Matrix::diagonal(&[half.clone(), half.clone()]),
        )
        .unwrap();
        assert_eq!(k.correlation(Config::empty()).unwrap(), Q::from_i64(1));
        assert_eq!(k.correlation(Config(0b11)).unwrap(), Q::from_ratio(1, 4));
    }

    #[test]
    fn single_point_pfaffian_is_block_entry() {
        let m = SkewMatrix::from_upper(2, |_, _| Q::from_ratio(3, 7));
        let k = PfKernel::new(GroundSet::range(1), m).unwrap();
        assert_eq!(k.correlation(Config(1)).unwrap(), Q::from_ratio(3, 7));
        assert_eq!(k.block(0, 0)[0][1], Q::from_ratio(3, 7));
    }

    #[test]
    fn size_checks() {
        assert!(Kernel::new(GroundSet::range(3), Matrix::<Q>::identity(2)).is_err());
        assert!(PfKernel::new(GroundSet::range(2), SkewMatrix::<Q>::zeros(2)).is_err());
    }
}
