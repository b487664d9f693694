use crate::error::{Error, Result};
use crate::linalg::{det, inverse, Matrix};
use crate::point_process::{Config, GroundSet, Kernel, ProbTable};
use crate::scalar::Scalar;

/// Conditional L-ensemble: points outside `window` are always present, and
/// `Prob{Y} = det L_{Y + complement} / det(I_window + L)` for `Y` in the window.
#[derive(Clone, Debug, PartialEq)]
pub struct LEnsemble<S> {
    pub ground: GroundSet,
    pub l: Matrix<S>,
    pub window: Config,
    norm: S,
}

impl<S: Scalar> LEnsemble<S> {
    pub fn new(ground: GroundSet, l: Matrix<S>) -> Result<Self> {
        let window = ground.full();
        Self::with_window(ground, l, window)
    }

    pub fn with_window(ground: GroundSet, l: Matrix<S>, window: Config) -> Result<Self> {
        let n = l.ensure_square("LEnsemble")?;
        if n != ground.len() {
            return Err(Error::DimensionMismatch {
                op: "LEnsemble",
                detail: format!("L is {n}x{n} for {} points", ground.len()),
            });
        }
        ground.check(window)?;
        let norm = det(&identity_on(n, window).add(&l)?)?;
        if norm.near_zero(0.0) {
            return Err(Error::Singular { det: norm.render() });
        }
        Ok(Self {
            ground,
            l,
            window,
            norm,
        })
    }

    /// `det(I_window + L)`.
    pub fn normalization(&self) -> &S {
        &self.norm
    }

    pub fn complement(&self) -> Config {
        Config(self.ground.full().0 & !self.window.0)
    }

    /// Probability of `y`; zero unless `y` lies inside the window.
    pub fn prob(&self, y: Config) -> Result<S> {
        self.ground.check(y)?;
        if !y.is_subset_of(self.window) {
            return Ok(S::zero());
        }
        let idx: Vec<usize> = y.union(self.complement()).points().collect();
        Ok(det(&self.l.principal(&idx)?)? / self.norm.clone())
    }

    /// Table over subsets of the window, re-indexed so window points are `0..|window|`.
    pub fn prob_table(&self) -> Result<ProbTable<S>> {
        let m = self.window.len();
        ProbTable::from_fn(m, |c| self.prob(c.expand(self.window)))
    }

    /// `K = I_window - (I_window + L)^{-1}` restricted to the window.
    pub fn kernel(&self) -> Result<Kernel<S>> {
        let n = self.ground.len();
        let inv = inverse(&identity_on(n, self.window).add(&self.l)?)?;
        let idx: Vec<usize> = self.window.points().collect();
        let k = Matrix::<S>::identity(idx.len()).sub(&inv.principal(&idx)?)?;
        Kernel::new(self.ground.restrict(self.window), k)
    }

    /// `K = L (I + L)^{-1}`; only defined without conditioning.
    pub fn kernel_unconditioned(&self) -> Result<Kernel<S>> {
        if self.window != self.ground.full() {
            return Err(Error::Invalid(
                "L(I+L)^{-1} applies only when the window is the whole ground set".into(),
            ));
        }
        let n = self.ground.len();
        let inv = inverse(&Matrix::identity(n).add(&self.l)?)?;
        Kernel::new(self.ground.clone(), self.l.mul(&inv)?)
    }
}

fn identity_on<S: Scalar>(n: usize, window: Config) -> Matrix<S> {
    Matrix::from_fn(n, n, |i, j| {
        if i == j && window.contains(i) {
            S::one()
        } else {
            S::zero()
        }
    })
}
