use crate::error::{Error, Result};
use crate::linalg::{inverse, pfaffian, SkewMatrix};
use crate::point_process::{doubled_rows, Config, GroundSet, PfKernel, ProbTable};
use crate::scalar::Scalar;

/// Conditional Pfaffian L-ensemble over the doubled space `X' + X''`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfLEnsemble<S> {
    pub ground: GroundSet,
    pub l: SkewMatrix<S>,
    pub window: Config,
    norm: S,
}

impl<S: Scalar> PfLEnsemble<S> {
    pub fn new(ground: GroundSet, l: SkewMatrix<S>) -> Result<Self> {
        let window = ground.full();
        Self::with_window(ground, l, window)
    }

    pub fn with_window(ground: GroundSet, l: SkewMatrix<S>, window: Config) -> Result<Self> {
        if l.dim() != 2 * ground.len() {
            return Err(Error::DimensionMismatch {
                op: "PfLEnsemble",
                detail: format!("L has dimension {} for {} points", l.dim(), ground.len()),
            });
        }
        ground.check(window)?;
        let norm = pfaffian(&j_on(ground.len(), window).add(&l)?);
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

    /// `pf(J_window + L)`.
    pub fn normalization(&self) -> &S {
        &self.norm
    }

    pub fn complement(&self) -> Config {
        Config(self.ground.full().0 & !self.window.0)
    }

    pub fn prob(&self, y: Config) -> Result<S> {
        self.ground.check(y)?;
        if !y.is_subset_of(self.window) {
            return Ok(S::zero());
        }
        let rows = doubled_rows(y.union(self.complement()));
        Ok(pfaffian(&self.l.principal(&rows)?) / self.norm.clone())
    }

    pub fn prob_table(&self) -> Result<ProbTable<S>> {
        ProbTable::from_fn(self.window.len(), |c| self.prob(c.expand(self.window)))
    }

    /// `K = J_window + (J_window + L)^{-1}` restricted to the window.
    pub fn kernel(&self) -> Result<PfKernel<S>> {
        let j = j_on(self.ground.len(), self.window);
        let inv = inverse(j.add(&self.l)?.as_matrix())?;
        let rows = doubled_rows(self.window);
        let jw = j.principal(&rows)?;
        let inv_w = inv.principal(&rows)?;
        // Rebuild from the upper triangle so float round-off cannot break skewness.
        let k = SkewMatrix::from_upper(rows.len(), |a, b| {
            jw.as_matrix()[(a, b)].clone() + inv_w[(a, b)].clone()
        });
        PfKernel::new(self.ground.restrict(self.window), k)
    }
}

/// `J` with a `[[0,1],[-1,0]]` block on each window point.
pub(crate) fn j_on<S: Scalar>(n: usize, window: Config) -> SkewMatrix<S> {
    SkewMatrix::from_upper(2 * n, |a, b| {
        if a % 2 == 0 && b == a + 1 && window.contains(a / 2) {
            S::one()
        } else {
            S::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn zero_l_gives_empty_process() {
        let e = PfLEnsemble::new(GroundSet::range(2), SkewMatrix::<Q>::zeros(4)).unwrap();
        assert_eq!(e.prob(Config::empty()).unwrap(), Q::from_i64(1));
        assert_eq!(e.kernel().unwrap().k, SkewMatrix::zeros(4));
    }

    #[test]
    fn one_point() {
        let a = Q::from_ratio(2, 5);
        let l = SkewMatrix::from_upper(2, |_, _| a.clone());
        let e = PfLEnsemble::new(GroundSet::range(1), l).unwrap();
        let expected = a.clone() / (Q::from_i64(1) + a.clone());
        assert_eq!(e.prob(Config(1)).unwrap(), expected);
        assert_eq!(e.kernel().unwrap().correlation(Config(1)).unwrap(), expected);
    }
}
