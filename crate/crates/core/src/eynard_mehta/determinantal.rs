use serde_json::Value;

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{det, inverse, Matrix};
use crate::point_process::{Config, GroundSet, Kernel, LEnsemble, ProbTable};
use crate::scalar::Scalar;

use super::{chain, check_chain, check_shape, interval, levels_from_json, Levels};

/// Which interval product sits right of `Phi` in the kernel's first term.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum KernelReading {
    /// `W_[1,j)`, which the block inversion produces.
    #[default]
    FromFirstLevel,
    /// `W_[i,j)`; kept to show that it does not reproduce the correlations.
    FromRowLevel,
}

/// Weights `det[phi_i(x^1_j)] det[W_1(x^1_i, x^2_j)] ... det[psi_i(x^k_j)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EMSpec<S> {
    pub levels: Levels,
    pub n: usize,
    pub phi: Matrix<S>,
    pub ws: Vec<Matrix<S>>,
    pub psi: Matrix<S>,
}

impl<S: Scalar> EMSpec<S> {
    pub fn new(
        levels: Levels,
        n: usize,
        phi: Matrix<S>,
        ws: Vec<Matrix<S>>,
        psi: Matrix<S>,
    ) -> Result<Self> {
        check_shape(&phi, n, levels.size(1), "Phi")?;
        check_chain(&levels, &ws, "W")?;
        check_shape(&psi, levels.size(levels.count()), n, "Psi")?;
        Ok(Self {
            levels,
            n,
            phi,
            ws,
            psi,
        })
    }

    pub fn k(&self) -> usize {
        self.levels.count()
    }

    /// `W_[i,j)` with the zero convention for `i >= j`.
    pub fn w_interval(&self, i: usize, j: usize) -> Matrix<S> {
        interval(&self.ws, &self.levels, i, j)
    }

    /// `W_i ... W_{j-1}`, identity when `i == j`.
    pub fn chain(&self, i: usize, j: usize) -> Matrix<S> {
        chain(&self.ws, i, j, self.levels.size(i))
    }

    /// `M = Phi W_1 ... W_{k-1} Psi`.
    pub fn m(&self) -> Matrix<S> {
        self.phi
            .mul(&self.chain(1, self.k()))
            .and_then(|a| a.mul(&self.psi))
            .expect("validated shapes")
    }

    pub fn partition(&self) -> Result<S> {
        det(&self.m())
    }

    /// Unnormalized weight; each level must hold exactly `n` points.
    pub fn weight(&self, per_level: &[Vec<usize>]) -> Result<S> {
        if per_level.len() != self.k() {
            return Err(Error::DimensionMismatch {
                op: "em_weight",
                detail: format!("{} level configs for {} levels", per_level.len(), self.k()),
            });
        }
        for (i, pts) in per_level.iter().enumerate() {
            if pts.len() != self.n {
                return Err(Error::WrongCardinality {
                    level: i + 1,
                    expected: self.n,
                    got: pts.len(),
                });
            }
            if let Some(&p) = pts.iter().find(|&&p| p >= self.levels.size(i + 1)) {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    dim: self.levels.size(i + 1),
                });
            }
        }
        let all: Vec<usize> = (0..self.n).collect();
        let mut acc = det(&self.phi.submatrix(&all, &per_level[0])?)?;
        for (m, w) in self.ws.iter().enumerate() {
            acc = acc * det(&w.submatrix(&per_level[m], &per_level[m + 1])?)?;
        }
        Ok(acc * det(&self.psi.submatrix(&per_level[self.k() - 1], &all)?)?)
    }

    /// Weight of a flattened configuration, zero when some level has the wrong size.
    pub fn weight_of(&self, c: Config) -> Result<S> {
        let split = self.levels.split(c);
        if split.iter().any(|p| p.len() != self.n) {
            return Ok(S::zero());
        }
        self.weight(&split)
    }

    /// Normalized weights over the flattened ground set.
    pub fn prob_table(&self) -> Result<ProbTable<S>> {
        let z = self.partition()?;
        if z.near_zero(0.0) {
            return Err(Error::Singular { det: z.render() });
        }
        ProbTable::from_fn(self.levels.total(), |c| Ok(self.weight_of(c)? / z.clone()))
    }

    /// Conditional L-ensemble on `{virtual 1..n} + levels`, window = levels.
    pub fn embed_l(&self) -> Result<LEnsemble<S>> {
        let n = self.n;
        let total = n + self.levels.total();
        let mut l = Matrix::zeros(total, total);
        l.set_block(0, n + self.levels.offset(1), &self.phi);
        for (m, w) in self.ws.iter().enumerate() {
            l.set_block(
                n + self.levels.offset(m + 1),
                n + self.levels.offset(m + 2),
                &w.neg(),
            );
        }
        l.set_block(n + self.levels.offset(self.k()), 0, &self.psi);
        let mut labels: Vec<String> = (1..=n).map(|v| format!("virtual:{v}")).collect();
        labels.extend(self.levels.flat_ground().labels().iter().cloned());
        let ground = GroundSet::new(labels)?;
        let window = Config(Config::full(self.levels.total()).0 << n);
        LEnsemble::with_window(ground, l, window)
    }

    /// Block `(i,j)`: `W_[i,k) Psi M^{-1} Phi W_[1,j) - W_[i,j)`.
    pub fn kernel_block(&self, i: usize, j: usize, minv: &Matrix<S>, reading: KernelReading) -> Matrix<S> {
        let k = self.k();
        let right = match reading {
            KernelReading::FromFirstLevel => self.chain(1, j),
            KernelReading::FromRowLevel if i <= j && self.levels.size(i) == self.levels.size(1) => {
                self.chain(i, j)
            }
            // Shapes do not compose; the reading has no meaning here.
            KernelReading::FromRowLevel => Matrix::zeros(self.levels.size(1), self.levels.size(j)),
        };
        let first = self
            .chain(i, k)
            .mul(&self.psi)
            .and_then(|a| a.mul(minv))
            .and_then(|a| a.mul(&self.phi))
            .and_then(|a| a.mul(&right))
            .expect("validated shapes");
        first.sub(&self.w_interval(i, j)).expect("validated shapes")
    }

    pub fn kernel(&self) -> Result<Kernel<S>> {
        self.kernel_with(KernelReading::default())
    }

    pub fn kernel_with(&self, reading: KernelReading) -> Result<Kernel<S>> {
        let minv = inverse(&self.m())?;
        let total = self.levels.total();
        let mut k = Matrix::zeros(total, total);
        for i in 1..=self.k() {
            for j in 1..=self.k() {
                let b = self.kernel_block(i, j, &minv, reading);
                k.set_block(self.levels.offset(i), self.levels.offset(j), &b);
            }
        }
        Kernel::new(self.levels.flat_ground(), k)
    }

    /// `{"levels":[[labels]...],"n":n,"Phi":m,"Ws":[m...],"Psi":m}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = json::as_object(v, "em spec")?;
        let levels = levels_from_json(json::field(obj, "levels")?)?;
        let n = json::field_usize(obj, "n")?;
        let phi = json::matrix_from_json(json::field(obj, "Phi")?, "Phi")?;
        let ws = match obj.get("Ws") {
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(m, w)| json::matrix_from_json(w, &format!("Ws[{m}]")))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
            Some(_) => return Err(Error::Json("Ws: expected array of matrices".into())),
        };
        let psi = json::matrix_from_json(json::field(obj, "Psi")?, "Psi")?;
        Self::new(levels, n, phi, ws, psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{rational_matrix, rng};
    use crate::scalar::Q;

    fn ones(r: usize, c: usize) -> Matrix<Q> {
        Matrix::from_fn(r, c, |_, _| Q::from_i64(1))
    }

    fn two_level_ones() -> EMSpec<Q> {
        let levels = Levels::new(vec![GroundSet::range(2), GroundSet::range(2)]).unwrap();
        EMSpec::new(levels, 1, ones(1, 2), vec![ones(2, 2)], ones(2, 1)).unwrap()
    }

    #[test]
    fn all_ones_partition_is_four() {
        assert_eq!(two_level_ones().partition().unwrap(), Q::from_i64(4));
    }

    #[test]
    fn intervals() {
        let mut r = rng(3);
        let sizes = [2, 3, 2];
        let levels = Levels::new(sizes.iter().map(|&s| GroundSet::range(s)).collect()).unwrap();
        let ws = vec![rational_matrix(&mut r, 2, 3), rational_matrix(&mut r, 3, 2)];
        let spec = EMSpec::new(
            levels,
            1,
            rational_matrix(&mut r, 1, 2),
            ws.clone(),
            rational_matrix(&mut r, 2, 1),
        )
        .unwrap();
        assert_eq!(spec.w_interval(2, 2), Matrix::zeros(3, 3));
        assert_eq!(spec.w_interval(1, 2), ws[0]);
        assert_eq!(spec.w_interval(1, 3), ws[0].mul(&ws[1]).unwrap());
        assert_eq!(spec.w_interval(3, 1), Matrix::zeros(2, 2));
    }

    #[test]
    fn single_level_weight_is_product_of_minors() {
        let levels = Levels::new(vec![GroundSet::range(2)]).unwrap();
        let spec =
            EMSpec::new(levels, 2, Matrix::<Q>::identity(2), vec![], Matrix::identity(2)).unwrap();
        assert_eq!(spec.weight(&[vec![0, 1]]).unwrap(), Q::from_i64(1));
        assert_eq!(spec.partition().unwrap(), Q::from_i64(1));
    }

    #[test]
    fn wrong_cardinality() {
        let spec = two_level_ones();
        assert_eq!(
            spec.weight(&[vec![0], vec![0, 1]]).unwrap_err(),
            Error::WrongCardinality {
                level: 2,
                expected: 1,
                got: 2
            }
        );
    }

    #[test]
    fn one_point_per_level_weight() {
        let spec = two_level_ones();
        assert_eq!(spec.weight(&[vec![1], vec![0]]).unwrap(), Q::from_i64(1));
        let k = spec.kernel().unwrap();
        // Uniform over four configurations: each point has density 1/2.
        for p in 0..4 {
            assert_eq!(k.k[(p, p)], Q::from_ratio(1, 2));
        }
    }

    #[test]
    fn dimension_errors() {
        let levels = Levels::new(vec![GroundSet::range(2), GroundSet::range(2)]).unwrap();
        let e = EMSpec::new(levels, 1, ones(1, 2), vec![ones(2, 3)], ones(2, 1)).unwrap_err();
        assert!(e.to_string().contains("W_1"), "{e}");
    }
}
