use serde_json::Value;

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{det, inverse, pfaffian, Matrix, SkewMatrix};
use crate::point_process::{Config, GroundSet, PfKernel, PfLEnsemble, ProbTable};
use crate::scalar::Scalar;

use super::{chain, check_chain, check_shape, interval, levels_from_json, Levels};

/// Weights `pf[eps(x^1_i, x^1_j)] det[V_1(x^1_i, x^2_j)] ... det[xi_i(x^k_j)]`
/// with `2n` points on every level.
#[derive(Clone, Debug, PartialEq)]
pub struct PfEMSpec<S> {
    pub levels: Levels,
    pub n: usize,
    pub epsilon: SkewMatrix<S>,
    pub vs: Vec<Matrix<S>>,
    pub xi: Matrix<S>,
}

impl<S: Scalar> PfEMSpec<S> {
    pub fn new(
        levels: Levels,
        n: usize,
        epsilon: SkewMatrix<S>,
        vs: Vec<Matrix<S>>,
        xi: Matrix<S>,
    ) -> Result<Self> {
        check_shape(epsilon.as_matrix(), levels.size(1), levels.size(1), "epsilon")?;
        check_chain(&levels, &vs, "V")?;
        check_shape(&xi, levels.size(levels.count()), 2 * n, "Xi")?;
        Ok(Self {
            levels,
            n,
            epsilon,
            vs,
            xi,
        })
    }

    pub fn k(&self) -> usize {
        self.levels.count()
    }

    pub fn v_interval(&self, i: usize, j: usize) -> Matrix<S> {
        interval(&self.vs, &self.levels, i, j)
    }

    pub fn chain(&self, i: usize, j: usize) -> Matrix<S> {
        chain(&self.vs, i, j, self.levels.size(i))
    }

    /// `N = Xi^t V_[1,k)^t eps V_[1,k) Xi`.
    pub fn n_matrix(&self) -> SkewMatrix<S> {
        let c = self.chain(1, self.k()).mul(&self.xi).expect("validated shapes");
        self.epsilon.congruence(&c).expect("validated shapes")
    }

    pub fn partition(&self) -> S {
        pfaffian(&self.n_matrix())
    }

    pub fn weight(&self, per_level: &[Vec<usize>]) -> Result<S> {
        if per_level.len() != self.k() {
            return Err(Error::DimensionMismatch {
                op: "pf_em_weight",
                detail: format!("{} level configs for {} levels", per_level.len(), self.k()),
            });
        }
        for (i, pts) in per_level.iter().enumerate() {
            if pts.len() != 2 * self.n {
                return Err(Error::WrongCardinality {
                    level: i + 1,
                    expected: 2 * self.n,
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
        let mut acc = pfaffian(&self.epsilon.principal(&per_level[0])?);
        for (m, v) in self.vs.iter().enumerate() {
            acc = acc * det(&v.submatrix(&per_level[m], &per_level[m + 1])?)?;
        }
        let all: Vec<usize> = (0..2 * self.n).collect();
        Ok(acc * det(&self.xi.submatrix(&per_level[self.k() - 1], &all)?)?)
    }

    pub fn weight_of(&self, c: Config) -> Result<S> {
        let split = self.levels.split(c);
        if split.iter().any(|p| p.len() != 2 * self.n) {
            return Ok(S::zero());
        }
        self.weight(&split)
    }

    pub fn prob_table(&self) -> Result<ProbTable<S>> {
        let z = self.partition();
        if z.near_zero(0.0) {
            return Err(Error::Singular { det: z.render() });
        }
        ProbTable::from_fn(self.levels.total(), |c| Ok(self.weight_of(c)? / z.clone()))
    }

    /// Kernel with 2x2 blocks; rows `2p, 2p+1` belong to flattened point `p`.
    pub fn kernel(&self) -> Result<PfKernel<S>> {
        let k = self.k();
        let ninv = inverse(self.n_matrix().as_matrix())?;
        let eps = self.epsilon.as_matrix();
        let xnx = self
            .xi
            .mul(&ninv)
            .and_then(|a| a.mul(&self.xi.transpose()))
            .expect("validated shapes");
        // a_i = V_[i,k); b_i = eps V_[1,i); c = V_[1,k)
        let a: Vec<Matrix<S>> = (1..=k).map(|i| self.chain(i, k)).collect();
        let b: Vec<Matrix<S>> = (1..=k)
            .map(|i| eps.mul(&self.chain(1, i)).expect("validated shapes"))
            .collect();
        let c = self.chain(1, k);
        let ct = c.transpose();
        let total = self.levels.total();
        let mut out = Matrix::zeros(2 * total, 2 * total);
        for i in 1..=k {
            // Row factors shared by every column block.
            let r11 = a[i - 1].mul(&xnx).expect("shape");
            // (eps V_[1,i))^t = -V_[1,i)^t eps
            let r22 = b[i - 1]
                .transpose()
                .mul(&c)
                .and_then(|m| m.mul(&xnx))
                .expect("shape");
            for j in 1..=k {
                let k11 = r11.mul(&a[j - 1].transpose()).expect("shape");
                let k12 = r11
                    .mul(&ct)
                    .and_then(|m| m.mul(&b[j - 1]))
                    .and_then(|m| m.sub(&self.v_interval(i, j)))
                    .expect("shape");
                let k21 = r22
                    .mul(&a[j - 1].transpose())
                    .and_then(|m| m.add(&self.v_interval(j, i).transpose()))
                    .expect("shape");
                // -V_[1,i)^t eps V_[1,k) XNX V_[1,k)^t eps V_[1,j) + V_[1,i)^t eps V_[1,j)
                let k22 = r22
                    .mul(&ct)
                    .and_then(|m| m.mul(&b[j - 1]))
                    .and_then(|m| m.add(&self.chain(1, i).transpose().mul(&b[j - 1])?))
                    .expect("shape");
                let (oi, oj) = (self.levels.offset(i), self.levels.offset(j));
                for x in 0..self.levels.size(i) {
                    for y in 0..self.levels.size(j) {
                        let (r, s) = (2 * (oi + x), 2 * (oj + y));
                        out[(r, s)] = k11[(x, y)].clone();
                        out[(r, s + 1)] = k12[(x, y)].clone();
                        out[(r + 1, s)] = k21[(x, y)].clone();
                        out[(r + 1, s + 1)] = k22[(x, y)].clone();
                    }
                }
            }
        }
        PfKernel::new(self.levels.flat_ground(), SkewMatrix::new(out)?)
    }

    /// Conditional Pfaffian L-ensemble with `n` virtual points (rows `0..2n`)
    /// ahead of the levels.
    pub fn embed_l(&self) -> Result<PfLEnsemble<S>> {
        let v = self.n;
        let total = v + self.levels.total();
        let mut l = Matrix::zeros(2 * total, 2 * total);
        let primed = |level: usize, x: usize| 2 * (v + self.levels.offset(level) + x);
        let k = self.k();
        for x in 0..self.levels.size(k) {
            for a in 0..2 * v {
                l[(a, primed(k, x) + 1)] = self.xi[(x, a)].clone();
                l[(primed(k, x) + 1, a)] = -self.xi[(x, a)].clone();
            }
        }
        for x in 0..self.levels.size(1) {
            for y in 0..self.levels.size(1) {
                l[(primed(1, x), primed(1, y))] = self.epsilon[(x, y)].clone();
            }
        }
        for (m, vm) in self.vs.iter().enumerate() {
            let (lo, hi) = (m + 1, m + 2);
            for x in 0..self.levels.size(lo) {
                for y in 0..self.levels.size(hi) {
                    l[(primed(lo, x) + 1, primed(hi, y))] = vm[(x, y)].clone();
                    l[(primed(hi, y), primed(lo, x) + 1)] = -vm[(x, y)].clone();
                }
            }
        }
        let mut labels: Vec<String> = (1..=v).map(|i| format!("virtual:{i}")).collect();
        labels.extend(self.levels.flat_ground().labels().iter().cloned());
        let ground = GroundSet::new(labels)?;
        let window = Config(Config::full(self.levels.total()).0 << v);
        PfLEnsemble::with_window(ground, SkewMatrix::new(l)?, window)
    }

    /// `{"levels":[[labels]...],"n":n,"epsilon":m,"Vs":[m...],"Xi":m}`; `n` is
    /// half the number of points per level.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = json::as_object(v, "pf em spec")?;
        let levels = levels_from_json(json::field(obj, "levels")?)?;
        let n = json::field_usize(obj, "n")?;
        let eps = SkewMatrix::new(json::matrix_from_json(json::field(obj, "epsilon")?, "epsilon")?)?;
        let vs = match obj.get("Vs") {
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(m, w)| json::matrix_from_json(w, &format!("Vs[{m}]")))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
            Some(_) => return Err(Error::Json("Vs: expected array of matrices".into())),
        };
        let xi = json::matrix_from_json(json::field(obj, "Xi")?, "Xi")?;
        Self::new(levels, n, eps, vs, xi)
    }
}
