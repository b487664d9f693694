use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symfunc::Partition;

use super::{occupies, SchurSpec, SpacePoint};

/// Interlacing sequences with every `|λ(i)| <= cutoff`, with their weights.
#[derive(Clone, Debug)]
pub struct Enumeration<S> {
    entries: Vec<(Vec<Partition>, S)>,
    z: S,
    cutoff: usize,
    tail: f64,
}

/// Normalized enumerated correlation and a bound on what the cutoff dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Correlation<S> {
    pub value: S,
    pub tail_bound: f64,
}

impl<S: Scalar> Correlation<S> {
    /// Fails when the dropped mass could exceed `tol`.
    pub fn require(self, tol: f64) -> Result<Self> {
        if self.tail_bound > tol {
            return Err(Error::TailTooLarge {
                bound: self.tail_bound,
                tol,
            });
        }
        Ok(self)
    }
}

impl<S: Scalar> Enumeration<S> {
    pub fn new(spec: &SchurSpec<S>, cutoff: usize) -> Result<Self> {
        let z = spec.partition_function()?;
        if z.is_zero() {
            return Err(Error::Singular { det: z.render() });
        }
        let tail = weight_tail_bound(spec, cutoff)?;
        let t = spec.t();
        // Longest λ(i) allowed by the variables to its right.
        let mut reach = vec![0usize; t + 2];
        for i in (1..=t).rev() {
            reach[i] = reach[i + 1] + spec.minus(i).len();
        }
        let mut first_len = reach[1];
        if !spec.is_pfaffian() {
            first_len = first_len.min(spec.plus(0).len());
        }
        let mut walk = Walk {
            spec,
            cutoff,
            reach,
            lambdas: Vec::with_capacity(t),
            entries: Vec::new(),
        };
        for m in 0..=cutoff {
            for la in Partition::bounded(m, m, first_len) {
                let w = spec.left_factor(&la);
                if w.is_zero() {
                    continue;
                }
                walk.lambdas.push(la);
                walk.descend(1, w);
                walk.lambdas.pop();
            }
        }
        Ok(Self {
            entries: walk.entries,
            z,
            cutoff,
            tail,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn partition_function(&self) -> &S {
        &self.z
    }

    /// Sum of the enumerated (unnormalized) weights.
    pub fn weight_sum(&self) -> S {
        self.entries.iter().fold(S::zero(), |a, (_, w)| a + w.clone())
    }

    /// Bound on the dropped weight, unnormalized.
    pub fn weight_tail(&self) -> f64 {
        self.tail
    }

    /// Bound on the dropped probability.
    pub fn tail_bound(&self) -> f64 {
        self.tail / self.z.magnitude()
    }

    pub fn correlation(&self, points: &[SpacePoint]) -> Result<Correlation<S>> {
        let t = self.entries.first().map_or(0, |(l, _)| l.len());
        if let Some(p) = points.iter().find(|p| p.level == 0 || p.level > t) {
            return Err(Error::Invalid(format!("point {p} outside levels 1..={t}")));
        }
        let value = self
            .entries
            .iter()
            .filter(|(la, _)| points.iter().all(|p| occupies(&la[p.level - 1], p.u)))
            .fold(S::zero(), |a, (_, w)| a + w.clone());
        Ok(Correlation {
            value: value / self.z.clone(),
            tail_bound: self.tail_bound(),
        })
    }
}

struct Walk<'a, S> {
    spec: &'a SchurSpec<S>,
    cutoff: usize,
    reach: Vec<usize>,
    lambdas: Vec<Partition>,
    entries: Vec<(Vec<Partition>, S)>,
}

impl<S: Scalar> Walk<'_, S> {
    /// `lambdas` holds `λ(1..=i)`; `acc` their factors so far.
    fn descend(&mut self, i: usize, acc: S) {
        let spec = self.spec;
        let la = self.lambdas[i - 1].clone();
        if i == spec.t() {
            let last = spec_factor(&la, &Partition::empty(), spec.minus(i).len(), || {
                crate::symfunc::schur(&la, spec.minus(i))
            });
            let w = acc * last;
            if !w.is_zero() {
                self.entries.push((self.lambdas.clone(), w));
            }
            return;
        }
        for mu in la.subpartitions() {
            if mu.len() > self.reach[i + 1] {
                continue;
            }
            let f = spec_factor(&la, &mu, spec.minus(i).len(), || {
                crate::symfunc::skew_schur(&la, &mu, spec.minus(i))
            });
            if f.is_zero() {
                continue;
            }
            let acc_mu = acc.clone() * f;
            let max_len = self.reach[i + 1].min(mu.len() + spec.plus(i).len());
            for extra in 0..=self.cutoff - mu.size() {
                for next in mu.superpartitions(extra, max_len) {
                    let g = spec_factor(&next, &mu, spec.plus(i).len(), || {
                        crate::symfunc::skew_schur(&next, &mu, spec.plus(i))
                    });
                    if g.is_zero() {
                        continue;
                    }
                    self.lambdas.push(next);
                    self.descend(i + 1, acc_mu.clone() * g);
                    self.lambdas.pop();
                }
            }
        }
    }
}

fn spec_factor<S: Scalar>(la: &Partition, mu: &Partition, vars: usize, eval: impl FnOnce() -> S) -> S {
    if super::vanishes(la, mu, vars) {
        S::zero()
    } else {
        eval()
    }
}

/// Normalized correlation of `points` from sequences with `|λ(i)| <= cutoff`.
pub fn brute_correlations<S: Scalar>(
    spec: &SchurSpec<S>,
    points: &[SpacePoint],
    cutoff: usize,
) -> Result<Correlation<S>> {
    Enumeration::new(spec, cutoff)?.correlation(points)
}

/// Bound on the total `|weight|` of sequences with some `|λ(i)| > cutoff`.
///
/// Every factor has nonnegative coefficients, so `|weight| <= weight(|vars|)`,
/// and the `ρ⁻`-degree of a sequence is at least every `|λ(i)|`. Grading the
/// product formula for `Z` (or `Z°`) by `ρ⁻`-degree, the dropped part is at most
/// `F(1) - sum_{D <= cutoff} [t^D] F(t)` with `F(t) = Z(|ρ⁺|, t|ρ⁻|)`.
pub fn weight_tail_bound<S: Scalar>(spec: &SchurSpec<S>, cutoff: usize) -> Result<f64> {
    let t = spec.t();
    let mut factors: Vec<(f64, usize)> = Vec::new();
    for i in 0..t {
        for j in i + 1..=t {
            for x in &spec.plus(i).vars {
                for y in &spec.minus(j).vars {
                    factors.push((x.magnitude() * y.magnitude(), 1));
                }
            }
        }
    }
    if spec.is_pfaffian() {
        let all: Vec<f64> = spec
            .rho_minus()
            .iter()
            .flat_map(|r| r.vars.iter().map(Scalar::magnitude))
            .collect();
        for (a, x) in all.iter().enumerate() {
            for y in &all[a + 1..] {
                factors.push((x * y, 2));
            }
        }
    }
    let mut coeffs = vec![0.0; cutoff + 1];
    coeffs[0] = 1.0;
    let mut full = 1.0;
    for &(a, k) in &factors {
        if a >= 1.0 {
            return Err(Error::Divergent(format!("{a}")));
        }
        full /= 1.0 - a;
        // Multiply by 1 / (1 - a t^k).
        for d in k..=cutoff {
            coeffs[d] += a * coeffs[d - k];
        }
    }
    let head: f64 = coeffs.iter().sum();
    Ok((full - head).max(0.0) + 4.0 * f64::EPSILON * full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{C, Q};

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn one_row_measure() {
        // P(λ = (r)) = (1 - xy)(xy)^r; the point (1, 0) means r = 1.
        let spec = SchurSpec::single_variable(&[C::new(0.5, 0.0)], &[C::new(0.5, 0.0)], false).unwrap();
        let c = brute_correlations(&spec, &[SpacePoint::new(1, 0)], 40).unwrap();
        assert!((c.value - C::new(3.0 / 16.0, 0.0)).norm() <= 1e-12 + c.tail_bound);
        assert!(c.tail_bound < 1e-14);
    }

    #[test]
    fn empty_point_set_is_mass() {
        let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 3)], &[q(1, 4), q(1, 2)], false).unwrap();
        let e = Enumeration::new(&spec, 6).unwrap();
        let one = e.correlation(&[]).unwrap();
        let missing = 1.0 - one.value.to_complex().re;
        assert!(missing >= 0.0 && missing <= one.tail_bound);
    }

    #[test]
    fn sequences_match_weight() {
        let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 3)], &[q(1, 4), q(1, 2)], true).unwrap();
        let e = Enumeration::new(&spec, 3).unwrap();
        assert!(!e.is_empty());
        for (la, w) in &e.entries {
            assert!(la.iter().all(|l| l.size() <= 3));
            assert!(!w.is_zero());
        }
    }

    #[test]
    fn tail_bound_shrinks() {
        let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 2)], &[q(1, 2), q(1, 2)], true).unwrap();
        let b: Vec<f64> = [4, 8, 12].iter().map(|&c| weight_tail_bound(&spec, c).unwrap()).collect();
        assert!(b[0] > b[1] && b[1] > b[2]);
    }
}
