//! Determinantal and Pfaffian processes on a finite ground set.
//!
//! Configurations are bitmasks: bit `i` stands for the `i`-th label of the
//! [`GroundSet`]. Pfaffian objects address point `i` through rows `2i` (primed
//! copy) and `2i+1` (double-primed copy) of their skew matrices.

mod kernel;
mod lensemble;
mod pf_lensemble;
mod table;

pub use kernel::{Kernel, PfKernel};
pub use lensemble::LEnsemble;
pub use pf_lensemble::PfLEnsemble;
pub use table::{
    brute_force_correlations, enumerate_sample, enumerate_samples, enumeration_cap, ProbTable,
};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::json;
use crate::scalar::Scalar;

/// Default enumeration cap in points (2^20 configurations).
pub const DEFAULT_CAP: usize = 20;

/// Ordered list of unique point labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        if labels.len() > 63 {
            return Err(Error::Invalid(format!(
                "{} points do not fit a 64-bit configuration mask",
                labels.len()
            )));
        }
        Ok(Self { labels })
    }

    /// Points labelled `0..n`.
    pub fn range(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect()).expect("distinct labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask covering every point.
    pub fn full(&self) -> Config {
        Config::full(self.len())
    }

    /// Mask of the given labels.
    pub fn config_of(&self, labels: &[String]) -> Result<Config> {
        let mut mask = 0u64;
        for l in labels {
            let i = self
                .position(l)
                .ok_or_else(|| Error::Invalid(format!("unknown label {l:?}")))?;
            mask |= 1 << i;
        }
        Ok(Config(mask))
    }

    /// Restriction to the points of `mask`, keeping their order.
    pub fn restrict(&self, mask: Config) -> Self {
        Self {
            labels: mask.points().map(|i| self.labels[i].clone()).collect(),
        }
    }

    pub fn check(&self, c: Config) -> Result<()> {
        if c.0 >> self.len() != 0 {
            return Err(Error::Invalid(format!(
                "configuration {:#b} has points outside a ground set of {}",
                c.0,
                self.len()
            )));
        }
        Ok(())
    }
}

/// Subset of a ground set as a bitmask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Config(pub u64);

impl Config {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn full(n: usize) -> Self {
        Self(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn from_points(points: &[usize]) -> Self {
        Self(points.iter().fold(0, |m, &p| m | 1 << p))
    }

    pub fn contains(self, point: usize) -> bool {
        self.0 >> point & 1 == 1
    }

    pub fn is_subset_of(self, other: Config) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&b| self.0 >> b & 1 == 1)
    }

    pub fn union(self, other: Config) -> Self {
        Self(self.0 | other.0)
    }

    /// Re-indexes a subset of `window` so the window's points become `0..|window|`.
    pub fn compress(self, window: Config) -> Self {
        Self(
            window
                .points()
                .enumerate()
                .filter(|&(_, p)| self.contains(p))
                .fold(0, |m, (k, _)| m | 1 << k),
        )
    }

    /// Inverse of [`Config::compress`].
    pub fn expand(self, window: Config) -> Self {
        Self(
            window
                .points()
                .enumerate()
                .filter(|&(k, _)| self.contains(k))
                .fold(0, |m, (_, p)| m | 1 << p),
        )
    }
}

/// Row indices `2i, 2i+1` of every point of `c`.
pub(crate) fn doubled_rows(c: Config) -> Vec<usize> {
    c.points().flat_map(|i| [2 * i, 2 * i + 1]).collect()
}

/// Reads `{"ground":[labels],"L":matrix,"window":[labels]}`; `window` is optional.
pub fn parse_ensemble_parts<S: Scalar>(
    v: &serde_json::Value,
) -> Result<(GroundSet, crate::linalg::Matrix<S>, Config)> {
    let obj = json::as_object(v, "ensemble")?;
    let ground = GroundSet::new(json::labels_from_json(json::field(obj, "ground")?, "ground")?)?;
    let l = json::matrix_from_json(json::field(obj, "L")?, "L")?;
    let window = match obj.get("window") {
        Some(w) if !w.is_null() => ground.config_of(&json::labels_from_json(w, "window")?)?,
        _ => ground.full(),
    };
    Ok((ground, l, window))
}

impl<S: Scalar> LEnsemble<S> {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let (ground, l, window) = parse_ensemble_parts(v)?;
        Self::with_window(ground, l, window)
    }
}

impl<S: Scalar> PfLEnsemble<S> {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let (ground, l, window) = parse_ensemble_parts(v)?;
        Self::with_window(ground, crate::linalg::SkewMatrix::new(l)?, window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GroundSet::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn compress_expand_inverse() {
        let window = Config(0b1011_0110);
        let sub = Config(0b1000_0100);
        let c = sub.compress(window);
        assert_eq!(c, Config(0b1_0010));
        assert_eq!(c.expand(window), sub);
    }

    #[test]
    fn config_from_labels() {
        let g = GroundSet::new(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(g.config_of(&["z".into(), "x".into()]).unwrap(), Config(0b101));
        assert!(g.config_of(&["w".into()]).is_err());
        assert!(g.check(Config(0b1000)).is_err());
    }
}
