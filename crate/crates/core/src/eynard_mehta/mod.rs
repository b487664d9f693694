//! Multi-level determinantal and Pfaffian processes with product-form weights.
//!
//! Levels are numbered from 1. Level points are flattened in level order into
//! one [`GroundSet`] whose labels read `"level:label"`.

mod determinantal;
mod pfaffian_em;

pub use determinantal::{EMSpec, KernelReading};
pub use pfaffian_em::PfEMSpec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::point_process::{Config, GroundSet};
use crate::scalar::Scalar;

/// A point of level `level` (1-based) with index `point` inside that level.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelPoint {
    pub level: usize,
    pub point: usize,
}

/// Flattening of `X^(1) + ... + X^(k)` into consecutive indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Levels {
    sets: Vec<GroundSet>,
    offsets: Vec<usize>,
}

impl Levels {
    pub fn new(sets: Vec<GroundSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Invalid("at least one level is required".into()));
        }
        let mut offsets = Vec::with_capacity(sets.len() + 1);
        let mut acc = 0;
        for s in &sets {
            offsets.push(acc);
            acc += s.len();
        }
        offsets.push(acc);
        Ok(Self { sets, offsets })
    }

    /// Number of levels `k`.
    pub fn count(&self) -> usize {
        self.sets.len()
    }

    /// Level `i`, 1-based.
    pub fn level(&self, i: usize) -> &GroundSet {
        &self.sets[i - 1]
    }

    pub fn size(&self, i: usize) -> usize {
        self.sets[i - 1].len()
    }

    pub fn total(&self) -> usize {
        self.offsets[self.sets.len()]
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i - 1]
    }

    pub fn flat_index(&self, p: LevelPoint) -> Result<usize> {
        if p.level == 0 || p.level > self.count() || p.point >= self.size(p.level) {
            return Err(Error::IndexOutOfRange {
                index: p.point,
                dim: if p.level == 0 || p.level > self.count() {
                    0
                } else {
                    self.size(p.level)
                },
            });
        }
        Ok(self.offset(p.level) + p.point)
    }

    pub fn level_point(&self, flat: usize) -> LevelPoint {
        let level = (1..=self.count())
            .find(|&i| flat < self.offsets[i])
            .expect("flat index in range");
        LevelPoint {
            level,
            point: flat - self.offset(level),
        }
    }

    pub fn flat_ground(&self) -> GroundSet {
        let labels = self
            .sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.labels().iter().map(move |l| format!("{}:{l}", i + 1)))
            .collect();
        GroundSet::new(labels).expect("level-prefixed labels are distinct")
    }

    /// Mask of level `i` inside the flattened ground set.
    pub fn level_mask(&self, i: usize) -> Config {
        Config(Config::full(self.size(i)).0 << self.offset(i))
    }

    /// Per-level point lists of a flattened configuration.
    pub fn split(&self, c: Config) -> Vec<Vec<usize>> {
        (1..=self.count())
            .map(|i| {
                c.compress(self.level_mask(i)).points().collect()
            })
            .collect()
    }

    /// Flattened configuration from per-level point lists.
    pub fn join(&self, per_level: &[Vec<usize>]) -> Result<Config> {
        if per_level.len() != self.count() {
            return Err(Error::DimensionMismatch {
                op: "Levels::join",
                detail: format!("{} level configs for {} levels", per_level.len(), self.count()),
            });
        }
        let mut mask = 0u64;
        for (i, pts) in per_level.iter().enumerate() {
            for &p in pts {
                mask |= 1 << self.flat_index(LevelPoint { level: i + 1, point: p })?;
            }
        }
        Ok(Config(mask))
    }
}

/// Product `A_i A_{i+1} ... A_{j-1}` of a chain of transition matrices, with
/// the empty product (`i == j`) read as the identity of size `dim_i`.
pub(crate) fn chain<S: Scalar>(mats: &[Matrix<S>], i: usize, j: usize, dim_i: usize) -> Matrix<S> {
    assert!(i <= j, "chain({i},{j}) needs i <= j");
    let mut acc = Matrix::identity(dim_i);
    for m in &mats[i - 1..j - 1] {
        acc = acc.mul(m).expect("validated chain dimensions");
    }
    acc
}

/// `A_{[i,j)}`: the chain product for `i < j` and the zero matrix otherwise.
pub(crate) fn interval<S: Scalar>(
    mats: &[Matrix<S>],
    levels: &Levels,
    i: usize,
    j: usize,
) -> Matrix<S> {
    if i < j {
        chain(mats, i, j, levels.size(i))
    } else {
        Matrix::zeros(levels.size(i), levels.size(j))
    }
}

pub(crate) fn check_chain<S: Scalar>(levels: &Levels, mats: &[Matrix<S>], name: &str) -> Result<()> {
    let k = levels.count();
    if mats.len() + 1 != k {
        return Err(Error::DimensionMismatch {
            op: "chain",
            detail: format!("{} {name} matrices for {k} levels", mats.len()),
        });
    }
    for (m, w) in mats.iter().enumerate() {
        let (r, c) = (levels.size(m + 1), levels.size(m + 2));
        if w.rows() != r || w.cols() != c {
            return Err(Error::DimensionMismatch {
                op: "chain",
                detail: format!(
                    "{name}_{} is {}x{}, levels need {r}x{c}",
                    m + 1,
                    w.rows(),
                    w.cols()
                ),
            });
        }
    }
    Ok(())
}

pub(crate) fn check_shape<S: Scalar>(m: &Matrix<S>, rows: usize, cols: usize, name: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::DimensionMismatch {
            op: "eynard_mehta",
            detail: format!("{name} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols()),
        });
    }
    Ok(())
}

/// Parses `"levels":[[labels]...]`.
pub(crate) fn levels_from_json(v: &serde_json::Value) -> Result<Levels> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json("levels: expected array of label arrays".into()))?;
    let sets = arr
        .iter()
        .enumerate()
        .map(|(i, l)| GroundSet::new(crate::json::labels_from_json(l, &format!("levels[{i}]"))?))
        .collect::<Result<Vec<_>>>()?;
    Levels::new(sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_and_split() {
        let lv = Levels::new(vec![GroundSet::range(2), GroundSet::range(3)]).unwrap();
        assert_eq!(lv.total(), 5);
        assert_eq!(lv.level_point(3), LevelPoint { level: 2, point: 1 });
        let c = lv.join(&[vec![1], vec![0, 2]]).unwrap();
        assert_eq!(c, Config(0b10110));
        assert_eq!(lv.split(c), vec![vec![1], vec![0, 2]]);
        assert_eq!(lv.flat_ground().labels()[2], "2:0");
    }
}
