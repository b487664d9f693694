//! Schur processes and Pfaffian Schur processes on interlacing sequences
//! `λ(1) ⊇ μ(1) ⊆ λ(2) ⊇ ... ⊆ λ(T)`.
//!
//! `rho_plus[i]` holds `ρ⁺_i` for `i = 0..T`, `rho_minus[j - 1]` holds `ρ⁻_j`
//! for `j = 1..=T`. A sequence is seen through its points `(i, λ(i)_j - j)`;
//! below the last nonzero row every level carries the frozen staircase
//! `-l-1, -l-2, ...`.

mod bridge;
mod contour;
mod enumerate;
mod kernel;
mod toeplitz;

pub use bridge::em_bridge;
pub use contour::{
    contour_integrate, contour_integrate_factored, ContourConfig, Quadrature, DEFAULT_QUAD_POINTS,
    MAX_QUAD_POINTS, QUAD_TOL,
};
pub use enumerate::{brute_correlations, weight_tail_bound, Correlation, Enumeration};
pub use kernel::{
    pf_block_matrix, pf_k11, pf_k12, pf_k22, pf_schur_kernel, radii, schur_kernel,
    schur_kernel_matrix, schur_kernel_on, schur_kernel_with, K12Case, Radii, RadiusCase,
};
pub use toeplitz::{deep_floor, epsilon_toeplitz, toeplitz_w, toeplitz_w_symbol};

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json as js;
use crate::point_process::{Config, GroundSet};
use crate::scalar::{Scalar, C};
use crate::symfunc::{pf_z, schur, schur_z, skew_schur, tau_pf, Partition, Specialization};

#[derive(Clone, Debug, PartialEq)]
pub struct SchurSpec<S> {
    rho_plus: Vec<Specialization<S>>,
    rho_minus: Vec<Specialization<S>>,
    pfaffian: bool,
}

impl<S: Scalar> SchurSpec<S> {
    pub fn new(
        rho_plus: Vec<Specialization<S>>,
        rho_minus: Vec<Specialization<S>>,
        pfaffian: bool,
    ) -> Result<Self> {
        if rho_plus.is_empty() || rho_plus.len() != rho_minus.len() {
            return Err(Error::DimensionMismatch {
                op: "SchurSpec",
                detail: format!(
                    "{} plus and {} minus specializations; need T >= 1 of each",
                    rho_plus.len(),
                    rho_minus.len()
                ),
            });
        }
        Ok(Self {
            rho_plus,
            rho_minus,
            pfaffian,
        })
    }

    /// One variable per specialization: `plus[i] = ρ⁺_i`, `minus[j-1] = ρ⁻_j`.
    pub fn single_variable(plus: &[S], minus: &[S], pfaffian: bool) -> Result<Self> {
        Self::new(
            plus.iter().cloned().map(Specialization::single).collect(),
            minus.iter().cloned().map(Specialization::single).collect(),
            pfaffian,
        )
    }

    /// Number of levels `T`.
    pub fn t(&self) -> usize {
        self.rho_plus.len()
    }

    pub fn is_pfaffian(&self) -> bool {
        self.pfaffian
    }

    /// `ρ⁺_i`, `0 <= i < T`.
    pub fn plus(&self, i: usize) -> &Specialization<S> {
        &self.rho_plus[i]
    }

    /// `ρ⁻_j`, `1 <= j <= T`.
    pub fn minus(&self, j: usize) -> &Specialization<S> {
        &self.rho_minus[j - 1]
    }

    pub fn rho_plus(&self) -> &[Specialization<S>] {
        &self.rho_plus
    }

    pub fn rho_minus(&self) -> &[Specialization<S>] {
        &self.rho_minus
    }

    /// `ρ⁺_a ∪ ... ∪ ρ⁺_{b-1}`.
    pub fn plus_range(&self, a: usize, b: usize) -> Specialization<S> {
        Specialization::union_all(self.rho_plus[a..b.max(a)].iter())
    }

    /// `ρ⁻_a ∪ ... ∪ ρ⁻_{b-1}`.
    pub fn minus_range(&self, a: usize, b: usize) -> Specialization<S> {
        if b <= a {
            return Specialization::empty();
        }
        Specialization::union_all(self.rho_minus[a - 1..b - 1].iter())
    }

    /// Largest variable modulus.
    pub fn max_abs(&self) -> f64 {
        self.rho_plus
            .iter()
            .chain(&self.rho_minus)
            .map(Specialization::max_abs)
            .fold(0.0, f64::max)
    }

    /// `Z`, or `Z°` in Pfaffian mode.
    pub fn partition_function(&self) -> Result<S> {
        if self.pfaffian {
            pf_z(&self.rho_plus, &self.rho_minus)
        } else {
            schur_z(&self.rho_plus, &self.rho_minus)
        }
    }

    /// Product of the `2T` factors; zero for sequences that do not interlace.
    pub fn weight(&self, seq: &PartitionSequence) -> Result<S> {
        let t = self.t();
        if seq.lambdas.len() != t {
            return Err(Error::DimensionMismatch {
                op: "schur weight",
                detail: format!("{} partitions for T = {t}", seq.lambdas.len()),
            });
        }
        let (la, mu) = (&seq.lambdas, &seq.mus);
        let mut acc = self.left_factor(&la[0]);
        for i in 1..t {
            acc = acc * skew_factor(&la[i - 1], &mu[i - 1], self.minus(i));
            acc = acc * skew_factor(&la[i], &mu[i - 1], self.plus(i));
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        Ok(acc * skew_factor(&la[t - 1], &Partition::empty(), self.minus(t)))
    }

    /// `s_λ(ρ⁺_0)`, or `τ_λ(ρ⁺_0)` in Pfaffian mode.
    pub(crate) fn left_factor(&self, la: &Partition) -> S {
        if self.pfaffian {
            tau_pf(la, self.plus(0))
        } else if la.len() > self.plus(0).len() {
            S::zero()
        } else {
            schur(la, self.plus(0))
        }
    }

    pub fn to_complex(&self) -> SchurSpec<C> {
        SchurSpec {
            rho_plus: self.rho_plus.iter().map(Specialization::to_complex).collect(),
            rho_minus: self.rho_minus.iter().map(Specialization::to_complex).collect(),
            pfaffian: self.pfaffian,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "T": self.t(),
            "rho_plus": self.rho_plus.iter().map(Specialization::to_json).collect::<Vec<_>>(),
            "rho_minus": self.rho_minus.iter().map(Specialization::to_json).collect::<Vec<_>>(),
            "pfaffian": self.pfaffian,
        })
    }

    /// `{"rho_plus":[...],"rho_minus":[...],"pfaffian":bool}`; `"T"` is checked
    /// when present.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = js::as_object(v, "schur spec")?;
        let list = |key: &str| -> Result<Vec<Specialization<S>>> {
            js::field(obj, key)?
                .as_array()
                .ok_or_else(|| Error::Json(format!("{key}: expected array of specializations")))?
                .iter()
                .map(Specialization::from_json)
                .collect()
        };
        let pfaffian = match obj.get("pfaffian") {
            None => false,
            Some(b) => b
                .as_bool()
                .ok_or_else(|| Error::Json("pfaffian: expected boolean".into()))?,
        };
        let spec = Self::new(list("rho_plus")?, list("rho_minus")?, pfaffian)?;
        if obj.contains_key("T") && js::field_usize(obj, "T")? != spec.t() {
            return Err(Error::Json(format!(
                "T = {} but {} specializations were given",
                js::field_usize(obj, "T")?,
                spec.t()
            )));
        }
        Ok(spec)
    }
}

/// `s_{λ/μ}`, exactly zero when some column of `λ/μ` is longer than the
/// number of variables.
fn skew_factor<S: Scalar>(la: &Partition, mu: &Partition, rho: &Specialization<S>) -> S {
    if vanishes(la, mu, rho.len()) {
        S::zero()
    } else {
        skew_schur(la, mu, rho)
    }
}

pub(crate) fn vanishes(la: &Partition, mu: &Partition, vars: usize) -> bool {
    if !la.contains(mu) {
        return true;
    }
    let (lc, mc) = (la.conjugate(), mu.conjugate());
    (1..=lc.len()).any(|c| lc.part(c) - mc.part(c) > vars)
}

/// `λ(1), ..., λ(T)` with `μ(1), ..., μ(T-1)` between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSequence {
    pub lambdas: Vec<Partition>,
    pub mus: Vec<Partition>,
}

impl PartitionSequence {
    pub fn new(lambdas: Vec<Partition>, mus: Vec<Partition>) -> Result<Self> {
        if lambdas.is_empty() || mus.len() + 1 != lambdas.len() {
            return Err(Error::DimensionMismatch {
                op: "PartitionSequence",
                detail: format!("{} lambdas and {} mus", lambdas.len(), mus.len()),
            });
        }
        Ok(Self { lambdas, mus })
    }

    /// All partitions empty.
    pub fn empty(t: usize) -> Self {
        Self {
            lambdas: vec![Partition::empty(); t],
            mus: vec![Partition::empty(); t.saturating_sub(1)],
        }
    }

    pub fn t(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_interlacing(&self) -> bool {
        self.mus
            .iter()
            .enumerate()
            .all(|(i, m)| self.lambdas[i].contains(m) && self.lambdas[i + 1].contains(m))
    }

    /// Largest `|λ(i)|`.
    pub fn max_size(&self) -> usize {
        self.lambdas.iter().map(Partition::size).max().unwrap_or(0)
    }
}

/// `(level, u)` with `level` in `1..=T`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpacePoint {
    pub level: usize,
    pub u: i64,
}

impl SpacePoint {
    pub fn new(level: usize, u: i64) -> Self {
        Self { level, u }
    }
}

impl fmt::Display for SpacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.u)
    }
}

/// Parses `"(1,0),(2,-1)"`; whitespace is ignored.
pub fn parse_points(text: &str) -> Result<Vec<SpacePoint>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || Error::Invalid(format!("points: expected \"(i,u),(j,v),...\", got {text:?}"));
    let inner = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    inner
        .split("),(")
        .map(|pair| {
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            let level = a.parse::<usize>().map_err(|_| bad())?;
            let u = b.parse::<i64>().map_err(|_| bad())?;
            if level == 0 {
                return Err(Error::Invalid("points: levels start at 1".into()));
            }
            Ok(SpacePoint { level, u })
        })
        .collect()
}

/// Whether `u` is one of `λ_j - j`, `j >= 1`.
pub fn occupies(la: &Partition, u: i64) -> bool {
    let len = la.len() as i64;
    if u < -len {
        return true;
    }
    (1..=la.len()).any(|j| la.part(j) as i64 - j as i64 == u)
}

/// Integer positions `lo..=hi`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, u: i64) -> bool {
        (self.lo..=self.hi).contains(&u)
    }

    /// Row of `u` in matrices indexed by the window.
    pub fn index(&self, u: i64) -> usize {
        (u - self.lo) as usize
    }
}

/// Ground set `{1..T} × window` in level-major order, labels `"i:u"`.
pub fn space_ground(t: usize, window: Window) -> Result<GroundSet> {
    GroundSet::new(
        (1..=t)
            .flat_map(|i| window.positions().map(move |u| format!("{i}:{u}")))
            .collect(),
    )
}

/// Occupied `(level, u)` inside the window, over [`space_ground`].
pub fn config_of(seq: &PartitionSequence, window: Window) -> Result<Config> {
    let width = window.len();
    let mut mask = 0u64;
    for (i, la) in seq.lambdas.iter().enumerate() {
        let len = la.len();
        if len > 0 {
            let (top, bottom) = (la.part(1) as i64 - 1, la.part(len) as i64 - len as i64);
            if bottom < window.lo || top > window.hi {
                return Err(Error::WindowTooSmall(format!(
                    "level {} partition {la} has points in [{bottom}, {top}], window is [{}, {}]",
                    i + 1,
                    window.lo,
                    window.hi
                )));
            }
        }
        for u in window.positions() {
            if occupies(la, u) {
                let bit = i * width + window.index(u);
                if bit >= 63 {
                    return Err(Error::Invalid(format!(
                        "{} levels x {width} positions do not fit a 64-bit mask",
                        seq.t()
                    )));
                }
                mask |= 1 << bit;
            }
        }
    }
    Ok(Config(mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn empty_sequence_has_unit_weight() {
        for pf in [false, true] {
            let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 3)], &[q(1, 5), q(2, 7)], pf).unwrap();
            assert_eq!(spec.weight(&PartitionSequence::empty(2)).unwrap(), Q::one());
        }
    }

    #[test]
    fn one_row_weight() {
        let (x, y) = (q(1, 2), q(2, 3));
        let spec = SchurSpec::single_variable(std::slice::from_ref(&x), std::slice::from_ref(&y), false).unwrap();
        for r in 0..5 {
            let seq = PartitionSequence::new(vec![Partition::row(r)], vec![]).unwrap();
            assert_eq!(spec.weight(&seq).unwrap(), Scalar::pow(&(x.clone() * y.clone()), r as u32));
        }
    }

    #[test]
    fn non_interlacing_is_zero() {
        let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 3)], &[q(1, 5), q(2, 7)], false).unwrap();
        let seq = PartitionSequence::new(vec![p(&[1]), p(&[3])], vec![p(&[2])]).unwrap();
        assert!(!seq.is_interlacing());
        assert_eq!(spec.weight(&seq).unwrap(), Q::zero());
    }

    #[test]
    fn staircase_and_rows() {
        let w = Window::new(-4, 3).unwrap();
        let seq = |la: Partition| PartitionSequence::new(vec![la], vec![]).unwrap();
        let bits = |c: Config| -> Vec<i64> { c.points().map(|b| b as i64 + w.lo).collect() };
        assert_eq!(bits(config_of(&seq(Partition::empty()), w).unwrap()), vec![-4, -3, -2, -1]);
        assert_eq!(bits(config_of(&seq(p(&[2])), w).unwrap()), vec![-4, -3, -2, 1]);
        assert_eq!(bits(config_of(&seq(p(&[3, 1])), w).unwrap()), vec![-4, -3, -1, 2]);
        assert!(matches!(
            config_of(&seq(p(&[1, 1, 1, 1, 1, 1])), w),
            Err(Error::WindowTooSmall(_))
        ));
        assert!(config_of(&seq(p(&[5])), w).is_err());
    }

    #[test]
    fn point_lists() {
        assert_eq!(
            parse_points("(1,0), (2,-1)").unwrap(),
            vec![SpacePoint::new(1, 0), SpacePoint::new(2, -1)]
        );
        assert!(parse_points("(0,1)").is_err());
        assert!(parse_points("1,2").is_err());
        assert_eq!(parse_points("").unwrap(), vec![]);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 3)], &[q(1, 5), q(2, 7)], true).unwrap();
        assert_eq!(SchurSpec::<Q>::from_json(&spec.to_json()).unwrap(), spec);
        let bad = json!({"T": 3, "rho_plus": [[0.5]], "rho_minus": [[0.5]]});
        assert!(SchurSpec::<C>::from_json(&bad).is_err());
    }

    #[test]
    fn ranges() {
        let spec = SchurSpec::single_variable(&[q(1, 2), q(1, 3)], &[q(1, 5), q(2, 7)], false).unwrap();
        assert_eq!(spec.plus_range(0, 2).vars, vec![q(1, 2), q(1, 3)]);
        assert_eq!(spec.minus_range(2, 3).vars, vec![q(2, 7)]);
        assert!(spec.minus_range(2, 2).is_empty());
    }
}
