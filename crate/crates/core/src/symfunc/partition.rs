use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zero inside partition {parts:?}")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// One row `(r)`.
    pub fn row(r: usize) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            Self(vec![r])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `lambda_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// `l_i = lambda_i - i` for `i = 1..=count`.
    pub fn shifted(&self, count: usize) -> Vec<i64> {
        (1..=count).map(|i| self.part(i) as i64 - i as i64).collect()
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// `self / other` is a horizontal strip: `other ⊆ self` with interlacing rows.
    pub fn horizontal_strip_over(&self, other: &Partition) -> bool {
        self.contains(other) && (1..=self.len()).all(|i| other.part(i) >= self.part(i + 1))
    }

    /// Every column has even length.
    pub fn has_even_conjugate(&self) -> bool {
        self.conjugate().0.iter().all(|c| c % 2 == 0)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        Self::bounded(n, n, usize::MAX)
    }

    /// Partitions of `n` with at most `max_len` parts, each at most `max_part`.
    pub fn bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, max_part.min(n), max_len, &mut cur, &mut out);
        out
    }

    /// Every `kappa ⊆ self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        sub_fill(&self.0, 0, usize::MAX, &mut cur, &mut out);
        out
    }

    /// Every `nu` with `self ⊆ nu`, `|nu| = |self| + extra`, `l(nu) <= max_len`.
    pub fn superpartitions(&self, extra: usize, max_len: usize) -> Vec<Partition> {
        let target = self.size() + extra;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        sup_fill(self, 1, target, usize::MAX, max_len, &mut cur, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|&p| Value::from(p)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json(format!("partition: expected integer array, got {v}")))?;
        let parts = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|p| p as usize)
                    .ok_or_else(|| Error::Json(format!("partition: bad part {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

fn fill(n: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if max_len == 0 {
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        cur.push(p);
        fill(n - p, p, max_len - 1, cur, out);
        cur.pop();
    }
}

fn sub_fill(outer: &[usize], i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    // Rows from i on may all be zero.
    out.push(Partition(cur.clone()));
    if i == outer.len() {
        return;
    }
    for p in 1..=outer[i].min(cap) {
        cur.push(p);
        sub_fill(outer, i + 1, p, cur, out);
        cur.pop();
    }
}

fn sup_fill(
    inner: &Partition,
    i: usize,
    remaining: usize,
    cap: usize,
    max_len: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    let lo = inner.part(i);
    if remaining == 0 && lo == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if i > max_len {
        return;
    }
    // Rows below still need at least their inner parts.
    let need_below: usize = inner.0.iter().skip(i).sum();
    if remaining < lo + need_below {
        return;
    }
    let hi = cap.min(remaining - need_below);
    if hi < lo.max(1) {
        return;
    }
    for p in (lo.max(1)..=hi).rev() {
        cur.push(p);
        sup_fill(inner, i + 1, remaining - p, p, max_len, cur, out);
        cur.pop();
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[3, 1, 0, 0]), p(&[3, 1]));
    }

    #[test]
    fn conjugate_involution() {
        let l = p(&[4, 2, 2, 1]);
        assert_eq!(l.conjugate(), p(&[4, 3, 1, 1]));
        assert_eq!(l.conjugate().conjugate(), l);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Partition::bounded(6, 6, 2).len(), 4);
    }

    #[test]
    fn subpartition_count() {
        // Subdiagrams of a 2x2 square: lattice paths, C(4,2) = 6.
        assert_eq!(p(&[2, 2]).subpartitions().len(), 6);
        assert_eq!(Partition::empty().subpartitions(), vec![Partition::empty()]);
    }

    #[test]
    fn superpartitions_of_row() {
        let sups = p(&[1]).superpartitions(2, 3);
        assert_eq!(sups, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(p(&[1]).superpartitions(2, 2).len(), 2);
    }

    #[test]
    fn shifted_coordinates() {
        assert_eq!(p(&[3, 1]).shifted(4), vec![2, -1, -3, -4]);
    }

    #[test]
    fn strips_and_parity() {
        assert!(p(&[3, 1]).horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).horizontal_strip_over(&p(&[2])));
        assert!(!p(&[2, 2]).horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).has_even_conjugate());
        assert!(!p(&[2, 1]).has_even_conjugate());
    }
}
