//! Partitions, `h_k`, Schur and skew Schur functions, `tau_lambda`, and the
//! product identities they satisfy, all at finite specializations.

mod partition;
mod specialization;

pub use partition::Partition;
pub use specialization::Specialization;
pub(crate) use specialization::h_at_index;

use crate::error::{Error, Result};
use crate::linalg::{det, pfaffian, Matrix, SkewMatrix};
use crate::scalar::Scalar;

/// `s_{la/mu}(rho) = det[h_{l_i - m_j}]` at the smallest admissible padding.
pub fn skew_schur<S: Scalar>(la: &Partition, mu: &Partition, rho: &Specialization<S>) -> S {
    skew_schur_padded(la, mu, rho, la.len().max(mu.len()))
}

/// Jacobi-Trudi determinant of size `n`; `n` below the lengths is raised to them.
pub fn skew_schur_padded<S: Scalar>(
    la: &Partition,
    mu: &Partition,
    rho: &Specialization<S>,
    n: usize,
) -> S {
    if !la.contains(mu) {
        return S::zero();
    }
    let n = n.max(la.len()).max(mu.len());
    let h = rho.h_values(la.part(1) + n);
    let (l, m) = (la.shifted(n), mu.shifted(n));
    let jt = Matrix::from_fn(n, n, |i, j| h_at_index(&h, l[i] - m[j]));
    det(&jt).expect("square")
}

pub fn schur<S: Scalar>(la: &Partition, rho: &Specialization<S>) -> S {
    skew_schur(la, &Partition::empty(), rho)
}

/// Reference value of `s_{la/mu}` as a sum over semistandard tableaux, built by
/// peeling off the horizontal strip that holds the largest entry.
pub fn skew_schur_tableaux<S: Scalar>(la: &Partition, mu: &Partition, rho: &Specialization<S>) -> S {
    if !la.contains(mu) {
        return S::zero();
    }
    tableau_sum(la, mu, &rho.vars)
}

fn tableau_sum<S: Scalar>(la: &Partition, mu: &Partition, vars: &[S]) -> S {
    if la == mu {
        return S::one();
    }
    let Some((x, rest)) = vars.split_last() else {
        return S::zero();
    };
    let mut total = S::zero();
    for nu in la.subpartitions() {
        if nu.contains(mu) && la.horizontal_strip_over(&nu) {
            let strip = (la.size() - nu.size()) as u32;
            total = total + tableau_sum(&nu, mu, rest) * x.pow(strip);
        }
    }
    total
}

/// `tau_la = sum of s_{la/kappa}` over `kappa ⊆ la` whose columns all have even length.
pub fn tau_direct<S: Scalar>(la: &Partition, rho: &Specialization<S>) -> S {
    la.subpartitions()
        .iter()
        .filter(|k| k.has_even_conjugate())
        .fold(S::zero(), |acc, k| acc + skew_schur(la, k, rho))
}

/// `sum_{a = floor}^{max(li, lj)} (h_{li-a-1} h_{lj-a} - h_{li-a} h_{lj-a-1})`.
///
/// Over all integers `a` the sum diverges in general; `floor` fixes where it starts.
pub fn epsilon_entry<S: Scalar>(h: &[S], li: i64, lj: i64, floor: i64) -> S {
    let mut acc = S::zero();
    for a in floor..=li.max(lj) {
        acc = acc + h_at_index(h, li - a - 1) * h_at_index(h, lj - a)
            - h_at_index(h, li - a) * h_at_index(h, lj - a - 1);
    }
    acc
}

/// `tau_la` as a Pfaffian of size `2N`, the smallest even size covering `l(la)`.
pub fn tau_pf<S: Scalar>(la: &Partition, rho: &Specialization<S>) -> S {
    tau_pf_padded(la, rho, la.len().div_ceil(2).max(1))
}

/// Pfaffian form with `2 * half` rows. The `a`-sum starts at `-2 * half`, the
/// smallest shifted coordinate; terms below it do not cancel.
pub fn tau_pf_padded<S: Scalar>(la: &Partition, rho: &Specialization<S>, half: usize) -> S {
    let size = (2 * half).max(la.len() + la.len() % 2);
    let l = la.shifted(size);
    let floor = -(size as i64);
    let top = l.iter().copied().max().unwrap_or(0);
    let h = rho.h_values((top - floor + 1).max(0) as usize);
    let m = SkewMatrix::from_upper(size, |i, j| epsilon_entry(&h, l[i], l[j], floor));
    pfaffian(&m)
}

/// `pf[delta(k_i - i - 1, k_j - j) - delta(k_i - i, k_j - j - 1)]` of size `2 * half`:
/// one exactly when every column of `kappa` has even length.
pub fn even_conjugate_indicator<S: Scalar>(kappa: &Partition, half: usize) -> Result<S> {
    let size = 2 * half;
    if kappa.len() > size {
        return Err(Error::Invalid(format!(
            "partition of length {} needs padding of at least {}",
            kappa.len(),
            kappa.len()
        )));
    }
    let k = kappa.shifted(size);
    let delta = |a: i64, b: i64| if a == b { S::one() } else { S::zero() };
    let m = SkewMatrix::from_upper(size, |i, j| delta(k[i] - 1, k[j]) - delta(k[i], k[j] - 1));
    Ok(pfaffian(&m))
}

fn check_pair<S: Scalar>(x: &S, y: &S) -> Result<S> {
    let p = x.clone() * y.clone();
    if p.magnitude() >= 1.0 {
        return Err(Error::Divergent(format!("{} * {}", x.render(), y.render())));
    }
    Ok(p)
}

/// `H(x; y) = prod_{i,j} (1 - x_i y_j)^{-1}`.
pub fn cauchy_h<S: Scalar>(x: &Specialization<S>, y: &Specialization<S>) -> Result<S> {
    let mut acc = S::one();
    for a in &x.vars {
        for b in &y.vars {
            acc = acc / (S::one() - check_pair(a, b)?);
        }
    }
    Ok(acc)
}

/// `H°(x) = prod_{i<j} (1 - x_i x_j)^{-1}`.
pub fn h_o<S: Scalar>(x: &Specialization<S>) -> Result<S> {
    let mut acc = S::one();
    for (i, a) in x.vars.iter().enumerate() {
        for b in &x.vars[i + 1..] {
            acc = acc / (S::one() - check_pair(a, b)?);
        }
    }
    Ok(acc)
}

/// `sum_{|la| <= d} s_la(x) s_la(y)`.
pub fn cauchy_series<S: Scalar>(x: &Specialization<S>, y: &Specialization<S>, d: usize) -> S {
    let max_len = x.len().min(y.len());
    let mut acc = S::zero();
    for m in 0..=d {
        for la in Partition::bounded(m, m, max_len) {
            acc = acc + schur(&la, x) * schur(&la, y);
        }
    }
    acc
}

/// `sum_{|la| <= d, la' even} s_la(x)`.
pub fn h_o_series<S: Scalar>(x: &Specialization<S>, d: usize) -> S {
    let mut acc = S::zero();
    for m in 0..=d {
        for la in Partition::bounded(m, m, x.len()) {
            if la.has_even_conjugate() {
                acc = acc + schur(&la, x);
            }
        }
    }
    acc
}

/// Geometric tail `p^{d+1} / (1 - p)`; infinite when `p >= 1`.
pub fn geometric_tail(p: f64, d: usize) -> f64 {
    if p >= 1.0 {
        f64::INFINITY
    } else {
        p.powi(d as i32 + 1) / (1.0 - p)
    }
}

/// Bound on `|H(x;y) - cauchy_series(x, y, d)|` from `sum_{|la|=m} s_la s_la <= (p1 p1)^m`.
pub fn cauchy_tail_bound<S: Scalar>(x: &Specialization<S>, y: &Specialization<S>, d: usize) -> f64 {
    geometric_tail(x.abs_sum() * y.abs_sum(), d)
}

/// Bound on `|H°(x) - h_o_series(x, d)|`.
pub fn h_o_tail_bound<S: Scalar>(x: &Specialization<S>, d: usize) -> f64 {
    geometric_tail(x.abs_sum(), d)
}

/// `Z = prod_{0 <= i < j <= T} H(rho_i^+; rho_j^-)` with `rho_plus[i] = rho_i^+`
/// for `i < T` and `rho_minus[j-1] = rho_j^-` for `j >= 1`.
pub fn schur_z<S: Scalar>(rho_plus: &[Specialization<S>], rho_minus: &[Specialization<S>]) -> Result<S> {
    if rho_plus.len() != rho_minus.len() {
        return Err(Error::DimensionMismatch {
            op: "schur_z",
            detail: format!("{} plus and {} minus specializations", rho_plus.len(), rho_minus.len()),
        });
    }
    let mut acc = S::one();
    for (i, plus) in rho_plus.iter().enumerate() {
        for minus in &rho_minus[i..] {
            acc = acc * cauchy_h(plus, minus)?;
        }
    }
    Ok(acc)
}

/// `Z° = H°(rho^-_1 ∪ ... ∪ rho^-_T) * Z`.
pub fn pf_z<S: Scalar>(rho_plus: &[Specialization<S>], rho_minus: &[Specialization<S>]) -> Result<S> {
    let all_minus = Specialization::union_all(rho_minus);
    Ok(h_o(&all_minus)? * schur_z(rho_plus, rho_minus)?)
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

    fn spec(v: &[(i64, i64)]) -> Specialization<Q> {
        Specialization::new(v.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn jacobi_trudi_basics() {
        let r = spec(&[(1, 2), (1, 3)]);
        let la = p(&[3, 1]);
        assert_eq!(skew_schur(&la, &la, &r), q(1, 1));
        assert_eq!(schur(&p(&[1]), &r), q(5, 6));
        assert_eq!(skew_schur(&p(&[1]), &p(&[2]), &r), q(0, 1));
    }

    #[test]
    fn two_one_in_two_variables() {
        let (x, y) = (q(2, 5), q(-3, 7));
        let r = Specialization::new(vec![x.clone(), y.clone()]);
        let expected = x.clone() * x.clone() * y.clone() + x.clone() * y.clone() * y.clone();
        assert_eq!(schur(&p(&[2, 1]), &r), expected);
        assert_eq!(skew_schur_tableaux(&p(&[2, 1]), &Partition::empty(), &r), expected);
    }

    #[test]
    fn padding_independence() {
        let r = spec(&[(1, 2), (-1, 3), (2, 5)]);
        let (la, mu) = (p(&[4, 2, 1]), p(&[2, 1]));
        let base = skew_schur(&la, &mu, &r);
        assert_eq!(skew_schur_padded(&la, &mu, &r, 5), base);
        assert_eq!(base, skew_schur_tableaux(&la, &mu, &r));
    }

    #[test]
    fn tau_examples() {
        let one = Specialization::single(q(1, 1));
        assert_eq!(tau_direct(&p(&[3, 1, 1]), &one), q(1, 1));
        let a = q(2, 3);
        let alpha = Specialization::single(a.clone());
        // exponent (3-2) + (1-0)
        assert_eq!(tau_direct(&p(&[3, 2, 1]), &alpha), a.pow(2));
        assert_eq!(tau_pf(&Partition::empty(), &alpha), q(1, 1));
        assert_eq!(tau_pf(&p(&[1]), &alpha), a);
    }

    #[test]
    fn tau_two_two() {
        let r = spec(&[(1, 2), (1, 3)]);
        let la = p(&[2, 2]);
        let expected = schur(&la, &r) + skew_schur(&la, &p(&[1, 1]), &r) + q(1, 1);
        assert_eq!(tau_direct(&la, &r), expected);
        assert_eq!(tau_pf(&la, &r), expected);
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(even_conjugate_indicator::<Q>(&Partition::empty(), 1).unwrap(), q(1, 1));
        assert_eq!(even_conjugate_indicator::<Q>(&p(&[1]), 1).unwrap(), q(0, 1));
        assert_eq!(even_conjugate_indicator::<Q>(&p(&[2, 2]), 1).unwrap(), q(1, 1));
        assert_eq!(even_conjugate_indicator::<Q>(&p(&[2, 1]), 1).unwrap(), q(0, 1));
        assert!(even_conjugate_indicator::<Q>(&p(&[1, 1, 1]), 1).is_err());
    }

    #[test]
    fn product_forms() {
        assert_eq!(cauchy_h(&spec(&[(1, 2)]), &spec(&[(1, 3), (1, 5)])).unwrap(), q(4, 3));
        assert_eq!(cauchy_h(&Specialization::empty(), &spec(&[(1, 3)])).unwrap(), q(1, 1));
        assert_eq!(h_o(&spec(&[(1, 2)])).unwrap(), q(1, 1));
        let expected = q(1, 1) / ((q(1, 1) - q(1, 6)) * (q(1, 1) - q(1, 10)) * (q(1, 1) - q(1, 15)));
        assert_eq!(h_o(&spec(&[(1, 2), (1, 3), (1, 5)])).unwrap(), expected);
        assert!(matches!(
            cauchy_h(&spec(&[(2, 1)]), &spec(&[(1, 2)])),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn partition_functions() {
        let plus = vec![spec(&[(1, 2)])];
        let minus = vec![spec(&[(1, 3), (1, 4)])];
        let z = schur_z(&plus, &minus).unwrap();
        assert_eq!(z, cauchy_h(&plus[0], &minus[0]).unwrap());
        let expected = q(12, 11) * q(6, 5) * q(8, 7);
        assert_eq!(pf_z(&plus, &minus).unwrap(), expected);
        let empty = vec![Specialization::<Q>::empty(); 2];
        assert_eq!(schur_z(&empty, &empty).unwrap(), q(1, 1));
    }
}
