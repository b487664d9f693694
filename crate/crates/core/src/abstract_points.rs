//! Points of `(C^2)^{⊗n}`: one coefficient per subset of `{1..n}`, stored by
//! bitmask (bit `j-1` stands for `j`). A point is determinantal when its
//! coefficients are the minors `det K_{S ∪ {n+1..n+m}}` of one matrix, Pfaffian
//! for the analogous Pfaffians.

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{det, pfaffian, Matrix, SkewMatrix};
use crate::point_process::doubled_rows;
use crate::point_process::Config;
use crate::scalar::{Scalar, C, Q};

/// Largest supported tensor-factor count.
pub const MAX_FACTORS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct TensorPoint<S> {
    n: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> TensorPoint<S> {
    /// `coeffs[mask]` for all `2^n` masks; rejects the zero vector.
    pub fn new(n: usize, coeffs: Vec<S>) -> Result<Self> {
        if n > MAX_FACTORS {
            return Err(Error::CapExceeded {
                size: n,
                cap: MAX_FACTORS,
            });
        }
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                op: "TensorPoint",
                detail: format!("{} coefficients for n = {n}", coeffs.len()),
            });
        }
        if coeffs.iter().all(Scalar::is_zero) {
            return Err(Error::Invalid("the zero vector is not a point".into()));
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn get(&self, mask: u64) -> &S {
        &self.coeffs[mask as usize]
    }

    /// Representative scaled so the first coefficient above `tol` (mask order) is 1.
    pub fn normalized(&self, tol: f64) -> Self {
        let pivot = self
            .coeffs
            .iter()
            .find(|c| !c.near_zero(tol))
            .cloned()
            .unwrap_or_else(S::one);
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.clone() / pivot.clone()).collect(),
        }
    }

    /// Equality up to one nonzero scalar: `p_S q_T = p_T q_S` against the
    /// largest coefficient `T` of `self`. Exact for rationals; relative `tol` otherwise.
    pub fn projective_eq(&self, other: &Self, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        let t = (0..self.coeffs.len())
            .max_by(|&a, &b| {
                self.coeffs[a]
                    .magnitude()
                    .total_cmp(&self.coeffs[b].magnitude())
            })
            .expect("nonempty");
        let (pt, qt) = (&self.coeffs[t], &other.coeffs[t]);
        if qt.near_zero(tol * other.max_abs()) {
            return false;
        }
        let scale = pt.magnitude() * qt.magnitude();
        self.coeffs.iter().zip(&other.coeffs).all(|(p, q)| {
            let d = p.clone() * qt.clone() - pt.clone() * q.clone();
            if S::EXACT {
                d.is_zero()
            } else {
                d.magnitude() <= tol * scale
            }
        })
    }

    fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> TensorPoint<C> {
        TensorPoint {
            n: self.n,
            coeffs: self.coeffs.iter().map(Scalar::to_complex).collect(),
        }
    }

    /// `{"n":n,"coeffs":{"0b0101":value,...}}`; zero coefficients are omitted.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                map.insert(mask_key(mask as u64, self.n), c.to_json());
            }
        }
        serde_json::json!({"n": self.n, "coeffs": Value::Object(map)})
    }

    /// Missing masks read as zero.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = crate::json::as_object(v, "tensor point")?;
        let n = crate::json::field_usize(obj, "n")?;
        if n > MAX_FACTORS {
            return Err(Error::CapExceeded {
                size: n,
                cap: MAX_FACTORS,
            });
        }
        let map = crate::json::field(obj, "coeffs")?
            .as_object()
            .ok_or_else(|| Error::Json("coeffs: expected object keyed by \"0b...\" masks".into()))?;
        let mut coeffs = vec![S::zero(); 1 << n];
        for (key, val) in map {
            let digits = key
                .strip_prefix("0b")
                .ok_or_else(|| Error::Json(format!("coeffs key {key:?} must start with 0b")))?;
            let mask = u64::from_str_radix(digits, 2)
                .map_err(|_| Error::Json(format!("coeffs key {key:?} is not binary")))?;
            if mask >= 1 << n {
                return Err(Error::Json(format!("coeffs key {key:?} exceeds n = {n}")));
            }
            coeffs[mask as usize] = S::from_json(val)?;
        }
        Self::new(n, coeffs)
    }
}

fn mask_key(mask: u64, n: usize) -> String {
    format!("0b{:0width$b}", mask, width = n.max(1))
}

/// `K` of size `n + m` whose last `m` indices are always included.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelWitness<S> {
    pub n: usize,
    pub m: usize,
    pub k: Matrix<S>,
}

impl<S: Scalar> KernelWitness<S> {
    pub fn new(n: usize, m: usize, k: Matrix<S>) -> Result<Self> {
        if k.rows() != n + m || k.cols() != n + m {
            return Err(Error::DimensionMismatch {
                op: "KernelWitness",
                detail: format!("K is {}x{}, expected {}x{}", k.rows(), k.cols(), n + m, n + m),
            });
        }
        Ok(Self { n, m, k })
    }
}

/// Skew `2(n+m)` witness; index `i` owns rows `2i, 2i+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfWitness<S> {
    pub n: usize,
    pub m: usize,
    pub k: SkewMatrix<S>,
}

impl<S: Scalar> PfWitness<S> {
    pub fn new(n: usize, m: usize, k: SkewMatrix<S>) -> Result<Self> {
        if k.dim() != 2 * (n + m) {
            return Err(Error::DimensionMismatch {
                op: "PfWitness",
                detail: format!("K has dimension {}, expected {}", k.dim(), 2 * (n + m)),
            });
        }
        Ok(Self { n, m, k })
    }
}

fn aux_mask(n: usize, m: usize) -> u64 {
    Config::full(n + m).0 & !Config::full(n).0
}

/// `p_S = det K_{S ∪ aux}`.
pub fn point_from_kernel<S: Scalar>(w: &KernelWitness<S>) -> Result<TensorPoint<S>> {
    check_factors(w.n)?;
    let aux = aux_mask(w.n, w.m);
    let coeffs = (0..1u64 << w.n)
        .map(|s| {
            let idx: Vec<usize> = Config(s | aux).points().collect();
            det(&w.k.principal(&idx)?)
        })
        .collect::<Result<Vec<_>>>()?;
    TensorPoint::new(w.n, coeffs)
}

/// `p_S = pf K_{S ∪ aux}` with both rows of every index.
pub fn point_from_pf_kernel<S: Scalar>(w: &PfWitness<S>) -> Result<TensorPoint<S>> {
    check_factors(w.n)?;
    let aux = aux_mask(w.n, w.m);
    let coeffs = (0..1u64 << w.n)
        .map(|s| Ok(pfaffian(&w.k.principal(&doubled_rows(Config(s | aux)))?)))
        .collect::<Result<Vec<_>>>()?;
    TensorPoint::new(w.n, coeffs)
}

fn check_factors(n: usize) -> Result<()> {
    if n > MAX_FACTORS {
        return Err(Error::CapExceeded {
            size: n,
            cap: MAX_FACTORS,
        });
    }
    Ok(())
}

/// `2x2` matrix `[[a, b], [c, d]]`.
pub type Gl2<S> = [[S; 2]; 2];

fn gl2_det<S: Scalar>(g: &Gl2<S>) -> S {
    g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone()
}

pub fn gl2_mul<S: Scalar>(g: &Gl2<S>, h: &Gl2<S>) -> Gl2<S> {
    let e = |r: usize, c: usize| g[r][0].clone() * h[0][c].clone() + g[r][1].clone() * h[1][c].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Action of the `j`-th copy of GL2 (`j` 1-based) on the pair `(p_S, p_{S∪j})`.
pub fn gl2_act<S: Scalar>(j: usize, g: &Gl2<S>, p: &TensorPoint<S>) -> Result<TensorPoint<S>> {
    if j == 0 || j > p.n {
        return Err(Error::IndexOutOfRange { index: j, dim: p.n });
    }
    if gl2_det(g).near_zero(1e-300) {
        return Err(Error::Singular {
            det: gl2_det(g).render(),
        });
    }
    let bit = 1usize << (j - 1);
    let mut out = p.coeffs.clone();
    for s in (0..p.coeffs.len()).filter(|s| s & bit == 0) {
        let (x, y) = (p.coeffs[s].clone(), p.coeffs[s | bit].clone());
        out[s] = g[0][0].clone() * x.clone() + g[0][1].clone() * y.clone();
        out[s | bit] = g[1][0].clone() * x + g[1][1].clone() * y;
    }
    TensorPoint::new(p.n, out)
}

/// `[[1, 1], [0, 1]]` on every factor: `p_S -> sum_{T ⊇ S} p_T`.
pub fn correlation_transform<S: Scalar>(p: &TensorPoint<S>) -> Result<TensorPoint<S>> {
    let g = [[S::one(), S::one()], [S::zero(), S::one()]];
    (1..=p.n).try_fold(p.clone(), |acc, j| gl2_act(j, &g, &acc))
}

/// Checks `sigma` (1-based images) is a permutation of `1..=n`.
fn check_perm(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::Invalid(format!("permutation of length {} for n = {n}", sigma.len())));
    }
    for &s in sigma {
        if s == 0 || s > n || seen[s - 1] {
            return Err(Error::Invalid(format!("{sigma:?} is not a permutation of 1..={n}")));
        }
        seen[s - 1] = true;
    }
    Ok(())
}

fn permute_mask(sigma: &[usize], mask: u64) -> u64 {
    Config(mask).points().fold(0, |acc, i| acc | 1 << (sigma[i] - 1))
}

/// `p'_{σ(S)} = p_S`.
pub fn permute<S: Scalar>(sigma: &[usize], p: &TensorPoint<S>) -> Result<TensorPoint<S>> {
    check_perm(sigma, p.n)?;
    let mut out = vec![S::zero(); p.coeffs.len()];
    for (s, c) in p.coeffs.iter().enumerate() {
        out[permute_mask(sigma, s as u64) as usize] = c.clone();
    }
    TensorPoint::new(p.n, out)
}

/// Simultaneous row and column relabeling `i -> σ(i)` of the first `n` indices.
pub fn permute_witness<S: Scalar>(sigma: &[usize], w: &KernelWitness<S>) -> Result<KernelWitness<S>> {
    check_perm(sigma, w.n)?;
    let map = |i: usize| if i < w.n { sigma[i] - 1 } else { i };
    let size = w.n + w.m;
    let mut k = Matrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            k[(map(r), map(c))] = w.k[(r, c)].clone();
        }
    }
    KernelWitness::new(w.n, w.m, k)
}

/// First row times `alpha`: the action of `diag(1, alpha)` on factor 1.
pub fn borel_diagonal<S: Scalar>(w: &KernelWitness<S>, alpha: &S) -> KernelWitness<S> {
    let mut k = w.k.clone();
    for c in 0..k.cols() {
        k[(0, c)] = k[(0, c)].clone() * alpha.clone();
    }
    KernelWitness { k, ..w.clone() }
}

/// `K_11 + c`: the action of `[[1, 0], [c, 1]]` on factor 1.
pub fn borel_unipotent<S: Scalar>(w: &KernelWitness<S>, c: &S) -> KernelWitness<S> {
    let mut k = w.k.clone();
    k[(0, 0)] = k[(0, 0)].clone() + c.clone();
    KernelWitness { k, ..w.clone() }
}

/// Witness of the point with `p_S` and `p_{S △ {1}}` exchanged.
///
/// Writing `K = [[a, b, c], [d, E, F], [g, H, M]]` with blocks for index 1, the
/// other factors and the auxiliary indices, the result is
/// `[[0, 0, 0, 1], [0, E, F, d], [0, H, M, g], [-1, b, c, a]]`: old index 1
/// becomes the last auxiliary index and a fresh index 1 is bordered on.
pub fn flip_kernel<S: Scalar>(w: &KernelWitness<S>) -> Result<KernelWitness<S>> {
    if w.n == 0 {
        return Err(Error::Invalid("flip needs at least one factor".into()));
    }
    let size = w.n + w.m;
    let mut k = Matrix::zeros(size + 1, size + 1);
    k[(0, size)] = S::one();
    k[(size, 0)] = -S::one();
    // Old index i >= 1 keeps its place; old index 0 moves to `size`.
    let place = |i: usize| if i == 0 { size } else { i };
    for r in 0..size {
        for c in 0..size {
            k[(place(r), place(c))] = w.k[(r, c)].clone();
        }
    }
    KernelWitness::new(w.n, w.m + 1, k)
}

/// Witness for `gl2_act(j, g, point_from_kernel(w))`, up to a scalar.
///
/// `g` is factored into flips, `diag(1, t)` and `[[1, 0], [c, 1]]` moves on
/// factor 1, with factor `j` swapped into first place and back.
pub fn act_witness<S: Scalar>(j: usize, g: &Gl2<S>, w: &KernelWitness<S>) -> Result<KernelWitness<S>> {
    if j == 0 || j > w.n {
        return Err(Error::IndexOutOfRange { index: j, dim: w.n });
    }
    if gl2_det(g).is_zero() {
        return Err(Error::Singular {
            det: gl2_det(g).render(),
        });
    }
    let mut swap: Vec<usize> = (1..=w.n).collect();
    swap.swap(0, j - 1);
    let mut cur = permute_witness(&swap, w)?;
    let [[a, b], [c, d]] = g.clone();
    // [[a', 0], [c, d]] = diag(a', d) [[1, 0], [c/d, 1]]
    let lower = |cur: &KernelWitness<S>, a: S, c: S, d: S| {
        let step = borel_unipotent(cur, &(c / d.clone()));
        borel_diagonal(&step, &(d / a))
    };
    if d.is_zero() {
        // g = F [[c, 0], [a, b]]
        cur = lower(&cur, c, a, b);
        cur = flip_kernel(&cur)?;
    } else if b.is_zero() {
        cur = lower(&cur, a, c, d);
    } else {
        // g = F L(b/d) F [[a - bc/d, 0], [c, d]]
        let a2 = a - b.clone() * c.clone() / d.clone();
        cur = lower(&cur, a2, c, d.clone());
        cur = flip_kernel(&cur)?;
        cur = borel_unipotent(&cur, &(b / d));
        cur = flip_kernel(&cur)?;
    }
    permute_witness(&swap, &cur)
}

/// Square roots where the backend has them.
pub trait SquareRoot: Scalar {
    /// A root of `x^2 = self`, when one lies in the backend.
    fn square_root(&self) -> Option<Self>;
}

impl SquareRoot for C {
    fn square_root(&self) -> Option<Self> {
        Some(self.sqrt())
    }
}

impl SquareRoot for Q {
    fn square_root(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let exact = |v: &BigInt| {
            let r = v.sqrt();
            (&r * &r == *v).then_some(r)
        };
        Some(Q::new(exact(self.numer())?, exact(self.denom())?))
    }
}

/// Masks of `{1,3}, {1,4}, {2,3}, {2,4}` and `{1,2,3,4}`.
const M13: usize = 0b0101;
const M14: usize = 0b1001;
const M23: usize = 0b0110;
const M24: usize = 0b1010;
const M1234: usize = 0b1111;

/// Roots of `-x^2 + (p13 p24 + p14 p23 - p1234) x - p13 p24 p14 p23 = 0`,
/// larger modulus first.
pub fn quadric_roots<S: SquareRoot>(p: &TensorPoint<S>) -> Result<[S; 2]> {
    let q = quadric_normalized(p)?;
    let c = |m: usize| q.coeffs[m].clone();
    let s = c(M13) * c(M24) + c(M14) * c(M23) - c(M1234);
    let prod = c(M13) * c(M24) * c(M14) * c(M23);
    let disc = s.clone() * s.clone() - S::from_i64(4) * prod;
    let root = disc
        .square_root()
        .ok_or_else(|| Error::Invalid(format!("discriminant {} has no square root in this backend", disc.render())))?;
    let two = S::from_i64(2);
    let (x1, x2) = ((s.clone() + root.clone()) / two.clone(), (s - root) / two);
    Ok(if x1.magnitude() >= x2.magnitude() { [x1, x2] } else { [x2, x1] })
}

fn quadric_normalized<S: Scalar>(p: &TensorPoint<S>) -> Result<TensorPoint<S>> {
    if p.n != 4 {
        return Err(Error::Invalid(format!("expected n = 4, got {}", p.n)));
    }
    let p0 = p.coeffs[0].clone();
    if p0.is_zero() {
        return Err(Error::Invalid("p_∅ must be nonzero".into()));
    }
    let allowed = [0, M13, M14, M23, M24, M1234];
    if let Some(m) = (0..16).find(|m| !allowed.contains(m) && !p.coeffs[*m].is_zero()) {
        return Err(Error::Invalid(format!(
            "coefficient at {} must vanish",
            mask_key(m as u64, 4)
        )));
    }
    Ok(TensorPoint {
        n: 4,
        coeffs: p.coeffs.iter().map(|c| c.clone() / p0.clone()).collect(),
    })
}

/// `[[0, 0, 1, -p14], [0, 0, -p23/x, 1], [-p13, x, 0, 0], [1, -p24, 0, 0]]`
/// for a given `x`; the `(2,3)` entry is 0 when `p23 = 0`.
pub fn quadric_kernel_at<S: Scalar>(p: &TensorPoint<S>, x: &S) -> Result<KernelWitness<S>> {
    let q = quadric_normalized(p)?;
    let c = |m: usize| q.coeffs[m].clone();
    let e23 = if c(M23).is_zero() {
        S::zero()
    } else if x.is_zero() {
        return Err(Error::Invalid("x = 0 with p23 != 0".into()));
    } else {
        -(c(M23) / x.clone())
    };
    let (o, z) = (S::one(), S::zero());
    let k = Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), o.clone(), -c(M14)],
        vec![z.clone(), z.clone(), e23, o.clone()],
        vec![-c(M13), x.clone(), z.clone(), z.clone()],
        vec![o, -c(M24), z.clone(), z],
    ])?;
    KernelWitness::new(4, 0, k)
}

/// Witness for a point supported on `∅, 13, 14, 23, 24, 1234`, trying the
/// larger root first and keeping the first that reproduces `p`.
pub fn quadric_kernel<S: SquareRoot>(p: &TensorPoint<S>) -> Result<KernelWitness<S>> {
    let tol = 1e-10;
    let mut last = None;
    for x in quadric_roots(p)? {
        match quadric_kernel_at(p, &x) {
            Ok(w) => {
                if point_from_kernel(&w).is_ok_and(|q| q.projective_eq(p, tol)) {
                    return Ok(w);
                }
                last = Some(Error::Invalid(format!("root x = {} does not reproduce the point", x.render())));
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("two roots tried"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn diagonal_kernel_gives_products() {
        let d = [q(2, 1), q(-1, 3), q(5, 2)];
        let w = KernelWitness::new(3, 0, Matrix::diagonal(&d)).unwrap();
        let p = point_from_kernel(&w).unwrap();
        for s in 0..8u64 {
            let expect = Config(s).points().fold(Q::one(), |a, i| a * d[i].clone());
            assert_eq!(*p.get(s), expect);
        }
    }

    #[test]
    fn two_by_two_read_off() {
        let k = Matrix::from_rows(vec![qs(&[0, 1]), vec![-q(7, 3), Q::zero()]]).unwrap();
        let p = point_from_kernel(&KernelWitness::new(2, 0, k).unwrap()).unwrap();
        assert_eq!(p.coeffs(), &[Q::one(), Q::zero(), Q::zero(), q(7, 3)]);
    }

    #[test]
    fn zero_point_rejected() {
        let w = KernelWitness::new(1, 1, Matrix::<Q>::zeros(2, 2)).unwrap();
        assert!(point_from_kernel(&w).is_err());
    }

    #[test]
    fn gl2_identity_swap_and_composition() {
        let p = TensorPoint::new(2, qs(&[1, 2, 3, 4])).unwrap();
        let id = [[Q::one(), Q::zero()], [Q::zero(), Q::one()]];
        assert_eq!(gl2_act(1, &id, &p).unwrap(), p);
        let swap = [[Q::zero(), Q::one()], [Q::one(), Q::zero()]];
        assert_eq!(gl2_act(1, &swap, &p).unwrap().coeffs(), &qs(&[2, 1, 4, 3])[..]);
        let g1 = [[q(1, 2), q(3, 1)], [q(-1, 1), q(2, 5)]];
        let g2 = [[q(2, 1), q(1, 7)], [q(1, 3), q(1, 1)]];
        let lhs = gl2_act(2, &g1, &gl2_act(2, &g2, &p).unwrap()).unwrap();
        assert_eq!(lhs, gl2_act(2, &gl2_mul(&g1, &g2), &p).unwrap());
        let singular = [[Q::one(), Q::one()], [Q::one(), Q::one()]];
        assert!(gl2_act(1, &singular, &p).is_err());
    }

    #[test]
    fn permutation_round_trip() {
        let p = TensorPoint::new(3, (1..=8).map(Q::from_i64).collect()).unwrap();
        assert_eq!(permute(&[1, 2, 3], &p).unwrap(), p);
        let once = permute(&[2, 1, 3], &p).unwrap();
        assert_eq!(*once.get(0b001), *p.get(0b010));
        assert_eq!(permute(&[2, 1, 3], &once).unwrap(), p);
        assert!(permute(&[1, 1, 3], &p).is_err());
    }

    #[test]
    fn flip_of_scalar() {
        let a = q(5, 3);
        let w = KernelWitness::new(1, 0, Matrix::from_rows(vec![vec![a.clone()]]).unwrap()).unwrap();
        let f = flip_kernel(&w).unwrap();
        assert_eq!(f.k.to_rows(), vec![vec![Q::zero(), Q::one()], vec![-Q::one(), a.clone()]]);
        let p = point_from_kernel(&f).unwrap();
        assert_eq!(p.coeffs(), &[a, Q::one()]);
    }

    #[test]
    fn projective_comparison() {
        let p = TensorPoint::new(1, vec![q(1, 2), q(3, 1)]).unwrap();
        let s = TensorPoint::new(1, vec![q(-1, 1), q(-6, 1)]).unwrap();
        assert!(p.projective_eq(&s, 0.0));
        assert_eq!(s.normalized(0.0).coeffs(), &[Q::one(), q(6, 1)]);
        let t = TensorPoint::new(1, vec![q(1, 2), q(2, 1)]).unwrap();
        assert!(!p.projective_eq(&t, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let p = TensorPoint::new(2, vec![q(1, 2), Q::zero(), q(-3, 4), Q::one()]).unwrap();
        let v = p.to_json();
        assert!(v["coeffs"].get("0b10").is_some());
        assert_eq!(TensorPoint::<Q>::from_json(&v).unwrap(), p);
        let c = TensorPoint::<C>::from_json(&serde_json::json!({"n": 2, "coeffs": {"0b01": [1.0, 2.0]}})).unwrap();
        assert_eq!(*c.get(1), C::new(1.0, 2.0));
    }

    #[test]
    fn quadric_all_ones() {
        let mut c = vec![Q::zero(); 16];
        for m in [0, M13, M14, M23, M24] {
            c[m] = Q::one();
        }
        let p = TensorPoint::new(4, c).unwrap();
        assert_eq!(quadric_roots(&p).unwrap(), [Q::one(), Q::one()]);
        let w = quadric_kernel(&p).unwrap();
        assert_eq!(point_from_kernel(&w).unwrap(), p);
    }

    #[test]
    fn quadric_trivial_point_needs_zero_root() {
        let mut c = vec![Q::zero(); 16];
        c[0] = Q::one();
        let p = TensorPoint::new(4, c).unwrap();
        // x = 1 gives det K = -1, not p1234 = 0.
        let bad = quadric_kernel_at(&p, &Q::one()).unwrap();
        assert_ne!(point_from_kernel(&bad).unwrap(), p);
        let w = quadric_kernel(&p).unwrap();
        assert_eq!(w.k[(2, 1)], Q::zero());
        assert_eq!(point_from_kernel(&w).unwrap(), p);
    }

    #[test]
    fn quadric_rejects_other_support() {
        let mut c = vec![Q::zero(); 16];
        c[0] = Q::one();
        c[0b0011] = Q::one();
        assert!(quadric_kernel(&TensorPoint::new(4, c).unwrap()).is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(q(9, 4).square_root(), Some(q(3, 2)));
        assert_eq!(q(2, 1).square_root(), None);
        assert_eq!(q(-1, 1).square_root(), None);
    }
}
