//! Double contour integral kernels.
//!
//! Radii are midpoints of the admissible intervals. The outer interval
//! `(1, 1/ρ_max)` is clipped at 3 and the inner `(ρ_max, 1)` at 1/3, since huge
//! or tiny circles only amplify `z^{-u}` without changing the integral.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::C;
use crate::symfunc::Specialization;

use super::contour::{contour_integrate_factored, ContourConfig, Quadrature, DEFAULT_QUAD_POINTS};
use super::{SchurSpec, SpacePoint};

const CLIP: f64 = 3.0;

/// Which inequality the circles of the determinantal kernel satisfy.
///
/// The two choices differ by the residue at `zw = 1`, which is `W_[i,j)` for
/// `i < j` and the identity for `i = j`. Checked against enumeration, the
/// correlation kernel takes the outer circles for `i >= j` and the inner ones
/// for `i < j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RadiusCase {
    /// `|z|, |w| > 1`, used for `i >= j`.
    Outer,
    /// `|z|, |w| < 1`, used for `i < j`.
    Inner,
}

impl RadiusCase {
    pub fn prescribed(i: usize, j: usize) -> Self {
        if i >= j {
            Self::Outer
        } else {
            Self::Inner
        }
    }
}

/// Coupling of the `K12` circles.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum K12Case {
    /// `|zw| > 1`, prescribed for `i >= j`.
    Wide,
    /// `|zw| < 1`, prescribed for `i < j`.
    Narrow,
}

impl K12Case {
    pub fn prescribed(i: usize, j: usize) -> Self {
        if i >= j {
            Self::Wide
        } else {
            Self::Narrow
        }
    }
}

/// Admissible radius intervals for a spec.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Radii {
    pub rho_max: f64,
    /// Upper end of the outer interval, `min(1/ρ_max, 3)`.
    pub outer_hi: f64,
    /// Lower end of the inner interval, `max(ρ_max, 1/3)`.
    pub inner_lo: f64,
}

impl Radii {
    pub fn outer(&self) -> f64 {
        (1.0 + self.outer_hi) / 2.0
    }

    pub fn inner(&self) -> f64 {
        (self.inner_lo + 1.0) / 2.0
    }

    pub fn eq27(&self, case: RadiusCase) -> ContourConfig {
        let r = match case {
            RadiusCase::Outer => self.outer(),
            RadiusCase::Inner => self.inner(),
        };
        ContourConfig::new(r, r)
    }

    pub fn k11(&self) -> ContourConfig {
        ContourConfig::new(self.outer(), self.outer())
    }

    pub fn k12(&self, case: K12Case) -> ContourConfig {
        let rz = self.outer();
        let rw = match case {
            K12Case::Wide => (1.0 / rz + self.outer_hi) / 2.0,
            K12Case::Narrow => (self.inner_lo + 1.0 / rz) / 2.0,
        };
        ContourConfig::new(rz, rw)
    }

    pub fn k22(&self) -> ContourConfig {
        ContourConfig::new(self.inner(), self.inner())
    }
}

pub fn radii(spec: &SchurSpec<C>) -> Result<Radii> {
    let rho_max = spec.max_abs();
    if rho_max >= 1.0 {
        return Err(Error::Contour(format!(
            "variables must lie inside the unit disc, max modulus is {rho_max}"
        )));
    }
    Ok(Radii {
        rho_max,
        outer_hi: if rho_max > 0.0 { (1.0 / rho_max).min(CLIP) } else { CLIP },
        inner_lo: rho_max.max(1.0 / CLIP),
    })
}

fn check_levels(spec: &SchurSpec<C>, i: usize, j: usize) -> Result<()> {
    for l in [i, j] {
        if l == 0 || l > spec.t() {
            return Err(Error::Invalid(format!("level {l} outside 1..={}", spec.t())));
        }
    }
    Ok(())
}

/// Rejects circles through a pole of `H(ρ; ·)`, `H(ρ; 1/·)` or `zw = 1`.
fn check_poles(spec: &SchurSpec<C>, cfg: &ContourConfig, extra: &[f64]) -> Result<()> {
    let mut moduli: Vec<f64> = extra.to_vec();
    for r in spec.rho_plus().iter().chain(spec.rho_minus()) {
        for x in &r.vars {
            let m = x.norm();
            if m > 0.0 {
                moduli.push(m);
                moduli.push(1.0 / m);
            }
        }
    }
    let hit = |r: f64| moduli.iter().any(|&p| (r - p).abs() <= 1e-9 * p.max(1.0));
    if hit(cfg.r_z) || hit(cfg.r_w) || (cfg.r_z * cfg.r_w - 1.0).abs() <= 1e-9 {
        return Err(Error::Contour(format!(
            "radii ({}, {}) meet a pole of the integrand",
            cfg.r_z, cfg.r_w
        )));
    }
    Ok(())
}

/// `H(ρ; z)` for `ρ` given as a union, via `1 / prod (1 - x z)`.
fn h(rho: &Specialization<C>, z: C) -> C {
    rho.h_at(z)
}

fn one() -> C {
    C::new(1.0, 0.0)
}

fn zpow(z: C, k: i64) -> C {
    z.powi(k as i32)
}

/// Determinantal kernel value on explicit circles.
pub fn schur_kernel_on(
    spec: &SchurSpec<C>,
    i: usize,
    u: i64,
    j: usize,
    v: i64,
    cfg: &ContourConfig,
) -> Result<Quadrature> {
    check_levels(spec, i, j)?;
    check_poles(spec, cfg, &[])?;
    let t = spec.t();
    let (mi, pi) = (spec.minus_range(i, t + 1), spec.plus_range(0, i));
    let (pj, mj) = (spec.plus_range(0, j), spec.minus_range(j, t + 1));
    contour_integrate_factored(
        |z| h(&mi, z) * pi.h_inv_at(one() / z) * zpow(z, -u - 1),
        |w| h(&pj, w) * mj.h_inv_at(one() / w) * zpow(w, -v - 1),
        |z, w| one() / (z * w - one()),
        cfg,
    )
}

/// Determinantal kernel with the circles of `case`.
pub fn schur_kernel_with(
    spec: &SchurSpec<C>,
    i: usize,
    u: i64,
    j: usize,
    v: i64,
    case: RadiusCase,
) -> Result<Quadrature> {
    let mut cfg = radii(spec)?.eq27(case);
    cfg.quad_points = DEFAULT_QUAD_POINTS;
    schur_kernel_on(spec, i, u, j, v, &cfg)
}

/// `K(i, u; j, v)` with the prescribed circles.
pub fn schur_kernel(spec: &SchurSpec<C>, i: usize, u: i64, j: usize, v: i64) -> Result<C> {
    Ok(schur_kernel_with(spec, i, u, j, v, RadiusCase::prescribed(i, j))?.value)
}

/// `[K(p_s; p_t)]` over a point list.
pub fn schur_kernel_matrix(spec: &SchurSpec<C>, points: &[SpacePoint]) -> Result<Matrix<C>> {
    let n = points.len();
    let mut out = Matrix::zeros(n, n);
    for (a, p) in points.iter().enumerate() {
        for (b, q) in points.iter().enumerate() {
            out[(a, b)] = schur_kernel(spec, p.level, p.u, q.level, q.u)?;
        }
    }
    Ok(out)
}

/// `ρ⁻_[1,T] ∪ ρ⁺_[0,i)`.
fn left_union(spec: &SchurSpec<C>, i: usize) -> Specialization<C> {
    spec.minus_range(1, spec.t() + 1).union(&spec.plus_range(0, i))
}

fn require_pf(spec: &SchurSpec<C>) -> Result<()> {
    if !spec.is_pfaffian() {
        return Err(Error::Invalid("Pfaffian kernel needs a Pfaffian-mode spec".into()));
    }
    Ok(())
}

/// `K11(i, u; j, v)` on `|z| = |w| > 1`.
pub fn pf_k11(spec: &SchurSpec<C>, i: usize, u: i64, j: usize, v: i64) -> Result<Quadrature> {
    require_pf(spec)?;
    check_levels(spec, i, j)?;
    let cfg = radii(spec)?.k11();
    check_poles(spec, &cfg, &[1.0])?;
    let t = spec.t();
    let (mi, li) = (spec.minus_range(i, t + 1), left_union(spec, i));
    let (mj, lj) = (spec.minus_range(j, t + 1), left_union(spec, j));
    contour_integrate_factored(
        |z| h(&mi, z) * li.h_inv_at(one() / z) * zpow(z, -u) / (z * z - one()),
        |w| h(&mj, w) * lj.h_inv_at(one() / w) * zpow(w, -v) / (w * w - one()),
        |z, w| (z - w) / (z * w - one()),
        &cfg,
    )
}

/// `K12(i, u; j, v)` with the `|zw|` coupling of `case`.
pub fn pf_k12(
    spec: &SchurSpec<C>,
    i: usize,
    u: i64,
    j: usize,
    v: i64,
    case: K12Case,
) -> Result<Quadrature> {
    require_pf(spec)?;
    check_levels(spec, i, j)?;
    let cfg = radii(spec)?.k12(case);
    check_poles(spec, &cfg, &[1.0])?;
    let t = spec.t();
    let (mi, li) = (spec.minus_range(i, t + 1), left_union(spec, i));
    let (mj, lj) = (spec.minus_range(j, t + 1), left_union(spec, j));
    contour_integrate_factored(
        |z| h(&mi, z) * li.h_inv_at(one() / z) * zpow(z, -u) / (z * z - one()),
        |w| h(&lj, w) * mj.h_inv_at(one() / w) * zpow(w, -v - 1),
        |z, w| (z - w) / (z * w - one()),
        &cfg,
    )
}

/// `K22(i, u; j, v)` on `|z| = |w| < 1`, with integrand
/// `(z - w) / (zw (zw - 1))`: inverting the variables in the contour form of
/// `-V_[1,i)^t eps V_[1,k) XNX V_[1,k)^t eps V_[1,j)` gives this sign, and the
/// opposite sign fails the enumeration check.
pub fn pf_k22(spec: &SchurSpec<C>, i: usize, u: i64, j: usize, v: i64) -> Result<Quadrature> {
    require_pf(spec)?;
    check_levels(spec, i, j)?;
    let cfg = radii(spec)?.k22();
    check_poles(spec, &cfg, &[])?;
    let t = spec.t();
    let (mi, li) = (spec.minus_range(i, t + 1), left_union(spec, i));
    let (mj, lj) = (spec.minus_range(j, t + 1), left_union(spec, j));
    contour_integrate_factored(
        |z| h(&li, z) * mi.h_inv_at(one() / z) * zpow(z, -u - 1),
        |w| h(&lj, w) * mj.h_inv_at(one() / w) * zpow(w, -v - 1),
        |z, w| (z - w) / (z * w - one()),
        &cfg,
    )
}

/// The 2x2 block `[[K11, K12], [K21, K22]]` with `K21(i,u;j,v) = -K12(j,v;i,u)`.
pub fn pf_schur_kernel(spec: &SchurSpec<C>, i: usize, u: i64, j: usize, v: i64) -> Result<[[C; 2]; 2]> {
    let k11 = pf_k11(spec, i, u, j, v)?.value;
    let k12 = pf_k12(spec, i, u, j, v, K12Case::prescribed(i, j))?.value;
    let k21 = -pf_k12(spec, j, v, i, u, K12Case::prescribed(j, i))?.value;
    let k22 = pf_k22(spec, i, u, j, v)?.value;
    Ok([[k11, k12], [k21, k22]])
}

/// `2S x 2S` matrix of blocks over a point list; rows `2s, 2s+1` belong to point `s`.
pub fn pf_block_matrix(spec: &SchurSpec<C>, points: &[SpacePoint]) -> Result<Matrix<C>> {
    let n = points.len();
    let mut out = Matrix::zeros(2 * n, 2 * n);
    for (a, p) in points.iter().enumerate() {
        for (b, q) in points.iter().enumerate() {
            let blk = pf_schur_kernel(spec, p.level, p.u, q.level, q.u)?;
            for (r, row) in blk.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    out[(2 * a + r, 2 * b + c)] = *x;
                }
            }
        }
    }
    Ok(out)
}
