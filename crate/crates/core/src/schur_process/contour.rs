use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::C;

/// Starting sample count per circle.
pub const DEFAULT_QUAD_POINTS: usize = 32;
/// Refinement stops here (2^16 samples per circle).
pub const MAX_QUAD_POINTS: usize = 1 << 16;
/// Relative change between successive doublings accepted as converged.
pub const QUAD_TOL: f64 = 1e-10;

/// Circles `|z| = r_z`, `|w| = r_w`, both positively oriented.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ContourConfig {
    pub r_z: f64,
    pub r_w: f64,
    pub quad_points: usize,
}

impl ContourConfig {
    pub fn new(r_z: f64, r_w: f64) -> Self {
        Self {
            r_z,
            r_w,
            quad_points: DEFAULT_QUAD_POINTS,
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.r_z > 0.0 && self.r_w > 0.0 && self.r_z.is_finite() && self.r_w.is_finite()) {
            return Err(Error::Contour(format!("radii must be positive, got {} and {}", self.r_z, self.r_w)));
        }
        if !self.quad_points.is_power_of_two() || self.quad_points < 4 {
            return Err(Error::Contour(format!(
                "quad_points must be a power of two >= 4, got {}",
                self.quad_points
            )));
        }
        Ok(())
    }
}

/// Result of a refined double trapezoid sum.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub value: C,
    /// Samples per circle in the accepted sum.
    pub points: usize,
    pub doublings: u32,
    /// `|I_N - I_{N/2}|` at acceptance.
    pub change: f64,
}

fn circle(r: f64, n: usize) -> Vec<C> {
    (0..n)
        .map(|k| C::from_polar(r, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// `(1/(2πi))^2 ∮∮ f(z, w) dz dw` by the trapezoid rule on both circles,
/// doubling the sample count until successive sums agree.
pub fn contour_integrate(f: impl Fn(C, C) -> C, cfg: &ContourConfig) -> Result<Quadrature> {
    refine(cfg, |n| {
        let (zs, ws) = (circle(cfg.r_z, n), circle(cfg.r_w, n));
        let mut acc = C::new(0.0, 0.0);
        for &z in &zs {
            for &w in &ws {
                acc += f(z, w) * z * w;
            }
        }
        acc / (n * n) as f64
    })
}

/// Same integral for `f(z, w) = a(z) b(w) g(z, w)`, evaluating `a` and `b` once
/// per sample.
pub fn contour_integrate_factored(
    a: impl Fn(C) -> C,
    b: impl Fn(C) -> C,
    g: impl Fn(C, C) -> C,
    cfg: &ContourConfig,
) -> Result<Quadrature> {
    refine(cfg, |n| {
        let (zs, ws) = (circle(cfg.r_z, n), circle(cfg.r_w, n));
        let av: Vec<C> = zs.iter().map(|&z| a(z) * z).collect();
        let bv: Vec<C> = ws.iter().map(|&w| b(w) * w).collect();
        let mut acc = C::new(0.0, 0.0);
        for (z, az) in zs.iter().zip(&av) {
            let mut row = C::new(0.0, 0.0);
            for (w, bw) in ws.iter().zip(&bv) {
                row += bw * g(*z, *w);
            }
            acc += az * row;
        }
        acc / (n * n) as f64
    })
}

fn refine(cfg: &ContourConfig, sum: impl Fn(usize) -> C) -> Result<Quadrature> {
    cfg.check()?;
    let mut n = cfg.quad_points;
    let mut prev = sum(n);
    let mut doublings = 0;
    while n < MAX_QUAD_POINTS {
        n *= 2;
        doublings += 1;
        let cur = sum(n);
        let change = (cur - prev).norm();
        if !cur.re.is_finite() || !cur.im.is_finite() {
            return Err(Error::Contour("integrand is not finite on the contour".into()));
        }
        if change <= QUAD_TOL * cur.norm().max(1.0) {
            return Ok(Quadrature {
                value: cur,
                points: n,
                doublings,
                change,
            });
        }
        prev = cur;
    }
    Err(Error::Contour(format!(
        "no convergence after {doublings} doublings ({n} points per circle)"
    )))
}
