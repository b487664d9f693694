use crate::error::{Error, Result};
use crate::eynard_mehta::{EMSpec, Levels};
use crate::linalg::Matrix;
use crate::point_process::GroundSet;
use crate::scalar::Scalar;
use crate::symfunc::h_at_index;

use super::toeplitz::toeplitz_w;
use super::{SchurSpec, Window};

/// Multi-level form of a Schur process restricted to a finite window.
///
/// Each level keeps its top `N = -window.lo` shifted coordinates
/// `l_j = λ_j - j`, so every level carries exactly `N` points of the window.
/// `s_λ(ρ) = det[h_{l_i + a}(ρ)]` gives `Phi(a, l) = h_{l+a}(ρ⁺_0)` and
/// `Psi(l, a) = h_{l+a}(ρ⁻_T)`; summing out `μ(i)` gives
/// `W_i = toeplitz_w(ρ⁻_i, ρ⁺_i, window, -N)`. Sequences with a point above
/// `window.hi` are dropped.
pub fn em_bridge<S: Scalar>(spec: &SchurSpec<S>, window: Window) -> Result<EMSpec<S>> {
    if spec.is_pfaffian() {
        return Err(Error::Invalid("em_bridge takes a determinantal Schur spec".into()));
    }
    if window.lo > -1 {
        return Err(Error::WindowTooSmall(format!(
            "window must reach below -1 to hold the staircase, got lo = {}",
            window.lo
        )));
    }
    let n = (-window.lo) as usize;
    let t = spec.t();
    let depth = (window.hi + n as i64).max(0) as usize;
    let labels: Vec<String> = window.positions().map(|u| u.to_string()).collect();
    let levels = Levels::new(vec![GroundSet::new(labels)?; t])?;
    let h0 = spec.plus(0).h_values(depth);
    let ht = spec.minus(t).h_values(depth);
    let width = window.len();
    let phi = Matrix::from_fn(n, width, |a, b| h_at_index(&h0, window.lo + b as i64 + a as i64 + 1));
    let psi = Matrix::from_fn(width, n, |b, a| h_at_index(&ht, window.lo + b as i64 + a as i64 + 1));
    let ws = (1..t)
        .map(|i| toeplitz_w(spec.minus(i), spec.plus(i), window, window.lo))
        .collect();
    EMSpec::new(levels, n, phi, ws, psi)
}
