//! Simpson quadrature and the total-charge integral.

use crate::closed_forms::{particle_charge_density, ParticleModel};
use crate::error::{GwigError, Result};

/// Absolute tolerance per unit-length panel of the adaptive rule.
pub const ADAPTIVE_TOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 48;
/// Neglected tail of the charge integral.
const TAIL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quadrature {
    Adaptive,
    /// Composite Simpson with this many panels (rounded up to even).
    Fixed { panels: usize },
}

pub fn composite_simpson(f: impl Fn(f64) -> Result<f64>, a: f64, b: f64, panels: usize) -> Result<f64> {
    if panels == 0 || !(b > a) {
        return Err(GwigError::Quadrature(format!(
            "composite Simpson on [{a}, {b}] with {panels} panels"
        )));
    }
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a)? + f(b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// Adaptive Simpson with Richardson correction; fails when the recursion
/// depth runs out before the tolerance is met.
pub fn adaptive_simpson(f: impl Fn(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(b > a) || !(tol > 0.0) {
        return Err(GwigError::Quadrature(format!(
            "adaptive Simpson on [{a}, {b}] with tolerance {tol}"
        )));
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if diff.abs() <= 15.0 * tol {
        return Ok(left + right + diff / 15.0);
    }
    if depth == 0 {
        return Err(GwigError::Quadrature(format!(
            "no convergence on [{a:e}, {b:e}], estimate change {diff:e}"
        )));
    }
    Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// Outer radius beyond which the charge integrand's tail is below `TAIL_TOL`.
///
/// For large `r̆` the integrand `3ϱ̆r̆²` is bounded by `C r̆² e^{-r̆}` with
/// `C = 2wβ/a · max(1, |p|)`, whose tail is `C (R² + 2R + 2) e^{-R}`.
pub fn charge_cutoff(model: &ParticleModel) -> f64 {
    let d = model.delta;
    let c = 2.0 * model.w.abs() * d.beta() / d.a() * model.phi_d_over_phi_a.abs().max(1.0);
    let mut r: f64 = 20.0;
    while c * (r * r + 2.0 * r + 2.0) * (-r).exp() > TAIL_TOL {
        r += 1.0;
    }
    r
}

/// `3 ∫₀^∞ ϱ̆ r̆² dr̆`, which equals `-κ_a(0)` for the particle model.
pub fn total_charge(model: &ParticleModel, method: Quadrature) -> Result<f64> {
    let f = |r: f64| -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        Ok(3.0 * particle_charge_density(r, model)? * r * r)
    };
    let r_cut = charge_cutoff(model);
    match method {
        Quadrature::Fixed { panels } => composite_simpson(f, 0.0, r_cut, panels),
        Quadrature::Adaptive => {
            // Unit panels keep the peak (near r̆ = 0 for small a) resolved.
            let mut total = 0.0;
            let mut lo = 0.0;
            while lo < r_cut {
                let hi = (lo + 1.0).min(r_cut);
                total += adaptive_simpson(f, lo, hi, ADAPTIVE_TOL)?;
                lo = hi;
            }
            Ok(total)
        }
    }
}
