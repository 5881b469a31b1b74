//! Direct finite-volume solve of `Δ̂φ̂ = Δ̂(κ_a φ^d)` on a radial grid.
//!
//! The operator is assembled in flux form, `e^{-wλ} ∇·∇(e^{wλ} ·)`, over
//! spherical shells; the origin cell `[0, h/2]` gives the regularity stencil
//! `6(u₁ - u₀)/h²`. A point charge of strength `q` in the lifted field
//! `e^{wλ}(φ̂ - κφ^d)` is placed in the origin cell; seen through `Δ̂` it has
//! weight `q e^{-wλ(0)}`, which is what remains of the harmonic part's
//! `1/r̆` singularity at finite `a`.

use crate::banded::BandedMatrix;
use crate::error::{GwigError, Result};
use crate::grid::RadialGrid;
use crate::operators::{modified_rhs_assemble, DarkField, OperatorCoefficients};

/// Smallest outer radius accepted by the solver.
pub const MIN_OUTER_RADIUS: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticProblem {
    pub phi_d: f64,
    /// Dirichlet value at the outer node.
    pub bc_outer: f64,
    /// Charge carried by the harmonic part, in `φ_a a` units.
    pub origin_charge: f64,
}

impl EllipticProblem {
    /// Unit charge, unit dark potential, harmonic far-field value `1/R`.
    pub fn particle(r_max: f64) -> Self {
        Self {
            phi_d: 1.0,
            bc_outer: 1.0 / r_max,
            origin_charge: 1.0,
        }
    }
}

pub fn brute_force_elliptic_solve(
    grid: &RadialGrid,
    coeffs: &OperatorCoefficients,
    problem: &EllipticProblem,
) -> Result<Vec<f64>> {
    if !grid.includes_origin() {
        return Err(GwigError::Invalid(
            "elliptic solve needs a grid starting at the origin".into(),
        ));
    }
    if grid.r_max() < MIN_OUTER_RADIUS {
        return Err(GwigError::Invalid(format!(
            "outer radius {} below {MIN_OUTER_RADIUS}",
            grid.r_max()
        )));
    }
    let rhs = modified_rhs_assemble(grid, &DarkField::Constant(problem.phi_d), coeffs)?;

    let n = grid.len();
    let h = grid.h();
    let w = coeffs.w;
    let lam = &coeffs.lambda;
    let mut a = BandedMatrix::tridiagonal(n);
    let mut b = rhs;

    // Origin cell: volume h³/24 (per 4π), one face at h/2.
    let v0 = h * h * h / 24.0;
    let f_out = 0.25 * h * h / (h * v0);
    a.set(0, 0, -f_out)?;
    a.set(0, 1, f_out * (w * (lam[1] - lam[0])).exp())?;
    b[0] -= 24.0 * problem.origin_charge * (-w * lam[0]).exp() / (h * h * h);

    for i in 1..n - 1 {
        let r = grid.r(i);
        let vol = r * r * h + h * h * h / 12.0;
        let f_in = (r - 0.5 * h).powi(2) / (h * vol);
        let f_out = (r + 0.5 * h).powi(2) / (h * vol);
        a.set(i, i - 1, f_in * (w * (lam[i - 1] - lam[i])).exp())?;
        a.set(i, i, -(f_in + f_out))?;
        a.set(i, i + 1, f_out * (w * (lam[i + 1] - lam[i])).exp())?;
    }

    a.set(n - 1, n - 1, 1.0)?;
    b[n - 1] = problem.bc_outer;
    a.solve(&b)
}
