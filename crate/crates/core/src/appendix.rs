//! Residuals of the conservation, wave, Coulomb-gauge and Laplace equations
//! seen by the Riemannian observer.
//!
//! Every operator works on the lifted field `ψ = e^{w_μ λ}(φ̂ - K_μ φ^d)`,
//! which is exactly the classical field when `φ̂` comes from the affine
//! solution map. Weights are 4-vectors `(z₀..z₃)`, `(w₀..w₃)`; on reduced
//! grids the axes that do not exist contribute no derivative.

use crate::error::{check_len, GwigError, Result};
use crate::grid::{Field2, PlanarGrid, RadialGrid, SpacetimeGrid1p1};
use crate::operators::{radial_laplacian, DarkField};
use crate::weyl::WeylWeights;

/// Minkowski signature used to raise indices.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

fn affinity(w: f64, lambda: f64) -> f64 {
    -(-w * lambda).exp_m1()
}

/// `e^{wλ}(φ̂ - K φ^d)`.
fn lift(phi_hat: f64, phi_d: f64, w: f64, lambda: f64) -> f64 {
    (w * lambda).exp() * (phi_hat - affinity(w, lambda) * phi_d)
}

fn check_weights(weights: &WeylWeights, mu: usize) -> Result<()> {
    check_len("appendix operators expect 4-component weights", 4, weights.dim())?;
    if mu >= 4 {
        return Err(GwigError::Invalid(format!("component index mu = {mu} outside 0..4")));
    }
    Ok(())
}

/// A λ(x) that does not depend on time.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryLambda(Vec<f64>);

impl StationaryLambda {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GwigError::Invalid("lambda has non-finite samples".into()));
        }
        Ok(Self(values))
    }

    /// Accepts spacetime samples only if every time row equals the first.
    pub fn from_spacetime(samples: &Field2) -> Result<Self> {
        let first = samples.row(0);
        let mut max_change: f64 = 0.0;
        for k in 1..samples.rows() {
            for (a, b) in samples.row(k).iter().zip(first) {
                max_change = max_change.max((a - b).abs());
            }
        }
        if max_change > 0.0 {
            return Err(GwigError::NonStationary { max_change });
        }
        Self::new(first.to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Lifted field `ψ(t, x)` for component `mu`.
fn lift_spacetime(
    phi_hat: &Field2,
    phi_d: &Field2,
    lambda: &StationaryLambda,
    w: f64,
) -> Field2 {
    let l = lambda.values();
    Field2::from_fn(phi_hat.rows(), phi_hat.cols(), |k, j| {
        lift(phi_hat.get(k, j), phi_d.get(k, j), w, l[j])
    })
}

fn d2t(u: &Field2, k: usize, j: usize, dt: f64) -> f64 {
    (u.get(k + 1, j) - 2.0 * u.get(k, j) + u.get(k - 1, j)) / (dt * dt)
}

fn d2x(u: &Field2, k: usize, j: usize, dx: f64) -> f64 {
    (u.get(k, j + 1) - 2.0 * u.get(k, j) + u.get(k, j - 1)) / (dx * dx)
}

fn dt1(u: &Field2, k: usize, j: usize, dt: f64) -> f64 {
    (u.get(k + 1, j) - u.get(k - 1, j)) / (2.0 * dt)
}

fn dx1(u: &Field2, k: usize, j: usize, dx: f64) -> f64 {
    (u.get(k, j + 1) - u.get(k, j - 1)) / (2.0 * dx)
}

/// Interior-node evaluation; edge nodes stay zero.
fn interior(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Field2 {
    let mut out = Field2::zeros(rows, cols);
    for k in 1..rows - 1 {
        for j in 1..cols - 1 {
            out.set(k, j, f(k, j));
        }
    }
    out
}

fn check_spacetime_inputs(
    grid: &SpacetimeGrid1p1,
    fields: &[&Field2],
    lambda: &Field2,
) -> Result<StationaryLambda> {
    for f in fields {
        grid.check_field("spacetime field", f)?;
    }
    grid.check_field("spacetime lambda", lambda)?;
    StationaryLambda::from_spacetime(lambda)
}

/// `-∂²_t ψ + ∂²_x ψ` with `ψ = e^{w_μλ}(φ̂ - K_μ φ^d)`.
pub fn wave_residual(
    grid: &SpacetimeGrid1p1,
    phi_hat: &Field2,
    phi_d: &Field2,
    lambda: &Field2,
    weights: &WeylWeights,
    mu: usize,
) -> Result<Field2> {
    check_weights(weights, mu)?;
    let lambda = check_spacetime_inputs(grid, &[phi_hat, phi_d], lambda)?;
    let psi = lift_spacetime(phi_hat, phi_d, &lambda, weights.w()[mu]);
    let (dt, dx) = (grid.dt(), grid.dx());
    Ok(interior(grid.nt(), grid.nx(), |k, j| {
        -d2t(&psi, k, j, dt) + d2x(&psi, k, j, dx)
    }))
}

/// `(e^{-z₀λ}∂²_t - e^{-z₁λ}∂²_x)(e^{w_μλ}φ̂) - R₂`, with `R₂` the same
/// operator on `e^{w_μλ}(1 - e^{-w_μλ}) φ^d`. For `z₀ = z₁ = z` it equals
/// `-e^{-zλ}` times [`wave_residual`].
pub fn wave_residual_raised(
    grid: &SpacetimeGrid1p1,
    phi_hat: &Field2,
    phi_d: &Field2,
    lambda: &Field2,
    weights: &WeylWeights,
    mu: usize,
) -> Result<Field2> {
    check_weights(weights, mu)?;
    let lambda = check_spacetime_inputs(grid, &[phi_hat, phi_d], lambda)?;
    let l = lambda.values();
    let w = weights.w()[mu];
    let (z0, z1) = (weights.z()[0], weights.z()[1]);
    let lifted = Field2::from_fn(grid.nt(), grid.nx(), |k, j| (w * l[j]).exp() * phi_hat.get(k, j));
    let source = Field2::from_fn(grid.nt(), grid.nx(), |k, j| {
        (w * l[j]).exp() * affinity(w, l[j]) * phi_d.get(k, j)
    });
    let (dt, dx) = (grid.dt(), grid.dx());
    let op = |u: &Field2, k: usize, j: usize| {
        (-z0 * l[j]).exp() * d2t(u, k, j, dt) - (-z1 * l[j]).exp() * d2x(u, k, j, dx)
    };
    Ok(interior(grid.nt(), grid.nx(), |k, j| {
        op(&lifted, k, j) - op(&source, k, j)
    }))
}

/// Plain `-∂²_t u + ∂²_x u`.
pub fn classical_wave_residual(grid: &SpacetimeGrid1p1, u: &Field2) -> Result<Field2> {
    grid.check_field("classical_wave_residual", u)?;
    let (dt, dx) = (grid.dt(), grid.dx());
    Ok(interior(grid.nt(), grid.nx(), |k, j| {
        -d2t(u, k, j, dt) + d2x(u, k, j, dx)
    }))
}

fn check_components(grid: &SpacetimeGrid1p1, a: &[Field2; 4]) -> Result<()> {
    for c in a {
        grid.check_field("4-potential component", c)?;
    }
    Ok(())
}

/// `-∂_t(e^{w₀λ}(Â₀ - K₀A^d₀)) + ∂_x(e^{w₁λ}(Â₁ - K₁A^d₁))` for covariant
/// components. Components 2 and 3 are shape-checked; with no y or z extent
/// their derivatives vanish.
pub fn conservation_residual(
    grid: &SpacetimeGrid1p1,
    a_hat: &[Field2; 4],
    a_d: &[Field2; 4],
    lambda: &Field2,
    weights: &WeylWeights,
) -> Result<Field2> {
    check_weights(weights, 0)?;
    check_components(grid, a_hat)?;
    check_components(grid, a_d)?;
    let lambda = check_spacetime_inputs(grid, &[], lambda)?;
    let w = weights.w();
    let psi0 = lift_spacetime(&a_hat[0], &a_d[0], &lambda, w[0]);
    let psi1 = lift_spacetime(&a_hat[1], &a_d[1], &lambda, w[1]);
    let (dt, dx) = (grid.dt(), grid.dx());
    Ok(interior(grid.nt(), grid.nx(), |k, j| {
        -dt1(&psi0, k, j, dt) + dx1(&psi1, k, j, dx)
    }))
}

/// The contravariant form: `e^{-z₀λ}∂₀(e^{w₀λ}Â⁰) + e^{-z₁λ}∂₁(e^{w₁λ}Â¹) - R₁`
/// with indices raised by [`ETA`]. Inputs are covariant, as for
/// [`conservation_residual`].
pub fn conservation_residual_raised(
    grid: &SpacetimeGrid1p1,
    a_hat: &[Field2; 4],
    a_d: &[Field2; 4],
    lambda: &Field2,
    weights: &WeylWeights,
) -> Result<Field2> {
    check_weights(weights, 0)?;
    check_components(grid, a_hat)?;
    check_components(grid, a_d)?;
    let lambda = check_spacetime_inputs(grid, &[], lambda)?;
    let l = lambda.values();
    let (w, z) = (weights.w(), weights.z());
    let raised = |a: &Field2, mu: usize, dark: bool| {
        Field2::from_fn(grid.nt(), grid.nx(), |k, j| {
            let lifted = (w[mu] * l[j]).exp() * ETA[mu] * a.get(k, j);
            if dark {
                lifted * affinity(w[mu], l[j])
            } else {
                lifted
            }
        })
    };
    let (u0, u1) = (raised(&a_hat[0], 0, false), raised(&a_hat[1], 1, false));
    let (d0, d1) = (raised(&a_d[0], 0, true), raised(&a_d[1], 1, true));
    let (dt, dx) = (grid.dt(), grid.dx());
    Ok(interior(grid.nt(), grid.nx(), |k, j| {
        let lhs = (-z[0] * l[j]).exp() * dt1(&u0, k, j, dt)
            + (-z[1] * l[j]).exp() * dx1(&u1, k, j, dx);
        let r1 = (-z[0] * l[j]).exp() * dt1(&d0, k, j, dt)
            + (-z[1] * l[j]).exp() * dx1(&d1, k, j, dx);
        lhs - r1
    }))
}

/// Plain `-∂_t A₀ + ∂_x A₁`.
pub fn classical_conservation_residual(
    grid: &SpacetimeGrid1p1,
    a: &[Field2; 4],
) -> Result<Field2> {
    check_components(grid, a)?;
    let (dt, dx) = (grid.dt(), grid.dx());
    Ok(interior(grid.nt(), grid.nx(), |k, j| {
        -dt1(&a[0], k, j, dt) + dx1(&a[1], k, j, dx)
    }))
}

/// Stationary Coulomb gauge on a planar grid. `a_hat` and `a_d` hold the
/// contravariant spatial components `(x, y, z)`; only `x` and `y` vary.
pub fn coulomb_gauge_residual(
    grid: &PlanarGrid,
    a_hat: &[Field2; 3],
    a_d: &[Field2; 3],
    lambda: &Field2,
    weights: &WeylWeights,
) -> Result<Field2> {
    check_weights(weights, 0)?;
    for f in a_hat.iter().chain(a_d).chain(std::iter::once(lambda)) {
        grid.check_field("coulomb_gauge_residual", f)?;
    }
    let (w, z) = (weights.w(), weights.z());
    let h = grid.h();
    let lifted = |a: &Field2, axis: usize| {
        Field2::from_fn(grid.ny(), grid.nx(), |r, c| {
            (w[axis] * lambda.get(r, c)).exp() * a.get(r, c)
        })
    };
    let dark = |a: &Field2, axis: usize| {
        Field2::from_fn(grid.ny(), grid.nx(), |r, c| {
            let l = lambda.get(r, c);
            (w[axis] * l).exp() * affinity(w[axis], l) * a.get(r, c)
        })
    };
    let (ux, uy) = (lifted(&a_hat[0], 1), lifted(&a_hat[1], 2));
    let (dx_, dy_) = (dark(&a_d[0], 1), dark(&a_d[1], 2));
    Ok(interior(grid.ny(), grid.nx(), |r, c| {
        let l = lambda.get(r, c);
        let ex = (-z[1] * l).exp();
        let ey = (-z[2] * l).exp();
        let lhs = ex * dx1(&ux, r, c, h) + ey * (uy.get(r + 1, c) - uy.get(r - 1, c)) / (2.0 * h);
        let rhs = ex * dx1(&dx_, r, c, h) + ey * (dy_.get(r + 1, c) - dy_.get(r - 1, c)) / (2.0 * h);
        lhs - rhs
    }))
}

/// Plain `∂_x A^x + ∂_y A^y`.
pub fn classical_divergence(grid: &PlanarGrid, a: &[Field2; 3]) -> Result<Field2> {
    for f in a {
        grid.check_field("classical_divergence", f)?;
    }
    let h = grid.h();
    Ok(interior(grid.ny(), grid.nx(), |r, c| {
        dx1(&a[0], r, c, h) + (a[1].get(r + 1, c) - a[1].get(r - 1, c)) / (2.0 * h)
    }))
}

/// `e^{-zλ}Δ(e^{w_μλ}φ̂) - e^{-zλ}Δ(e^{w_μλ}(1 - e^{-w_μλ})φ^d)` on a radial
/// grid. The spherical reduction needs `z₁ = z₂ = z₃`.
pub fn appendix_laplace_residual(
    grid: &RadialGrid,
    phi_hat: &[f64],
    phi_d: &DarkField,
    lambda: &[f64],
    weights: &WeylWeights,
    mu: usize,
) -> Result<Vec<f64>> {
    check_weights(weights, mu)?;
    grid.check_field("appendix_laplace_residual phi_hat", phi_hat)?;
    grid.check_field("appendix_laplace_residual lambda", lambda)?;
    if let DarkField::Sampled(v) = phi_d {
        grid.check_field("appendix_laplace_residual phi_d", v)?;
    }
    let z = weights.z();
    if z[1] != z[2] || z[2] != z[3] {
        return Err(GwigError::Invalid(format!(
            "radial reduction needs equal spatial z, got {:?}",
            &z[1..]
        )));
    }
    let w = weights.w()[mu];
    let lifted: Vec<f64> = phi_hat
        .iter()
        .zip(lambda)
        .map(|(&p, &l)| (w * l).exp() * p)
        .collect();
    let source: Vec<f64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| (w * l).exp() * affinity(w, l) * phi_d.at(i))
        .collect();
    let lhs = radial_laplacian(grid, &lifted)?;
    let rhs = radial_laplacian(grid, &source)?;
    Ok(lambda
        .iter()
        .zip(lhs.iter().zip(&rhs))
        .map(|(&l, (&a, &b))| {
            let e = (-z[1] * l).exp();
            e * a - e * b
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights(w: [f64; 4]) -> WeylWeights {
        WeylWeights::new(vec![1.0; 4], w.to_vec()).unwrap()
    }

    fn grid() -> SpacetimeGrid1p1 {
        SpacetimeGrid1p1::new(24, 32, 0.05, 0.1, 0.0, -1.6).unwrap()
    }

    #[test]
    fn nonstationary_lambda_is_rejected() {
        let g = grid();
        let lam = g.sample(|t, x| 0.3 * (-x * x).exp() * (1.0 + t));
        let u = g.sample(|t, x| (x - t).sin());
        let err = wave_residual(&g, &u, &u, &lam, &weights([2.0; 4]), 0).unwrap_err();
        assert!(matches!(err, GwigError::NonStationary { .. }));
        assert!(conservation_residual(
            &g,
            &[u.clone(), u.clone(), u.clone(), u.clone()],
            &[u.clone(), u.clone(), u.clone(), u.clone()],
            &lam,
            &weights([2.0; 4])
        )
        .is_err());
    }

    #[test]
    fn constant_dark_solution_has_zero_wave_residual() {
        let g = grid();
        let lam = g.sample(|_, x| 0.8 * (-x * x).exp());
        let c = g.sample(|_, _| 1.7);
        let r = wave_residual(&g, &c, &c, &lam, &weights([2.0, 1.0, 1.0, 1.0]), 0).unwrap();
        assert!(r.max_abs() < 1e-9, "{}", r.max_abs());
    }

    #[test]
    fn conservation_vanishes_when_hat_equals_constant_dark() {
        let g = grid();
        let lam = g.sample(|_, x| 0.5 * (-x * x).exp());
        let a: [Field2; 4] = std::array::from_fn(|mu| g.sample(|_, _| 0.5 + mu as f64));
        let r = conservation_residual(&g, &a, &a, &lam, &weights([2.0, 1.5, 1.0, 1.0])).unwrap();
        assert!(r.max_abs() < 1e-9);
    }

    #[test]
    fn mu_and_weight_dimension_are_checked() {
        let g = grid();
        let lam = g.sample(|_, _| 0.0);
        let u = g.sample(|_, _| 0.0);
        assert!(wave_residual(&g, &u, &u, &lam, &weights([1.0; 4]), 4).is_err());
        let w2 = WeylWeights::new(vec![1.0; 2], vec![1.0; 2]).unwrap();
        assert!(wave_residual(&g, &u, &u, &lam, &w2, 0).is_err());
    }

    #[test]
    fn laplace_rejects_anisotropic_spatial_z() {
        let rg = RadialGrid::spanning(0.5, 2.0, 16).unwrap();
        let w = WeylWeights::new(vec![1.0, 1.0, 2.0, 1.0], vec![1.0; 4]).unwrap();
        let u = rg.sample(|r| r);
        let l = rg.sample(|_| 0.0);
        assert!(appendix_laplace_residual(&rg, &u, &DarkField::Constant(0.0), &l, &w, 0).is_err());
    }

    #[test]
    fn laplace_constant_solution_has_zero_residual() {
        let rg = RadialGrid::spanning(0.5, 8.0, 128).unwrap();
        let l = rg.sample(|r| 2.0 * (-r * r / 4.0).exp());
        let u = rg.sample(|_| 0.9);
        let res = appendix_laplace_residual(&rg, &u, &DarkField::Constant(0.9), &l, &weights([2.0; 4]), 1)
            .unwrap();
        assert!(res.iter().all(|v| v.abs() < 1e-9));
    }
}
