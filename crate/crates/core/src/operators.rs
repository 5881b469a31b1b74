//! Modified Laplacian on spherically symmetric fields.
//!
//! `Δ̂u = Δu + 2w ∇λ·∇u + w(Δλ + w|∇λ|²) u`, which is the conjugation
//! `e^{-wλ} Δ (e^{wλ} u)`. Derivatives of `u` use second-order centered
//! stencils (one-sided at the ends); the λ terms come from closed forms.

use crate::delta::{Order, RadialProfile, ORIGIN_FLOOR};
use crate::error::{check_len, GwigError, Result};
use crate::grid::RadialGrid;

/// λ and its radial derivatives sampled on a grid, plus the weights.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorCoefficients {
    pub lambda: Vec<f64>,
    pub grad_lambda: Vec<f64>,
    /// `λ'' + (2/r̆) λ'`, or `3λ''` at the origin.
    pub laplace_lambda: Vec<f64>,
    pub w: f64,
    pub z: Vec<f64>,
}

impl OperatorCoefficients {
    pub fn from_profile(
        grid: &RadialGrid,
        profile: &impl RadialProfile,
        w: f64,
        z: Vec<f64>,
    ) -> Result<Self> {
        let n = grid.len();
        let mut lambda = Vec::with_capacity(n);
        let mut grad_lambda = Vec::with_capacity(n);
        let mut laplace_lambda = Vec::with_capacity(n);
        for i in 0..n {
            let r = grid.r(i);
            let l0 = profile.eval(r, Order::Value)?;
            let l1 = profile.eval(r, Order::First)?;
            let l2 = profile.eval(r, Order::Second)?;
            lambda.push(l0);
            grad_lambda.push(l1);
            laplace_lambda.push(if r < ORIGIN_FLOOR { 3.0 * l2 } else { l2 + 2.0 * l1 / r });
        }
        Self::new(lambda, grad_lambda, laplace_lambda, w, z)
    }

    /// λ ≡ 0: every operator reduces to its classical stencil.
    pub fn riemannian(grid: &RadialGrid, w: f64, z: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        Self::new(vec![0.0; n], vec![0.0; n], vec![0.0; n], w, z)
    }

    pub fn new(
        lambda: Vec<f64>,
        grad_lambda: Vec<f64>,
        laplace_lambda: Vec<f64>,
        w: f64,
        z: Vec<f64>,
    ) -> Result<Self> {
        check_len("OperatorCoefficients grad_lambda", lambda.len(), grad_lambda.len())?;
        check_len("OperatorCoefficients laplace_lambda", lambda.len(), laplace_lambda.len())?;
        if !w.is_finite() {
            return Err(GwigError::Invalid(format!("w = {w} is not finite")));
        }
        Ok(Self {
            lambda,
            grad_lambda,
            laplace_lambda,
            w,
            z,
        })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `κ̃ = 1 - e^{-wλ}` at each node.
    pub fn kappa_tilde(&self) -> Vec<f64> {
        self.lambda.iter().map(|&l| -(-self.w * l).exp_m1()).collect()
    }

    fn check(&self, grid: &RadialGrid) -> Result<()> {
        check_len("OperatorCoefficients vs grid", grid.len(), self.len())
    }
}

/// First and second radial derivatives at node `i`.
pub(crate) fn radial_derivatives(grid: &RadialGrid, u: &[f64], i: usize) -> (f64, f64) {
    let h = grid.h();
    let n = u.len();
    if i == 0 {
        (
            (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h),
            (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (h * h),
        )
    } else if i == n - 1 {
        (
            (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * h),
            (2.0 * u[i] - 5.0 * u[i - 1] + 4.0 * u[i - 2] - u[i - 3]) / (h * h),
        )
    } else {
        (
            (u[i + 1] - u[i - 1]) / (2.0 * h),
            (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h),
        )
    }
}

/// `(u', Δu)` at node `i`; the origin uses `u'(0) = 0`, `Δu ≈ 6(u₁ - u₀)/h²`.
pub(crate) fn radial_gradient_laplacian(grid: &RadialGrid, u: &[f64], i: usize) -> (f64, f64) {
    if i == 0 && grid.includes_origin() {
        let h = grid.h();
        return (0.0, 6.0 * (u[1] - u[0]) / (h * h));
    }
    let (d1, d2) = radial_derivatives(grid, u, i);
    (d1, d2 + 2.0 * d1 / grid.r(i))
}

/// Plain spherical Laplacian `u'' + (2/r̆) u'`.
pub fn radial_laplacian(grid: &RadialGrid, u: &[f64]) -> Result<Vec<f64>> {
    grid.check_field("radial_laplacian", u)?;
    Ok((0..u.len())
        .map(|i| radial_gradient_laplacian(grid, u, i).1)
        .collect())
}

/// `cross_sign` multiplies the `2w∇λ·∇` term; only the mutation checks in
/// the verifier pass anything other than `1.0`.
pub(crate) fn modified_laplacian_signed(
    grid: &RadialGrid,
    u: &[f64],
    coeffs: &OperatorCoefficients,
    cross_sign: f64,
) -> Result<Vec<f64>> {
    grid.check_field("modified_laplacian_apply", u)?;
    coeffs.check(grid)?;
    let w = coeffs.w;
    Ok((0..u.len())
        .map(|i| {
            let (du, lap) = radial_gradient_laplacian(grid, u, i);
            let g = coeffs.grad_lambda[i];
            let l = coeffs.laplace_lambda[i];
            if g == 0.0 && l == 0.0 {
                lap
            } else {
                lap + cross_sign * 2.0 * w * g * du + w * (l + w * g * g) * u[i]
            }
        })
        .collect())
}

pub fn modified_laplacian_apply(
    grid: &RadialGrid,
    u: &[f64],
    coeffs: &OperatorCoefficients,
) -> Result<Vec<f64>> {
    modified_laplacian_signed(grid, u, coeffs, 1.0)
}

/// `e^{-wλ} Δ(e^{wλ} u)` with the plain stencil applied to the product.
pub fn conjugated_laplacian(
    grid: &RadialGrid,
    u: &[f64],
    coeffs: &OperatorCoefficients,
) -> Result<Vec<f64>> {
    grid.check_field("conjugated_laplacian", u)?;
    coeffs.check(grid)?;
    let w = coeffs.w;
    let lifted: Vec<f64> = u
        .iter()
        .zip(&coeffs.lambda)
        .map(|(&ui, &l)| (w * l).exp() * ui)
        .collect();
    let lap = radial_laplacian(grid, &lifted)?;
    Ok(lap
        .iter()
        .zip(&coeffs.lambda)
        .map(|(&v, &l)| (-w * l).exp() * v)
        .collect())
}

/// The dark potential `φ^d` entering the right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub enum DarkField {
    Constant(f64),
    Sampled(Vec<f64>),
}

impl DarkField {
    pub fn at(&self, i: usize) -> f64 {
        match self {
            DarkField::Constant(c) => *c,
            DarkField::Sampled(v) => v[i],
        }
    }

    fn check(&self, grid: &RadialGrid) -> Result<()> {
        match self {
            DarkField::Constant(c) if !c.is_finite() => {
                Err(GwigError::Invalid(format!("phi_d = {c} is not finite")))
            }
            DarkField::Constant(_) => Ok(()),
            DarkField::Sampled(v) => {
                grid.check_field("modified_rhs_assemble phi_d", v)?;
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(GwigError::Invalid("phi_d has non-finite samples".into()));
                }
                Ok(())
            }
        }
    }
}

/// `Δ̂(κ̃ φ^d)` with the same stencil as [`modified_laplacian_apply`].
pub fn modified_rhs_assemble(
    grid: &RadialGrid,
    phi_d: &DarkField,
    coeffs: &OperatorCoefficients,
) -> Result<Vec<f64>> {
    phi_d.check(grid)?;
    coeffs.check(grid)?;
    let kt = coeffs.kappa_tilde();
    let source: Vec<f64> = kt.iter().enumerate().map(|(i, &k)| k * phi_d.at(i)).collect();
    modified_laplacian_apply(grid, &source, coeffs)
}
