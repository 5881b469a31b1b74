//! Closed-form solutions built from the affine solution map
//! `φ̂ = (1 - κ̃) φ^h + κ̃ φ^d` and the finite-size particle model.
//!
//! Everything is non-dimensional: potentials in units of `φ_a = Q/(4πε₀a)`,
//! fields in `Q/(4πε₀a²)`, densities in `ϱ₀ = 3Q/(4πa³)`, radii in `a`.

use crate::delta::{KappaProfile, Order, RadialProfile, RegularizedDelta, ORIGIN_FLOOR};
use crate::error::{check_len, GwigError, Result};

/// Finite-size charged particle with a constant dark potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleModel {
    pub delta: RegularizedDelta,
    pub w: f64,
    /// `φ^d / φ_a`.
    pub phi_d_over_phi_a: f64,
}

impl ParticleModel {
    pub const DEFAULT_W: f64 = 2.0;

    pub fn new(a: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            delta: RegularizedDelta::new(a, beta)?,
            w: Self::DEFAULT_W,
            phi_d_over_phi_a: 1.0,
        })
    }

    pub fn with_weight(mut self, w: f64) -> Self {
        self.w = w;
        self
    }

    pub fn with_dark_potential(mut self, phi_d_over_phi_a: f64) -> Self {
        self.phi_d_over_phi_a = phi_d_over_phi_a;
        self
    }

    pub fn kappa(&self) -> Result<KappaProfile> {
        KappaProfile::new(self.delta, self.w)
    }

    /// `e^{-wβ/(4a)}`, the weight left on `1/r̆` at the origin.
    pub fn origin_residual(&self) -> f64 {
        (-self.w * self.delta.peak()).exp()
    }
}

fn check_positive_radius(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(GwigError::Domain {
            name: "r_breve",
            value: r,
            domain: "[0, inf)",
        });
    }
    Ok(r.max(ORIGIN_FLOOR))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBundle {
    pub phi_h: Vec<f64>,
    pub phi_d: Vec<f64>,
    pub kappa_tilde: Vec<f64>,
    pub phi_hat: Vec<f64>,
}

pub fn compose_solution(phi_h: &[f64], phi_d: &[f64], kappa_tilde: &[f64]) -> Result<SolutionBundle> {
    check_len("compose_solution phi_d", phi_h.len(), phi_d.len())?;
    check_len("compose_solution kappa_tilde", phi_h.len(), kappa_tilde.len())?;
    if let Some(&k) = kappa_tilde.iter().find(|&&k| !(0.0..=1.0).contains(&k)) {
        return Err(GwigError::Domain {
            name: "kappa_tilde",
            value: k,
            domain: "[0, 1]",
        });
    }
    let phi_hat = phi_h
        .iter()
        .zip(phi_d)
        .zip(kappa_tilde)
        .map(|((&h, &d), &k)| if k == 1.0 { d } else { (1.0 - k) * h + k * d })
        .collect();
    Ok(SolutionBundle {
        phi_h: phi_h.to_vec(),
        phi_d: phi_d.to_vec(),
        kappa_tilde: kappa_tilde.to_vec(),
        phi_hat,
    })
}

pub fn extract_riemannian(phi_hat: &[f64], phi_d: &[f64], kappa_tilde: &[f64]) -> Result<Vec<f64>> {
    check_len("extract_riemannian phi_d", phi_hat.len(), phi_d.len())?;
    check_len("extract_riemannian kappa_tilde", phi_hat.len(), kappa_tilde.len())?;
    phi_hat
        .iter()
        .zip(phi_d)
        .zip(kappa_tilde)
        .map(|((&p, &d), &k)| {
            if !(0.0..1.0).contains(&k) {
                return Err(GwigError::NonInvertible(format!(
                    "kappa_tilde = {k}: the node is pinned to the dark field"
                )));
            }
            Ok((p - k * d) / (1.0 - k))
        })
        .collect()
}

/// `φ̆ = 1/r̆ + (φ^d/φ_a - 1/r̆) κ_a`.
pub fn particle_potential(r_breve: f64, model: &ParticleModel) -> Result<f64> {
    let r = check_positive_radius(r_breve)?;
    let kp = model.kappa()?;
    let p = model.phi_d_over_phi_a;
    let inv_r = 1.0 / r;
    if r >= 1.0 {
        // Exact at r̆ = 1: the bracket vanishes.
        let k = kp.value(r)?;
        Ok(inv_r + (p - inv_r) * k)
    } else {
        // Inside the core, keep 1 - κ_a = e^{-wδ_a} uncancelled.
        Ok(p * kp.value(r)? + kp.one_minus(r)? * inv_r)
    }
}

/// Radial field `Ĕ = -dφ̆/dr̆ = (1 - κ_a)/r̆² - (φ^d/φ_a - 1/r̆) κ_a'`.
pub fn particle_field(r_breve: f64, model: &ParticleModel) -> Result<f64> {
    let r = check_positive_radius(r_breve)?;
    let kp = model.kappa()?;
    let p = model.phi_d_over_phi_a;
    Ok(kp.one_minus(r)? / (r * r) - (p - 1.0 / r) * kp.eval(r, Order::First)?)
}

/// `ϱ̆ = (2/(3r̆)) κ_a' + (1/3)(1 - 1/r̆) κ_a''` at unit dark potential,
/// generalized to `(2p/(3r̆)) κ_a' + (1/3)(p - 1/r̆) κ_a''`.
pub fn particle_charge_density(r_breve: f64, model: &ParticleModel) -> Result<f64> {
    let r = check_positive_radius(r_breve)?;
    let kp = model.kappa()?;
    let p = model.phi_d_over_phi_a;
    let k1 = kp.eval(r, Order::First)?;
    let k2 = kp.eval(r, Order::Second)?;
    Ok((2.0 * p / (3.0 * r)) * k1 + (1.0 / 3.0) * (p - 1.0 / r) * k2)
}

/// `φ̆ = (1 - κ_a)/r̆`, the model with a null dark field.
pub fn null_dark_potential(r_breve: f64, model: &ParticleModel) -> Result<f64> {
    let r = check_positive_radius(r_breve)?;
    Ok(model.kappa()?.one_minus(r)? / r)
}

/// `(1 - κ_a) φ^d / r^exponent + κ_a φ^d`.
pub fn dirichlet_solution(r: f64, phi_d: f64, kappa: &KappaProfile, exponent: f64) -> Result<f64> {
    let r = check_positive_radius(r)?;
    Ok(kappa.one_minus(r)? * phi_d / r.powf(exponent) + kappa.value(r)? * phi_d)
}
