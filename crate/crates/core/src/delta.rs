//! Logistic-profile regularized delta and the dilation profile built on it.
//!
//! All radii are non-dimensional (`r̆ = r / a`). Derivatives are the
//! differentiated closed forms; nothing here uses finite differences.

use crate::error::{GwigError, Result};

/// Radii below this are evaluated as the origin.
pub const ORIGIN_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Value,
    First,
    Second,
}

/// A radial profile with analytic first and second derivatives in `r̆`.
pub trait RadialProfile {
    fn eval(&self, r: f64, order: Order) -> Result<f64>;

    fn value(&self, r: f64) -> Result<f64> {
        self.eval(r, Order::Value)
    }
}

fn check_radius(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(GwigError::Domain {
            name: "r_breve",
            value: r,
            domain: "[0, inf)",
        });
    }
    Ok(if r < ORIGIN_FLOOR { 0.0 } else { r })
}

/// `δ_a(r̆) = (β/a) e^{-r̆} / (1 + e^{-r̆})²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedDelta {
    a: f64,
    beta: f64,
}

impl RegularizedDelta {
    pub const DEFAULT_BETA: f64 = 10.0;

    pub fn new(a: f64, beta: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(GwigError::Domain {
                name: "a",
                value: a,
                domain: "(0, inf)",
            });
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(GwigError::Domain {
                name: "beta",
                value: beta,
                domain: "(0, inf)",
            });
        }
        Ok(Self { a, beta })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Peak value `δ_a(0) = β / (4a)`.
    pub fn peak(&self) -> f64 {
        self.beta / (4.0 * self.a)
    }

    /// `4π ∫ δ_a r̆² dr̆`, the 3D mass of the profile in `r̆` units. The
    /// profile is not unit-normalized; this is reported, never applied.
    pub fn normalization(&self) -> f64 {
        // ∫₀^∞ r² e^{-r}/(1+e^{-r})² dr = π²/6.
        let pi = std::f64::consts::PI;
        4.0 * pi * (self.beta / self.a) * pi * pi / 6.0
    }
}

impl RadialProfile for RegularizedDelta {
    fn eval(&self, r: f64, order: Order) -> Result<f64> {
        let r = check_radius(r)?;
        let s = (-r).exp();
        let p = 1.0 + s;
        let scale = self.beta / self.a;
        Ok(scale
            * match order {
                Order::Value => s / (p * p),
                Order::First => -s * (1.0 - s) / (p * p * p),
                Order::Second => s * (1.0 - 4.0 * s + s * s) / (p * p * p * p),
            })
    }
}

pub fn delta_eval(delta: &RegularizedDelta, r_breve: f64, order: Order) -> Result<f64> {
    delta.eval(r_breve, order)
}

/// `κ_a(r̆) = 1 - e^{-w δ_a(r̆)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaProfile {
    delta: RegularizedDelta,
    w: f64,
}

impl KappaProfile {
    pub fn new(delta: RegularizedDelta, w: f64) -> Result<Self> {
        if !w.is_finite() {
            return Err(GwigError::Invalid(format!("weight w = {w} is not finite")));
        }
        Ok(Self { delta, w })
    }

    pub fn delta(&self) -> &RegularizedDelta {
        &self.delta
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// `1 - κ_a = e^{-w δ_a}` without cancellation.
    pub fn one_minus(&self, r: f64) -> Result<f64> {
        Ok((-self.w * self.delta.value(r)?).exp())
    }

    /// The coefficient left on the `1/r̆` term at the origin, `e^{-wβ/(4a)}`.
    pub fn origin_residual(&self) -> f64 {
        (-self.w * self.delta.peak()).exp()
    }

    /// First radius at which κ_a drops below `threshold`.
    pub fn support_radius(&self, threshold: f64) -> Result<f64> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(GwigError::Domain {
                name: "threshold",
                value: threshold,
                domain: "(0, 1)",
            });
        }
        if self.value(0.0)? < threshold {
            return Ok(0.0);
        }
        let mut hi = 1.0;
        while self.value(hi)? >= threshold {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(GwigError::Invalid(format!(
                    "kappa profile stays above {threshold} beyond r = 1e6"
                )));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.value(mid)? >= threshold {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

impl RadialProfile for KappaProfile {
    fn eval(&self, r: f64, order: Order) -> Result<f64> {
        let d0 = self.delta.eval(r, Order::Value)?;
        let w = self.w;
        let decay = (-w * d0).exp();
        Ok(match order {
            Order::Value => -(-w * d0).exp_m1(),
            Order::First => w * self.delta.eval(r, Order::First)? * decay,
            Order::Second => {
                let d1 = self.delta.eval(r, Order::First)?;
                let d2 = self.delta.eval(r, Order::Second)?;
                w * decay * (d2 - w * d1 * d1)
            }
        })
    }
}

pub fn kappa_profile_eval(profile: &KappaProfile, r_breve: f64, order: Order) -> Result<f64> {
    profile.eval(r_breve, order)
}
