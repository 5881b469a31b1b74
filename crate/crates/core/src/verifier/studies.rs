//! Randomized trials and refinement studies shared by the property suites
//! and the acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::convergence::{convergence_order, ConvergenceStudy, DEFAULT_ORDER_THRESHOLD};
use super::elliptic::{brute_force_elliptic_solve, EllipticProblem};
use crate::appendix::{
    appendix_laplace_residual, classical_conservation_residual, classical_divergence,
    classical_wave_residual, conservation_residual, coulomb_gauge_residual, wave_residual,
    wave_residual_raised,
};
use crate::closed_forms::{null_dark_potential, particle_potential, ParticleModel};
use crate::delta::{Order, RadialProfile, RegularizedDelta};
use crate::error::Result;
use crate::grid::{Field2, PlanarGrid, RadialGrid, SpacetimeGrid1p1};
use crate::operators::{
    conjugated_laplacian, modified_laplacian_apply, modified_laplacian_signed,
    modified_rhs_assemble, radial_laplacian, DarkField, OperatorCoefficients,
};
use crate::weyl::{induced_metric, kappa_tensor, Matrix, WeylWeights};

/// Radial grid sizes (intervals) for the elliptic refinement studies.
pub const RADIAL_GRIDS: [usize; 4] = [256, 512, 1024, 2048];
/// Spatial interval counts for the 1+1D studies.
pub const SPACETIME_GRIDS: [usize; 4] = [64, 128, 256, 512];
/// Interval counts per axis for the planar Coulomb-gauge study.
pub const PLANAR_GRIDS: [usize; 4] = [32, 64, 128, 256];

/// Brute-force comparison window and resolution.
pub const BRUTE_FORCE_R_MAX: f64 = 20.0;
pub const BRUTE_FORCE_WINDOW: (f64, f64) = (0.05, 19.0);
pub const BRUTE_FORCE_INTERVALS: usize = 4096;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn random_metric(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = rng.gen_range(-1.0..1.0);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        g[(i, i)] += sign * d as f64;
    }
    g
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..d).map(|_| rng.gen_range(lo..hi)).collect()
}

/// Largest `|h.linear - g| + |h.offset|` over trials with equal weights and
/// with diagonal `g`, in that order.
pub fn corollary_trials(seed: u64, trials: usize) -> Result<(f64, f64)> {
    let mut rng = rng_for(seed, 1);
    let (mut equal, mut diagonal) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let d = rng.gen_range(1..=8);
        let kappa = rng.gen_range(0.0..0.99);
        let v_d = random_vec(&mut rng, d, -1.0, 1.0);

        let g = random_metric(&mut rng, d);
        let w = vec![rng.gen_range(0.0..3.0); d];
        let h = induced_metric(&g, kappa, &w, &v_d)?;
        equal = equal.max((&h.linear - &g).amax() + h.offset.amax());

        let g = Matrix::from_diagonal(&random_metric(&mut rng, d).diagonal());
        let w = random_vec(&mut rng, d, 0.0, 3.0);
        let h = induced_metric(&g, kappa, &w, &v_d)?;
        diagonal = diagonal.max((&h.linear - &g).amax() + h.offset.amax());
    }
    Ok((equal, diagonal))
}

/// Largest relative gap in `h(f_v(v)) = f_α(g v)` with `α^d = g v_d`.
pub fn commutation_trials(seed: u64, trials: usize) -> Result<f64> {
    let mut rng = rng_for(seed, 2);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let d = rng.gen_range(1..=8);
        let kappa = rng.gen_range(0.0..0.9);
        let w = random_vec(&mut rng, d, 0.0, 3.0);
        let g = random_metric(&mut rng, d);
        let v = random_vec(&mut rng, d, -2.0, 2.0);
        let v_d = random_vec(&mut rng, d, -2.0, 2.0);
        let h = induced_metric(&g, kappa, &w, &v_d)?;
        let alpha_d: Vec<f64> = (&g * Matrix::from_column_slice(d, 1, &v_d)).iter().copied().collect();
        let gv: Vec<f64> = (&g * Matrix::from_column_slice(d, 1, &v)).iter().copied().collect();
        let f_v = kappa_tensor(kappa, &w, v_d.clone())?;
        let f_a = kappa_tensor(kappa, &w, alpha_d)?;
        let lhs = h.apply(&f_v.forward(&v)?)?;
        let rhs = f_a.forward(&gv)?;
        worst = worst.max(max_abs_diff(&lhs, &rhs) / (1.0 + max_abs(&rhs)));
    }
    Ok(worst)
}

/// `A e^{-((r - c)/s)²}` with analytic derivatives.
#[derive(Debug, Clone, Copy)]
struct GaussianBump {
    amp: f64,
    center: f64,
    width: f64,
}

impl RadialProfile for GaussianBump {
    fn eval(&self, r: f64, order: Order) -> Result<f64> {
        let x = (r - self.center) / self.width;
        let e = self.amp * (-x * x).exp();
        let s = self.width;
        Ok(match order {
            Order::Value => e,
            Order::First => -2.0 * x / s * e,
            Order::Second => (4.0 * x * x - 2.0) / (s * s) * e,
        })
    }
}

/// Random smooth test function `c₀ + Σ cₖ sin(ωₖ r + φₖ)`.
#[derive(Debug, Clone)]
struct SineSum(Vec<(f64, f64, f64)>, f64);

impl SineSum {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let terms = (0..3)
            .map(|_| {
                (
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(0.3..1.5),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        Self(terms, rng.gen_range(-1.0..1.0))
    }

    fn at(&self, r: f64) -> f64 {
        self.1 + self.0.iter().map(|(c, om, ph)| c * (om * r + ph).sin()).sum::<f64>()
    }
}

/// `‖Δ̂u - e^{-wλ}Δ(e^{wλ}u)‖∞` for random smooth `u`, `λ` on `[0.5, 10]`.
/// `cross_sign = -1` flips the middle term of `Δ̂`.
pub fn conjugation_study(seed: u64, cross_sign: f64) -> Result<ConvergenceStudy> {
    let mut rng = rng_for(seed, 3);
    let u = SineSum::random(&mut rng);
    let bump = GaussianBump {
        amp: rng.gen_range(0.2..1.5),
        center: rng.gen_range(2.0..8.0),
        width: rng.gen_range(1.0..3.0),
    };
    let w = rng.gen_range(0.5..3.0);
    convergence_order(&RADIAL_GRIDS, DEFAULT_ORDER_THRESHOLD, |n| {
        let grid = RadialGrid::spanning(0.5, 10.0, n)?;
        let c = OperatorCoefficients::from_profile(&grid, &bump, w, vec![1.0; 4])?;
        let samples = grid.sample(|r| u.at(r));
        let lhs = modified_laplacian_signed(&grid, &samples, &c, cross_sign)?;
        let rhs = conjugated_laplacian(&grid, &samples, &c)?;
        Ok((grid.h(), max_abs_diff(&lhs, &rhs)))
    })
}

/// Residual `Δ̂φ̆ - Δ̂(κ_a φ^d)` of the closed-form potential at the
/// interior nodes of `[1, 20]`, where the equation is imposed.
pub fn particle_pde_study(model: &ParticleModel) -> Result<ConvergenceStudy> {
    convergence_order(&RADIAL_GRIDS, DEFAULT_ORDER_THRESHOLD, |n| {
        let grid = RadialGrid::spanning(1.0, 20.0, n)?;
        let c = OperatorCoefficients::from_profile(&grid, &model.delta, model.w, vec![1.0; 4])?;
        let phi = grid.try_sample(|r| particle_potential(r, model))?;
        let lhs = modified_laplacian_apply(&grid, &phi, &c)?;
        let rhs = modified_rhs_assemble(&grid, &DarkField::Constant(model.phi_d_over_phi_a), &c)?;
        let last = grid.len() - 1;
        Ok((grid.h(), max_abs_diff(&lhs[1..last], &rhs[1..last])))
    })
}

fn affinity(w: f64, lambda: f64) -> f64 {
    -(-w * lambda).exp_m1()
}

fn gentle_delta() -> RegularizedDelta {
    RegularizedDelta::new(1.0, 2.0).expect("valid constants")
}

/// Appendix Laplace residual of `(1 - K)/r̆ + K φ^d` with `λ = δ_a` on
/// `[2, 12]`. The centered stencil is exact on `1/r̆`, so the truncation
/// error comes from the one-sided boundary stencils.
pub fn appendix_laplace_study() -> Result<ConvergenceStudy> {
    let delta = RegularizedDelta::new(1.0, RegularizedDelta::DEFAULT_BETA)?;
    let weights = WeylWeights::new(vec![1.0; 4], vec![2.0, 2.0, 1.5, 1.0])?;
    let phi_d = 0.7;
    convergence_order(&RADIAL_GRIDS, DEFAULT_ORDER_THRESHOLD, |n| {
        let grid = RadialGrid::spanning(2.0, 12.0, n)?;
        let mut worst = 0.0f64;
        for mu in 0..4 {
            let w = weights.w()[mu];
            let lambda = grid.try_sample(|r| delta.value(r))?;
            let phi_hat: Vec<f64> = grid
                .nodes()
                .iter()
                .zip(&lambda)
                .map(|(&r, &l)| {
                    let k = affinity(w, l);
                    (1.0 - k) / r + k * phi_d
                })
                .collect();
            let res = appendix_laplace_residual(
                &grid,
                &phi_hat,
                &DarkField::Constant(phi_d),
                &lambda,
                &weights,
                mu,
            )?;
            worst = worst.max(max_abs(&res));
        }
        Ok((grid.h(), worst))
    })
}

fn spacetime_grid(n: usize) -> Result<SpacetimeGrid1p1> {
    let dx = 12.0 / n as f64;
    SpacetimeGrid1p1::new(n / 2 + 1, n + 1, 0.5 * dx, dx, 0.0, -6.0)
}

fn pulse(xi: f64) -> f64 {
    (-(xi + 1.0) * (xi + 1.0)).exp()
}

fn spacetime_weights() -> WeylWeights {
    WeylWeights::new(vec![1.0; 4], vec![2.0, 1.5, 1.0, 1.0]).expect("valid weights")
}

/// Wave residual of `(1 - K_μ) f(x - t) + K_μ φ^d` under a stationary
/// `λ(x) = δ_a(|x|)`, for `μ = 0` and `μ = 1`.
pub fn wave_study() -> Result<ConvergenceStudy> {
    wave_study_with(&SPACETIME_GRIDS, gentle_delta().peak(), 0.0)
}

/// The wave study with `λ(t, x) = (amplitude + drift·t) δ_a(|x|)/δ_a(0)`.
/// A nonzero drift makes λ time dependent, which the operator rejects.
pub fn wave_study_with(levels: &[usize], amplitude: f64, drift: f64) -> Result<ConvergenceStudy> {
    let delta = gentle_delta();
    let weights = spacetime_weights();
    let phi_d = 0.8;
    let shape = |x: f64| delta.value(x.abs()).unwrap_or(f64::NAN) / delta.peak();
    convergence_order(levels, DEFAULT_ORDER_THRESHOLD, |n| {
        let g = spacetime_grid(n)?;
        let lam = g.sample(|t, x| (amplitude + drift * t) * shape(x));
        let dark = g.sample(|_, _| phi_d);
        let mut worst = 0.0f64;
        for mu in 0..2 {
            let w = weights.w()[mu];
            let phi_hat = g.sample(|t, x| {
                let k = affinity(w, amplitude * shape(x));
                (1.0 - k) * pulse(x - t) + k * phi_d
            });
            let r = wave_residual(&g, &phi_hat, &dark, &lam, &weights, mu)?;
            worst = worst.max(r.max_abs());
        }
        Ok((g.dx(), worst))
    })
}

/// Relative gap between the raised wave form and `-e^{-zλ}` times the
/// lowered one, for isotropic `z`.
pub fn wave_forms_gap() -> Result<f64> {
    let delta = gentle_delta();
    let weights = spacetime_weights();
    let g = spacetime_grid(128)?;
    let lam = g.sample(|_, x| delta.value(x.abs()).unwrap_or(f64::NAN));
    let dark = g.sample(|_, _| 0.8);
    let w = weights.w()[0];
    let phi_hat = g.sample(|t, x| {
        let k = affinity(w, delta.value(x.abs()).unwrap_or(f64::NAN));
        (1.0 - k) * pulse(x - t) + k * 0.8 + 0.05 * (x * t).sin()
    });
    let lowered = wave_residual(&g, &phi_hat, &dark, &lam, &weights, 0)?;
    let raised = wave_residual_raised(&g, &phi_hat, &dark, &lam, &weights, 0)?;
    let z = weights.z()[0];
    let scale = raised.max_abs().max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for k in 0..g.nt() {
        for j in 0..g.nx() {
            let expected = -(-z * lam.get(k, j)).exp() * lowered.get(k, j);
            worst = worst.max((raised.get(k, j) - expected).abs());
        }
    }
    Ok(worst / scale)
}

const DARK_4: [f64; 4] = [0.3, -0.2, 0.1, 0.4];

/// Conservation residual of the transformed Lorenz plane wave
/// `A = (f(x - t), -f(x - t), 0, 0)`.
pub fn conservation_study() -> Result<ConvergenceStudy> {
    let delta = gentle_delta();
    let weights = spacetime_weights();
    convergence_order(&SPACETIME_GRIDS, DEFAULT_ORDER_THRESHOLD, |n| {
        let g = spacetime_grid(n)?;
        let lam = g.sample(|_, x| delta.value(x.abs()).unwrap_or(f64::NAN));
        let classical = [1.0, -1.0, 0.0, 0.0];
        let a_hat: [Field2; 4] = std::array::from_fn(|mu| {
            let w = weights.w()[mu];
            g.sample(|t, x| {
                let k = affinity(w, delta.value(x.abs()).unwrap_or(f64::NAN));
                (1.0 - k) * classical[mu] * pulse(x - t) + k * DARK_4[mu]
            })
        });
        let a_d: [Field2; 4] = std::array::from_fn(|mu| g.sample(|_, _| DARK_4[mu]));
        let r = conservation_residual(&g, &a_hat, &a_d, &lam, &weights)?;
        Ok((g.dx(), r.max_abs()))
    })
}

fn planar_grid(n: usize) -> Result<PlanarGrid> {
    PlanarGrid::new(n + 1, n + 1, 8.0 / n as f64, -4.0, -4.0)
}

/// Divergence-free `A = (∂_y ψ, -∂_x ψ, 0)` from `ψ = e^{-ρ²/2}(1 + 0.3x)`.
fn stream_field(x: f64, y: f64) -> [f64; 3] {
    let g = (-(x * x + y * y) / 2.0).exp();
    [-y * g * (1.0 + 0.3 * x), x * g * (1.0 + 0.3 * x) - 0.3 * g, 0.0]
}

/// Anisotropic field weights; the spatial dilation exponents must agree for
/// a classical divergence-free field to satisfy the GWIG gauge condition.
fn planar_weights() -> WeylWeights {
    WeylWeights::new(vec![1.0, 1.5, 1.5, 1.5], vec![2.0, 1.5, 1.0, 1.0]).expect("valid weights")
}

/// Coulomb-gauge residual of a transformed divergence-free field under
/// `λ = δ_a(ρ)`.
pub fn coulomb_study() -> Result<ConvergenceStudy> {
    let delta = gentle_delta();
    let weights = planar_weights();
    convergence_order(&PLANAR_GRIDS, DEFAULT_ORDER_THRESHOLD, |n| {
        let g = planar_grid(n)?;
        let lam_at = |x: f64, y: f64| delta.value((x * x + y * y).sqrt()).unwrap_or(f64::NAN);
        let lam = g.sample(lam_at);
        let a_hat: [Field2; 3] = std::array::from_fn(|j| {
            let w = weights.w()[j + 1];
            g.sample(|x, y| {
                let k = affinity(w, lam_at(x, y));
                (1.0 - k) * stream_field(x, y)[j] + k * DARK_4[j]
            })
        });
        let a_d: [Field2; 3] = std::array::from_fn(|j| g.sample(|_, _| DARK_4[j]));
        let r = coulomb_gauge_residual(&g, &a_hat, &a_d, &lam, &weights)?;
        Ok((g.h(), r.max_abs()))
    })
}

fn bit_mismatches(a: &[f64], b: &[f64]) -> usize {
    if a.len() != b.len() {
        return a.len().max(b.len());
    }
    a.iter().zip(b).filter(|(x, y)| x.to_bits() != y.to_bits()).count()
}

/// Number of nodes at which a GWIG operator at `λ ≡ 0` differs bitwise
/// from its classical stencil, over all five operators.
pub fn classical_reduction_mismatches(seed: u64) -> Result<usize> {
    let mut rng = rng_for(seed, 4);
    let u = SineSum::random(&mut rng);
    let mut count = 0;

    let grid = RadialGrid::spanning(0.0, 10.0, 200)?;
    let samples = grid.sample(|r| u.at(r));
    let c = OperatorCoefficients::riemannian(&grid, 2.0, vec![1.0; 4])?;
    let plain = radial_laplacian(&grid, &samples)?;
    count += bit_mismatches(&modified_laplacian_apply(&grid, &samples, &c)?, &plain);
    let zeros = vec![0.0; grid.len()];
    let app = appendix_laplace_residual(
        &grid,
        &samples,
        &DarkField::Constant(0.6),
        &zeros,
        &spacetime_weights(),
        1,
    )?;
    count += bit_mismatches(&app, &plain);

    let g = spacetime_grid(64)?;
    let lam = g.sample(|_, _| 0.0);
    let f = g.sample(|t, x| u.at(x - t));
    let dark = g.sample(|_, _| 0.8);
    let r = wave_residual(&g, &f, &dark, &lam, &spacetime_weights(), 1)?;
    count += bit_mismatches(r.as_slice(), classical_wave_residual(&g, &f)?.as_slice());
    let a: [Field2; 4] = std::array::from_fn(|mu| g.sample(|t, x| u.at(x + 0.3 * mu as f64 - t)));
    let a_d: [Field2; 4] = std::array::from_fn(|mu| g.sample(|_, _| DARK_4[mu]));
    let r = conservation_residual(&g, &a, &a_d, &lam, &spacetime_weights())?;
    count += bit_mismatches(r.as_slice(), classical_conservation_residual(&g, &a)?.as_slice());

    let p = planar_grid(48)?;
    let lam = p.sample(|_, _| 0.0);
    let a: [Field2; 3] = std::array::from_fn(|j| p.sample(|x, y| u.at(x + 0.5 * y + j as f64)));
    let a_d: [Field2; 3] = std::array::from_fn(|j| p.sample(|_, _| DARK_4[j]));
    let r = coulomb_gauge_residual(&p, &a, &a_d, &lam, &planar_weights())?;
    count += bit_mismatches(r.as_slice(), classical_divergence(&p, &a)?.as_slice());
    Ok(count)
}

/// Largest relative deviation of `op(αu + βv)` from `α op(u) + β op(v)`
/// for the modified Laplacian, the appendix Laplace and the wave residual.
pub fn linearity_gap(seed: u64) -> Result<f64> {
    let mut rng = rng_for(seed, 5);
    let (u, v) = (SineSum::random(&mut rng), SineSum::random(&mut rng));
    let (al, be) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let delta = gentle_delta();
    let mut worst = 0.0f64;
    let mut compare = |lhs: &[f64], a: &[f64], b: &[f64]| {
        let comb: Vec<f64> = a.iter().zip(b).map(|(x, y)| al * x + be * y).collect();
        let scale = max_abs(a).max(max_abs(b)).max(1.0) * (al.abs() + be.abs());
        worst = worst.max(max_abs_diff(lhs, &comb) / scale);
    };

    let grid = RadialGrid::spanning(0.0, 10.0, 256)?;
    let c = OperatorCoefficients::from_profile(&grid, &delta, 2.0, vec![1.0; 4])?;
    let su = grid.sample(|r| u.at(r));
    let sv = grid.sample(|r| v.at(r));
    let sc: Vec<f64> = su.iter().zip(&sv).map(|(x, y)| al * x + be * y).collect();
    compare(
        &modified_laplacian_apply(&grid, &sc, &c)?,
        &modified_laplacian_apply(&grid, &su, &c)?,
        &modified_laplacian_apply(&grid, &sv, &c)?,
    );
    let weights = spacetime_weights();
    let zero = DarkField::Constant(0.0);
    let app = |s: &[f64]| appendix_laplace_residual(&grid, s, &zero, &c.lambda, &weights, 0);
    compare(&app(&sc)?, &app(&su)?, &app(&sv)?);

    let g = spacetime_grid(64)?;
    let lam = g.sample(|_, x| delta.value(x.abs()).unwrap_or(f64::NAN));
    let dark = g.sample(|_, _| 0.0);
    let fu = g.sample(|t, x| u.at(x - t));
    let fv = g.sample(|t, x| v.at(x + t));
    let fc = fu.map2(&fv, |x, y| al * x + be * y);
    let wave = |f: &Field2| wave_residual(&g, f, &dark, &lam, &weights, 0);
    compare(
        wave(&fc)?.as_slice(),
        wave(&fu)?.as_slice(),
        wave(&fv)?.as_slice(),
    );
    Ok(worst)
}

/// Which closed form the brute-force solve is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DarkCase {
    Particle,
    NullDark,
}

/// Max relative deviation of the direct solve (built from `model`) from the
/// closed form evaluated with `reference`, on the comparison window.
pub fn brute_force_error(
    model: &ParticleModel,
    reference: &ParticleModel,
    case: DarkCase,
    intervals: usize,
) -> Result<f64> {
    let r_max = BRUTE_FORCE_R_MAX;
    let grid = RadialGrid::spanning(0.0, r_max, intervals)?;
    let c = OperatorCoefficients::from_profile(&grid, &model.delta, model.w, vec![1.0; 4])?;
    let exact = |r: f64| match case {
        DarkCase::Particle => particle_potential(r, reference),
        DarkCase::NullDark => null_dark_potential(r, reference),
    };
    let problem = match case {
        DarkCase::Particle => EllipticProblem {
            phi_d: model.phi_d_over_phi_a,
            bc_outer: 1.0 / r_max,
            origin_charge: 1.0,
        },
        DarkCase::NullDark => EllipticProblem {
            phi_d: 0.0,
            bc_outer: null_dark_potential(r_max, model)?,
            origin_charge: 1.0,
        },
    };
    let u = brute_force_elliptic_solve(&grid, &c, &problem)?;
    let (lo, hi) = BRUTE_FORCE_WINDOW;
    let mut worst = 0.0f64;
    for (i, &ui) in u.iter().enumerate() {
        let r = grid.r(i);
        if r < lo || r > hi {
            continue;
        }
        let e = exact(r)?;
        worst = worst.max((ui - e).abs() / e.abs());
    }
    Ok(worst)
}

/// The direct solve at `λ ≡ 0` against `1/r̆` on `[1, R]`.
pub fn brute_force_calibration() -> Result<ConvergenceStudy> {
    convergence_order(&[512, 1024, 2048], DEFAULT_ORDER_THRESHOLD, |n| {
        let grid = RadialGrid::spanning(0.0, BRUTE_FORCE_R_MAX, n)?;
        let c = OperatorCoefficients::riemannian(&grid, 2.0, vec![1.0; 4])?;
        let u = brute_force_elliptic_solve(&grid, &c, &EllipticProblem::particle(BRUTE_FORCE_R_MAX))?;
        let worst = (0..grid.len())
            .filter(|&i| grid.r(i) >= 1.0)
            .map(|i| (u[i] * grid.r(i) - 1.0).abs())
            .fold(0.0, f64::max);
        Ok((grid.h(), worst))
    })
}
