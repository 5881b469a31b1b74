//! The property suites: every module invariant as a named report entry.

use rand::Rng;

use super::convergence::ConvergenceStudy;
use super::quadrature::{total_charge, Quadrature};
use super::report::{Check, VerificationReport};
use super::studies::{self, rng_for, DarkCase};
use crate::closed_forms::{
    compose_solution, extract_riemannian, particle_field, particle_potential, ParticleModel,
};
use crate::delta::{KappaProfile, Order, RadialProfile, RegularizedDelta};
use crate::error::Result;
use crate::weyl::{
    dilation_density, dilation_tensor, kappa_lambda_roundtrip, kappa_tensor,
    metric_representations, observer_pairing, AffineKappaTensor, Conversion, DilationScalar,
    Matrix, Observer, KAPPA_MAX,
};

/// Deliberate defects used to confirm that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Flip the sign of the `2w∇λ·∇` term of the modified Laplacian.
    FlipCrossTerm,
    /// Evaluate the closed form compared against the direct solve with a
    /// wrong Weyl weight.
    WrongClosedFormWeight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub a: f64,
    pub beta: f64,
    pub w: f64,
    pub phi_d_over_phi_a: f64,
    /// Randomized trials per algebraic identity.
    pub trials: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            a: 1.0,
            beta: RegularizedDelta::DEFAULT_BETA,
            w: ParticleModel::DEFAULT_W,
            phi_d_over_phi_a: 1.0,
            trials: 1000,
            mutation: None,
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    fn model(&self) -> Result<ParticleModel> {
        Ok(ParticleModel::new(self.a, self.beta)?
            .with_weight(self.w)
            .with_dark_potential(self.phi_d_over_phi_a))
    }
}

/// Tolerances of the property suites.
pub mod tol {
    pub const KAPPA_LAMBDA: f64 = 1e-14;
    pub const TRANSFORM_ROUNDTRIP: f64 = 1e-12;
    pub const COROLLARY: f64 = 1e-12;
    pub const COMMUTATION: f64 = 1e-12;
    pub const METRIC_CONSISTENCY: f64 = 1e-12;
    pub const WEIGHT_COLLAPSE: f64 = 1e-14;
    pub const DENSITY: f64 = 1e-12;
    pub const OBSERVER_LIMIT: f64 = 1e-5;
    pub const FD_STEP: f64 = 1e-5;
    pub const FD_RELATIVE: f64 = 1e-6;
    pub const INDICATOR: f64 = 1e-6;
    pub const ORIGIN_RESIDUAL: f64 = 1e-12;
    pub const ORIGIN_RESIDUAL_SMALL_A: f64 = 1e-21;
    pub const LINEARITY: f64 = 1e-12;
    pub const WAVE_FORMS: f64 = 1e-8;
    pub const NON_SINGULAR: f64 = 1e-12;
    pub const COMPOSITION: f64 = 1e-12;
    pub const GAUGE: f64 = 1e-14;
    pub const BRUTE_FORCE: f64 = 1e-3;
    pub const CHARGE: f64 = 1e-3;
}

/// Runs every invariant of the algebra, profile, operator and closed-form
/// modules plus the oracle comparisons. Failures become report entries.
pub fn run_property_suites(config: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new(config.seed);
    let entries: Vec<(&str, Box<dyn Fn(&SuiteConfig) -> Result<Vec<Check>>>)> = vec![
        ("weyl", Box::new(weyl_suite)),
        ("delta", Box::new(delta_suite)),
        ("operators", Box::new(operator_suite)),
        ("closed_forms", Box::new(closed_form_suite)),
        ("oracles", Box::new(oracle_suite)),
    ];
    for (name, suite) in entries {
        match suite(config) {
            Ok(checks) => checks.into_iter().for_each(|c| report.push(c)),
            Err(e) => report.push(Check::failed(format!("{name}.suite"), e.to_string())),
        }
    }
    report
}

fn study_check(name: &str, study: &ConvergenceStudy) -> Check {
    let norms: Vec<String> = study.residual_norms.iter().map(|r| format!("{r:.3e}")).collect();
    let mut c = Check {
        name: name.into(),
        measured: study.fitted_order,
        tolerance: study.threshold,
        pass: study.passed(),
        notes: format!("grids {:?}; residuals [{}]", study.grid_sizes, norms.join(", ")),
    };
    if let Some(n) = &study.note {
        c = c.with_note(n.clone());
    }
    c
}

/// Largest λ for which `λ → κ → λ` is representable to 1e-14.
const LAMBDA_ROUNDTRIP_MAX: f64 = 5.0;

fn weyl_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let n = cfg.trials;
    let mut rng = rng_for(cfg.seed, 10);
    let mut checks = Vec::new();

    // κ → λ → κ is well conditioned on all of [0, 1). λ → κ → λ loses
    // e^λ ulps through 1 - κ, so it is sampled where that stays below 1e-14.
    let mut worst = 0.0f64;
    for _ in 0..n {
        let k = rng.gen_range(0.0..KAPPA_MAX);
        let back = kappa_lambda_roundtrip(
            kappa_lambda_roundtrip(k, Conversion::KappaToLambda)?,
            Conversion::LambdaToKappa,
        )?;
        let l = rng.gen_range(0.0..LAMBDA_ROUNDTRIP_MAX);
        let back_l = kappa_lambda_roundtrip(
            kappa_lambda_roundtrip(l, Conversion::LambdaToKappa)?,
            Conversion::KappaToLambda,
        )?;
        worst = worst
            .max((back - k).abs() / k.max(f64::MIN_POSITIVE))
            .max((back_l - l).abs() / l.max(f64::MIN_POSITIVE));
    }
    checks.push(
        Check::at_most("weyl.kappa_lambda_roundtrip", worst, tol::KAPPA_LAMBDA)
            .with_note(format!("kappa in [0, 1 - 1e-12), lambda in [0, {LAMBDA_ROUNDTRIP_MAX})")),
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let d = rng.gen_range(1..=8);
        let kappa = rng.gen_range(0.0..0.99);
        let w: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..2.0)).collect();
        let fixed: Vec<f64> = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let k = kappa_tensor(kappa, &w, fixed.clone())?;
        let scale = v.iter().chain(&fixed).fold(1.0f64, |m, x| m.max(x.abs()));
        let a = k.inverse(&k.forward(&v)?)?;
        let b = k.forward(&k.inverse(&v)?)?;
        for i in 0..d {
            worst = worst.max((a[i] - v[i]).abs() / scale).max((b[i] - v[i]).abs() / scale);
        }
    }
    checks.push(
        Check::at_most("weyl.transform_roundtrip", worst, tol::TRANSFORM_ROUNDTRIP)
            .with_note("kappa in [0, 0.99), w in [0, 2)"),
    );

    let (equal, diag) = studies::corollary_trials(cfg.seed, n)?;
    checks.push(Check::at_most("weyl.corollary_equal_weights", equal, tol::COROLLARY));
    checks.push(Check::at_most("weyl.corollary_diagonal_metric", diag, tol::COROLLARY));
    checks.push(Check::at_most(
        "weyl.commutation",
        studies::commutation_trials(cfg.seed, n)?,
        tol::COMMUTATION,
    ));

    let (mut consistency, mut collapse, mut density) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let d = rng.gen_range(1..=8);
        let kappa = rng.gen_range(0.0..0.99);
        let z: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..3.0)).collect();
        let mut g = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = rng.gen_range(-2.0..2.0);
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        let rep = metric_representations(&g, kappa, &z)?;
        consistency = consistency.max(rep.consistency_error(kappa, &z)?);

        let lambda = DilationScalar::from_kappa(kappa)?.lambda();
        let k = kappa_tensor(kappa, &z, vec![0.0; d])?;
        for (kj, wj) in k.entries().iter().zip(&z) {
            collapse = collapse.max(((1.0 - kj) - (-wj * lambda).exp()).abs());
        }

        let sigma = dilation_density(kappa, &z)?;
        let det = dilation_tensor(kappa, &z)?.determinant();
        density = density.max((sigma * sigma * det.abs() - 1.0).abs());
    }
    checks.push(Check::at_most("weyl.metric_consistency", consistency, tol::METRIC_CONSISTENCY));
    checks.push(Check::at_most("weyl.weight_collapse", collapse, tol::WEIGHT_COLLAPSE));
    checks.push(Check::at_most("weyl.density_identity", density, tol::DENSITY));

    let mut violations = 0usize;
    let w = [0.1, 0.5, 1.0, 2.0, 3.0];
    let mut prev = kappa_tensor(0.0, &w, vec![0.0; 5])?;
    for i in 1..=1000 {
        let next = kappa_tensor(0.99 * i as f64 / 1000.0, &w, vec![0.0; 5])?;
        violations += prev
            .entries()
            .iter()
            .zip(next.entries())
            .filter(|(a, b)| !(b > a))
            .count();
        prev = next;
    }
    checks.push(Check::at_most("weyl.kappa_tensor_monotone", violations as f64, 0.0));

    let mut worst = 0.0f64;
    for _ in 0..n {
        let d = rng.gen_range(1..=8);
        let z: Vec<f64> = (0..d).map(|_| rng.gen_range(0.5..3.0)).collect();
        let alpha: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let alpha_d: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let v_d: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let scale: f64 = alpha.iter().zip(&v).map(|(a, b)| (a * b).abs()).sum::<f64>().max(1.0);
        let w_pair = observer_pairing(&alpha, &v, KAPPA_MAX, &z, Observer::Weylian)?;
        worst = worst.max(w_pair.abs() / scale);

        let ka = AffineKappaTensor::collapsed(&z, alpha_d.clone())?;
        let kv = AffineKappaTensor::collapsed(&z, v_d.clone())?;
        let r_pair = observer_pairing(&ka.forward(&alpha)?, &kv.forward(&v)?, 0.0, &z, Observer::Riemannian)?;
        let dark: f64 = alpha_d.iter().zip(&v_d).map(|(a, b)| a * b).sum();
        worst = worst.max((r_pair - dark).abs() / scale);
    }
    checks.push(
        Check::at_most("weyl.observer_limits", worst, tol::OBSERVER_LIMIT)
            .with_note("W pairing at kappa = 1 - 1e-12 with z >= 0.5; R pairing at the collapse"),
    );
    Ok(checks)
}

/// `|fd - exact| / max(|exact|, 1e-3 · scale)` with a centered difference of
/// `lower`; `scale` keeps zero crossings from dominating.
/// `parity` is `1` for an even `lower` and `-1` for an odd one.
fn fd_gap(
    lower: impl Fn(f64) -> Result<f64>,
    parity: f64,
    exact: f64,
    r: f64,
    scale: f64,
) -> Result<f64> {
    let h = tol::FD_STEP;
    // The profiles are even in r̆, so below h the mirrored sample is used.
    let left = if r < h { parity * lower(h - r)? } else { lower(r - h)? };
    let fd = (lower(r + h)? - left) / (2.0 * h);
    Ok((fd - exact).abs() / exact.abs().max(1e-3 * scale))
}

fn delta_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let delta = RegularizedDelta::new(cfg.a, cfg.beta)?;
    let kappa = KappaProfile::new(delta, cfg.w)?;
    let mut checks = Vec::new();

    let (mut worst_d, mut worst_k) = (0.0f64, 0.0f64);
    for i in 0..=2000 {
        let r = 20.0 * i as f64 / 2000.0;
        let scale = delta.value(r)?;
        for (lo, hi, parity) in [(Order::Value, Order::First, 1.0), (Order::First, Order::Second, -1.0)] {
            let d = fd_gap(|x| delta.eval(x, lo), parity, delta.eval(r, hi)?, r, scale)?;
            worst_d = worst_d.max(d);
            let kscale = cfg.w.abs() * scale * kappa.one_minus(r)?;
            let k = fd_gap(|x| kappa.eval(x, lo), parity, kappa.eval(r, hi)?, r, kscale)?;
            worst_k = worst_k.max(k);
        }
    }
    checks.push(
        Check::at_most("delta.derivatives_match_fd", worst_d, tol::FD_RELATIVE)
            .with_note("relative to max(|exact|, 1e-3 delta(r))"),
    );
    checks.push(
        Check::at_most("delta.kappa_derivatives_match_fd", worst_k, tol::FD_RELATIVE)
            .with_note("relative to max(|exact|, 1e-3 w delta(r)(1 - kappa))"),
    );

    let mut bad = 0usize;
    let mut signs = Vec::new();
    for i in 0..=6000 {
        let r = 60.0 * i as f64 / 6000.0;
        let k = kappa.value(r)?;
        if !(0.0..1.0).contains(&k) || kappa.eval(r, Order::First)? > 0.0 {
            bad += 1;
        }
        if i > 0 {
            let k2 = kappa.eval(r, Order::Second)?;
            if k2 != 0.0 {
                signs.push(k2 > 0.0);
            }
        }
    }
    checks.push(Check::at_most("delta.kappa_range_and_decay", bad as f64, 0.0));
    let changes = signs.windows(2).filter(|p| p[0] != p[1]).count();
    checks.push(Check {
        name: "delta.kappa_second_derivative_sign_changes".into(),
        measured: changes as f64,
        tolerance: 1.0,
        pass: changes == 1,
        notes: "expected exactly one sign change on (0, 60]".into(),
    });

    let mut prev_edge = f64::INFINITY;
    let mut prev_origin = 0.0;
    let mut monotone = true;
    let mut edge = 0.0;
    let mut origin_gap = 0.0;
    for a in [0.1, 0.05, 0.02] {
        let kp = KappaProfile::new(RegularizedDelta::new(a, cfg.beta)?, cfg.w)?;
        edge = kp.value(0.5 / a)?;
        let origin = kp.value(0.0)?;
        monotone &= edge < prev_edge && origin >= prev_origin;
        origin_gap = 1.0 - origin;
        prev_edge = edge;
        prev_origin = origin;
    }
    let mut c = Check::at_most("delta.indicator_limit", edge.max(origin_gap), tol::INDICATOR)
        .with_note("kappa at dimensional r = 0.5 and 1 - kappa(0), a = 0.1, 0.05, 0.02");
    if !monotone {
        c.pass = false;
        c = c.with_note("not monotone in a");
    }
    checks.push(c);

    // Where 1 - κ_a(0) is not swamped by cancellation it is formed by
    // subtraction; below that the uncancelled e^{-wδ_a(0)} is compared.
    let mut worst = 0.0f64;
    for a in [4.0, 2.0, 1.0, 0.5, 0.25] {
        let kp = KappaProfile::new(RegularizedDelta::new(a, cfg.beta)?, cfg.w)?;
        let expected = (-cfg.w * cfg.beta / (4.0 * a)).exp();
        let got = if expected > 1e-3 { 1.0 - kp.value(0.0)? } else { kp.one_minus(0.0)? };
        worst = worst.max((got - expected).abs() / expected);
    }
    checks.push(
        Check::at_most("delta.origin_residual", worst, tol::ORIGIN_RESIDUAL)
            .with_note("relative; a = 4, 2, 1, 0.5, 0.25"),
    );
    let small = KappaProfile::new(RegularizedDelta::new(0.1, cfg.beta)?, cfg.w)?;
    checks.push(
        Check::at_most(
            "delta.origin_residual_small_a",
            small.origin_residual(),
            tol::ORIGIN_RESIDUAL_SMALL_A,
        )
        .with_note(format!("a = 0.1, w = {}, beta = {}", cfg.w, cfg.beta)),
    );
    Ok(checks)
}

fn operator_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let sign = if cfg.mutation == Some(Mutation::FlipCrossTerm) { -1.0 } else { 1.0 };
    let model = cfg.model()?;
    let mut checks = vec![
        study_check("operators.conjugation_identity", &studies::conjugation_study(cfg.seed, sign)?),
        Check::at_most(
            "operators.classical_reduction_bitwise",
            studies::classical_reduction_mismatches(cfg.seed)? as f64,
            0.0,
        )
        .with_note("mismatching nodes over modified/appendix Laplace, wave, conservation, Coulomb"),
        Check::at_most("operators.linearity", studies::linearity_gap(cfg.seed)?, tol::LINEARITY),
        study_check("operators.particle_pde_residual", &studies::particle_pde_study(&model)?),
        study_check("operators.appendix_laplace", &studies::appendix_laplace_study()?),
        study_check("operators.wave", &studies::wave_study()?),
        Check::at_most("operators.wave_raised_form", studies::wave_forms_gap()?, tol::WAVE_FORMS)
            .with_note("isotropic z only"),
        study_check("operators.conservation", &studies::conservation_study()?),
        study_check("operators.coulomb_gauge", &studies::coulomb_study()?),
    ];

    use crate::grid::RadialGrid;
    use crate::operators::{modified_laplacian_apply, modified_rhs_assemble, DarkField, OperatorCoefficients};
    let grid = RadialGrid::spanning(0.0, 20.0, 512)?;
    let c = OperatorCoefficients::from_profile(&grid, &model.delta, model.w, vec![1.0; 4])?;
    let rhs = modified_rhs_assemble(&grid, &DarkField::Constant(1.0), &c)?;
    let direct = modified_laplacian_apply(&grid, &c.kappa_tilde(), &c)?;
    let gap = rhs.iter().zip(&direct).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    checks.push(Check::at_most("operators.rhs_matches_kappa_samples", gap, 0.0));
    Ok(checks)
}

fn closed_form_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let model = cfg.model()?;
    let mut checks = Vec::new();

    for a in [0.1, 0.05, 0.01] {
        let m = ParticleModel::new(a, cfg.beta)?.with_weight(cfg.w);
        let mut sup = particle_potential(0.0, &m)?.abs();
        for i in 0..=200 {
            // Log-spaced from the origin floor to 1, then linear to 50.
            let r = 10f64.powf(-12.0 + 12.0 * i as f64 / 200.0);
            sup = sup.max(particle_potential(r, &m)?.abs());
        }
        for i in 0..=5000 {
            sup = sup.max(particle_potential(50.0 * i as f64 / 5000.0, &m)?.abs());
        }
        checks.push(
            Check::at_most(format!("closed_forms.non_singular.a={a}"), sup - 1.0, tol::NON_SINGULAR)
                .with_note(format!(
                    "sup |phi| - 1 over [1e-12, 50]; origin coefficient {:.3e}",
                    m.origin_residual()
                )),
        );
    }

    // For the configured scale the weight left on 1/r̆ is reported rather
    // than judged: it only underflows for small a.
    checks.push(Check {
        name: "closed_forms.origin_coefficient".into(),
        measured: model.origin_residual(),
        tolerance: 1.0,
        pass: model.origin_residual() <= 1.0,
        notes: format!("exp(-w beta / (4a)) at a = {}", cfg.a),
    });

    let (mut phi_ratio, mut e_ratio) = (0.0f64, 0.0f64);
    for i in 0..=2500 {
        let r = 5.0 + 25.0 * i as f64 / 2500.0;
        let bound = (-r / 2.0).exp();
        phi_ratio = phi_ratio.max((particle_potential(r, &model)? - 1.0 / r).abs() / bound);
        e_ratio = e_ratio.max((particle_field(r, &model)? - 1.0 / (r * r)).abs() / bound);
    }
    checks.push(
        Check::at_most("closed_forms.far_field_potential", phi_ratio, 1.0)
            .with_note("max over r in [5, 30] of |phi - 1/r| / e^{-r/2}"),
    );
    checks.push(
        Check::at_most("closed_forms.far_field_field", e_ratio, 1.0)
            .with_note("max over r in [5, 30] of |E - 1/r^2| / e^{-r/2}"),
    );

    let mut worst = 0.0f64;
    for i in 0..=1990 {
        let r = 0.1 + 19.9 * i as f64 / 1990.0;
        let h = tol::FD_STEP;
        let fd = -(particle_potential(r + h, &model)? - particle_potential(r - h, &model)?) / (2.0 * h);
        let e = particle_field(r, &model)?;
        worst = worst.max((fd - e).abs() / e.abs().max(1e-3 / (r * r)));
    }
    checks.push(
        Check::at_most("closed_forms.field_is_potential_gradient", worst, tol::FD_RELATIVE)
            .with_note("relative to max(|E|, 1e-3/r^2)"),
    );

    let mut rng = rng_for(cfg.seed, 11);
    let (mut round, mut gauge) = (0.0f64, 0.0f64);
    for _ in 0..cfg.trials {
        let n = 16;
        let ph: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let pd: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let kt: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=0.99)).collect();
        let b = compose_solution(&ph, &pd, &kt)?;
        let back = extract_riemannian(&b.phi_hat, &pd, &kt)?;
        for i in 0..n {
            round = round.max((back[i] - ph[i]).abs() / ph[i].abs().max(pd[i].abs()).max(1.0));
        }
        let (d1, d2) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let b1 = compose_solution(&ph, &vec![d1; n], &kt)?;
        let b2 = compose_solution(&ph, &vec![d2; n], &kt)?;
        let scale = ph.iter().fold(d1.abs().max(d2.abs()), |m, x| m.max(x.abs())).max(1.0);
        for i in 0..n {
            let diff = b1.phi_hat[i] - b2.phi_hat[i];
            gauge = gauge.max((diff - (d1 - d2) * kt[i]).abs() / scale);
        }
    }
    checks.push(Check::at_most("closed_forms.composition_roundtrip", round, tol::COMPOSITION));
    checks.push(
        Check::at_most("closed_forms.dark_gauge_arbitrariness", gauge, tol::GAUGE)
            .with_note("relative to the largest input magnitude"),
    );
    Ok(checks)
}

fn oracle_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let model = cfg.model()?;
    let reference = if cfg.mutation == Some(Mutation::WrongClosedFormWeight) {
        model.with_weight(model.w + 1.0)
    } else {
        model
    };
    let mut checks = Vec::new();
    let n = studies::BRUTE_FORCE_INTERVALS;
    for (case, name) in [
        (DarkCase::Particle, "oracles.brute_force_particle"),
        (DarkCase::NullDark, "oracles.brute_force_null_dark"),
    ] {
        let err = studies::brute_force_error(&model, &reference, case, n)?;
        checks.push(
            Check::at_most(name, err, tol::BRUTE_FORCE)
                .with_note(format!("N = {n}, R = 20, max relative error on [0.05, 19]")),
        );
    }

    let errs = [512, 1024, 2048, 4096]
        .iter()
        .map(|&n| studies::brute_force_error(&model, &reference, DarkCase::Particle, n))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = errs.windows(2).all(|p| p[1] < p[0]);
    checks.push(Check {
        name: "oracles.brute_force_refinement".into(),
        measured: errs[3],
        tolerance: tol::BRUTE_FORCE,
        pass: monotone,
        notes: format!(
            "errors at N = 512..4096: [{}]; must decrease monotonically",
            errs.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    });
    checks.push(study_check(
        "oracles.brute_force_calibration",
        &studies::brute_force_calibration()?,
    ));

    let mut signed = Vec::new();
    for a in [0.01, 0.05, 0.1] {
        let m = ParticleModel::new(a, cfg.beta)?.with_weight(cfg.w);
        let q = total_charge(&m, Quadrature::Adaptive)?;
        signed.push(q);
        checks.push(
            Check::at_most(format!("oracles.total_charge.a={a}"), (q.abs() - 1.0).abs(), tol::CHARGE)
                .with_note(format!("signed = {q:.15e}"))
                .with_note(sign_convention(q)),
        );
    }
    let spread = signed.iter().fold(f64::NEG_INFINITY, |m, &q| m.max(q.abs()))
        - signed.iter().fold(f64::INFINITY, |m, &q| m.min(q.abs()));
    checks.push(Check::at_most("oracles.total_charge_radius_invariance", spread, tol::CHARGE));
    Ok(checks)
}

/// The charge density formula carries the opposite sign to `(1/3) div E`;
/// the report states which sign was observed.
pub fn sign_convention(q: f64) -> String {
    if q < 0.0 {
        "sign_convention = density formula as published; integral recovers -Q".into()
    } else {
        "sign_convention = integral recovers +Q".into()
    }
}
