//! The four subcommands. Each writes its files atomically and returns the
//! text to print; a failed check becomes `CliError::Verification`.

use std::fmt::Write;
use std::path::Path;

use gwig_core::closed_forms::{
    particle_charge_density, particle_field, particle_potential, ParticleModel,
};
use gwig_core::verifier::{run_property_suites, studies, SuiteConfig, VerificationReport};
use gwig_core::weyl::{dilation_density, dilation_tensor, is_symmetric, metric_representations, Matrix};
use gwig_core::delta::RadialProfile;
use gwig_core::GwigError;

use crate::output::{csv, num, resolve, write_atomic};
use crate::svg::{self, Panel, Series};
use crate::{CliError, RunConfig};

pub const PARTICLE_COLUMNS: [&str; 7] =
    ["r_breve", "phi_breve", "E_breve", "rho_breve", "kappa_a", "inv_r", "inv_r2"];
/// Extra columns when `Q` and `epsilon0` are configured: metres, volts,
/// volts per metre and coulombs per cubic metre.
pub const DIMENSIONAL_COLUMNS: [&str; 4] = ["r", "phi", "E", "rho"];

/// Largest tolerated mismatch when rebuilding one metric representation
/// from the other.
pub const METRIC_ROUNDTRIP_TOL: f64 = 1e-12;

fn model(cfg: &RunConfig) -> Result<ParticleModel, CliError> {
    Ok(ParticleModel::new(cfg.a, cfg.beta)?
        .with_weight(cfg.w)
        .with_dark_potential(cfg.phi_d))
}

/// One row per `r̆_i = i·r_max/n`, `i = 1..=n`, in `PARTICLE_COLUMNS` order
/// followed by the dimensional columns when enabled.
pub fn particle_rows(cfg: &RunConfig) -> Result<Vec<Vec<f64>>, CliError> {
    let m = model(cfg)?;
    let kappa = m.kappa()?;
    let scales = cfg.dimensional_scales();
    (1..=cfg.n)
        .map(|i| {
            let r = i as f64 * cfg.r_max / cfg.n as f64;
            let phi = particle_potential(r, &m)?;
            let e = particle_field(r, &m)?;
            let rho = particle_charge_density(r, &m)?;
            let mut row = vec![r, phi, e, rho, kappa.value(r)?, 1.0 / r, 1.0 / (r * r)];
            if let Some((phi_a, e_a, rho_0)) = scales {
                row.extend([r * cfg.a, phi * phi_a, e * e_a, rho * rho_0]);
            }
            Ok(row)
        })
        .collect()
}

fn particle_svg(cfg: &RunConfig, rows: &[Vec<f64>]) -> String {
    let column = |k: usize| -> Vec<(f64, f64)> { rows.iter().map(|r| (r[0], r[k])).collect() };
    let series = |label: &str, k: usize, color: &'static str, dashed: bool| Series {
        label: label.into(),
        points: column(k),
        color,
        dashed,
    };
    let log = Panel {
        title: format!("a = {}, beta = {}, w = {}", cfg.a, cfg.beta, cfg.w),
        x_label: "r".into(),
        log: true,
        series: vec![
            series("phi", 1, "#1f77b4", false),
            series("E", 2, "#d62728", false),
            series("1/r", 5, "#1f77b4", true),
            series("1/r^2", 6, "#d62728", true),
        ],
    };
    let linear = Panel {
        title: "potential, field and charge density".into(),
        x_label: "r".into(),
        log: false,
        series: vec![
            series("phi", 1, "#1f77b4", false),
            series("E", 2, "#d62728", false),
            series("rho", 3, "#2ca02c", false),
        ],
    };
    svg::render(&[log, linear])
}

pub fn particle(cfg: &RunConfig, out_dir: &Path) -> Result<String, CliError> {
    let rows = particle_rows(cfg)?;
    let mut header = PARTICLE_COLUMNS.to_vec();
    if cfg.dimensional_scales().is_some() {
        header.extend(DIMENSIONAL_COLUMNS);
    }
    let csv_path = resolve(out_dir, &cfg.csv);
    let svg_path = resolve(out_dir, &cfg.svg);
    write_atomic(&csv_path, &csv(&header, &rows))?;
    write_atomic(&svg_path, &particle_svg(cfg, &rows))?;
    Ok(format!(
        "rows = {}\ncsv = {}\nsvg = {}\n",
        rows.len(),
        csv_path.display(),
        svg_path.display()
    ))
}

pub fn suite_config(cfg: &RunConfig) -> SuiteConfig {
    SuiteConfig {
        seed: cfg.seed,
        a: cfg.a,
        beta: cfg.beta,
        w: cfg.w,
        phi_d_over_phi_a: cfg.phi_d,
        trials: cfg.trials,
        mutation: None,
    }
}

pub fn verification_report(cfg: &RunConfig) -> VerificationReport {
    run_property_suites(&suite_config(cfg))
}

pub fn verify(cfg: &RunConfig, out_dir: &Path) -> Result<String, CliError> {
    let report = verification_report(cfg);
    let path = resolve(out_dir, &cfg.report);
    write_atomic(&path, &report.to_text())?;
    let mut summary = format!(
        "checks = {}\nfailed = {}\nreport = {}\n",
        report.checks.len(),
        report.failures().count(),
        path.display()
    );
    if report.overall() {
        return Ok(summary);
    }
    for c in report.failures() {
        let _ = writeln!(summary, "fail {}: measured {:.6e}, tolerance {:.6e}", c.name, c.measured, c.tolerance);
    }
    Err(CliError::Verification(summary))
}

pub fn wave(cfg: &RunConfig, out_dir: &Path) -> Result<String, CliError> {
    let study = studies::wave_study_with(
        &cfg.wave_levels,
        cfg.wave_lambda_amplitude,
        cfg.wave_lambda_drift,
    )
    .map_err(|e| match e {
        GwigError::NonStationary { .. } => CliError::Config(e.to_string()),
        other => CliError::Core(other),
    })?;
    let mut text = String::from("n,dx,residual_max,fitted_order\n");
    for ((n, h), r) in study.grid_sizes.iter().zip(&study.spacings).zip(&study.residual_norms) {
        let _ = writeln!(text, "{n},{},{},{}", num(*h), num(*r), num(study.fitted_order));
    }
    let path = resolve(out_dir, &cfg.wave_csv);
    write_atomic(&path, &text)?;
    let summary = format!(
        "fitted_order = {}\nthreshold = {}\ncsv = {}\n",
        num(study.fitted_order),
        study.threshold,
        path.display()
    );
    if study.passed() {
        Ok(summary)
    } else {
        Err(CliError::Verification(summary))
    }
}

/// Parses `"1,0;0,-1"`: rows separated by `;`, entries by `,`.
pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<f64>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("bad entry {x:?} in --g: {e}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(CliError::Usage(format!("--g must be square, got {d} rows of lengths {:?}", rows.iter().map(Vec::len).collect::<Vec<_>>())));
    }
    Ok(Matrix::from_fn(d, d, |i, j| rows[i][j]))
}

pub fn parse_vector(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("bad entry {x:?}: {e}"))))
        .collect()
}

fn matrix_block(out: &mut String, name: &str, m: &Matrix) {
    let _ = writeln!(out, "[{name}]");
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| num(m[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

/// Prints `g`, both observer representations, `χ` and `σ`, after checking
/// that the representations rebuild each other.
pub fn metric(g: &Matrix, kappa: f64, z: &[f64]) -> Result<String, CliError> {
    if !is_symmetric(g, 0.0) {
        return Err(CliError::Usage("--g must be symmetric".into()));
    }
    if z.len() != g.nrows() {
        return Err(CliError::Usage(format!("--z has {} entries, g is {}x{}", z.len(), g.nrows(), g.nrows())));
    }
    let rep = metric_representations(g, kappa, z).map_err(|e| CliError::Usage(e.to_string()))?;
    let chi = dilation_tensor(kappa, z)?;
    let sigma = dilation_density(kappa, z)?;
    let roundtrip = rep.consistency_error(kappa, z)?;

    let mut out = String::new();
    let _ = writeln!(out, "kappa = {}", num(kappa));
    let _ = writeln!(out, "sigma = {}", num(sigma));
    let chi_text: Vec<String> = chi.diagonal().iter().map(|&c| num(c)).collect();
    let _ = writeln!(out, "chi = {}", chi_text.join(" "));
    let _ = writeln!(out, "roundtrip_error = {}", num(roundtrip));
    matrix_block(&mut out, "g", &rep.g);
    matrix_block(&mut out, "g_hat_weylian", &rep.g_hat_w);
    matrix_block(&mut out, "g_hat_riemannian", &rep.g_hat_r);
    if roundtrip > METRIC_ROUNDTRIP_TOL {
        return Err(CliError::Verification(out));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_follow_the_grid_rule() {
        let cfg = RunConfig { n: 40, r_max: 20.0, ..RunConfig::default() };
        let rows = particle_rows(&cfg).unwrap();
        assert_eq!(rows.len(), 40);
        assert_eq!(rows[0][0], 0.5);
        assert_eq!(rows[1][1], 1.0);
        assert_eq!(rows[39][0], 20.0);
        assert!(rows.iter().all(|r| r.len() == PARTICLE_COLUMNS.len()));
    }

    #[test]
    fn dimensional_columns_scale_the_breve_values() {
        let cfg = RunConfig::parse("n = 4\nQ = 2.0\nepsilon0 = 0.5\na = 3.0").unwrap();
        let (phi_a, e_a, rho_0) = cfg.dimensional_scales().unwrap();
        for row in particle_rows(&cfg).unwrap() {
            assert_eq!(row[7], row[0] * 3.0);
            assert_eq!(row[8], row[1] * phi_a);
            assert_eq!(row[9], row[2] * e_a);
            assert_eq!(row[10], row[3] * rho_0);
        }
    }

    #[test]
    fn matrix_parsing() {
        let g = parse_matrix("1,0; 0,-1").unwrap();
        assert_eq!(g, Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
        assert!(matches!(parse_matrix("1,0;0"), Err(CliError::Usage(_))));
        assert!(matches!(parse_matrix("1,x;0,1"), Err(CliError::Usage(_))));
        assert_eq!(parse_vector("2, 2").unwrap(), vec![2.0, 2.0]);
    }

    #[test]
    fn metric_without_dilation_repeats_g() {
        let g = parse_matrix("1,0.5;0.5,-1").unwrap();
        let out = metric(&g, 0.0, &[1.0, 2.0]).unwrap();
        let block = |name: &str| {
            let start = out.find(&format!("[{name}]")).unwrap();
            out[start..].lines().skip(1).take(2).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(block("g"), block("g_hat_weylian"));
        assert_eq!(block("g"), block("g_hat_riemannian"));
        assert!(out.contains("sigma = 1.0000000000000000e0"));
    }

    #[test]
    fn metric_rejects_asymmetric_or_mismatched_input() {
        let g = parse_matrix("1,2;0,1").unwrap();
        assert!(matches!(metric(&g, 0.5, &[1.0, 1.0]), Err(CliError::Usage(_))));
        let g = parse_matrix("1,0;0,1").unwrap();
        assert!(matches!(metric(&g, 0.5, &[1.0]), Err(CliError::Usage(_))));
    }

    #[test]
    fn drifting_dilation_is_a_config_error() {
        let cfg = RunConfig { wave_lambda_drift: 0.1, ..RunConfig::default() };
        let dir = tempfile::tempdir().unwrap();
        let err = wave(&cfg, dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{err}");
    }
}
