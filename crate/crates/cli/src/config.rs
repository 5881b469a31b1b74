//! Run configuration: a flat `key = value` file with `#` comments.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Particle radius; also the length unit of the non-dimensional outputs.
    pub a: f64,
    pub beta: f64,
    pub w: f64,
    pub z: Vec<f64>,
    /// Dark potential in units of `φ_a`.
    pub phi_d: f64,
    /// Output rows are `r̆_i = i·r_max/n` for `i = 1..=n`.
    pub n: usize,
    pub r_max: f64,
    pub csv: PathBuf,
    pub svg: PathBuf,
    pub report: PathBuf,
    pub seed: u64,
    pub trials: usize,
    pub wave_levels: Vec<usize>,
    /// Peak of the stationary dilation bump used by `wave`.
    pub wave_lambda_amplitude: f64,
    /// Rate at which that peak changes in time; anything but zero is rejected.
    pub wave_lambda_drift: f64,
    pub wave_csv: PathBuf,
    /// Charge in coulombs; with `epsilon0` enables dimensional columns.
    #[serde(rename = "Q")]
    pub q: Option<f64>,
    pub epsilon0: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: 1.0,
            beta: 10.0,
            w: 2.0,
            z: vec![1.0; 4],
            phi_d: 1.0,
            n: 2000,
            r_max: 20.0,
            csv: "particle.csv".into(),
            svg: "particle.svg".into(),
            report: "report.txt".into(),
            seed: 0,
            trials: 1000,
            wave_levels: vec![64, 128, 256, 512],
            wave_lambda_amplitude: 0.5,
            wave_lambda_drift: 0.0,
            wave_csv: "wave.csv".into(),
            q: None,
            epsilon0: None,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be finite, got {v}")))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        positive("a", self.a)?;
        positive("beta", self.beta)?;
        finite("w", self.w)?;
        finite("phi_d", self.phi_d)?;
        positive("r_max", self.r_max)?;
        finite("wave_lambda_amplitude", self.wave_lambda_amplitude)?;
        finite("wave_lambda_drift", self.wave_lambda_drift)?;
        if self.z.is_empty() {
            return Err(CliError::Config("z needs at least one entry".into()));
        }
        for &zj in &self.z {
            finite("z", zj)?;
        }
        if self.n == 0 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        let levels = &self.wave_levels;
        if levels.len() < 3 || levels.iter().any(|&l| l < 8 || l % 2 != 0) {
            return Err(CliError::Config(
                "wave_levels needs at least three even sizes of 8 or more".into(),
            ));
        }
        if levels.windows(2).any(|p| p[1] < 2 * p[0]) {
            return Err(CliError::Config("wave_levels must at least double each step".into()));
        }
        match (self.q, self.epsilon0) {
            (None, None) => {}
            (Some(q), Some(e)) => {
                finite("Q", q)?;
                positive("epsilon0", e)?;
            }
            _ => {
                return Err(CliError::Config(
                    "Q and epsilon0 enable dimensional output only together".into(),
                ))
            }
        }
        Ok(())
    }

    /// `(φ_a, E(a), ϱ₀)` when dimensional output is enabled.
    pub fn dimensional_scales(&self) -> Option<(f64, f64, f64)> {
        let (q, e0) = (self.q?, self.epsilon0?);
        let four_pi = 4.0 * std::f64::consts::PI;
        Some((
            q / (four_pi * e0 * self.a),
            q / (four_pi * e0 * self.a * self.a),
            3.0 * q / (four_pi * self.a.powi(3)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::parse("# nothing\n").unwrap(), RunConfig::default());
    }

    #[test]
    fn keys_override_defaults() {
        let c = RunConfig::parse("a = 0.05\nseed = 3\nz = [1.0, 2.0]\n").unwrap();
        assert_eq!(c.a, 0.05);
        assert_eq!(c.seed, 3);
        assert_eq!(c.z, vec![1.0, 2.0]);
        assert_eq!(c.beta, 10.0);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        for bad in [
            "alpha = 1.0",
            "a = -1.0",
            "beta = 0.0",
            "n = 0",
            "z = []",
            "wave_levels = [64, 96, 256]",
            "wave_levels = [64, 128]",
            "Q = 1e-9",
            "a = \"one\"",
        ] {
            assert!(matches!(RunConfig::parse(bad), Err(CliError::Config(_))), "{bad}");
        }
    }

    #[test]
    fn dimensional_scales_need_both_constants() {
        assert!(RunConfig::default().dimensional_scales().is_none());
        let c = RunConfig::parse("Q = 1.0\nepsilon0 = 1.0\na = 2.0").unwrap();
        let (phi, e, rho) = c.dimensional_scales().unwrap();
        let four_pi = 4.0 * std::f64::consts::PI;
        assert_eq!(phi, 1.0 / (four_pi * 2.0));
        assert_eq!(e, 1.0 / (four_pi * 4.0));
        assert_eq!(rho, 3.0 / (four_pi * 8.0));
    }
}
