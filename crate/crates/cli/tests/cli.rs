use std::path::Path;
use std::process::{Command, Output};

fn gwig(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwig"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn config(dir: &Path, name: &str, text: &str) -> String {
    std::fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn particle_writes_deterministic_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "run.toml", "# defaults: a = 1, beta = 10, w = 2\n");
    let out = gwig(&["particle", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = std::fs::read_to_string(dir.path().join("particle.csv")).unwrap();
    assert!(csv.starts_with("r_breve,phi_breve,E_breve,rho_breve,kappa_a,inv_r,inv_r2\n"));
    assert!(csv.ends_with('\n'));
    assert_eq!(csv.lines().count(), 2001);
    let unit = csv.lines().find(|l| l.starts_with("1.0000000000000000e0,")).unwrap();
    assert_eq!(unit.split(',').nth(1), Some("1.0000000000000000e0"));
    let r = column(&csv, "r_breve");
    assert_eq!(r[0], 0.01);
    assert_eq!(*r.last().unwrap(), 20.0);

    let svg = std::fs::read_to_string(dir.path().join("particle.svg")).unwrap();
    assert!(svg.contains("version=\"1.1\""));
    assert_eq!(svg.matches("<polyline").count(), 7);

    let out = gwig(&["particle", "--config", &cfg, "--out-dir", "again"], dir.path());
    assert_eq!(out.status.code(), Some(2), "missing output directory");
    std::fs::create_dir(dir.path().join("again")).unwrap();
    let out = gwig(&["particle", "--config", &cfg, "--out-dir", "again"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let rerun = std::fs::read(dir.path().join("again/particle.csv")).unwrap();
    assert_eq!(rerun, csv.as_bytes());
}

#[test]
fn dimensional_columns_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "d.toml", "n = 10\nQ = 1.602176634e-19\nepsilon0 = 8.8541878128e-12\na = 1e-15\n");
    assert_eq!(gwig(&["particle", "--config", &cfg], dir.path()).status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("particle.csv")).unwrap();
    assert!(csv.lines().next().unwrap().ends_with(",r,phi,E,rho"));
}

#[test]
fn usage_and_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = gwig(&["verify", "--config", "absent.toml"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    for (name, text) in [("u.toml", "colour = 1\n"), ("n.toml", "a = 0.0\n"), ("s.toml", "a = [\n")] {
        let cfg = config(dir.path(), name, text);
        let out = gwig(&["particle", "--config", &cfg], dir.path());
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    assert_eq!(gwig(&["particle"], dir.path()).status.code(), Some(2));
}

#[test]
fn verify_report_is_reproducible_and_lists_failures() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "v.toml", "report = \"r1.txt\"\n");
    let first = gwig(&["verify", "--config", &cfg, "--seed", "0"], dir.path());
    let code = first.status.code();
    let a = std::fs::read(dir.path().join("r1.txt")).unwrap();
    let second = gwig(&["verify", "--config", &cfg, "--seed", "0"], dir.path());
    let b = std::fs::read(dir.path().join("r1.txt")).unwrap();
    assert_eq!(a, b);
    assert_eq!(code, second.status.code());

    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("seed = 0\n"));
    let overall_pass = text.contains("overall = pass");
    assert_eq!(code, Some(if overall_pass { 0 } else { 1 }));
    let stdout = String::from_utf8_lossy(&first.stdout);
    for line in text.lines().filter(|l| l.starts_with('[')) {
        let name = line.trim_matches(|c| c == '[' || c == ']');
        let block = text.split(line).nth(1).unwrap();
        if block.lines().nth(1) == Some("status = fail") {
            assert!(stdout.contains(&format!("fail {name}:")), "{name}");
        }
    }
    assert!(text.contains("sign_convention"));
}

#[test]
fn seed_changes_the_randomized_entries_only_through_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "v.toml", "trials = 50\nreport = \"r.txt\"\n");
    gwig(&["verify", "--config", &cfg, "--seed", "1"], dir.path());
    let one = std::fs::read_to_string(dir.path().join("r.txt")).unwrap();
    gwig(&["verify", "--config", &cfg, "--seed", "2"], dir.path());
    let two = std::fs::read_to_string(dir.path().join("r.txt")).unwrap();
    assert!(one.starts_with("seed = 1\n") && two.starts_with("seed = 2\n"));
    assert_ne!(one, two);
}

#[test]
fn wave_refinement_and_stationarity() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("flat.toml", "wave_lambda_amplitude = 0.0\n"),
        ("bump.toml", "wave_lambda_amplitude = 0.5\n"),
    ] {
        let cfg = config(dir.path(), name, text);
        let out = gwig(&["wave", "--config", &cfg], dir.path());
        assert_eq!(out.status.code(), Some(0), "{text}");
        let csv = std::fs::read_to_string(dir.path().join("wave.csv")).unwrap();
        assert!(csv.starts_with("n,dx,residual_max,fitted_order\n"));
        assert_eq!(csv.lines().count(), 5);
        assert!(column(&csv, "fitted_order")[0] >= 1.9);
    }
    let cfg = config(dir.path(), "drift.toml", "wave_lambda_drift = 0.05\n");
    assert_eq!(gwig(&["wave", "--config", &cfg], dir.path()).status.code(), Some(2));
}

fn block(out: &str, name: &str) -> Vec<Vec<f64>> {
    let start = out.find(&format!("[{name}]\n")).unwrap();
    out[start..]
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with('['))
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn metric_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = gwig(&["metric", "--g", "1,0.5;0.5,-1", "--kappa", "0"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(block(&text, "g"), block(&text, "g_hat_weylian"));
    assert_eq!(block(&text, "g"), block(&text, "g_hat_riemannian"));

    let lambda = 0.7f64;
    let kappa = -(-lambda).exp_m1();
    let out = gwig(&["metric", "--g", "2,1;1,-3", "--kappa", &kappa.to_string(), "--z", "2,2"], dir.path());
    let text = String::from_utf8(out.stdout).unwrap();
    let w = block(&text, "g_hat_weylian");
    let g = block(&text, "g");
    for i in 0..2 {
        for j in 0..2 {
            let expected = (-2.0 * lambda).exp() * g[i][j];
            assert!((w[i][j] - expected).abs() <= 1e-15 * expected.abs().max(1.0));
        }
    }
    let sigma: f64 = text.lines().find_map(|l| l.strip_prefix("sigma = ")).unwrap().parse().unwrap();
    assert!((sigma - (1.0 - kappa).powf(-2.0)).abs() <= 1e-14 * sigma);

    let out = gwig(&["metric", "--g", "1,2;0,1", "--kappa", "0.3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
