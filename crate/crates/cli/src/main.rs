use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use gwig_cli::{commands, CliError, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "gwig", version, about = "Generalized Weyl integrable geometry toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory that relative output paths are resolved against.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the particle potential, field and density as CSV and SVG.
    Particle(Common),
    /// Run every property suite and write the report; exit 1 on any failure.
    Verify(Common),
    /// Refinement study of the wave operator on a travelling pulse.
    Wave(Common),
    /// Print a metric in both observer representations.
    Metric {
        /// Rows separated by `;`, entries by `,`, e.g. "1,0;0,-1".
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        kappa: f64,
        /// Dilation exponents, e.g. "2,2"; defaults to all ones.
        #[arg(long)]
        z: Option<String>,
    },
}

fn load(common: &Common) -> Result<(RunConfig, &Path), CliError> {
    let mut cfg = RunConfig::load(&common.config)?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok((cfg, &common.out_dir))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Particle(c) => load(c).and_then(|(cfg, dir)| commands::particle(&cfg, dir)),
        Command::Verify(c) => load(c).and_then(|(cfg, dir)| commands::verify(&cfg, dir)),
        Command::Wave(c) => load(c).and_then(|(cfg, dir)| commands::wave(&cfg, dir)),
        Command::Metric { g, kappa, z } => {
            let g = commands::parse_matrix(g)?;
            let z = match z {
                Some(text) => commands::parse_vector(text)?,
                None => vec![1.0; g.nrows()],
            };
            commands::metric(&g, *kappa, &z)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Verification(text) => print!("{text}"),
                CliError::Usage(msg) => {
                    eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
