use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sodirac_cli::commands::{self, Which, FIGURE1_B, FIGURE2_B};
use sodirac_cli::{exit, verify, CliError, ModelConfig};

/// Builds and verifies so(2,1) position-dependent-mass Dirac models.
#[derive(Parser, Debug)]
#[command(name = "sodirac", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Override `grid.n`.
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Override `grid.margin`.
    #[arg(long, global = true)]
    margin: Option<f64>,
    /// Multiply every verification tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the model summary; optionally write the sampled fields as CSV.
    Build {
        config: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        config: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write figure curve data (one CSV per b).
    Figures {
        config: PathBuf,
        /// Output directory; defaults to $SODIRAC_OUT_DIR.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "both")]
        which: String,
        /// b values for figure 1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b1: Option<Vec<f64>>,
        /// b values for figure 2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b2: Option<Vec<f64>>,
    },
    /// Tabulate E^2 = A^2 - (k - 1/2)^2.
    Spectrum {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        k_list: Vec<f64>,
        /// Add the finite-difference oracle column.
        #[arg(long)]
        oracle: bool,
    },
}

fn load(path: &PathBuf, g: &Global) -> Result<ModelConfig, CliError> {
    let mut cfg = ModelConfig::load(path)?;
    if let Some(n) = g.grid_n {
        cfg.grid_n = n;
    }
    if let Some(m) = g.margin {
        cfg.margin = m;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    if !(g.tolerance_scale > 0.0) {
        return Err(CliError::Usage(format!("--tolerance-scale must be positive, got {}", g.tolerance_scale)));
    }
    match &cli.command {
        Command::Build { config, csv } => {
            let cfg = load(config, g)?;
            let (summary, text) = commands::build(&cfg, csv.is_some())?;
            print!("{summary}");
            if let (Some(path), Some(text)) = (csv, text) {
                std::fs::write(path, text)?;
            }
            Ok(exit::OK)
        }
        Command::Verify { config, json } => {
            let cfg = load(config, g)?;
            let report = verify::run(&cfg, g.tolerance_scale)?;
            print!("{}", report.to_text());
            if let Some(path) = json {
                std::fs::write(path, report.to_json())?;
            }
            Ok(if report.has_numerical_failure() {
                exit::NUMERICAL_FAILURE
            } else if report.all_pass() {
                exit::OK
            } else {
                exit::VERIFICATION_FAILED
            })
        }
        Command::Figures { config, out, which, b1, b2 } => {
            let cfg = load(config, g)?;
            let which = Which::parse(which).ok_or_else(|| CliError::Usage(format!("--which must be 1, 2 or both, got `{which}`")))?;
            let dir = out
                .clone()
                .or_else(|| std::env::var_os("SODIRAC_OUT_DIR").map(PathBuf::from))
                .ok_or_else(|| CliError::Usage("no output directory: pass --out or set SODIRAC_OUT_DIR".into()))?;
            let b1 = b1.clone().unwrap_or_else(|| FIGURE1_B.to_vec());
            let b2 = b2.clone().unwrap_or_else(|| FIGURE2_B.to_vec());
            for path in commands::figures(&cfg, &dir, which, &b1, &b2)? {
                println!("{}", path.display());
            }
            Ok(exit::OK)
        }
        Command::Spectrum { config, k_list, oracle } => {
            let cfg = load(config, g)?;
            print!("{}", commands::spectrum(&cfg, k_list, *oracle)?);
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
