use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gcs_cli::commands::{self, CmdResult};
use gcs_cli::complex::parse_complex;
use gcs_cli::config;
use gcs_core::C64;

#[derive(Parser)]
#[command(
    name = "gcs",
    version,
    about = "Generalized parity-displacement operators and coherent states on a truncated Fock space"
)]
struct Cli {
    /// Config file (TOML); also read from the GCS_CONFIG environment variable
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Fock-space dimension
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Interior dimension K (default dim/2)
    #[arg(long, global = true)]
    interior_dim: Option<usize>,
    /// Acceptable truncated tail mass
    #[arg(long, global = true)]
    tail_tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a state and write its document (and optionally statistics)
    Gen {
        /// fock | coherent | gcs | b_plus | b_minus | superposition | cat | gdf_basis | dressed_basis
        #[arg(long)]
        kind: String,
        /// Order of the generalized construction
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Amplitude, "a+bi" form
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: String,
        /// Second amplitude for V-type states, "a+bi" form
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        u: String,
        /// Evolution parameter, radians
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        /// Basis index, where applicable
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// State document path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number-statistics CSV path
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Run the identity-verification suite
    Verify {
        /// Restrict to the named checks (repeatable)
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Fault-injection canary: flip the B_m generator sign
        #[arg(long)]
        flip_b_sign: bool,
        /// Report document path
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sweep lambda or z and tabulate vacuum-overlap observables
    Sweep {
        /// lambda | z
        #[arg(long)]
        param: String,
        /// start:stop:step
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Table path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a generalized coherent state across dimensions
    Converge {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Comma-separated increasing dimensions, e.g. 64,128,256
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
        /// Report path (stdout summary always printed)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_z(s: &str) -> Result<C64, commands::CmdError> {
    parse_complex(s).map_err(commands::CmdError::Usage)
}

fn dispatch(cli: Cli) -> CmdResult {
    let file = config::load(cli.config.as_deref()).map_err(commands::CmdError::Usage)?;
    let cfg = config::resolve(&file, cli.dim, cli.interior_dim, cli.tail_tol);
    match cli.cmd {
        Cmd::Gen { kind, m, z, u, lambda, n, out, stats } => commands::run_gen(
            &cfg,
            &kind,
            m,
            parse_z(&z)?,
            parse_z(&u)?,
            lambda,
            n,
            out.as_deref(),
            stats.as_deref(),
        ),
        Cmd::Verify { checks, flip_b_sign, report } => {
            commands::run_verify(&cfg, &checks, flip_b_sign, report.as_deref())
        }
        Cmd::Sweep { param, range, kind, m, z, u, lambda, n, out } => commands::run_sweep(
            &cfg,
            &param,
            &range,
            &kind,
            m,
            parse_z(&z)?,
            parse_z(&u)?,
            lambda,
            n,
            out.as_deref(),
        ),
        Cmd::Converge { m, z, dims, threshold, out } => {
            commands::run_converge(m, parse_z(&z)?, &dims, threshold, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
