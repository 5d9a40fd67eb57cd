//! Command-line front end: filter profiles, compute spectra and kernel
//! responses, and run the Bohm speed pipeline on moment tables.

pub mod commands;
pub mod io;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    /// I/O failure (exit code 1).
    Io(String),
    /// Malformed input file (exit code 1).
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    /// Invalid configuration (exit code 2).
    Config(String),
    /// Numerical degeneracy (exit code 3).
    Numeric(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Parse {
                path,
                line,
                message,
            } => {
                if *line == 0 {
                    write!(f, "{path}: {message}")
                } else {
                    write!(f, "{path}:{line}: {message}")
                }
            }
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

/// Library errors surface as configuration problems, except the kernel
/// coefficient solve failing, which is a numerical condition.
pub fn siac_err(e: siac::SiacError) -> CliError {
    match e {
        siac::SiacError::DegenerateKernel { .. } => CliError::Numeric(e.to_string()),
        other => CliError::Config(other.to_string()),
    }
}

#[derive(Parser)]
#[command(name = "siac", version, about = "SIAC convolution filtering for 1D profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Denoise a two-column (x, f) profile
    Filter(FilterArgs),
    /// Single-sided amplitude spectrum, optionally of the filtered profile too
    Spectrum(SpectrumArgs),
    /// Analytic Fourier response magnitude of the symmetric kernel
    KernelResponse(KernelResponseArgs),
    /// Bohm speed from a moment table (x plus 13 named columns)
    Bohm(BohmArgs),
}

#[derive(Args)]
pub struct KernelArgs {
    /// Vanishing-moment count; the kernel stacks r+1 B-splines
    #[arg(long = "r", default_value_t = 2, value_name = "R")]
    pub r: usize,
    /// B-spline order
    #[arg(long = "l", default_value_t = 2, value_name = "L")]
    pub l: usize,
    /// Constant kernel scaling H, in x units
    #[arg(long = "H", value_name = "H")]
    pub h: Option<f64>,
    /// Interior scaling for adaptive mode, in x units
    #[arg(long = "H-int", value_name = "H_INT")]
    pub h_int: Option<f64>,
    /// Adaptive scaling: the support shrinks to one grid element at the boundaries
    #[arg(long)]
    pub adaptive: bool,
    /// Add a generalized boundary spline to shifted kernels
    #[arg(long = "generalized-spline")]
    pub generalized_spline: bool,
    /// Periodic data: symmetric kernel with wrap-around convolution
    #[arg(long)]
    pub periodic: bool,
}

#[derive(Args)]
pub struct FilterArgs {
    /// Input profile (x, f); `#` comments and comma or whitespace delimiters
    pub input: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub kernel: KernelArgs,
}

#[derive(Args)]
pub struct SpectrumArgs {
    /// Input profile (x, f)
    pub input: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Apply a Hann window (use for non-periodic data)
    #[arg(long)]
    pub window: bool,
    /// Also emit the spectrum of the filtered profile, side by side
    #[arg(long)]
    pub filtered: bool,
    #[command(flatten)]
    pub kernel: KernelArgs,
}

#[derive(Args)]
pub struct KernelResponseArgs {
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Largest wavenumber to tabulate (default 20/H)
    #[arg(long = "k-max")]
    pub k_max: Option<f64>,
    /// Number of rows from k = 0 to k-max
    #[arg(long = "k-points", default_value_t = 512)]
    pub k_points: usize,
}

#[derive(Args)]
pub struct BohmArgs {
    /// Moment table: x plus the 13 named profile columns
    pub input: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file overriding per-variable scalings, e.g. {"q_n_e": 8}
    #[arg(long)]
    pub scalings: Option<PathBuf>,
    /// Fail (exit 3) when any point degenerates
    #[arg(long)]
    pub strict: bool,
    /// Vanishing-moment count
    #[arg(long = "r", default_value_t = 2)]
    pub r: usize,
    /// B-spline order
    #[arg(long = "l", default_value_t = 2)]
    pub l: usize,
    /// Adaptive per-variable scaling instead of constant
    #[arg(long)]
    pub adaptive: bool,
    /// Add generalized boundary splines to shifted kernels
    #[arg(long = "generalized-spline")]
    pub generalized_spline: bool,
}

/// `SIAC_THREADS` caps the rayon pool used for the parallel filtering map.
pub fn configure_threads() -> Result<(), CliError> {
    if let Ok(value) = std::env::var("SIAC_THREADS") {
        let n: usize = value.trim().parse().map_err(|_| {
            CliError::Config(format!("SIAC_THREADS = '{value}' is not a thread count"))
        })?;
        if n > 0 {
            // Ignore the error if a global pool already exists.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    Ok(())
}

/// Run one parsed command.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Filter(args) => commands::run_filter(args),
        Command::Spectrum(args) => commands::run_spectrum(args),
        Command::KernelResponse(args) => commands::run_kernel_response(args),
        Command::Bohm(args) => commands::run_bohm(args),
    }
}
