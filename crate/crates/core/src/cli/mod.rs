//! The `zerogen` command-line tool.
//!
//! Exit codes: `decide` returns 0 (generating), 1 (not generating) or
//! 2 (budget exceeded); the checking commands return 0 on pass and 1 on
//! failure. Errors use codes from 10 up, see [`ExitCode`].

mod commands;
mod manifest;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::generacy::{Budget, Mode};

pub use manifest::{check_manifest, digest, ManifestEntry, RunManifest, MANIFEST_VERSION};
pub use output::{Format, Report};

/// Environment variable naming the verdict cache directory.
pub const CACHE_ENV: &str = "ZEROGEN_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Ok = 0,
    /// Not generating, or a failed check.
    Negative = 1,
    Budget = 2,
    Usage = 10,
    Tier = 11,
    Input = 12,
    Internal = 13,
}

#[derive(Debug, Parser)]
#[command(name = "zerogen", version, about = "Decide 0-generacy, check certificates and tabulate extremal values")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Maximum number of sum tuples examined.
    #[arg(long)]
    pub max_tuples: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub max_seconds: Option<u64>,
    /// Maximum stored set size.
    #[arg(long)]
    pub max_set: Option<usize>,
    #[arg(long, default_value = "antichain")]
    pub mode: Mode,
}

impl BudgetArgs {
    pub fn budget(&self, base: Budget) -> Budget {
        Budget {
            max_tuples: self.max_tuples.unwrap_or(base.max_tuples),
            max_time: self.max_seconds.map(Duration::from_secs).unwrap_or(base.max_time),
            max_set: self.max_set.unwrap_or(base.max_set),
            max_stages: base.max_stages,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a vector is 0-generating.
    Decide {
        /// Vector literal such as `2,3,7`.
        vector: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write a checked certificate (a directory with --batch).
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        /// Also run the other storage mode (and the general recursion for constants) and compare.
        #[arg(long)]
        cross_check: bool,
        /// File with one vector per line; decided in parallel.
        #[arg(long, conflicts_with = "vector")]
        batch: Option<PathBuf>,
        /// Write a run manifest; implies certificate emission.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Ignore the verdict cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Check a certificate or a run manifest.
    Verify { path: PathBuf },
    /// Compute s_{-inf}(n) with a certificate for each side.
    Sinf {
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Permit the long tier (n >= 6).
        #[arg(long)]
        allow_long: bool,
        /// Where certificates and the manifest go.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// Minimal monotone vectors with harmonic mean above t.
    Frontier { n: usize, t: String },
    /// Check a dominance net; proves s_{-1}(n) <= t on success.
    Net {
        n: usize,
        t: String,
        /// JSON net file (`{"net": [[..], ..]}` or a bare list); bundled nets for n = 3 and
        /// (the completed net) n = 4.
        net_file: Option<PathBuf>,
        /// Print a heuristic net instead of checking one.
        #[arg(long)]
        suggest: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the witnesses backing the net verdicts here.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// The growth functions: integer φ(n) and real ϕ(n).
    Phi {
        n: usize,
        #[arg(long)]
        real: bool,
        #[arg(long)]
        int: bool,
    },
    /// Asymptotic bracket on ln ϕ(n+1) and factorial bounds.
    Bounds { n: usize },
    /// Weight-method parameters and the crucial inequality.
    Weights { n: usize },
    /// Build and check the explicit witness for the constant 1 + φ(n+1).
    ShiftWitness {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate and diff against the embedded reference values.
    Tables {
        /// `1`, `2`, `weights` or `all`.
        which: String,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Compute s_{-inf} with the engine up to this n.
        #[arg(long, default_value_t = 4)]
        sinf_upto: usize,
        /// Skip net verification for the s_{-1} column.
        #[arg(long)]
        no_nets: bool,
    },
}

/// Parse `std::env::args` and run.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::Ok,
                _ => ExitCode::Usage,
            };
            let _ = e.print();
            return code as i32;
        }
    };
    match commands::dispatch(&cli) {
        Ok((report, code)) => {
            print!("{}", report.render(cli.format));
            code as i32
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code as i32
        }
    }
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> Self {
        CliError { code: ExitCode::Usage, message: m.into() }
    }

    pub fn tier(m: impl Into<String>) -> Self {
        CliError { code: ExitCode::Tier, message: m.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::BadDimension { .. } | Error::DimensionMismatch { .. } => ExitCode::Usage,
            Error::Schema(_) | Error::Io(_) => ExitCode::Input,
            Error::Budget(_) => ExitCode::Budget,
            _ => ExitCode::Internal,
        };
        CliError { code, message: e.to_string() }
    }
}
