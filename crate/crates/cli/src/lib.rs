//! Command-line front end for `mvop-core`: parameter validation, table
//! emission in JSON/CSV/pretty form and the verification suites.
//!
//! Exit codes: `0` success, `1` failed check or computation error,
//! `2` invalid parameters, `64` usage error.

pub mod commands;
pub mod exact;
pub mod format;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID_PARAMS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const DEFAULT_TOLERANCE: f64 = mvop_core::tolerance::DEFAULT_RTOL;
pub const DEFAULT_DEGREE: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "mvop", version, about = "Matrix-valued hypergeometric operators and their orthogonal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Command {
    /// Check the admissibility window `|alpha-beta| < |v| < alpha+beta+2`.
    Validate,
    /// Print a table for the given parameters.
    Emit {
        #[arg(value_enum)]
        what: EmitKind,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitKind {
    Weight,
    Operator,
    Poly,
    Recurrence,
    Norms,
    Eigenvalues,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Symmetry,
    Orthogonality,
    Recurrence,
    Hypergeom,
    Irreducibility,
    Gegenbauer,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Symmetry => "symmetry",
            Suite::Orthogonality => "orthogonality",
            Suite::Recurrence => "recurrence",
            Suite::Hypergeom => "hypergeom",
            Suite::Irreducibility => "irreducibility",
            Suite::Gegenbauer => "gegenbauer",
            Suite::All => "all",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Eigenvalue shift; unconstrained.
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 0.0)]
    pub v2: f64,
    /// Largest degree n.
    #[arg(short = 'N', long = "degree", global = true, default_value_t = DEFAULT_DEGREE)]
    pub degree: usize,
    /// Evaluation point for `emit weight`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub at: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Relative tolerance of the checks.
    #[arg(long, global = true, env = "MVOP_TOLERANCE", allow_negative_numbers = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

/// What a run printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }

    /// A `{code, message}` object on stderr.
    pub fn error(code: i32, kind: &str, message: impl Into<String>) -> Self {
        let v = serde_json::json!({ "code": kind, "message": message.into() });
        Outcome { code, stdout: String::new(), stderr: format::json_text(&v) }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(text) };
        }
    };
    let cfg = &cli.config;
    if !(cfg.tolerance.is_finite() && cfg.tolerance > 0.0) {
        return Outcome::usage(format!("error: tolerance must be positive and finite, got {}\n", cfg.tolerance));
    }
    match cli.command {
        Command::Validate => commands::validate(cfg),
        Command::Emit { what } => commands::emit(cfg, what),
        Command::Verify { suite } => commands::verify(cfg, suite),
    }
}
