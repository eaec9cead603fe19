//! Command-line front end: deterministic, machine-readable access to the
//! bracket derivation, weight tables, module characters, null vectors, and
//! spectral flow.
//!
//! Exit codes: 0 verified/success, 1 verification mismatch, 2 usage error,
//! 3 inconclusive (truncation-limited). Default output is JSON with exact
//! scalar strings and is byte-identical for identical arguments; `--format
//! csv` renders the same fields as rows, `--timing` adds a timing field.

mod commands;
mod report;

use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Report, Verdict};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Parser, Debug)]
#[command(
    name = "bpw",
    version,
    about = "Exact computations in the Bershadsky-Polyakov vertex algebra W3(2) at levels k = p/2 - 3"
)]
struct Cli {
    /// Output format for the report
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Include wall-clock timing in the report (breaks byte-identical output)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Export the derived mode-bracket table in the L-basis
    Brackets {
        /// Mode indices range over [-grid, grid]
        #[arg(long, default_value_t = 2)]
        grid: i64,
    },
    /// Check the OPE-derived brackets against the closed-form list, symbolically in k
    VerifyBrackets {
        #[arg(long, default_value_t = 3)]
        grid: i64,
        /// Deliberately corrupt one reference value (testing hook)
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Check bracket soundness on module vectors (commutator of actions = action of bracket)
    VerifyJacobi {
        #[arg(long, default_value_t = 2)]
        grid: i64,
        /// Rational levels "a/b" for the quadratic-pair sweep (default: three built-in levels)
        #[arg(long = "k", allow_hyphen_values = true)]
        levels: Vec<String>,
        /// Random test vectors per mode pair
        #[arg(long, default_value_t = 2)]
        vectors: usize,
        /// Seed of the deterministic vector generator
        #[arg(long, default_value_t = 0xB0_5EED)]
        seed: u64,
    },
    /// The classification table of simple modules at level p
    Simples {
        /// Odd integer p >= 3 (the level is k = p/2 - 3)
        #[arg(long)]
        p: u64,
    },
    /// Graded dimensions of a simple quotient within a window
    Character {
        #[arg(long)]
        p: u64,
        /// Top-space label i (with --j); omit both for the vacuum module
        #[arg(long)]
        i: Option<u32>,
        /// Twisted-top label j (with --i)
        #[arg(long)]
        j: Option<u32>,
        /// Depth window (default p - 2)
        #[arg(long)]
        depth: Option<i64>,
        /// Charge window (default p)
        #[arg(long)]
        charge: Option<i64>,
    },
    /// Membership of (G+_{-1})^{p-2} |0> in the maximal submodule
    NullVector {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        depth: Option<i64>,
        #[arg(long)]
        charge: Option<i64>,
    },
    /// Top-space dimensions of all classified modules at level p
    TopDims {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        charge: Option<i64>,
    },
    /// Twist a computed simple quotient by the spectral flow and compare with the weight map
    SpectralFlow {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        depth: Option<i64>,
        #[arg(long)]
        charge: Option<i64>,
        /// Flow power (1 or 2)
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        power: u32,
    },
    /// The central charge c(k) = -4(k+1)(2k+3)/(k+3), symbolic or at a level
    CentralCharge {
        #[arg(long)]
        p: Option<u64>,
        /// Rational level "a/b"
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Run the aggregate verification battery
    VerifyAll {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

/// Parsed-and-executed CLI invocation: exit code plus captured streams.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };

    let start = Instant::now();
    let result = match &cli.cmd {
        Cmd::Brackets { grid } => commands::brackets(*grid),
        Cmd::VerifyBrackets { grid, inject_fault } => {
            commands::verify_brackets(*grid, inject_fault.as_deref())
        }
        Cmd::VerifyJacobi {
            grid,
            levels,
            vectors,
            seed,
        } => commands::verify_jacobi(*grid, levels, *vectors, *seed),
        Cmd::Simples { p } => commands::simples(*p),
        Cmd::Character {
            p,
            i,
            j,
            depth,
            charge,
        } => commands::character(*p, *i, *j, *depth, *charge),
        Cmd::NullVector { p, depth, charge } => commands::null_vector(*p, *depth, *charge),
        Cmd::TopDims { p, charge } => commands::top_dims(*p, *charge),
        Cmd::SpectralFlow {
            p,
            i,
            j,
            depth,
            charge,
            power,
        } => commands::spectral_flow(*p, *i, *j, *depth, *charge, *power),
        Cmd::CentralCharge { p, k } => commands::central_charge_cmd(*p, k.as_deref()),
        Cmd::VerifyAll {
            profile,
            inject_fault,
        } => commands::verify_all(*profile == Profile::Full, inject_fault.as_deref()),
    };

    match result {
        Ok((mut report, rows)) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let stdout = match cli.format {
                Format::Json => report.to_json(),
                Format::Csv => commands::csv_render(&rows),
            };
            Outcome {
                code: report.verdict.exit_code(),
                stdout,
                stderr: String::new(),
            }
        }
        Err(CliError::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("usage error: {msg}\n"),
        },
        Err(CliError::Internal(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
