mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use skewrank::report::{Format, ReportDocument};
use skewrank::{Error, FieldContext, DEFAULT_PRIME, DEFAULT_SEED};

pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

/// Secant varieties of Grassmannians, orbits of three-forms in eight
/// variables, and torsion scrolls, computed exactly over a prime field.
#[derive(Parser, Debug)]
#[command(name = "skewrank", version)]
pub struct Cli {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, env = "SKEWRANK_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,

    /// Seed of every random choice.
    #[arg(long, global = true, env = "SKEWRANK_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Report format: json, csv or md.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Terracini dimensions, contact kernels and verdicts for all Grassmannians.
    Scan(ScanArgs),
    /// Hessian contact kernel for one secant variety.
    Contact(ContactArgs),
    /// Dimension of the tangential-contact locus by Gröbner bases.
    Tcl(TclArgs),
    /// Invariants of the 23 orbits in ∧^3 F^8.
    Orbits(OrbitsArgs),
    /// Dual variety of one orbit closure.
    Dual(DualArgs),
    /// Orbit of a tensor read from a JSON file.
    Classify(ClassifyArgs),
    /// Contact experiment along the 3-torsion scroll in Gr(P^2, P^9).
    Scroll(ScrollArgs),
    /// Reference checks on Gr(P^2, P^7) with three fixed planes.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 13)]
    pub nmax: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Run every trial even when the first one is conclusive.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Args, Debug)]
pub struct ContactArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Report the kernel at every tangency point.
    #[arg(long)]
    pub all_points: bool,
}

#[derive(Args, Debug)]
pub struct TclArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    /// Use the three fixed planes of Gr(P^2, P^7) (requires k=2, n=7, r=3).
    #[arg(long)]
    pub paper_points: bool,
    /// Write the ideal generators to this file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Degree cap of the Buchberger run.
    #[arg(long, default_value_t = skewrank::secant::TCL_DEGREE_CAP)]
    pub cap: u32,
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    /// Print the orbit table as Markdown.
    #[arg(long)]
    pub table1: bool,
    /// Write the canonical forms to this file.
    #[arg(long)]
    pub export_forms: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Args, Debug)]
pub struct DualArgs {
    /// Orbit label, e.g. XIX.
    #[arg(long)]
    pub orbit: String,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Tensor file in the JSON format.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Args, Debug)]
pub struct ScrollArgs {
    /// Reference run: 50 membership checks and the negative control.
    #[arg(long)]
    pub demo: bool,
    /// Fresh scroll planes tested for membership (default 50).
    #[arg(long)]
    pub checks: Option<usize>,
    /// Also test planes of a general translation scroll.
    #[arg(long)]
    pub negative_control: bool,
    /// Planes tested by the negative control.
    #[arg(long, default_value_t = 20)]
    pub negative_checks: usize,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Skip the Gröbner dimension computation.
    #[arg(long)]
    pub no_groebner: bool,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Scan(_) => "scan",
            Command::Contact(_) => "contact",
            Command::Tcl(_) => "tcl",
            Command::Orbits(_) => "orbits",
            Command::Dual(_) => "dual",
            Command::Classify(_) => "classify",
            Command::Scroll(_) => "scroll",
            Command::Oracle(_) => "oracle",
        }
    }
}

/// Exit code for an error that aborted a command.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::OracleMismatch { .. } | Error::NoOrbitMatch => EXIT_MISMATCH,
        Error::Genericity(_) | Error::Inconclusive(_) | Error::Resample { .. } | Error::Degenerate(_) => EXIT_UNRESOLVED,
        Error::Io(_) => 1,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let ctx = match FieldContext::new(cli.prime, cli.seed) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let mut doc = ReportDocument::new(&ctx, cli.command.name());
    let format = match &cli.command {
        Command::Orbits(a) if a.table1 => Format::Md,
        _ => cli.format,
    };
    let code = match commands::run(&ctx, &cli.command, &mut doc) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            doc.warn(format!("error: {e}"));
            error_code(&e)
        }
    };
    match doc.render(format) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
