//! Symbol documents and the `psicalc` command runner.
//!
//! A document declares a dimension and named symbols, holomorphic families
//! and tensor symbols; commands evaluate residues, cut-off integrals and
//! identities on them. See `docs/grammar.md` for the grammar.

pub mod ast;
pub mod commands;
pub mod error;
pub mod format;
pub mod parser;
pub mod report;
pub mod resolve;

pub use ast::Document;
pub use commands::{Command, Options, VerifyKind};
pub use error::{exit_code_table, CliError};
pub use format::format_document;
pub use report::Report;
pub use resolve::{resolve, Resolved};

use clap::{Parser, Subcommand, ValueEnum};
use psicalc::reg::NormPreset;
use std::path::Path;

/// Parse and validate: syntax, references and symbol invariants.
pub fn parse_document(src: &str) -> Result<Document, CliError> {
    let doc = parser::parse_syntax(src)?;
    resolve(&doc)?;
    Ok(doc)
}

/// Parse and resolve in one step.
pub fn load(src: &str) -> Result<Resolved, CliError> {
    resolve(&parser::parse_syntax(src)?)
}

#[derive(Parser, Debug)]
#[command(name = "psicalc", version, about = "Exact calculus of classical pseudodifferential symbols")]
struct Cli {
    /// Also write the report as JSON; `-` prints JSON instead of text.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,
    /// Decimal digits for exact values and oracle output.
    #[arg(long, global = true, default_value_t = 20)]
    precision: u32,
    /// Normalisation preset: raw, sqrt-two-pi or two-pi.
    #[arg(long, global = true)]
    norm: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Noncommutative residue of a symbol.
    Res { file: String, symbol: String },
    /// Cut-off regularised integral and its large-R expansion.
    Fpint { file: String, symbol: String },
    /// Boundary term of the cut-off integral of a derivative (axis from 1).
    Defect { file: String, symbol: String, axis: usize },
    /// Write a residue-free symbol as a sum of derivatives.
    Decompose { file: String, symbol: String },
    /// Order, parity and Stokes class.
    Classify { file: String, symbol: String },
    /// Poles, residue and finite part of a holomorphic family.
    Laurent { file: String, family: String },
    /// Check an identity exactly.
    Verify {
        kind: Kind,
        file: String,
        target: String,
        /// Second tensor for `verify brackets`.
        second: Option<String>,
    },
    /// Compare exact values with the numeric finite-part fit.
    Oracle { file: String, symbol: String },
    /// Canonical trace and residue of a tensor symbol.
    Trace { file: String, tensor: String },
    /// Print the document in canonical form.
    Fmt { file: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Stokes,
    Translation,
    Kv,
    Ps,
    Brackets,
    Euler,
    Kerres,
}

impl From<Kind> for VerifyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Stokes => VerifyKind::Stokes,
            Kind::Translation => VerifyKind::Translation,
            Kind::Kv => VerifyKind::Kv,
            Kind::Ps => VerifyKind::Ps,
            Kind::Brackets => VerifyKind::Brackets,
            Kind::Euler => VerifyKind::Euler,
            Kind::Kerres => VerifyKind::Kerres,
        }
    }
}

/// Output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), msg: e.to_string() })
}

fn with_file_name(path: &str) -> String {
    Path::new(path).file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.into())
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let norm = match &cli.norm {
        None => None,
        Some(s) => Some(NormPreset::parse(s).ok_or_else(|| CliError::Usage(format!("unknown normalisation `{}`", s)))?),
    };
    let opts = Options { precision: cli.precision.max(1), norm };
    let (file, cmd, mut echo) = match cli.cmd {
        Cmd::Fmt { file } => {
            let doc = parse_document(&read(&file)?)?;
            return Ok(Outcome { stdout: format_document(&doc), ..Default::default() });
        }
        Cmd::Res { file, symbol } => (file, Command::Res(symbol.clone()), vec!["res".into(), symbol]),
        Cmd::Fpint { file, symbol } => (file, Command::Fpint(symbol.clone()), vec!["fpint".into(), symbol]),
        Cmd::Defect { file, symbol, axis } => {
            (file, Command::Defect(symbol.clone(), axis), vec!["defect".into(), symbol, axis.to_string()])
        }
        Cmd::Decompose { file, symbol } => (file, Command::Decompose(symbol.clone()), vec!["decompose".into(), symbol]),
        Cmd::Classify { file, symbol } => (file, Command::Classify(symbol.clone()), vec!["classify".into(), symbol]),
        Cmd::Laurent { file, family } => (file, Command::Laurent(family.clone()), vec!["laurent".into(), family]),
        Cmd::Verify { kind, file, target, second } => {
            let name = format!("{:?}", kind).to_lowercase();
            let mut echo = vec!["verify".into(), name, target.clone()];
            echo.extend(second.clone());
            (file, Command::Verify(kind.into(), target, second), echo)
        }
        Cmd::Oracle { file, symbol } => (file, Command::Oracle(symbol.clone()), vec!["oracle".into(), symbol]),
        Cmd::Trace { file, tensor } => (file, Command::Trace(tensor.clone()), vec!["trace".into(), tensor]),
    };
    let doc = load(&read(&file)?)?;
    let at = if matches!(cmd, Command::Verify(..)) { 2 } else { 1 };
    echo.insert(at, with_file_name(&file));
    let report = commands::run(&cmd, &doc, &opts, echo)?;
    let code = if report.passed() { error::EXIT_OK } else { error::EXIT_ASSERTION };
    let json = report.to_json();
    let stdout = match cli.json.as_deref() {
        Some("-") => format!("{}\n", json),
        Some(path) => {
            std::fs::write(path, format!("{}\n", json)).map_err(|e| CliError::Io { path: path.into(), msg: e.to_string() })?;
            report.to_text()
        }
        None => report.to_text(),
    };
    Ok(Outcome { stdout, stderr: String::new(), code })
}

/// Run the command line `args` (without the program name).
pub fn run_cli<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("psicalc")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { error::EXIT_USAGE } else { error::EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stderr: text, code, ..Default::default() }
            } else {
                Outcome { stdout: text, code, ..Default::default() }
            };
        }
    };
    match execute(cli) {
        Ok(o) => o,
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", e), code: e.exit_code() },
    }
}
