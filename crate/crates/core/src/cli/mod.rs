//! Command-line front end. `run` is pure so tests can drive it directly.

mod render;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classify::{classify_with_word, enumerate_candidates};
use crate::error::{Error, Result};
use crate::link_game::analyze_link;
use crate::linear_systems::{cubic_count, h0_on_cubic, secancy_profile};
use crate::picard_lattice::SurfaceClass;
use crate::weyl::standardize;

pub use render::{enumerate_table, summary_tables};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Md,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cubic-links", version, about = "Sarkisov links from curves on smooth cubic surfaces")]
pub struct Args {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Md)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The 27 lines and their classes.
    Lines,
    /// Intersection numbers of a type with the 27 lines.
    Secancy { r#type: String },
    /// Standard form of a type and the Weyl word reaching it.
    Normalize { r#type: String },
    /// Dimension of the complete linear system on the cubic.
    H0 { r#type: String },
    /// Number of independent cubics through a curve of the type.
    Cubics { r#type: String },
    /// Weak Fano / link candidate / excluded.
    Classify { r#type: String },
    /// The table of candidate curves.
    Enumerate,
    /// Invariants of the link induced by a candidate.
    Analyze { r#type: String },
    /// Summary tables for the unique-cubic and pencil cases.
    Tables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = err.render().to_string();
            let (stdout, stderr) = if err.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&args) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(err) => Outcome {
            code: if err.is_parse() { EXIT_PARSE } else { EXIT_PRECONDITION },
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn parse_type(s: &str) -> Result<SurfaceClass> {
    s.parse()
}

pub fn dispatch(args: &Args) -> Result<String> {
    let format = args.format;
    match &args.command {
        Command::Lines => render::lines(format),
        Command::Secancy { r#type } => {
            let c = parse_type(r#type)?;
            render::secancy(&c, &secancy_profile(&c), format)
        }
        Command::Normalize { r#type } => {
            let c = parse_type(r#type)?;
            let (standard, word) = standardize(&c)?;
            render::normalize(&c, &standard, &word, format)
        }
        Command::H0 { r#type } => {
            let c = parse_type(r#type)?;
            render::count(&c, "h0", h0_on_cubic(&c), format)
        }
        Command::Cubics { r#type } => {
            let c = parse_type(r#type)?;
            if c.degree() <= 0 {
                return Err(Error::NonPositiveDegree { class: c, degree: c.degree() });
            }
            render::count(&c, "cubics", cubic_count(&c), format)
        }
        Command::Classify { r#type } => {
            let c = parse_type(r#type)?;
            let (record, word) = classify_with_word(&c)?;
            render::classification(&c, &record, &word, format)
        }
        Command::Enumerate => enumerate_table(enumerate_candidates(), format),
        Command::Analyze { r#type } => {
            let c = parse_type(r#type)?;
            render::analysis(&analyze_link(&c)?, format)
        }
        Command::Tables => {
            let reports = enumerate_candidates()
                .iter()
                .map(|r| analyze_link(&r.class))
                .collect::<Result<Vec<_>>>()?;
            summary_tables(&reports, format)
        }
    }
}
