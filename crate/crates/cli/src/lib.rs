//! The `strop` command line: argument parsing, dispatch and exit codes.
//!
//! Exit status is 0 on success, 1 when a computation fails an invariant
//! and 2 when an input cannot be read or parsed.

mod commands;
pub mod input;
pub mod report;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "strop",
    version,
    about = "Exact intersection and loop products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    /// Seed for perturbations and randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Homology of a simplicial complex.
    Homology {
        /// File path or catalog name.
        input: String,
        /// Coefficients in the orientation sheaf.
        #[arg(long)]
        twisted: bool,
    },
    /// Products of basis classes in the intersection ring of a closed manifold.
    Ring { input: String },
    /// Intersection class of a bi-cycle on a flat torus.
    TorusIntersect {
        /// One bi-chain file, or two chain files whose product is taken.
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<String>,
        /// Largest coordinate of the translation perturbation.
        #[arg(long, default_value = "1/50")]
        radius: String,
    },
    /// Loop product class of a bi-cycle of loop families on a flat torus.
    TorusLoop {
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<String>,
        #[arg(long, default_value = "1/50")]
        radius: String,
    },
    /// Homology table of the free loop space of a manifold with closed geodesics.
    Cross {
        input: String,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// Invariant suite over the bundled catalog and seeded random chains.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Where catalog names are looked up before the bundled data.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub catalog: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Self {
        Context {
            catalog: std::env::var_os("STROP_CATALOG").map(PathBuf::from),
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<strop_core::Error>() {
        Some(inner) if inner.is_format() => 2,
        _ => 1,
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, ctx: &Context) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let render = |r: &Report| match cli.format {
        Format::Tsv => r.to_tsv(),
        Format::Json => r.to_json(),
    };
    match commands::execute(&cli, ctx) {
        Ok((report, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: render(&report),
            stderr: if ok {
                String::new()
            } else {
                "strop: one or more invariants failed\n".into()
            },
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("strop: {e:#}\n"),
        },
    }
}
