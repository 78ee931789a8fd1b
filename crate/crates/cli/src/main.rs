mod check;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub const SCHEMA: &str = "gentle-kiss/1";

#[derive(Parser)]
#[command(
    name = "gentle",
    version,
    about = "Strings, kisses, Ext bases and support tau-tilting for gentle algebras"
)]
pub struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing on success; the exit code carries the result
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads for the parallel parts of the library
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct Input {
    /// Bound quiver file
    pub file: PathBuf,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the gentle axioms
    Validate(Input),
    /// List the strings, or those up to a length bound
    Strings {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N")]
        max_len: Option<usize>,
    },
    /// Write the fringed bound quiver
    Fringe {
        #[command(flatten)]
        input: Input,
        #[arg(short, long, value_name = "OUT")]
        output: Option<PathBuf>,
    },
    /// Auslander-Reiten translate of a string
    Tau {
        #[command(flatten)]
        input: Input,
        #[arg(long = "string", value_name = "S")]
        string: String,
        /// Translate in the fringed algebra (cohook completion)
        #[arg(long)]
        fringed: bool,
    },
    /// Kisses from cohook(X) to cohook(Y)
    Kiss {
        #[command(flatten)]
        input: Input,
        x: String,
        y: String,
    },
    /// dim Hom(X, Y), or dim Hom(X, tau Y) with --tau
    Homdim {
        #[command(flatten)]
        input: Input,
        x: String,
        y: String,
        #[arg(long)]
        tau: bool,
    },
    /// Basis of Ext^1(Y, X) as short exact sequences
    Ext {
        #[command(flatten)]
        input: Input,
        y: String,
        x: String,
    },
    /// Maximal compatible collections
    Sttilt(Input),
    /// Poset of torsion classes
    Poset {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Mc walks for the torsion class of a collection
    Mc {
        #[command(flatten)]
        input: Input,
        /// Index into the `sttilt` listing
        #[arg(long, value_name = "INDEX")]
        torsion_of: usize,
        /// Arrow of the fringed quiver; every arrow if omitted
        #[arg(long, value_name = "ID")]
        arrow: Option<String>,
    },
    /// Check the Mc-walk census of one or all collections
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        all: bool,
        #[arg(long, value_name = "INDEX", conflicts_with = "all")]
        torsion_of: Option<usize>,
    },
    /// Cross-check the combinatorics against linear algebra
    OracleCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N")]
        max_len: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            if !cli.quiet {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
