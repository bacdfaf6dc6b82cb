mod commands;
mod config;
mod suite;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{CliError, CommandConfig, Format};

/// Cobweb posets, their incidence algebra and box tilings, in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "cobweb", version, about)]
pub struct Cli {
    /// Built-in sequence (natural, fibonacci, gaussian[:q], constant[:c]) or a definition file
    #[arg(long, global = true, default_value = "natural", env = "COBWEB_SEQ")]
    seq: String,

    /// Base of the gaussian sequence
    #[arg(long, global = true)]
    q: Option<u64>,

    /// Number of levels, used when a command's level argument is omitted
    #[arg(long, global = true)]
    levels: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Upper bound for exhaustive searches (poset size, search nodes or tiling count)
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// F-nomial coefficient n over k
    Fnomial { n: usize, k: usize },
    /// Integrality of every F-nomial up to n
    Admissible { n: usize },
    /// Zeta matrix of the cobweb with n levels
    Zeta { n: Option<usize> },
    /// Mobius matrix of the cobweb with n levels, from the closed form
    Mobius { n: Option<usize> },
    /// Staircase picture of the zeta matrix
    Scala { n: Option<usize> },
    /// Whitney numbers of both kinds up to rank n
    Whitney { n: Option<usize> },
    /// Characteristic polynomial of the rank-n cobweb with a bottom element
    Charpoly { n: Option<usize> },
    /// Maximal chains between levels k and n and their block partition
    Chains { k: usize, n: usize },
    /// Tile the box of levels n-m+1..n with copies of the box of levels 1..m
    Tile { m: usize, n: usize },
    /// Count the distinct tilings of the same box
    TileCount { m: usize, n: usize },
    /// Ternary relation composed from two binary relations
    JoinDemo,
    /// Two linear extensions whose intersection is the cobweb order
    Realizer { n: Option<usize> },
    /// N-freeness, greedy and reversibility report
    Structure { n: Option<usize> },
    /// Export the cobweb with n levels
    Poset { n: Option<usize> },
    /// Run the property suite on the selected sequence
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match CommandConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    match commands::run(&cli.command, &config) {
        Ok(output) => {
            if let Err(e) = emit(&config, &output.text) {
                return fail(&e);
            }
            if output.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e),
    }
}

fn emit(config: &CommandConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io("stdout".into(), e))
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("cobweb: {e}");
    ExitCode::from(e.exit_code())
}
