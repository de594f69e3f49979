use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

mod commands;
mod config;

use config::{CliConfig, Format, Overrides};

/// Exact moments of the algebraic area enclosed by closed lattice walks.
#[derive(Debug, Parser)]
#[command(name = "area-moments", version)]
struct Cli {
    /// Output format [default: pretty]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Moment polynomial cache file
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Relative tolerance for the operator check
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Maximum number of enumeration states
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Extra quadrature nodes for the operator check
    #[arg(long, global = true, value_name = "N")]
    quad_margin: Option<usize>,
    /// JSON config file [default: $AREA_MOMENTS_CONFIG or ./area-moments.json]
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the moment polynomials P_2 .. P_max
    Moments {
        /// Highest even order
        #[arg(long, value_parser = parse_even_order)]
        max: u32,
    },
    /// Enumerate the area histogram for n1, n2 steps per direction
    Distribution { n1: u32, n2: u32 },
    /// Compare enumerated moments with the polynomials
    Verify {
        /// Largest n1 + n2
        #[arg(long)]
        n: u32,
        /// Highest even order
        #[arg(long, value_parser = parse_even_order)]
        moments: u32,
    },
    /// Check the combinatorial identities on a parameter grid
    Identities {
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        max_k: i64,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        max_n: i64,
    },
    /// Compare the flux-lattice operator with the enumerated walks
    Hh {
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        /// Flux value, repeatable [default: 8 points evenly spaced on [0, 2π)]
        #[arg(long, allow_negative_numbers = true)]
        phi: Vec<f64>,
    },
}

fn parse_even_order(s: &str) -> std::result::Result<u32, String> {
    let v: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if v < 2 || !v.is_multiple_of(2) {
        return Err(format!("must be an even number >= 2, got {v}"));
    }
    Ok(v)
}

fn run(cli: Cli) -> Result<bool> {
    let flags = Overrides {
        cache: cli.cache,
        format: cli.format,
        tolerance: cli.tolerance,
        budget: cli.budget,
        quad_margin: cli.quad_margin,
    };
    let config = CliConfig::resolve(cli.config.as_deref(), flags)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let ok = match cli.command {
        Command::Moments { max } => commands::moments(&config, max, &mut out)?,
        Command::Distribution { n1, n2 } => commands::distribution(&config, n1, n2, &mut out)?,
        Command::Verify { n, moments } => commands::verify(&config, n, moments, &mut out)?,
        Command::Identities { max_k, max_n } => {
            commands::identities(&config, max_k, max_n, &mut out)?
        }
        Command::Hh { n1, n2, phi } => commands::hh(&config, n1, n2, &phi, &mut out)?,
    };
    out.flush().context("writing output")?;
    Ok(ok)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|e| {
                matches!(e.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe)
            })
            || c.downcast_ref::<serde_json::Error>()
                .is_some_and(|e| e.io_error_kind() == Some(io::ErrorKind::BrokenPipe))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
