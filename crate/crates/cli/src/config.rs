use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

/// Largest ranges the oracle handles in reasonable time.
pub const G_MAX_LIMIT: u32 = 4;
pub const N_MAX_LIMIT: u32 = 10;

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Exact simple Hurwitz numbers by topological recursion and by characters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Highest genus to compute
    #[arg(long, global = true, default_value_t = 1)]
    pub g_max: u32,

    /// Largest degree |mu| to compute
    #[arg(long, global = true, default_value_t = 3)]
    pub n_max: u32,

    /// Series truncation order (defaults to the engine bound; may only be raised)
    #[arg(long, global = true)]
    pub trunc_order: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,

    /// Output format (defaults to json for wkg, text otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Memo-table cache file
    #[arg(long, global = true, env = "HURWITZ_CACHE")]
    pub cache: Option<PathBuf>,

    /// Diagnostics on stderr (repeat for more)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate H_{g,mu}
    Table,
    /// Print the correlation form W_k^(g) of the Lambert curve
    Wkg { g: u32, k: u32 },
    /// Run a verification suite
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Print the invariant F_g (g >= 2)
    Fg { g: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recursion,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bm,
    Elsv,
    Times,
    Series,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub g_max: u32,
    pub n_max: u32,
    pub trunc_order: Option<i64>,
    pub method: MethodArg,
    pub format: Option<Format>,
    pub cache: Option<PathBuf>,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        if cli.n_max < 1 {
            return Err(CliError::OutOfRange("--n-max must be at least 1".into()));
        }
        if cli.n_max > N_MAX_LIMIT {
            return Err(CliError::OutOfRange(format!(
                "--n-max {} exceeds the supported limit {N_MAX_LIMIT}",
                cli.n_max
            )));
        }
        if cli.g_max > G_MAX_LIMIT {
            return Err(CliError::OutOfRange(format!(
                "--g-max {} exceeds the supported limit {G_MAX_LIMIT}",
                cli.g_max
            )));
        }
        Ok(Self {
            g_max: cli.g_max,
            n_max: cli.n_max,
            trunc_order: cli.trunc_order,
            method: cli.method,
            format: cli.format,
            cache: cli.cache.clone(),
            verbosity: cli.verbose,
        })
    }

    pub fn log_level(&self) -> log::LevelFilter {
        match self.verbosity {
            0 => log::LevelFilter::Warn,
            1 => log::LevelFilter::Info,
            _ => log::LevelFilter::Debug,
        }
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// The requested order, or `default` when none was given. Lowering the
    /// order below `default` is refused.
    pub fn order(&self, default: i64) -> Result<i64, CliError> {
        match self.trunc_order {
            None => Ok(default),
            Some(t) if t >= default => Ok(t),
            Some(t) => Err(CliError::OutOfRange(format!(
                "--trunc-order {t} is below the required order {default}"
            ))),
        }
    }
}
