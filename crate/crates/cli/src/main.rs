mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "mfdo", version, about = "Invariant differential operators on multiplicity-free spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "MFDO_FORMAT", default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

/// Selects a space: a catalog entry, optionally with a user-supplied `b_Y`.
#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Catalog entry name (see `mfdo catalog`).
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub p: Option<i64>,
    /// Degrees d0,..,dr; required with --by for entries without known degrees.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub degrees: Option<Vec<i64>>,
    /// Bernstein-Sato polynomial of Y in X0..Xr, replacing the product formula.
    #[arg(long)]
    pub by: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bernstein-Sato polynomial of a word in X, Xinv, Y, E.
    Bs {
        #[command(flatten)]
        space: SpaceArgs,
        /// Word such as `XY`, `X*Y*Y`, `Xinv Y X^2`.
        #[arg(long)]
        element: String,
    },
    /// u_XY(t) with XY = u_XY(E), and f_XY(t) = u_XY(t + d0) - u_XY(t).
    Uxy {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Radial component of a word on the isotypic component with label a.
    Radial {
        #[command(flatten)]
        space: SpaceArgs,
        /// Label a1,..,ar; defaults to all zeros.
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<i64>>,
        #[arg(long, default_value = "Y")]
        element: String,
        /// Also list the kernel generators built from E and X^(1-l) Y X^l.
        #[arg(long)]
        kernel: bool,
        /// Compare the factorized radial part of det(d) with the computed one.
        #[arg(long)]
        check_rais: bool,
    },
    /// Normal forms in the Smith algebra S(A, f, n).
    Smith {
        /// f(t), possibly with coefficients in the ring variables.
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: i64,
        /// Variables of A = Q[..]; empty means A = Q.
        #[arg(long, value_delimiter = ',')]
        ring: Vec<String>,
        /// Word in x, y, e.
        #[arg(long)]
        word: Option<String>,
        /// Rewrite with a redex strategy instead of the PBW product.
        #[arg(long, value_enum)]
        strategy: Option<RedexStrategy>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the Casimir element and check that it is central.
        #[arg(long)]
        casimir: bool,
    },
    /// Brute-force Bernstein-Sato polynomial on a concrete instance.
    Oracle {
        /// quad2..quad6, det2, det3, sym2, pf4.
        #[arg(long)]
        instance: String,
        /// X, Y, E or R0.
        #[arg(long, default_value = "Y")]
        operator: String,
        /// Sample points per axis.
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Browse the catalog.
    Catalog {
        /// Show one entry.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        table: Option<u8>,
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        max_rank: Option<i64>,
    },
    /// Seeded property suites.
    Verify {
        /// ratpoly, torus, smith, radial, oracle, catalog or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RedexStrategy {
    Leftmost,
    Rightmost,
    Random,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialize"),
            };
            let _ = writeln!(stdout, "{}", body.trim_end());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => eprintln!("{}", serde_json::json!({ "error": e.to_string() })),
            }
            ExitCode::from(1)
        }
    }
}
