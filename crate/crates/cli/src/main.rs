use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kitecalc::run::{self, CliError, Family, Format, Outcome};
use kites::DEFAULT_MAX_EVALS;

#[derive(Parser)]
#[command(
    name = "kitecalc",
    version,
    about = "Calculator and verifier for kite pseudo BL-algebras"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term under variable bindings.
    Eval {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        term: String,
        /// name=literal, repeatable
        #[arg(long = "bind")]
        binds: Vec<String>,
    },
    /// Check an identity exhaustively on the M-grid.
    Check {
        #[arg(long)]
        shape: String,
        /// Catalog name or identity file
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, env = "KITECALC_MAX_EVALS", default_value_t = DEFAULT_MAX_EVALS)]
        max_evals: u64,
    },
    /// Subdirect-irreducibility type of a shape.
    Classify {
        #[arg(long)]
        shape: String,
    },
    /// Split a finite shape into its components.
    Decompose {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Compare an operation with its levelwise image under mu, nu or nu'.
    Approx {
        #[arg(long, value_enum, default_value = "mu")]
        kind: Family,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        op: String,
        /// u=literal and w=literal
        #[arg(long = "bind")]
        binds: Vec<String>,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Negation-iterate table for the Z_n dagger family.
    #[command(alias = "covers-report")]
    Covers {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Eval { shape, term, binds } => run::eval(&shape, &term, &binds, f),
        Command::Check {
            shape,
            identity,
            bound,
            workers,
            max_evals,
        } => run::check(
            &shape,
            &identity,
            bound,
            f,
            workers.unwrap_or_else(kitecalc::default_workers),
            max_evals,
        ),
        Command::Classify { shape } => run::classify_cmd(&shape, f),
        Command::Decompose { shape, bound } => run::decompose_cmd(&shape, bound, f),
        Command::Approx {
            kind,
            shape,
            op,
            binds,
            levels,
        } => run::approx(kind, shape.as_deref(), &op, &binds, levels, f),
        Command::Covers { n_max, bound } => run::covers(n_max, bound, f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("kitecalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
