use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::Outcome;
use lears_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "lears",
    version,
    about = "Locally extended affine root systems over exact rationals"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug)]
pub struct SpecInput {
    /// A spec line, e.g. `type=B2 group=Z S=G L=2G window=3`.
    #[arg(long)]
    spec: Option<String>,
    /// A root-line file written by `construct`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Window bound (overrides the spec's `window=`).
    #[arg(long)]
    window: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the window of R(S,L,E) for a spec line.
    Construct(SpecInput),
    /// Check the axioms on a window.
    Verify {
        #[command(flatten)]
        src: SpecInput,
        /// Also check the splitting of the generated lattice.
        #[arg(long)]
        split: bool,
    },
    /// Recover type, group and triple from a window.
    Decompose(SpecInput),
    /// Invariants of a window, or an isomorphism verdict against `--with`.
    Classify {
        #[command(flatten)]
        src: SpecInput,
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// All null-dimension-one specs of a type over a group, one per class.
    Enumerate {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        group: String,
    },
    /// The fourteen reduced affine systems over Z.
    Catalog {
        #[arg(long, default_value_t = 3)]
        index: u32,
        /// Verify every entry's window at this bound.
        #[arg(long)]
        verify: Option<String>,
    },
    /// Build a loop algebra and compare its roots with the predicted window.
    Realize(RealizeArgs),
    /// Similarity witness between two spec lines (null dimension one).
    Similar {
        /// Given twice.
        #[arg(long, required = true)]
        spec: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    /// One of A, B, C, D, G2, B(2), C(2), BC, G2(3); `(1)` is optional.
    #[arg(long)]
    label: String,
    #[arg(long, default_value_t = 2)]
    index: usize,
    #[arg(long, default_value = "Z")]
    group: String,
    #[arg(long, default_value = "2")]
    window: String,
    /// Comma-separated subset of jacobi, roots, trace.
    #[arg(long, value_delimiter = ',', default_value = "jacobi,roots")]
    check: Vec<String>,
    /// Sample this many Jacobi triples instead of the exhaustive scan.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Use the cocycle λ^(gh) instead of the constant one.
    #[arg(long)]
    cocycle_lambda: Option<String>,
    /// Append the full sparse bracket table.
    #[arg(long)]
    dump_structure_constants: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotHomogeneous(_) | Error::FormNotInvariant(_) | Error::Overflow(_) => 3,
        _ => 2,
    }
}

fn threads_from_env() -> Result<(), String> {
    let Ok(v) = std::env::var("RF_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("RF_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("RF_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(cli: &Cli) -> lears_core::Result<(&'static str, Outcome)> {
    Ok(match &cli.command {
        Command::Construct(src) => ("construct", commands::construct(src)?),
        Command::Verify { src, split } => ("verify", commands::verify(src, *split)?),
        Command::Decompose(src) => ("decompose", commands::decompose(src)?),
        Command::Classify { src, with } => ("classify", commands::classify(src, with.as_deref())?),
        Command::Enumerate { ty, group } => ("enumerate", commands::enumerate(ty, group)?),
        Command::Catalog { index, verify } => {
            ("catalog", commands::catalog(*index, verify.as_deref())?)
        }
        Command::Realize(args) => ("realize", commands::realize(args)?),
        Command::Similar { spec } => match spec.as_slice() {
            [a, b] => ("similar", commands::similar(a, b)?),
            _ => {
                return Err(Error::InvalidArgument(
                    "similar takes exactly two --spec lines".into(),
                ))
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = threads_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let (name, outcome) = match dispatch(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let rendered = output::render(name, cli.format, &outcome);
    if let Err(e) = output::emit(cli.output.as_deref(), &rendered) {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
