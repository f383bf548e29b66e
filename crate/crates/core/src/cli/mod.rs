//! The `misenum` command-line tool.
//!
//! Exit codes: 0 success, 2 usage, 3 input or script parse error, 4 mismatch
//! against a reference computation, 5 internal error.

mod bench;
pub mod generators;
mod runner;
mod script;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::graph::{parse_edge_list, Graph, InputFormat, ParseError};

pub use bench::{run_bench, Family, BENCH_HEADER};
pub use runner::{resolve_algorithm, run_algorithm, Algorithm, OrderKind, RunOptions, RunStats};
pub use script::{run_script, Structure};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Internal(String),
    #[error("output error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Internal(_) | CliError::Io(_) => 5,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "misenum",
    version,
    about = "List maximal independent sets of sparse graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every maximal independent set, one per line.
    Enumerate(EnumerateArgs),
    /// Drive a dynamic dominance structure with a script read from stdin.
    Dominance(DominanceArgs),
    /// Run enumerators over a generated graph family and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file; standard input when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Edgelist)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Dimacs,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Edgelist => InputFormat::EdgeList,
            FormatArg::Dimacs => InputFormat::Dimacs,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    pub algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = OrderKind::Degeneracy)]
    pub order: OrderKind,
    /// Degree threshold for the dominance structure.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Largest maximum degree handled by the bounded-degree enumerator.
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Print only the number of sets.
    #[arg(long)]
    pub count_only: bool,
    /// Print run statistics to standard error.
    #[arg(long)]
    pub stats: bool,
    /// Compare the output with brute force (at most 24 vertices).
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct DominanceArgs {
    /// Graph file (the script is read from standard input).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Edgelist)]
    pub format: FormatArg,
    #[arg(long, value_enum)]
    pub structure: Structure,
    #[arg(long)]
    pub delta: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Comma-separated sizes: triangle count, grid side, or vertex count.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn read_graph(
    input: Option<&PathBuf>,
    format: FormatArg,
    stdin: &mut dyn BufRead,
) -> Result<Graph, CliError> {
    match input {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
            Ok(parse_edge_list(BufReader::new(file), format.into())?)
        }
        None => Ok(parse_edge_list(stdin, format.into())?),
    }
}

/// Runs a parsed command against the given streams.
pub fn execute(
    cli: Cli,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate(args) => {
            let g = read_graph(args.input.input.as_ref(), args.input.format, stdin)?;
            runner::cmd_enumerate(&g, &args, stdout, stderr)
        }
        Command::Dominance(args) => {
            let g = read_graph(Some(&args.input), args.format, stdin)?;
            run_script(&g, args.structure, args.delta, stdin, stdout)
        }
        Command::Bench(args) => run_bench(args.family, &args.sizes, args.seed, stdout, stderr),
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let result = execute(cli, stdin, stdout, stderr);
    let _ = stdout.flush();
    match result {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let stdout = io::stdout();
    let mut stdout = io::BufWriter::new(stdout.lock());
    let stderr = io::stderr();
    let mut stderr = stderr.lock();
    run_with(std::env::args_os(), &mut stdin, &mut stdout, &mut stderr)
}
