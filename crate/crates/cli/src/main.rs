mod commands;
mod error;
mod length;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parry_attractors::{ParryParameters, PrefixEngine, DEFAULT_MAX_WORD};

use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "parry",
    version,
    about = "Parry sequences and their minimal string attractors"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Suppress warnings and summaries on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    /// Longest word any command may materialize.
    #[arg(long, global = true, env = "PARRY_MAX_WORD", default_value_t = DEFAULT_MAX_WORD)]
    max_word: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Auto,
    General,
    Restricted,
    Binary,
    Affine,
    Prior,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ParamArgs {
    /// Simple Parry coefficients t1,...,tm.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    t: Option<Vec<u32>>,

    /// Binary non-simple parameters p,q.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    nsp: Option<Vec<u32>>,
}

impl ParamArgs {
    pub fn params(&self) -> Result<ParryParameters, CliError> {
        match (&self.t, &self.nsp) {
            (Some(t), None) => Ok(ParryParameters::simple(t.clone())?),
            (None, Some(pq)) => match pq.as_slice() {
                &[p, q] => Ok(ParryParameters::non_simple_binary(p, q)?),
                _ => Err(CliError::Input(format!(
                    "--nsp expects two values p,q, got {}",
                    pq.len()
                ))),
            },
            _ => Err(CliError::Input("give exactly one of --t and --nsp".into())),
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LengthArgs {
    /// Prefix length: an integer or an expression such as U6+9 or Z5-1.
    #[arg(long)]
    len: Option<String>,

    /// Use the prefix u_n = φⁿ(0).
    #[arg(long)]
    level: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of the fixed point.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        length: LengthArgs,
    },
    /// Compute the attractor of a prefix.
    Attractor {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        length: LengthArgs,
        #[arg(long, value_enum, default_value_t = Theorem::Auto)]
        theorem: Theorem,
        /// Check the set with the independent verifier.
        #[arg(long)]
        verify: bool,
    },
    /// Check whether positions form an attractor of a word.
    Verify {
        /// File holding the word, or `-` for stdin.
        #[arg(long)]
        word: PathBuf,
        /// Comma-separated 0-based positions.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Verify the general construction over a range of parameters.
    Sweep {
        #[arg(long)]
        t_max: u32,
        #[arg(long)]
        m_max: usize,
        /// Check every prefix length up to U_levels.
        #[arg(long)]
        levels: usize,
        /// Also compare against exhaustive search for lengths up to this.
        #[arg(long)]
        minimality_len: Option<usize>,
    },
    /// Convert between positions and β-integer expansions.
    Fabre {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        query: FabreQuery,
    },
    /// The base β, its polynomial, the gap lengths and d*(1).
    Beta {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FabreQuery {
    #[arg(long)]
    pos: Option<u64>,
    /// Most-significant-first digits, comma-separated if any exceeds 9.
    #[arg(long)]
    digits: Option<String>,
}

pub struct Context {
    pub format: Option<Format>,
    pub quiet: bool,
    pub max_word: usize,
}

impl Context {
    pub fn engine(&self, params: ParryParameters) -> Result<PrefixEngine, CliError> {
        Ok(PrefixEngine::new(params)?.with_max_len(self.max_word))
    }

    pub fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    if cli.max_word == 0 {
        return Err(CliError::Input("--max-word must be positive".into()));
    }
    let ctx = Context {
        format: cli.format,
        quiet: cli.quiet,
        max_word: cli.max_word,
    };
    match cli.command {
        Command::Gen { params, length } => commands::gen(&ctx, &params, &length, out),
        Command::Attractor {
            params,
            length,
            theorem,
            verify,
        } => commands::attractor(&ctx, &params, &length, theorem, verify, out),
        Command::Verify { word, gamma } => commands::verify(&ctx, &word, &gamma, out),
        Command::Sweep {
            t_max,
            m_max,
            levels,
            minimality_len,
        } => commands::sweep(&ctx, t_max, m_max, levels, minimality_len, out),
        Command::Fabre { params, query } => commands::fabre(&ctx, &params, &query, out),
        Command::Beta { params } => commands::beta(&ctx, &params, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if let Err(e) = out.flush() {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
