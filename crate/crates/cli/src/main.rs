//! `witt2rep`: class counts, degree multisets, ring comparisons and lemma
//! checks for matrix groups over finite local rings.
//!
//! Exit status: 0 all asserted verdicts pass, 1 usage error, 2 verdict
//! failure, 3 refusal on a size bound, 4 internal invariant violation.

mod commands;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use witt2rep::clifford::CliffordError;
use witt2rep::group::GroupError;

#[derive(Parser, Debug)]
#[command(name = "witt2rep", version, about = "Representation counting over finite local rings of length two")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Conjugacy classes of G(R): count, sizes, centraliser orders.
    Classes(Target),
    /// Irreducible character degrees of G(R) from its character table.
    Degrees(Target),
    /// Compare G(F_q[t]/t^2) with G(W_2(F_q)) orbit by orbit.
    Compare(Target),
    /// Kernel, twist, stabiliser and counting checks for one length-two ring.
    Verify(Target),
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Group scheme, e.g. `gl(2)`, `sl(2)`, `sp(4)`.
    #[arg(long)]
    pub scheme: String,
    /// Ring descriptor (`zmod(2^3)`, `truncpoly(gf(2),r=3)`, `witt2(gf(4))`), or
    /// `equal` / `mixed` together with `--q` and `--r`.
    #[arg(long)]
    pub ring: Option<String>,
    /// Residue field order.
    #[arg(long)]
    pub q: Option<u32>,
    /// Ring length.
    #[arg(long)]
    pub r: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    /// Directory for cached groups, tables and reports.
    #[arg(long, global = true)]
    pub cache_dir: Option<std::path::PathBuf>,
    /// Refuse groups larger than this.
    #[arg(long, global = true, default_value_t = witt2rep::group::DEFAULT_MAX_ORDER)]
    pub max_order: u128,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Csv,
    Text,
}

impl OutFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutFormat::Json => "json",
            OutFormat::Csv => "csv",
            OutFormat::Text => "text",
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verdict(String),
    Bound(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verdict(_) => 2,
            Failure::Bound(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }
}

impl From<CliffordError> for Failure {
    fn from(e: CliffordError) -> Self {
        let msg = e.to_string();
        if e.is_bound_refusal() {
            return Failure::Bound(msg);
        }
        match e {
            CliffordError::Ring(_) | CliffordError::Group(GroupError::Parse(_) | GroupError::Unsupported(_)) => {
                Failure::Usage(msg)
            }
            _ => Failure::Invariant(msg),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        CliffordError::from(e).into()
    }
}

impl From<witt2rep::ring::RingError> for Failure {
    fn from(e: witt2rep::ring::RingError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(w) = cli.global.workers {
        #[cfg(feature = "parallel")]
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global() {
            eprintln!("error: cannot configure {w} workers: {e}");
            return ExitCode::from(1);
        }
        #[cfg(not(feature = "parallel"))]
        let _ = w;
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.exit_code != 0 {
                if let Some(msg) = &outcome.failure {
                    eprintln!("verdict failure: {msg}");
                }
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => format!("error: {m}"),
                Failure::Verdict(m) => format!("verdict failure: {m}"),
                Failure::Bound(m) => format!("refused: {m}"),
                Failure::Invariant(m) => format!("internal invariant violated: {m}"),
            };
            eprintln!("{msg}");
            ExitCode::from(f.code())
        }
    }
}
