//! `epls`: constructors, predicates, the affine survey and refinements from
//! the command line.
//!
//! Exit status is 0 when a verdict is true or a command succeeds, 1 when a
//! verdict is false, and 2 on any error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "epls", version, about = "Extremely primitive groups and their linear spaces")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Memory budget in MiB for stabiliser chains and incidence lists.
    #[arg(long, global = true, default_value_t = 2048, value_name = "MIB")]
    pub max_memory: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a group or space from a named family.
    Construct(ConstructArgs),
    /// Evaluate a predicate on a group (and space).
    Test(TestArgs),
    /// Compare the direct test with the arithmetic classification on all
    /// affine instances up to a size.
    Survey(SurveyArgs),
    /// The linear space of a group whose two-point stabilisers behave.
    Ls(LsArgs),
    /// Refine a line-transitive space by an inner space on one line.
    Refine(RefineArgs),
    /// Check that a refinement is rebuilt from its own inner space.
    Roundtrip(RoundtripArgs),
    /// Scan orbit-union spaces of small affine groups.
    Search(SearchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Affine,
    Gscript,
    Psl2,
    Diffset,
    Ag,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Subfield exponent for `ag`.
    #[arg(long)]
    pub m: Option<u32>,
    /// Dimension for `ag`.
    #[arg(long)]
    pub n: Option<u32>,
    /// Modulus for `diffset`.
    #[arg(long = "mod", value_name = "M")]
    pub modulus: Option<usize>,
    /// Residues for `diffset`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub set: Vec<usize>,
    /// Directory for the group and space files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Ep,
    Star,
    Transverse,
    Lineblocks,
    ThreeHalves,
}

#[derive(Args, Debug)]
pub struct TestArgs {
    #[arg(long, value_enum)]
    pub predicate: Predicate,
    #[arg(long)]
    pub group: PathBuf,
    /// Space for `transverse` and `lineblocks`; the group's own line space
    /// when omitted.
    #[arg(long)]
    pub space: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SurveyArgs {
    #[arg(long)]
    pub max_points: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Allow more points than the default cap.
    #[arg(long)]
    pub force: bool,
    /// Write the JSONL records here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LsArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Append the line stabiliser report for the line through 0 and 1.
    #[arg(long)]
    pub stabilizers: bool,
}

#[derive(Args, Debug)]
pub struct RefineArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Parent space; the group's line space when omitted.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Inner space on `0..k`, point `i` being the `i`-th smallest of the line.
    #[arg(long)]
    pub inner: PathBuf,
    /// Line of the parent; its first line when omitted.
    #[arg(long, value_delimiter = ',')]
    pub line: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// The refinement to check.
    #[arg(long)]
    pub refined: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub line: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 1000)]
    pub max_points: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
