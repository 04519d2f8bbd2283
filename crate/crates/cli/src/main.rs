use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod commands;
mod expect;
mod io;

#[derive(Parser, Debug)]
#[command(name = "codoku", version, about = "Sudoku variants whose regions come from Lee-metric codes")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a perfect or diameter perfect code and its palette grid.
    Construct(ConstructArgs),
    /// Enumerate every canonical Sudoku grid of a palette.
    Enumerate(EnumerateArgs),
    /// Orbit histograms of a census under symmetry groups.
    Classify(ClassifyArgs),
    /// Grids that are Sudoku grids for every code of the family.
    Special(SpecialArgs),
    /// Exhaustive minimal puzzles on every class representative.
    Minimal(MinimalArgs),
    /// Random minimal puzzles by greedy hint removal.
    Sample(SampleArgs),
    /// Difficulty scores and level counts.
    Rate(RateArgs),
    /// Bundle puzzles with region colors for the browser player.
    ExportBundle(BundleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Directory for output files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file of golden values; any mismatch with the run summary fails.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PaletteSource {
    /// Palette JSON written by `construct`.
    #[arg(long, conflicts_with = "setting")]
    pub palette: Option<PathBuf>,
    /// Built-in setting: z5, z8-i or z8-ii.
    #[arg(long)]
    pub setting: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("family").required(true).args(["perfect", "diameter"])))]
pub struct ConstructArgs {
    #[arg(long)]
    pub perfect: bool,
    #[arg(long)]
    pub diameter: bool,
    /// Diameter codes: I uses G_0, II uses G_i with i = --index.
    #[arg(long, value_enum, default_value = "I")]
    pub case: Case,
    #[arg(long, default_value_t = 1)]
    pub index: u32,
    #[arg(short, default_value_t = 1)]
    pub t: u32,
    /// Translation applied to the code, as `r,c`.
    #[arg(long, default_value = "0,0")]
    pub offset: String,
    /// Perfect codes: use the generator [2t+1 1] instead of [1 2t+1].
    #[arg(long)]
    pub swap: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub source: PaletteSource,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Census binary written by `enumerate`; enumerated on the fly if absent.
    #[arg(long)]
    pub census: Option<PathBuf>,
    #[command(flatten)]
    pub source: PaletteSource,
    /// A preset group key (see `--group help`), `all`, or generator words
    /// separated by `;`, e.g. "r; t1^3 t2".
    #[arg(long, default_value = "all")]
    pub group: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SpecialArgs {
    #[arg(long)]
    pub census: Option<PathBuf>,
    /// z5 or z8-i / z8-ii (both Z_8 settings share one family).
    #[arg(long)]
    pub setting: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct MinimalArgs {
    #[arg(long)]
    pub census: Option<PathBuf>,
    #[command(flatten)]
    pub source: PaletteSource,
    /// Group whose orbits give the class representatives.
    #[arg(long, default_value = "full")]
    pub group: String,
    /// Hint counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub census: Option<PathBuf>,
    #[command(flatten)]
    pub source: PaletteSource,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Accepted hint counts as `lo..hi` (inclusive) or a single number.
    #[arg(long, default_value = "0..64")]
    pub k: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct RateArgs {
    /// Puzzle files or directories of them.
    #[arg(long, required = true, num_args = 1..)]
    pub puzzles: Vec<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub runs: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also rewrite each puzzle with its difficulty under `--out`.
    #[arg(long)]
    pub annotate: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct BundleArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub puzzles: Vec<PathBuf>,
    /// Rate puzzles that carry no difficulty yet.
    #[arg(long, default_value_t = 100)]
    pub runs: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers;
    let result = codoku::par::with_workers(workers, move || match cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Classify(a) => commands::classify(a),
        Command::Special(a) => commands::special(a),
        Command::Minimal(a) => commands::minimal(a),
        Command::Sample(a) => commands::sample(a),
        Command::Rate(a) => commands::rate(a),
        Command::ExportBundle(a) => commands::export_bundle(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
