//! `apsum` — exact additive combinatorics from the command line.
//!
//! Every subcommand reads rational sets (and optionally graphs) from text
//! files, runs one library operation, and prints a flat report: a
//! `schema=1` line followed by `key=value` lines, or a two-row CSV table
//! with `--csv`. All arithmetic is exact; all randomness is seeded; output
//! bytes depend only on the inputs and flags, never on thread count or
//! timing.
//!
//! Exit status: 0 on success, 1 when an input is unreadable or an
//! operation's precondition fails, 2 for command-line usage errors.

mod commands;
mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use apsum_core::exact::{parse_rat, Rat};
use apsum_core::pattern::{RatioPolicy, ThresholdRule};

fn rat_value(text: &str) -> Result<Rat, String> {
    parse_rat(text)
}

fn policy_value(text: &str) -> Result<RatioPolicy, String> {
    match text {
        "positive" => Ok(RatioPolicy::Positive),
        "nonzero" => Ok(RatioPolicy::Nonzero),
        other => Err(format!("expected positive or nonzero, got `{other}`")),
    }
}

fn rule_value(text: &str) -> Result<ThresholdRule, String> {
    let (kind, fraction) = text
        .split_once(':')
        .ok_or_else(|| format!("expected auto:<fraction> or fixed:<fraction>, got `{text}`"))?;
    let fraction = parse_rat(fraction)?;
    match kind {
        "auto" => Ok(ThresholdRule::Auto { fraction }),
        "fixed" => Ok(ThresholdRule::Fixed(fraction)),
        other => Err(format!("expected auto or fixed, got `{other}`")),
    }
}

#[derive(Parser)]
#[command(
    name = "apsum",
    version,
    about = "Exact sumsets, arithmetic progressions, and lattice patterns over rational sets"
)]
struct Cli {
    /// Render the report as CSV: one header row, one value row.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Largest Cartesian power, in cells, any command may materialize.
    #[arg(long, global = true, value_name = "CELLS", default_value_t = 10_000_000)]
    max_cells: u64,
    #[command(subcommand)]
    command: Command,
}

// One Command value exists per process, so the size spread between
// argument structs is irrelevant; boxing them would only fight the
// derive.
#[allow(clippy::large_enum_variant)]
#[derive(Subcommand)]
enum Command {
    /// Generate a seeded set/graph instance and write it to files.
    Gen(GenArgs),
    /// Sumset of a set: full A+B, along a graph, or iterated kA-lA.
    Sumset(SumsetArgs),
    /// Difference set of a set: full A-B, or along a graph.
    Diffset(DiffsetArgs),
    /// Count k-term arithmetic progressions by exhaustive scan.
    Aps(ApsArgs),
    /// Drop edges whose differences are unpopular, keeping a 1-eps fraction.
    Refine(RefineArgs),
    /// Enumerate axis-tied triangles over a set-and-graph arrangement.
    Triangles(TrianglesArgs),
    /// Run the 3-term pipeline: refine, arrange, triangulate, project.
    Pipeline3(Pipeline3Args),
    /// Print a lattice pattern: vertices, facet normals, shift check.
    Pattern(PatternArgs),
    /// Enumerate homothetic copies of a pattern inside a Cartesian power.
    Copies(CopiesArgs),
    /// Run the general pipeline: copies, popularity, richness, simplices.
    Pipelined(PipelinedArgs),
    /// Verify the sumset-growth inequality, singly or as a seeded battery.
    Pluennecke(PluenneckeArgs),
    /// Count parallel hyperplanes covering A^d, or run the doubling gate.
    Cover(CoverArgs),
    /// Fit copy-count growth over increasing interval hosts.
    Scaling(ScalingArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    /// Arithmetic progression: start, start+step, ...
    Ap,
    /// Generalized progression: start + sum of c_i * steps[i], 0 <= c_i < dims[i].
    Gap,
    /// Uniform random subset of {0, ..., max}.
    Random,
    /// Exactly the values listed.
    Explicit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    /// Every pair, no loops.
    Complete,
    /// Every pair plus every loop.
    CompleteLoops,
    /// Each pair kept independently with probability --p.
    Random,
    /// Keep pairs whose sums land among the --kept-sums smallest sums.
    SumRestricted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    /// The two-point pattern {0, 1} on the line.
    Segment,
    /// d+1 points spanning a d-simplex with collinear projections.
    Simplex,
    /// The companion grid holding a parallel section of every facet.
    Grid,
}

#[derive(Args)]
struct GenArgs {
    /// Set family to build.
    #[arg(long, value_enum)]
    set_kind: SetKind,
    /// First element (ap required; gap defaults to 0).
    #[arg(long, value_parser = rat_value, allow_hyphen_values = true)]
    start: Option<Rat>,
    /// Common difference (ap sets).
    #[arg(long, value_parser = rat_value, allow_hyphen_values = true)]
    step: Option<Rat>,
    /// Element count (ap sets).
    #[arg(long)]
    len: Option<usize>,
    /// Comma-separated direction steps (gap sets).
    #[arg(long, value_delimiter = ',', value_parser = rat_value, allow_hyphen_values = true)]
    steps: Option<Vec<Rat>>,
    /// Comma-separated direction lengths (gap sets).
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Draw from 0..=max (random sets).
    #[arg(long)]
    max: Option<u64>,
    /// Element count (random sets).
    #[arg(long)]
    size: Option<usize>,
    /// Comma-separated elements (explicit sets).
    #[arg(long, value_delimiter = ',', value_parser = rat_value, allow_hyphen_values = true)]
    values: Option<Vec<Rat>>,
    /// Graph family over the set's index range.
    #[arg(long, value_enum, default_value_t = GraphKind::Complete)]
    graph_kind: GraphKind,
    /// Pair-keeping probability (random graphs).
    #[arg(long, value_parser = rat_value)]
    p: Option<Rat>,
    /// How many of the smallest pair sums survive (sum-restricted graphs).
    #[arg(long)]
    kept_sums: Option<usize>,
    /// Seed driving every random draw.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Set file to write.
    #[arg(long, value_name = "PATH")]
    out_set: PathBuf,
    /// Graph file to write.
    #[arg(long, value_name = "PATH")]
    out_graph: Option<PathBuf>,
}

#[derive(Args)]
struct SumsetArgs {
    /// Set file for A.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Second operand B (defaults to A).
    #[arg(long, value_name = "PATH", conflicts_with_all = ["graph", "k", "l"])]
    b: Option<PathBuf>,
    /// Only sum pairs joined in this graph: a file, complete,
    /// complete_loops, or random p=<rational> seed=<u64>.
    #[arg(long, value_name = "SPEC", conflicts_with_all = ["k", "l"])]
    graph: Option<String>,
    /// Iterated mode: copies of A added.
    #[arg(long)]
    k: Option<usize>,
    /// Iterated mode: copies of A subtracted.
    #[arg(long)]
    l: Option<usize>,
    /// List the resulting elements.
    #[arg(long)]
    elements: bool,
}

#[derive(Args)]
struct DiffsetArgs {
    /// Set file for A.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Second operand B in A-B (defaults to A).
    #[arg(long, value_name = "PATH", conflicts_with = "graph")]
    b: Option<PathBuf>,
    /// Only subtract pairs joined in this graph (file or keyword).
    #[arg(long, value_name = "SPEC")]
    graph: Option<String>,
    /// List the resulting elements.
    #[arg(long)]
    elements: bool,
}

#[derive(Args)]
struct ApsArgs {
    /// Set file to scan.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Progression length, at least 3.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// List each progression's terms.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args)]
struct RefineArgs {
    /// Set file paired with the graph.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Graph to refine (file or keyword).
    #[arg(long, value_name = "SPEC")]
    graph: String,
    /// Largest edge fraction the refinement may drop.
    #[arg(long, value_parser = rat_value)]
    epsilon: Rat,
    /// Fixed popularity cutoff alpha; omitted, the largest safe cutoff
    /// is found automatically.
    #[arg(long, value_parser = rat_value)]
    alpha: Option<Rat>,
}

#[derive(Args)]
struct TrianglesArgs {
    /// Set file paired with the graph.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Graph supplying the arrangement's points (file or keyword).
    #[arg(long, value_name = "SPEC")]
    graph: String,
    /// List each triangle: base-left, base-right, apex, orientation.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args)]
struct Pipeline3Args {
    /// Set file paired with the graph.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Starting graph (file or keyword).
    #[arg(long, value_name = "SPEC")]
    graph: String,
    /// Edge fraction the refinement stage may drop.
    #[arg(long, value_parser = rat_value)]
    epsilon: Rat,
    /// List the distinct projected progressions with multiplicities.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args)]
struct PatternArgs {
    /// Which pattern family to print.
    #[arg(long, value_enum)]
    shape: Shape,
    /// Ambient dimension (the segment is always 1-dimensional).
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args)]
struct CopiesArgs {
    /// Set file whose Cartesian power hosts the copies.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Pattern family to enumerate.
    #[arg(long, value_enum)]
    shape: Shape,
    /// Ambient dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Which ratios count: positive only, or any nonzero.
    #[arg(long, value_parser = policy_value, default_value = "nonzero")]
    policy: RatioPolicy,
    /// Also count holders carrying at least this many copies.
    #[arg(long)]
    threshold: Option<u64>,
    /// Cross-check against the point-set matcher (materializes A^d,
    /// subject to --max-cells).
    #[arg(long)]
    check: bool,
    /// List every copy as ratio;holder coordinates.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args)]
struct PipelinedArgs {
    /// Set file to run the pipeline on.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Simplex dimension d; projected progressions have d+1 terms.
    #[arg(long)]
    dim: usize,
    /// Ratio policy for the grid-copy stage.
    #[arg(long, value_parser = policy_value, default_value = "nonzero")]
    grid_policy: RatioPolicy,
    /// Ratio policy for the final simplex enumeration.
    #[arg(long, value_parser = policy_value, default_value = "positive")]
    simplex_policy: RatioPolicy,
    /// Popular-holder cutoff: auto:<fraction> keeps the largest cutoff
    /// retaining that fraction of copies; fixed:<fraction> is a fraction
    /// of |A|.
    #[arg(long, value_parser = rule_value, default_value = "auto:1/2")]
    holders: ThresholdRule,
    /// Rich-class cutoff: auto:<fraction> as above; fixed:<fraction> is a
    /// fraction of |A|^(d-1).
    #[arg(long, value_parser = rule_value, default_value = "auto:1/2")]
    rich: ThresholdRule,
    /// List the distinct projected progressions with multiplicities.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args)]
struct PluenneckeArgs {
    /// Set file for the reference set A.
    #[arg(long, value_name = "PATH", required_unless_present = "battery")]
    a: Option<PathBuf>,
    /// Set file for B (defaults to A).
    #[arg(long, value_name = "PATH")]
    b: Option<PathBuf>,
    /// Copies of B added on the left-hand side.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Copies of B subtracted on the left-hand side.
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Instead, verify this many seeded random instances (which draw
    /// their own sizes and exponents).
    #[arg(long, value_name = "COUNT", conflicts_with_all = ["a", "b"])]
    battery: Option<usize>,
    /// Battery seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CoverArgs {
    /// Set file for A.
    #[arg(long, value_name = "PATH")]
    set: PathBuf,
    /// Hyperplane normal, comma-separated integers.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        value_name = "C1,C2,...",
        conflicts_with_all = ["dim", "cap"]
    )]
    normal: Option<Vec<i64>>,
    /// Gate mode: simplex dimension.
    #[arg(long, requires = "cap")]
    dim: Option<usize>,
    /// Gate mode: largest admissible doubling ratio |A+A|/|A|.
    #[arg(long, value_parser = rat_value, requires = "dim")]
    cap: Option<Rat>,
}

#[derive(Args)]
struct ScalingArgs {
    /// Pattern family to count.
    #[arg(long, value_enum)]
    shape: Shape,
    /// Ambient dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Comma-separated interval lengths used as host base sets.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u64>,
    /// Which ratios count.
    #[arg(long, value_parser = policy_value, default_value = "positive")]
    policy: RatioPolicy,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::dispatch(&cli.command, cli.max_cells) {
        Ok(report) => {
            use std::io::Write as _;
            // A reader that hangs up early (broken pipe) is not an error.
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", report.render(cli.csv));
            let _ = stdout.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
