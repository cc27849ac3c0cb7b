//! The `hm-forge` command line. Exit codes: 0 ok, 1 a verifier rejected
//! the result, 2 bad configuration or I/O.

mod commands;
pub mod config;
pub mod export;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use export::{export_graph, EdgeDoc, Format, GraphDoc};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn config(e: impl std::fmt::Display) -> Self {
        CliError::Config(e.to_string())
    }
}

/// What a subcommand hands back for printing: a JSON document, its human
/// rendering, and whether every requested check passed.
pub struct Outcome {
    pub json: serde_json::Value,
    pub human: String,
    pub ok: bool,
}

#[derive(Debug, Parser)]
#[command(name = "hm-forge", version, about = "Finite-scale Hajnal–Máté graph workbench")]
pub struct Cli {
    /// Flat `key = value` file supplying defaults for this subcommand's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Print the machine-readable JSON result instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct UniverseArgs {
    /// Number of ω-blocks: the universe is ω·M.
    #[arg(long)]
    pub m: u64,
    /// Stored ladder prefix width W.
    #[arg(long)]
    pub w: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LadderKind {
    Seeded,
    Canonical,
    Rich,
    File,
}

#[derive(Debug, Clone, Args)]
pub struct LadderArgs {
    #[arg(long, value_enum, default_value = "seeded")]
    pub ladders: LadderKind,
    /// For `--ladders rich`: one comma-separated finite set of ordinals per line.
    #[arg(long, value_name = "FILE")]
    pub family: Option<PathBuf>,
    /// For `--ladders file`: a ladder map as written by the build commands.
    #[arg(long, value_name = "FILE")]
    pub ladder_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HmArgs {
    /// Specker width n.
    #[arg(long)]
    pub n: usize,
    /// Specker offset s.
    #[arg(long)]
    pub s: usize,
    /// Steps per limit, K_max.
    #[arg(long = "k-max", visible_alias = "kmax", default_value_t = 12)]
    pub k_max: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Disjoint-type algebra.
    Types {
        #[command(subcommand)]
        op: TypesOp,
    },
    /// Materialize a Specker graph and inspect its odd cycles and coloring.
    Specker(SpeckerArgs),
    /// Build the Cohen-stream HM graph on the limits of ω·M.
    BuildHm(BuildHmArgs),
    /// Build the tree HM graph over a family of branches.
    BuildTreeHm(BuildTreeArgs),
    /// Build the labeled slow-growth HM graph and sample its growth.
    BuildGrowth(BuildGrowthArgs),
    /// Re-run the verifiers on a saved graph.
    Verify(VerifyArgs),
    /// Exact chromatic number of a saved graph or a Specker graph.
    Chromatic(ChromaticArgs),
    /// Growth and decomposition samples on a saved labeled graph.
    GrowthReport(GrowthReportArgs),
    /// Disjoint type guessing and the anti-guessing poset.
    Guess {
        #[command(subcommand)]
        op: GuessOp,
    },
    /// Convert a saved graph between JSON and DOT.
    Export(ExportArgs),
}

#[derive(Debug, Subcommand)]
pub enum TypesOp {
    /// Depth of a type.
    Depth { ty: String },
    /// Width n of a type of length 2n.
    Width { ty: String },
    /// The type with roles of the two sets swapped.
    Opposite { ty: String },
    /// Concatenation of two types.
    Concat { a: String, b: String },
    /// The type of two disjoint equal-size sets of ordinals, comma-separated.
    Of { a: String, b: String },
    /// The Specker type t^n_s.
    Specker { n: usize, s: usize },
    /// Canonical natural-number sets realizing a type.
    Realize { ty: String },
    /// Every type of width n.
    List { n: usize },
}

#[derive(Debug, Args)]
pub struct SpeckerArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    /// Ground set size N.
    #[arg(long)]
    pub points: usize,
    /// Longest odd cycle searched for; defaults to 2s+1.
    #[arg(long)]
    pub odd_girth: Option<usize>,
    /// Also compute the exact chromatic number.
    #[arg(long)]
    pub chromatic: bool,
    /// Estimate f_G(k) for this k (connected subgraphs only).
    #[arg(long)]
    pub fg: Option<usize>,
    /// Largest subgraph size tried by `--fg`.
    #[arg(long, default_value_t = 10)]
    pub fg_cap: usize,
    /// Search sampled subgraphs instead of materializing.
    #[arg(long)]
    pub sample: bool,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 500)]
    pub max_size: usize,
    /// Seed for `--sample`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = crate::coloring::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the graph here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BuildHmArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    #[command(flatten)]
    pub ladders: LadderArgs,
    #[command(flatten)]
    pub hm: HmArgs,
    /// Seeds both the stream and seeded ladders.
    #[arg(long)]
    pub seed: u64,
    /// Explicit stream prefix, comma-separated.
    #[arg(long)]
    pub stream_prefix: Option<String>,
    /// Pin the first LEN seeded stream values as the prefix.
    #[arg(long, value_name = "LEN", conflicts_with = "stream_prefix")]
    pub pin: Option<usize>,
    #[arg(long, default_value_t = crate::hmbuild::Stream::DEFAULT_BASE)]
    pub stream_base: u64,
    #[arg(long, default_value_t = crate::hmbuild::Stream::DEFAULT_SLOPE)]
    pub stream_slope: u64,
    /// Coloring of the limits (`ordinal = k` lines, optional `default = k`);
    /// extends the prefix so the build gets an f-monochromatic edge.
    #[arg(long, value_name = "FILE")]
    pub inject_f: Option<PathBuf>,
    /// `all`, `none`, or a comma list of sparseness, special-cycle,
    /// odd-cycle, homomorphism, uncovered, replay.
    #[arg(long, default_value = "all")]
    pub verify: String,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BuildTreeArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    #[command(flatten)]
    pub ladders: LadderArgs,
    #[command(flatten)]
    pub hm: HmArgs,
    #[arg(long)]
    pub seed: u64,
    /// Number of random branches.
    #[arg(long, default_value_t = 9)]
    pub branches: usize,
    /// Random branch values lie below this.
    #[arg(long, default_value_t = 4)]
    pub colors: u64,
    /// Extra branches, one comma-separated line each.
    #[arg(long, value_name = "FILE")]
    pub branch_file: Option<PathBuf>,
    /// Add the diagonal branch of a coloring: `sum-mod:Q` or `const:V`.
    #[arg(long)]
    pub diagonal: Option<String>,
    #[arg(long, default_value = "all")]
    pub verify: String,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BuildGrowthArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    #[command(flatten)]
    pub ladders: LadderArgs,
    #[arg(long)]
    pub seed: u64,
    /// Target f(0), f(1), …, comma-separated.
    #[arg(long, conflicts_with = "named")]
    pub f: Option<String>,
    /// Read f off the stream, values capped at CAP.
    #[arg(long, value_name = "CAP")]
    pub named: Option<u64>,
    #[arg(long = "k-max", visible_alias = "kmax", default_value_t = 2)]
    pub k_max: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::coloring::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Graph JSON with ordinal vertices.
    #[arg(long)]
    pub graph: PathBuf,
    /// Ladder map JSON.
    #[arg(long)]
    pub ladder_file: PathBuf,
    #[command(flatten)]
    pub hm: HmArgs,
    /// Build trace to replay against the graph.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value = "all")]
    pub verify: String,
}

#[derive(Debug, Args)]
pub struct ChromaticArgs {
    /// Graph JSON (any vertex spellings).
    #[arg(long, required_unless_present = "ty")]
    pub graph: Option<PathBuf>,
    /// Type whose graph over `--points` points is colored.
    #[arg(long = "type", requires = "points")]
    pub ty: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = crate::coloring::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the vertex → color map here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GrowthReportArgs {
    /// Labeled graph JSON written by build-growth.
    #[arg(long)]
    pub graph: PathBuf,
    /// f(0), f(1), … used for the build, comma-separated.
    #[arg(long)]
    pub f: String,
    #[arg(long = "k-max", visible_alias = "kmax")]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::coloring::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the CSV here instead of printing it.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GuessArgs {
    #[command(flatten)]
    pub universe: UniverseArgs,
    #[command(flatten)]
    pub ladders: LadderArgs,
    /// Seeds seeded ladders.
    #[arg(long)]
    pub seed: u64,
    /// The type sequence t_0, t_1, …, comma-separated.
    #[arg(long)]
    pub types: String,
    /// Cycle the type list out to this length.
    #[arg(long)]
    pub repeat: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum GuessOp {
    /// Search for an f-monochromatic pair realizing its type.
    Check {
        #[command(flatten)]
        common: GuessArgs,
        /// `ordinal = k` lines, optional `default = k`.
        #[arg(long, value_name = "FILE")]
        f: Option<PathBuf>,
    },
    /// Search for a limit with many guessing partners.
    Strong {
        #[command(flatten)]
        common: GuessArgs,
        #[arg(long, value_name = "FILE")]
        f: Option<PathBuf>,
        /// Number of partners required.
        #[arg(long, default_value_t = 2)]
        partners: usize,
    },
    /// Check a condition (JSON) against the poset clauses.
    Validate {
        #[command(flatten)]
        common: GuessArgs,
        #[arg(long)]
        condition: PathBuf,
    },
    /// Extend a condition over every limit and check the total coloring.
    Antibuild {
        #[command(flatten)]
        common: GuessArgs,
        /// Starting condition JSON; empty if absent.
        #[arg(long)]
        start: Option<PathBuf>,
        /// Write the final condition here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where the config file's flags are spliced in: after the (nested)
/// subcommand name.
fn subcommand_depth(args: &[OsString]) -> usize {
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    match args.iter().position(|a| names.iter().any(|n| a == n.as_str())) {
        Some(i) if args[i] == "types" || args[i] == "guess" => i + 2,
        Some(i) => i + 1,
        None => args.len(),
    }
}

fn parse(args: Vec<OsString>) -> Result<Cli, clap::Error> {
    let cmd = Cli::command().mut_subcommands(|s| s.args_override_self(true).mut_subcommands(|s| s.args_override_self(true)));
    let matches = cmd.try_get_matches_from(args)?;
    Cli::from_arg_matches(&matches)
}

/// Runs the command line, printing to `out` and `err`; returns the exit code.
pub fn run_with(args: impl IntoIterator<Item = impl Into<OsString>>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let depth = subcommand_depth(&args);
    let args = match config::merge_config(args, depth) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "hm-forge: {e}");
            return 2;
        }
    };
    let cli = match parse(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(outcome) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                outcome.human
            };
            let _ = out.write_all(text.as_bytes());
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "hm-forge: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString>>) -> i32 {
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("hm-forge").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn types_depth() {
        assert_eq!(run(&["types", "depth", "t^5_2"]), (0, "2\n".to_string(), String::new()));
        let (code, out, _) = run(&["types", "specker", "5", "2", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains("0001010111"));
    }

    #[test]
    fn bad_input_exits_2() {
        assert_eq!(run(&["types", "depth", "0110x"]).0, 2);
        assert_eq!(run(&["no-such-command"]).0, 2);
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        std::fs::write(&cfg, "m = 16\nw = 8\nn = 3\ns = 1\nk-max = 6\nseed = 4\nverify = none\n").unwrap();
        let out = dir.path().join("o");
        let (code, stdout, err) = run(&[
            "build-hm",
            "--config",
            cfg.to_str().unwrap(),
            "--n",
            "9",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 2, "{stdout}{err}");
        assert!(err.contains("n"), "{err}");
        let (code, ..) = run(&["build-hm", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.join("graph.json").exists());
    }
}
