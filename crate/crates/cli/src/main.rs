use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hyperdual::{
    check_additional_key, check_identification, coterie_verdict, decide_dual_with, decompose_traced,
    enumerate_minimal_keys, enumerate_transversals, mine_all, require_precheck, verify_fail_path, BorderState,
    DecideOptions, DecomposeMode, DecomposeOptions, DualityInstance, Hypergraph, Identification, KeyCheck,
    PathDescriptor, Relation, RunStats, Threshold, VertexSet,
};

const BUDGET_VAR: &str = "HYPERDUAL_LITERAL_BUDGET";

#[derive(Parser)]
#[command(name = "hyperdual", version, about = "Hypergraph dualization and its applications")]
struct Cli {
    /// How the decomposition tree is built
    #[arg(long, global = true, value_enum, default_value_t = Mode::Dfs)]
    mode: Mode,
    /// Print run statistics as JSON on stderr
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dfs,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Jsonl,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether H is the transversal hypergraph of G
    Check { g: PathBuf, h: PathBuf },
    /// Print the decomposition tree of a prechecked pair
    Tree {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, value_enum, default_value_t = TreeFormat::Jsonl)]
        format: TreeFormat,
    },
    /// Whether the node at --path exists and is a FAIL leaf
    VerifyPath {
        g: PathBuf,
        h: PathBuf,
        /// Comma-separated child indices, e.g. 1,2 (empty for the root)
        #[arg(long, allow_hyphen_values = true)]
        path: String,
    },
    /// List the minimal transversals of G, one per line
    Transversals {
        g: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compute both frequent-itemset borders of a 0/1 CSV relation
    Mine {
        relation: PathBuf,
        #[command(flatten)]
        threshold: ThresholdArgs,
        /// Write the borders to <PREFIX>.maximal.txt and <PREFIX>.minimal.txt
        #[arg(long)]
        output_prefix: Option<PathBuf>,
    },
    /// Check that two itemset families are the complete borders
    VerifyItemsets {
        relation: PathBuf,
        #[command(flatten)]
        threshold: ThresholdArgs,
        /// Maximal frequent itemsets, one per line by item name
        #[arg(long)]
        frequent: PathBuf,
        /// Minimal infrequent itemsets, one per line by item name
        #[arg(long)]
        infrequent: PathBuf,
    },
    /// List the minimal keys of a CSV relation
    Keys { relation: PathBuf },
    /// Check that a list of minimal keys is complete
    KeyComplete { relation: PathBuf, keys: PathBuf },
    /// Check that a coterie is non-dominated
    Coterie { h: PathBuf },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct ThresholdArgs {
    /// Frequent means contained in more than this many tuples
    #[arg(long)]
    threshold: Option<usize>,
    /// Threshold as a fraction of the tuple count, rounded up
    #[arg(long)]
    support: Option<f64>,
}

impl ThresholdArgs {
    fn resolve(&self, m: &Relation<bool>) -> hyperdual::Result<Threshold> {
        match (self.threshold, self.support) {
            (Some(z), _) => Threshold::new(z, m),
            (None, Some(f)) => Threshold::from_fraction(f, m),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

/// Whether the command's answer was the affirmative one.
type Answer = bool;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Answer> {
    match &cli.command {
        Command::Check { g, h } => {
            let instance = read_pair(g, h)?;
            let decision = decide_dual_with(instance.g(), instance.h(), decide_options(cli)?)?;
            println!("{}", decision.verdict.to_json());
            report_stats(cli, &decision.stats);
            Ok(decision.verdict.is_dual())
        }
        Command::Tree { g, h, format } => {
            let instance = read_pair(g, h)?;
            require_precheck(&instance)?;
            let mut stats = RunStats::default();
            let tree = decompose_traced(&instance, decompose_options(cli)?, &mut stats)?;
            match format {
                TreeFormat::Jsonl => print!("{}", tree.to_jsonl()),
                TreeFormat::Dot => print!("{}", tree.to_dot()),
            }
            report_stats(cli, &stats);
            Ok(true)
        }
        Command::VerifyPath { g, h, path } => {
            let instance = read_pair(g, h)?;
            let pi = PathDescriptor::parse(path)?;
            let fail = verify_fail_path(&instance, &pi)?;
            println!("{}", serde_json::json!({ "path": pi.indices(), "fail": fail }));
            Ok(fail)
        }
        Command::Transversals { g, limit } => {
            let g = read_hypergraph(g)?;
            for t in enumerate_transversals(&g, *limit)? {
                println!("{}", hyperdual::hypergraph::edge_line(&t?));
            }
            Ok(true)
        }
        Command::Mine {
            relation,
            threshold,
            output_prefix,
        } => {
            let m = read_boolean(relation)?;
            let z = threshold.resolve(&m)?;
            let borders = mine_all(&m, z)?;
            let plus = named_listing(&m, &borders.maximal_frequent);
            let minus = named_listing(&m, &borders.minimal_infrequent);
            match output_prefix {
                Some(prefix) => {
                    write(&with_suffix(prefix, "maximal.txt"), &plus)?;
                    write(&with_suffix(prefix, "minimal.txt"), &minus)?;
                }
                None => {
                    print!("# maximal frequent\n{plus}# minimal infrequent\n{minus}");
                }
            }
            println!("{}", borders.summary_json());
            Ok(true)
        }
        Command::VerifyItemsets {
            relation,
            threshold,
            frequent,
            infrequent,
        } => {
            let m = read_boolean(relation)?;
            let z = threshold.resolve(&m)?;
            let state = BorderState {
                g: read_named(&m, infrequent)?,
                h: read_named(&m, frequent)?,
            };
            match check_identification(&m, z, &state)? {
                Identification::Complete => {
                    println!("complete");
                    Ok(true)
                }
                Identification::Incomplete(w) => {
                    println!("incomplete: {}", m.format_named(&w));
                    Ok(false)
                }
            }
        }
        Command::Keys { relation } => {
            let r = read_table(relation)?;
            for key in enumerate_minimal_keys(&r)? {
                println!("{}", r.format_named(&key?));
            }
            Ok(true)
        }
        Command::KeyComplete { relation, keys } => {
            let r = read_table(relation)?;
            let keys = read_named(&r, keys)?;
            match check_additional_key(&r, &keys)? {
                KeyCheck::Complete => {
                    println!("complete");
                    Ok(true)
                }
                KeyCheck::NewKey(k) => {
                    println!("missing key: {}", r.format_named(&k));
                    Ok(false)
                }
            }
        }
        Command::Coterie { h } => {
            let h = read_hypergraph(h)?;
            let verdict = coterie_verdict(&h)?;
            match &verdict.minimal_witness {
                None if verdict.is_dual() => println!("non-dominated"),
                Some(w) => println!("dominated: {}", hyperdual::hypergraph::edge_line(w)),
                None => bail!("no witness for a dominated coterie"),
            }
            Ok(verdict.is_dual())
        }
    }
}

fn decompose_options(cli: &Cli) -> anyhow::Result<DecomposeOptions> {
    let mut options = DecomposeOptions {
        mode: match cli.mode {
            Mode::Dfs => DecomposeMode::Dfs,
            Mode::Literal => DecomposeMode::Literal,
        },
        ..Default::default()
    };
    if let Ok(raw) = std::env::var(BUDGET_VAR) {
        options.literal_budget = match raw.trim().parse::<u128>() {
            Ok(n) if n > 0 => n,
            _ => bail!("{BUDGET_VAR} must be a positive integer, got {raw:?}"),
        };
    }
    Ok(options)
}

fn decide_options(cli: &Cli) -> anyhow::Result<DecideOptions> {
    Ok(DecideOptions {
        tree: decompose_options(cli)?,
    })
}

fn report_stats(cli: &Cli, stats: &RunStats) {
    if cli.stats {
        eprintln!("{}", serde_json::to_string(stats).expect("stats serialize"));
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

fn read_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    Hypergraph::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Both hypergraphs over the union of their universes.
fn read_pair(g: &Path, h: &Path) -> anyhow::Result<DualityInstance> {
    Ok(DualityInstance::over_joint_universe(
        &read_hypergraph(g)?,
        &read_hypergraph(h)?,
    ))
}

fn read_boolean(path: &Path) -> anyhow::Result<Relation<bool>> {
    Relation::parse_boolean(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_table(path: &Path) -> anyhow::Result<Relation<String>> {
    Relation::parse_table(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_named<T>(r: &Relation<T>, path: &Path) -> anyhow::Result<Hypergraph> {
    r.parse_named_family(&read(path)?)
        .with_context(|| format!("in {}", path.display()))
}

fn named_listing<T>(r: &Relation<T>, family: &Hypergraph) -> String {
    family
        .edges()
        .iter()
        .map(|e: &VertexSet| r.format_named(e) + "\n")
        .collect()
}
