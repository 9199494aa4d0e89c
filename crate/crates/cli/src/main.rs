use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use starforest::constructions::{four_cluster_forests, k_star_forest_cover, star_decomposition, two_star_forest_cover};
use starforest::geom::{gen_convex, gen_four_cluster};
use starforest::io::{from_json, to_canonical_json};
use starforest::model::{verify_covering, verify_decomposition, Covering, Edge};
use starforest::random::{random_covering_with, RandomCoveringParams};
use starforest::recolor::{descend, make_all_supported_up_to, DescentCertificate, RecolorError};
use starforest::search::{
    decide_k_star_forest_decomposition, decide_plane_decomposition, min_k_star_forests, min_plane_star_forests,
    SearchError, SearchMode, SearchOptions,
};
use starforest::svg::{render_svg, RenderOptions};

const NODE_LIMIT_VAR: &str = "STARFOREST_NODE_LIMIT";

#[derive(Parser)]
#[command(name = "starforest", version, about = "Plane star-forest coverings of complete convex geometric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one of the explicit constructions as covering JSON.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Check a covering; exits 0 only if it is valid.
    Verify {
        file: PathBuf,
        /// Also require every edge to lie in exactly one forest.
        #[arg(long)]
        decomposition: bool,
    },
    /// Keep each edge only in its lowest-index forest.
    Project {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Make every representation of span 2..=k supported; writes the new
    /// covering and the trace.
    Recolor {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the spanning-star descent and write its certificate.
    Descend {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Replay a descent certificate against the covering it came from.
    Replay { file: PathBuf, certificate: PathBuf },
    /// Exhaustive search for the least number of forests.
    Search {
        #[command(subcommand)]
        problem: SearchProblem,
    },
    /// Draw a covering as SVG.
    Render {
        file: PathBuf,
        /// Edges to mark as absent, e.g. `2-4,1-3`.
        #[arg(long, value_delimiter = ',', value_parser = parse_edge)]
        absent: Vec<Edge>,
        #[arg(long, default_value_t = 480.0)]
        size: f64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// `n - 1` stars; `--convex` attaches convex coordinates.
    Stars {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        convex: bool,
        #[command(flatten)]
        out: Output,
    },
    /// `⌈3n/4⌉` 2-star-forests of abstract `K_n`.
    TwoStar {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// `3k` plane star-forests on four clusters of `k` points.
    FourCluster {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// `n/2 + ⌈n/(2k)⌉` k-star-forests of abstract `K_n`.
    KStar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// A seeded random covering of convex `K_n` by plane star-forests.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Forests beyond the minimum `n - 1`.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum SearchProblem {
    /// Plane star-forests of convex `K_n`.
    Plane {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: SearchArgs,
    },
    /// Star-forests with at most `k` components of abstract `K_n`.
    Kstar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: SearchArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Decide a single budget instead of minimizing.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Pruned)]
    mode: Mode,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Reference,
    Pruned,
}

#[derive(Args)]
struct Output {
    /// Write here instead of standard output.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

/// A failed run: message and exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn verification(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<RecolorError> for Failure {
    fn from(e: RecolorError) -> Self {
        match e {
            RecolorError::ProofInvariantViolation { .. } | RecolorError::NoSpanningStar => {
                Failure { code: 3, message: e.to_string() }
            }
            RecolorError::BadSpan { .. } => Failure::usage(e.to_string()),
            _ => Failure::verification(e.to_string()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::NodeLimitExceeded { .. } => Failure::verification(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once('-').ok_or_else(|| format!("expected `u-v`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Edge::try_new(parse(a)?, parse(b)?).ok_or_else(|| format!("`{s}` is a loop"))
}

fn read_covering(path: &Path) -> Result<Covering, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.path {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: serde::Serialize>(out: &Output, value: &T) -> Result<(), Failure> {
    let text = to_canonical_json(value).map_err(|e| Failure::usage(e.to_string()))?;
    write(out, &text)
}

fn search_options(mode: Mode) -> Result<SearchOptions, Failure> {
    let node_limit = match std::env::var(NODE_LIMIT_VAR) {
        Ok(v) => Some(v.trim().parse().map_err(|e| Failure::usage(format!("{NODE_LIMIT_VAR}={v}: {e}")))?),
        Err(_) => None,
    };
    let mode = match mode {
        Mode::Reference => SearchMode::Reference,
        Mode::Pruned => SearchMode::Pruned,
    };
    Ok(SearchOptions { mode, node_limit })
}

fn construct(kind: Construction) -> Result<(), Failure> {
    let usage = |e: &dyn std::fmt::Display| Failure::usage(e.to_string());
    let (c, out) = match kind {
        Construction::Stars { n, convex, out } => {
            let c = star_decomposition(n);
            let c = if convex {
                c.with_geometry(gen_convex(n).map_err(|e| usage(&e))?).map_err(|e| usage(&e))?
            } else {
                c
            };
            (c, out)
        }
        Construction::TwoStar { n, out } => (two_star_forest_cover(n).map_err(|e| usage(&e))?, out),
        Construction::FourCluster { k, out } => {
            let cps = gen_four_cluster(k).map_err(|e| usage(&e))?;
            (four_cluster_forests(&cps).map_err(|e| usage(&e))?, out)
        }
        Construction::KStar { n, k, out } => (k_star_forest_cover(n, k).map_err(|e| usage(&e))?, out),
        Construction::Random { n, seed, extra, out } => {
            let params = RandomCoveringParams { extra_forests: extra, ..RandomCoveringParams::for_size(n) };
            (random_covering_with(n, seed, params).map_err(|e| usage(&e))?, out)
        }
    };
    write_json(&out, &c)
}

fn search(problem: SearchProblem) -> Result<(), Failure> {
    let (n, k, common) = match problem {
        SearchProblem::Plane { n, common } => (n, None, common),
        SearchProblem::Kstar { n, k, common } => (n, Some(k), common),
    };
    let opts = search_options(common.mode)?;
    let ps = || gen_convex(n).map_err(|e| Failure::usage(e.to_string()));
    match common.t {
        Some(t) => {
            let d = match k {
                None => decide_plane_decomposition(&ps()?, t, opts)?,
                Some(k) => decide_k_star_forest_decomposition(n, k, t, opts)?,
            };
            let value = json!({
                "t": t,
                "feasible": d.witness.is_some(),
                "witness": d.witness,
                "nodesVisited": d.nodes_visited,
                "mode": opts.mode,
            });
            write_json(&common.out, &value)
        }
        None => {
            let r = match k {
                None => min_plane_star_forests(&ps()?, opts)?,
                Some(k) => min_k_star_forests(n, k, opts)?,
            };
            write_json(&common.out, &r)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { kind } => construct(kind),
        Command::Verify { file, decomposition } => {
            let c = read_covering(&file)?;
            let report = if decomposition { verify_decomposition(&c) } else { verify_covering(&c) };
            if report.is_valid() {
                println!("valid: {} forests on {} vertices", c.forest_count(), c.n);
                Ok(())
            } else {
                Err(Failure::verification(report.to_string()))
            }
        }
        Command::Project { file, out } => {
            let c = read_covering(&file)?;
            let d = c.project_to_decomposition().map_err(|e| Failure::verification(e.to_string()))?;
            write_json(&out, &d)
        }
        Command::Recolor { file, k, out } => {
            let c = read_covering(&file)?;
            let (covering, trace) = make_all_supported_up_to(&c, k)?;
            write_json(&out, &json!({ "covering": covering, "trace": trace }))
        }
        Command::Descend { file, out } => {
            let c = read_covering(&file)?;
            write_json(&out, &descend(&c)?)
        }
        Command::Replay { file, certificate } => {
            let c = read_covering(&file)?;
            let text = fs::read_to_string(&certificate)
                .map_err(|e| Failure::usage(format!("{}: {e}", certificate.display())))?;
            let cert: DescentCertificate =
                from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", certificate.display())))?;
            cert.replay(&c).map_err(|e| Failure::verification(e.to_string()))?;
            println!("certificate replays: {} levels", cert.levels.len());
            Ok(())
        }
        Command::Search { problem } => search(problem),
        Command::Render { file, absent, size, out } => {
            let c = read_covering(&file)?;
            write(&out, &render_svg(&c, &RenderOptions { size, absent, ..RenderOptions::default() }))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
