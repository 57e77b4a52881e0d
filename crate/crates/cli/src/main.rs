//! `indicolor` command-line front end.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indicolor_core::graph::{
    encode_graph6, expansion, family_generator, lexicographic_product, param_report, ExpansionSpec, Graph,
};
use indicolor_core::harness::{parse_corpus, parse_graph_text, run_suite, SuiteConfig, DEFAULT_SEED};
use indicolor_core::recognizers::{classify, family_membership_f};
use indicolor_core::solver::{indicated_chromatic_number, play_game, Limits};
use indicolor_core::strategies::{build_ann, build_ben, StrategyContext, StrategyName};
use indicolor_service::ServiceConfig;

#[derive(Parser)]
#[command(name = "indicolor", version, about = "Indicated colouring game: solver, strategies and replay suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Abort a solve after this many explored states.
    #[arg(long, default_value_t = Limits::default().max_states)]
    max_states: u64,
    /// Abort a solve after this many milliseconds.
    #[arg(long, default_value_t = Limits::default().max_millis)]
    max_millis: u64,
    /// Refuse to solve graphs with more vertices.
    #[arg(long, default_value_t = Limits::default().max_vertices)]
    max_vertices: usize,
}

impl From<LimitArgs> for Limits {
    fn from(a: LimitArgs) -> Self {
        Limits { max_states: a.max_states, max_millis: a.max_millis, max_vertices: a.max_vertices }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpansionKind {
    Complete,
    Independent,
}

#[derive(Subcommand)]
enum GenKind {
    /// A named family, e.g. `C 5`, `K 2 3`, `star 4`, `paw`.
    Family { tag: String, params: Vec<usize> },
    /// The lexicographic product G[H].
    Product { g: String, h: String },
    /// Replace each vertex of G by a clique (complete) or independent set.
    Expansion {
        kind: ExpansionKind,
        g: String,
        /// Block sizes, one per vertex of G, e.g. `2,1,2`.
        #[arg(value_delimiter = ',')]
        sizes: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, value_enum, default_value = "graph6")]
        format: GraphFormat,
    },
    /// Min/max degree, clique, chromatic and colouring numbers.
    Params { graph: String },
    /// Solve the game for every palette size from the chromatic number up.
    ChiI {
        graph: String,
        /// Largest palette to solve (default: the colouring number).
        #[arg(long)]
        kmax: Option<usize>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Play one game between two named strategies and print the transcript.
    Play {
        graph: String,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value = "optimal")]
        ann: String,
        #[arg(long, default_value = "optimal")]
        ben: String,
        /// Factors G and H of a product board, for product-col and reduction.
        #[arg(long, num_args = 2, value_names = ["G", "H"])]
        factors: Option<Vec<String>>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Class membership with certificates, and family admission.
    Recognize { graph: String },
    /// Run a replay suite; exits non-zero if any case fails.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// One graph (or `G; H` pair) per line.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        /// Zero the timing column so reports compare byte for byte.
        #[arg(long)]
        stable: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Start the HTTP play service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Minutes before an idle session is dropped.
        #[arg(long, default_value_t = 30)]
        idle_minutes: u64,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

type CliResult = Result<ExitCode, String>;

/// A graph argument: a JSON file path, inline JSON, an expression or graph6.
fn read_graph(arg: &str) -> Result<Graph, String> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    } else {
        arg.to_string()
    };
    parse_graph_text(&text).map_err(|e| format!("{arg}: {e}"))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn gen(kind: GenKind, format: GraphFormat) -> CliResult {
    let g = match kind {
        GenKind::Family { tag, params } => family_generator(&tag, &params).map_err(|e| e.to_string())?,
        GenKind::Product { g, h } => lexicographic_product(&read_graph(&g)?, &read_graph(&h)?).map_err(|e| e.to_string())?,
        GenKind::Expansion { kind, g, sizes } => {
            let base = read_graph(&g)?;
            let spec = match kind {
                ExpansionKind::Complete => ExpansionSpec::complete(&base, &sizes),
                ExpansionKind::Independent => ExpansionSpec::independent(&base, &sizes),
            };
            expansion(&spec).map_err(|e| e.to_string())?
        }
    };
    match format {
        GraphFormat::Graph6 => println!("{}", encode_graph6(&g).map_err(|e| e.to_string())?),
        GraphFormat::Json => println!("{}", g.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn play(graph: &str, k: usize, ann: &str, ben: &str, factors: Option<Vec<String>>, limits: Limits) -> CliResult {
    let g = read_graph(graph)?;
    let factors = match factors.as_deref() {
        Some([a, b]) => Some((read_graph(a)?, read_graph(b)?)),
        _ => None,
    };
    let ctx = StrategyContext { graph: &g, factors: factors.as_ref().map(|(a, b)| (a, b)), limits };
    let parse = |s: &str| s.parse::<StrategyName>().map_err(|e| e.to_string());
    let ann = build_ann(parse(ann)?, ctx).map_err(|e| format!("--ann: {e}"))?;
    let ben = build_ben(parse(ben)?, ctx).map_err(|e| format!("--ben: {e}"))?;
    let t = play_game(Arc::new(g), k, ann.as_ref(), ben.as_ref()).map_err(|e| e.to_string())?;
    print_json(&t);
    Ok(ExitCode::SUCCESS)
}

fn verify(suite: &str, seed: u64, corpus: Option<PathBuf>, format: ReportFormat, stable: bool, limits: Limits) -> CliResult {
    let corpus = match corpus {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            Some(parse_corpus(&text).map_err(|e| format!("{}: {e}", path.display()))?)
        }
        None => None,
    };
    let cfg = SuiteConfig { seed, limits, corpus };
    let mut report = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
    if stable {
        report = report.without_timings();
    }
    match format {
        ReportFormat::Json => println!("{}", report.to_json()),
        ReportFormat::Csv => print!("{}", report.to_csv()),
    }
    let s = report.summary;
    eprintln!("{}: {} pass, {} fail, {} skip-limit", report.suite, s.pass, s.fail, s.skip_limit);
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn serve(host: std::net::IpAddr, port: u16, idle_minutes: u64, limits: Limits) -> CliResult {
    let config = ServiceConfig { idle: std::time::Duration::from_secs(idle_minutes * 60), limits };
    let addr = SocketAddr::new(host, port);
    let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    eprintln!("listening on http://{addr}");
    rt.block_on(indicolor_service::serve(addr, config)).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen { kind, format } => gen(kind, format),
        Command::Params { graph } => {
            print_json(&param_report(&read_graph(&graph)?).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ChiI { graph, kmax, limits } => {
            let r = indicated_chromatic_number(&read_graph(&graph)?, kmax, limits.into()).map_err(|e| e.to_string())?;
            print_json(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Play { graph, k, ann, ben, factors, limits } => play(&graph, k, &ann, &ben, factors, limits.into()),
        Command::Recognize { graph } => {
            let g = read_graph(&graph)?;
            print_json(&serde_json::json!({ "classes": classify(&g), "family": family_membership_f(&g) }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed, corpus, format, stable, limits } => {
            verify(&suite, seed, corpus, format, stable, limits.into())
        }
        Command::Serve { port, host, idle_minutes, limits } => serve(host, port, idle_minutes, limits.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
