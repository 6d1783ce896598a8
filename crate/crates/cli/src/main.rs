use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use rainbow_cli::suite::{self, SuiteConfig, DEFAULT_SEED};
use rainbow_core::algebra::{PlaneRecord, PrimePower};
use rainbow_core::constructions::{block_blocker, kron_blocker, singer_blocker, KronSpec};
use rainbow_core::ramsey::{ar_edge, ar_vertex, AntiRamseyResult};
use rainbow_core::{decide_arrow, find_rainbow_shape, DecideError, LatinRectangle, SearchConfig};

/// Exit status for malformed command lines (clap's own code, 2, is taken by
/// "budget exhausted").
const EXIT_USAGE: u8 = 64;
const EXIT_CONSTRUCTION: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow subrectangles in latin rectangles and bipartite anti-Ramsey numbers")]
struct Cli {
    /// Search threads.
    #[arg(long, global = true, env = "RAINBOW_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Node budget per search.
    #[arg(long, global = true, default_value_t = SearchConfig::default().max_nodes)]
    max_nodes: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a blocker rectangle.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Look for a rainbow A x B subrectangle (A rows, B columns) in a file.
    Check {
        file: PathBuf,
        a: usize,
        b: usize,
        /// Also try B x A.
        #[arg(long)]
        either: bool,
    },
    /// Decide whether every proper coloring of K_{m,n} has a rainbow K_{a,b}.
    Decide {
        m: usize,
        n: usize,
        a: usize,
        b: usize,
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Vertex anti-Ramsey number of K_{a,b}.
    Arv { a: usize, b: usize },
    /// Edge anti-Ramsey number of K_{a,b}.
    Are { a: usize, b: usize },
    /// Run the verification battery.
    VerifySuite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
    /// Print the Singer projective plane of order q as JSON.
    Plane { q: u64 },
}

#[derive(Subcommand)]
enum Construction {
    /// a x (a^2 - a + 1), no rainbow a x 2; a - 1 must be a prime power.
    Singer { a: usize },
    /// (b - 1) x (a^2 - a + 1)(b - 1), no rainbow a x b or b x a.
    Block { a: usize, b: usize },
    /// Product of two rectangles read from files.
    Kron {
        inner: PathBuf,
        outer: PathBuf,
        /// Symbol multiplier; defaults to one more than the inner maximum.
        #[arg(long)]
        t: Option<u32>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let search = SearchConfig::default()
        .with_workers(cli.workers as usize)
        .with_max_nodes(cli.max_nodes);
    match &cli.command {
        Command::Construct { kind } => {
            let rect = construct(kind)?;
            emit_rectangle(&rect, cli.json);
            Ok(0)
        }
        Command::Check { file, a, b, either } => check(file, *a, *b, *either, cli.json),
        Command::Decide { m, n, a, b, no_symmetry } => {
            decide(*m, *n, *a, *b, &search.with_column_symmetry_pruning(!no_symmetry), cli.json)
        }
        Command::Arv { a, b } => {
            let r = ar_vertex(*a, *b, &search).map_err(|e| fail(EXIT_CONSTRUCTION, e))?;
            Ok(report_sweep(&r, cli.json))
        }
        Command::Are { a, b } => {
            let r = ar_edge(*a, *b, &search).map_err(|e| fail(EXIT_CONSTRUCTION, e))?;
            Ok(report_sweep(&r, cli.json))
        }
        Command::VerifySuite { seed, only } => {
            let cfg = SuiteConfig {
                workers: cli.workers as usize,
                max_nodes: cli.max_nodes,
                seed: *seed,
            };
            let reports = suite::run_suite(&cfg, only);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if !cli.json {
                println!("{} passed, {failed} failed", reports.len() - failed);
            }
            Ok(u8::from(failed > 0))
        }
        Command::Plane { q } => {
            let pp = PrimePower::new(*q).ok_or_else(|| fail(EXIT_CONSTRUCTION, format!("{q} is not a prime power")))?;
            let rec = PlaneRecord::singer(pp).map_err(|e| fail(EXIT_CONSTRUCTION, e))?;
            println!("{}", serde_json::to_string(&rec).expect("plane serializes"));
            Ok(0)
        }
    }
}

fn read_rectangle(path: &Path) -> Result<LatinRectangle, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    LatinRectangle::parse_any(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn construct(kind: &Construction) -> Result<LatinRectangle, Failure> {
    let built = match kind {
        Construction::Singer { a } => singer_blocker(*a),
        Construction::Block { a, b } => block_blocker(*a, *b),
        Construction::Kron { inner, outer, t } => {
            let (inner, outer) = (read_rectangle(inner)?, read_rectangle(outer)?);
            let spec = match t {
                Some(t) => KronSpec::new(inner, outer, *t),
                None => Ok(KronSpec::minimal(inner, outer)),
            };
            spec.map(|s| kron_blocker(&s))
        }
    };
    built.map_err(|e| fail(EXIT_CONSTRUCTION, e))
}

fn emit_rectangle(rect: &LatinRectangle, json: bool) {
    if json {
        println!("{}", rect.to_json());
    } else {
        print!("{}", rect.to_text());
    }
}

#[derive(Serialize)]
struct CheckReport {
    rainbow: bool,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

fn check(file: &Path, a: usize, b: usize, either: bool, json: bool) -> Result<u8, Failure> {
    let rect = read_rectangle(file)?;
    if a == 0 || b == 0 {
        return Err(fail(EXIT_USAGE, "subrectangle sides must be positive"));
    }
    let mut shapes = vec![(a, b)];
    if either && a != b {
        shapes.push((b, a));
    }
    let fitting: Vec<_> = shapes.into_iter().filter(|&(h, w)| h <= rect.rows() && w <= rect.cols()).collect();
    let hit = fitting
        .iter()
        .find_map(|&(h, w)| find_rainbow_shape(&rect, h, w).expect("shape fits"));
    if json {
        let report = match &hit {
            Some(w) => CheckReport { rainbow: true, rows: w.rows.clone(), cols: w.cols.clone() },
            None => CheckReport { rainbow: false, rows: Vec::new(), cols: Vec::new() },
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    }
    match hit {
        Some(w) => {
            if !json {
                let symbols: Vec<u32> = w.rows.iter().flat_map(|&i| w.cols.iter().map(move |&j| (i, j))).map(|(i, j)| rect.get(i, j)).collect();
                println!(
                    "rainbow {}x{} subrectangle: rows {:?}, columns {:?}, symbols {symbols:?}",
                    w.rows.len(),
                    w.cols.len(),
                    w.rows,
                    w.cols
                );
            }
            Ok(1)
        }
        None => {
            if !json {
                if fitting.is_empty() {
                    println!("blocker verified (no such subrectangle fits in {}x{})", rect.rows(), rect.cols());
                } else {
                    println!("blocker verified");
                }
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct DecideReport {
    arrows: Option<bool>,
    certificate: Option<LatinRectangle>,
    nodes: u64,
    ms: f64,
}

fn decide(m: usize, n: usize, a: usize, b: usize, cfg: &SearchConfig, json: bool) -> Result<u8, Failure> {
    let start = std::time::Instant::now();
    let (report, code) = match decide_arrow(m, n, a, b, cfg) {
        Ok(d) => {
            let code = if d.arrows { 0 } else { 1 };
            let report = DecideReport {
                arrows: Some(d.arrows),
                certificate: d.certificate,
                nodes: d.nodes_explored,
                ms: d.elapsed.as_secs_f64() * 1e3,
            };
            (report, code)
        }
        Err(DecideError::BudgetExhausted { nodes }) => {
            let report = DecideReport {
                arrows: None,
                certificate: None,
                nodes,
                ms: start.elapsed().as_secs_f64() * 1e3,
            };
            (report, 2)
        }
        Err(e) => return Err(fail(EXIT_CONSTRUCTION, e)),
    };
    if json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        return Ok(code);
    }
    match (report.arrows, &report.certificate) {
        (Some(true), _) => println!("K_{{{m},{n}}} -> K_{{{a},{b}}}: every proper coloring has a rainbow copy"),
        (Some(false), Some(cert)) => {
            println!("K_{{{m},{n}}} does not arrow K_{{{a},{b}}}; blocker:");
            print!("{}", cert.to_text());
        }
        _ => println!("budget exhausted after {} nodes; verdict unknown", report.nodes),
    }
    println!("{} nodes, {:.1} ms", report.nodes, report.ms);
    Ok(code)
}

fn report_sweep(r: &AntiRamseyResult, json: bool) -> u8 {
    let code = if r.complete { 0 } else { 2 };
    if json {
        println!("{}", serde_json::to_string(r).expect("result serializes"));
        return code;
    }
    let label = match r.kind {
        rainbow_core::ramsey::AntiRamseyKind::Vertex => "AR_V",
        rainbow_core::ramsey::AntiRamseyKind::Edge => "AR_E",
    };
    match (r.value, r.witness_host) {
        (Some(v), Some((m, n))) => println!("{label}(K_{{{},{}}}) = {v}, witness K_{{{m},{n}}}", r.a, r.b),
        _ => println!("{label}(K_{{{},{}}}) not determined", r.a, r.b),
    }
    println!("{:>4} {:>4}  reason", "m", "n");
    for h in &r.refuted_hosts {
        println!("{:>4} {:>4}  {:?}", h.m, h.n, h.reason);
    }
    for (m, n) in &r.unresolved_hosts {
        println!("{m:>4} {n:>4}  unresolved (budget)");
    }
    println!("complete: {}", r.complete);
    code
}
