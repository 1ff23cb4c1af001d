//! `modo` — generate instances, enumerate Pareto frontiers, verify against
//! the brute-force oracle, and run benchmark sweeps.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification mismatch,
//! 3 resource limit hit.

mod bench;

use clap::{Parser, Subcommand};
use modo::files;
use modo::oracle::{brute_force_frontier, OracleError};
use modo::problems::{gen, GenParams, ProblemClass};
use modo::solver::{solve, Algorithm, SolveConfig};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "modo", about = "Exact multiobjective solver over network models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "K")]
        k: usize,
        #[arg(long)]
        seed: u64,
        /// Coefficient magnitude bound (mccavp only).
        #[arg(long = "M")]
        m_bound: Option<i64>,
        /// Cardinality fraction (mccavp only).
        #[arg(long)]
        delta: Option<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve an instance file and write its frontier.
    Solve {
        /// Algorithm: td, bu, or coup.
        #[arg(long, default_value = "coup")]
        alg: String,
        /// Apply the class's label-filtering comparator when it has one.
        #[arg(long)]
        filter: bool,
        #[arg(long)]
        no_reduce: bool,
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        no_arc_removal: bool,
        /// Force the bidirectional meeting layer (1-based).
        #[arg(long)]
        meet_layer: Option<usize>,
        /// Also write one witness decision vector per frontier point to
        /// `<output>.sol`.
        #[arg(long)]
        recover: bool,
        #[arg(long)]
        limit_sec: Option<f64>,
        #[arg(long)]
        limit_mb: Option<u64>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve and compare against the brute-force oracle.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Run a suite of (instance, configuration) cells and emit a CSV.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        limit_sec: Option<f64>,
        #[arg(long)]
        limit_mb: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendered help/error but normalize the exit code.
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let code = match cli.command {
        Command::Gen {
            class,
            n,
            k,
            seed,
            m_bound,
            delta,
            output,
        } => cmd_gen(&class, n, k, seed, m_bound, delta, &output),
        Command::Solve {
            alg,
            filter,
            no_reduce,
            no_prune,
            no_arc_removal,
            meet_layer,
            recover,
            limit_sec,
            limit_mb,
            input,
            output,
        } => cmd_solve(SolveArgs {
            alg,
            filter,
            no_reduce,
            no_prune,
            no_arc_removal,
            meet_layer,
            recover,
            limit_sec,
            limit_mb,
            input,
            output,
        }),
        Command::Verify { input } => cmd_verify(&input),
        Command::Bench {
            suite,
            output,
            limit_sec,
            limit_mb,
        } => bench::cmd_bench(&suite, &output, limit_sec, limit_mb),
    };
    ExitCode::from(code)
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn cmd_gen(
    class: &str,
    n: usize,
    k: usize,
    seed: u64,
    m_bound: Option<i64>,
    delta: Option<f64>,
    output: &PathBuf,
) -> u8 {
    let class = match ProblemClass::parse(class) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    if class != ProblemClass::Mccavp && (m_bound.is_some() || delta.is_some()) {
        return usage_error("--M and --delta only apply to mccavp");
    }
    let defaults = GenParams::default();
    let params = GenParams {
        m_bound: m_bound.unwrap_or(defaults.m_bound),
        delta: delta.unwrap_or(defaults.delta),
    };
    let instance = match gen::generate(class, n, k, seed, &params) {
        Ok(i) => i,
        Err(e) => return usage_error(e),
    };
    match files::write_instance(output, &instance) {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(e),
    }
}

struct SolveArgs {
    alg: String,
    filter: bool,
    no_reduce: bool,
    no_prune: bool,
    no_arc_removal: bool,
    meet_layer: Option<usize>,
    recover: bool,
    limit_sec: Option<f64>,
    limit_mb: Option<u64>,
    input: PathBuf,
    output: PathBuf,
}

pub(crate) fn build_config(
    algorithm: Algorithm,
    filter: bool,
    reduce: bool,
    prune: bool,
    arc_removal: bool,
    meet_layer_zero_based: Option<usize>,
    recover: bool,
    limit_sec: Option<f64>,
    limit_mb: Option<u64>,
) -> SolveConfig {
    let mut config = SolveConfig {
        algorithm,
        use_filter: filter,
        reduce,
        prune,
        arc_removal,
        meet_layer: meet_layer_zero_based,
        recover,
        ..SolveConfig::default()
    };
    if let Some(sec) = limit_sec {
        let deadline = Instant::now() + Duration::from_secs_f64(sec.max(0.0));
        config.compile_limits.deadline = Some(deadline);
        config.search_limits.deadline = Some(deadline);
    }
    if let Some(mb) = limit_mb {
        config.search_limits.max_bytes = Some(mb * 1024 * 1024);
    }
    config
}

fn cmd_solve(args: SolveArgs) -> u8 {
    let algorithm = match Algorithm::parse(&args.alg) {
        Some(a) => a,
        None => return usage_error(format!("unknown algorithm '{}'", args.alg)),
    };
    let instance = match files::read_instance(&args.input) {
        Ok(i) => i,
        Err(e) => return usage_error(e),
    };
    let meet_layer = match args.meet_layer {
        None => None,
        Some(m) if (1..=instance.n + 1).contains(&m) => Some(m - 1),
        Some(m) => {
            return usage_error(format!(
                "--meet-layer {m} out of range 1..={}",
                instance.n + 1
            ))
        }
    };
    let config = build_config(
        algorithm,
        args.filter,
        !args.no_reduce,
        !args.no_prune,
        !args.no_arc_removal,
        meet_layer,
        args.recover,
        args.limit_sec,
        args.limit_mb,
    );
    let report = match solve(&instance, &config) {
        Ok(r) => r,
        Err(e) if e.resource_kind().is_some() => {
            eprintln!("resource limit: {e}");
            return EXIT_RESOURCE;
        }
        Err(e) => return usage_error(e),
    };
    if let Err(e) = files::write_frontier(&args.output, instance.k, &report.frontier) {
        return usage_error(e);
    }
    if let Some(witnesses) = &report.witnesses {
        let path = witness_path(&args.output);
        if let Err(e) = std::fs::write(&path, files::witnesses_to_string(witnesses)) {
            return usage_error(e);
        }
    }
    // labels_td labels_bu labels_coupled meet_layer(1-based, 0 = n/a) time_ms
    println!(
        "{} {} {} {} {}",
        report.labels_td,
        report.labels_bu,
        report.labels_coupled,
        report.meet_layer.map_or(0, |m| m + 1),
        report.time_ms
    );
    EXIT_OK
}

pub(crate) fn witness_path(frontier_path: &std::path::Path) -> PathBuf {
    let mut s = frontier_path.as_os_str().to_owned();
    s.push(".sol");
    PathBuf::from(s)
}

fn cmd_verify(input: &PathBuf) -> u8 {
    let instance = match files::read_instance(input) {
        Ok(i) => i,
        Err(e) => return usage_error(e),
    };
    let expected = match brute_force_frontier(&instance) {
        Ok(f) => f,
        Err(e @ OracleError::TooLarge(_)) => return usage_error(e),
        Err(e) => return usage_error(e),
    };
    let report = match solve(&instance, &SolveConfig::default()) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    if report.frontier == expected {
        println!("verify ok: {} frontier points", expected.len());
        EXIT_OK
    } else {
        println!("verify FAILED");
        for point in expected.iter().filter(|p| !report.frontier.contains(p)) {
            println!("missing from solver: {:?}", point.as_slice());
        }
        for point in report.frontier.iter().filter(|p| !expected.contains(p)) {
            println!("extra from solver: {:?}", point.as_slice());
        }
        EXIT_MISMATCH
    }
}
