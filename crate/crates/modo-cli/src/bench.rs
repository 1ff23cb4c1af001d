//! Benchmark sweeps: a suite file lists (instance, configuration) cells;
//! each cell is generated or loaded, solved under per-cell limits, and
//! reported as one CSV row. Cells run on a small worker pool capped by
//! MODO_THREADS; row order follows the suite file regardless of scheduling.

use crate::{build_config, EXIT_OK, EXIT_USAGE};
use modo::files;
use modo::problems::{gen, GenParams, Instance, ProblemClass};
use modo::solver::{solve, Algorithm, ResourceKind, SolveReport};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub const CSV_HEADER: &str = "class,n,K,seed,alg,filter,time_ms,frontier_size,nodes,arcs,\
                              labels,meet_layer,shifts,merges,arcs_removed,nodes_removed,status";

struct Cell {
    instance: Instance,
    seed: Option<u64>,
    algorithm: Algorithm,
    filter: bool,
}

fn parse_suite(text: &str, suite_dir: &Path) -> Result<Vec<Cell>, String> {
    let mut cells = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let kind = tokens.next().unwrap();
        let err = |msg: &str| format!("suite line {}: {msg}", lineno + 1);
        match kind {
            "gen" => {
                let class = ProblemClass::parse(tokens.next().ok_or_else(|| err("missing class"))?)
                    .map_err(|e| err(&e.to_string()))?;
                let n: usize = parse_token(tokens.next(), "n").map_err(|m| err(&m))?;
                let k: usize = parse_token(tokens.next(), "K").map_err(|m| err(&m))?;
                let seed: u64 = parse_token(tokens.next(), "seed").map_err(|m| err(&m))?;
                let algorithm = parse_alg(tokens.next()).map_err(|m| err(&m))?;
                let filter = parse_filter(tokens.next()).map_err(|m| err(&m))?;
                let mut params = GenParams::default();
                for extra in tokens {
                    if let Some(v) = extra.strip_prefix("M=") {
                        params.m_bound = v.parse().map_err(|_| err("bad M="))?;
                    } else if let Some(v) = extra.strip_prefix("delta=") {
                        params.delta = v.parse().map_err(|_| err("bad delta="))?;
                    } else {
                        return Err(err(&format!("unknown token '{extra}'")));
                    }
                }
                let instance =
                    gen::generate(class, n, k, seed, &params).map_err(|e| err(&e.to_string()))?;
                cells.push(Cell {
                    instance,
                    seed: Some(seed),
                    algorithm,
                    filter,
                });
            }
            "file" => {
                let rel = tokens.next().ok_or_else(|| err("missing path"))?;
                let path = suite_dir.join(rel);
                let instance =
                    files::read_instance(&path).map_err(|e| err(&e.to_string()))?;
                let algorithm = parse_alg(tokens.next()).map_err(|m| err(&m))?;
                let filter = parse_filter(tokens.next()).map_err(|m| err(&m))?;
                cells.push(Cell {
                    instance,
                    seed: None,
                    algorithm,
                    filter,
                });
            }
            other => return Err(err(&format!("unknown cell kind '{other}'"))),
        }
    }
    Ok(cells)
}

fn parse_token<T: std::str::FromStr>(token: Option<&str>, name: &str) -> Result<T, String> {
    token
        .ok_or_else(|| format!("missing {name}"))?
        .parse()
        .map_err(|_| format!("bad {name}"))
}

fn parse_alg(token: Option<&str>) -> Result<Algorithm, String> {
    let t = token.ok_or("missing algorithm")?;
    Algorithm::parse(t).ok_or_else(|| format!("unknown algorithm '{t}'"))
}

fn parse_filter(token: Option<&str>) -> Result<bool, String> {
    match token.ok_or("missing filter flag")? {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(format!("filter flag must be 0 or 1, got '{other}'")),
    }
}

fn run_cell(cell: &Cell, limit_sec: Option<f64>, limit_mb: Option<u64>) -> String {
    let config = build_config(
        cell.algorithm,
        cell.filter,
        true,
        true,
        true,
        None,
        false,
        limit_sec,
        limit_mb,
    );
    let started = std::time::Instant::now();
    let outcome = solve(&cell.instance, &config);
    let elapsed = started.elapsed().as_millis();
    let prefix = format!(
        "{},{},{},{},{},{}",
        cell.instance.class().name(),
        cell.instance.n,
        cell.instance.k,
        cell.seed.map_or_else(|| "-".into(), |s| s.to_string()),
        cell.algorithm.name(),
        cell.filter as u8,
    );
    match outcome {
        Ok(report) => format!("{prefix},{}", solved_columns(&report)),
        Err(e) => {
            let status = match e.resource_kind() {
                Some(ResourceKind::Time) => "timeout",
                Some(ResourceKind::Memory) => "memout",
                None => "error",
            };
            format!("{prefix},{elapsed},-,-,-,-,-,-,-,-,-,{status}")
        }
    }
}

fn solved_columns(report: &SolveReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},solved",
        report.time_ms,
        report.frontier.len(),
        report.nodes,
        report.arcs,
        report.labels_td + report.labels_bu,
        report.meet_layer.map_or(0, |m| m + 1),
        report.reduction.shifts_applied,
        report.reduction.merges_applied,
        report.reduction.arcs_removed,
        report.reduction.nodes_removed,
    )
}

pub fn cmd_bench(
    suite: &PathBuf,
    output: &PathBuf,
    limit_sec: Option<f64>,
    limit_mb: Option<u64>,
) -> u8 {
    let text = match std::fs::read_to_string(suite) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let suite_dir = suite.parent().unwrap_or_else(|| Path::new("."));
    let cells = match parse_suite(&text, suite_dir) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let workers = worker_count(cells.len());
    let rows: Vec<Mutex<Option<String>>> = (0..cells.len()).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let row = run_cell(&cells[i], limit_sec, limit_mb);
                *rows[i].lock().unwrap() = Some(row);
            });
        }
    });
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row.into_inner().unwrap().expect("all cells ran"));
        csv.push('\n');
    }
    match std::fs::write(output, csv) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn worker_count(cells: usize) -> usize {
    let available = std::thread::available_parallelism().map_or(1, |p| p.get());
    let cap = std::env::var("MODO_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(available);
    cap.min(available).min(cells.max(1))
}
