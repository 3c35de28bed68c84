//! `ssig`: build supersingular l-isogeny graphs, decide the Hecke
//! generation condition, enumerate vertex automorphisms, and render the
//! rigidity verdict for concrete (p, l).
//!
//! Contract: stdout carries machine-readable JSON only; prose and warnings
//! go to stderr. Exit codes: 0 ok, 2 bad input or data, 3 violated internal
//! invariant, 4 result inconsistent with the rigidity statement (which
//! would falsify verified mathematics and should page a human).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use ssig_core::aut::{hecke_pipeline_verdict, TheoremVerdict};
use ssig_core::field::is_prime_u64;
use ssig_core::graph::modpoly::ModPoly;
use ssig_core::{Error, FieldCtx, IsogenyGraph, DEFAULT_SEED};

mod walk;

#[derive(Parser)]
#[command(name = "ssig", about = "supersingular l-isogeny graph toolkit", version)]
struct Cli {
    /// Seed for the randomized root-splitting recursion (outputs do not
    /// depend on it; it only steers internal branching)
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build G(p, l) and write the canonical graph JSON
    Build {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        l: u64,
        /// Explicit path to the Phi_l data file
        #[arg(long)]
        modpoly: Option<PathBuf>,
        /// Directory holding phi_j_<l>.txt files
        #[arg(long, env = "SSIG_MODPOLY_DIR")]
        modpoly_dir: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Full pipeline: graph, Hecke condition, automorphism group, verdict
    Verify {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        l: u64,
        #[arg(long)]
        modpoly: Option<PathBuf>,
        #[arg(long, env = "SSIG_MODPOLY_DIR")]
        modpoly_dir: Option<PathBuf>,
    },
    /// Run the pipeline for every prime l <= lmax with available data
    Scan {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        lmax: u64,
        #[arg(long, env = "SSIG_MODPOLY_DIR")]
        modpoly_dir: Option<PathBuf>,
    },
    /// Deterministic non-backtracking walk on G(p, 2) driven by message bits
    Walk {
        #[arg(short)]
        p: u64,
        /// Message as hex digits, e.g. 00ff3c
        message: String,
        /// Start j-invariant "a" or "a+b*t"; default: canonical initial vertex
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        modpoly: Option<PathBuf>,
        #[arg(long, env = "SSIG_MODPOLY_DIR")]
        modpoly_dir: Option<PathBuf>,
    },
    /// Re-render a graph JSON cache
    Export {
        /// Graph JSON file written by `ssig build`
        input: PathBuf,
        /// Emit DOT (one edge line per unit of multiplicity)
        #[arg(long)]
        dot: bool,
        /// Emit pretty-printed JSON
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Core(ref err) if err.is_input_error() => ExitCode::from(2),
                CliError::Core(_) => ExitCode::from(3),
            }
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.cmd {
        Cmd::Build { p, l, modpoly, modpoly_dir, out } => {
            let (ctx, phi) = load_level(p, l, modpoly.as_deref(), modpoly_dir.as_deref())?;
            let graph = IsogenyGraph::build(&ctx, &phi, cli.seed)?;
            let bytes = format!("{}\n", graph.to_json_string());
            std::fs::write(&out, bytes).map_err(Error::from)?;
            eprintln!(
                "G({p}, {l}): {} vertices, row sum {} -> {}",
                graph.vertex_count(),
                l + 1,
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { p, l, modpoly, modpoly_dir } => {
            let (ctx, phi) = load_level(p, l, modpoly.as_deref(), modpoly_dir.as_deref())?;
            let (verdict, graph) = pipeline(&ctx, &phi, cli.seed)?;
            describe_verdict(&graph, &verdict);
            println!("{}", serde_json::to_string(&verdict).map_err(Error::from)?);
            if verdict.consistent_with_theorem {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("INCONSISTENT: generation holds but Aut* != {{id, Fr}}");
                Ok(ExitCode::from(4))
            }
        }
        Cmd::Scan { p, lmax, modpoly_dir } => scan(p, lmax, modpoly_dir.as_deref(), cli.seed),
        Cmd::Walk { p, message, start, modpoly, modpoly_dir } => {
            let (ctx, phi) = load_level(p, 2, modpoly.as_deref(), modpoly_dir.as_deref())?;
            let graph = IsogenyGraph::build(&ctx, &phi, cli.seed)?;
            let start_j = match start {
                Some(s) => Some(ctx.parse_elem(&s)?),
                None => None,
            };
            let outcome = walk::run_walk(&graph, &ctx, &message, start_j)?;
            println!("{}", serde_json::to_string(&outcome).map_err(Error::from)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Export { input, dot, json } => {
            if dot == json {
                return Err(CliError::Usage("pass exactly one of --dot or --json".into()));
            }
            let text = std::fs::read_to_string(&input).map_err(Error::from)?;
            let graph = IsogenyGraph::from_json_str(&text)?;
            if dot {
                print!("{}", graph.to_dot());
            } else {
                println!("{}", graph.to_json_pretty());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Resolve and load Phi_l: an explicit --modpoly path wins, otherwise look
/// for phi_j_<l>.txt under --modpoly-dir (or SSIG_MODPOLY_DIR).
fn load_level(
    p: u64,
    l: u64,
    modpoly: Option<&Path>,
    modpoly_dir: Option<&Path>,
) -> CliResult<(FieldCtx, ModPoly)> {
    let ctx = FieldCtx::new(p)?;
    if l == p {
        return Err(Error::LEqualsP(l).into());
    }
    if !is_prime_u64(l) {
        return Err(Error::NotPrime(l).into());
    }
    let path = match (modpoly, modpoly_dir) {
        (Some(path), _) => path.to_path_buf(),
        (None, Some(dir)) => dir.join(format!("phi_j_{l}.txt")),
        (None, None) => {
            return Err(CliError::Usage(
                "no modular polynomial source: pass --modpoly, --modpoly-dir, or set SSIG_MODPOLY_DIR".into(),
            ))
        }
    };
    let phi = ModPoly::load(&path, l, &ctx)?;
    Ok((ctx, phi))
}

fn pipeline(ctx: &FieldCtx, phi: &ModPoly, seed: u64) -> CliResult<(TheoremVerdict, IsogenyGraph)> {
    let graph = IsogenyGraph::build(ctx, phi, seed)?;
    let verdict = hecke_pipeline_verdict(&graph)?;
    Ok((verdict, graph))
}

fn describe_verdict(graph: &IsogenyGraph, v: &TheoremVerdict) {
    eprintln!(
        "G({}, {}): {} vertices (g = {}), T_l generates: {}, Aut* order {} \
         (abelian: {}, exponent {}), Aut* = {{id, Fr}}: {}, consistent: {}",
        v.p,
        v.l,
        graph.vertex_count(),
        graph.genus(),
        v.condition_holds,
        v.aut_order,
        v.aut_structure.is_abelian,
        v.aut_structure.exponent,
        v.aut_equals_id_frob,
        v.consistent_with_theorem,
    );
    if let Some(sym) = v.aut_order_symmetrized {
        eprintln!(
            "note: forgetting edge directions changes the automorphism order: {} directed vs {} symmetrized",
            v.aut_order, sym
        );
    }
}

#[derive(Serialize)]
struct ScanRow {
    l: u64,
    generates: bool,
    aut_order: usize,
    vertex_count: usize,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct ScanSummary {
    p: u64,
    lmax: u64,
    rows: usize,
    generates_true: usize,
    generates_fraction: String,
    inconsistencies: usize,
    skipped_missing: Vec<u64>,
}

fn scan(p: u64, lmax: u64, modpoly_dir: Option<&Path>, seed: u64) -> CliResult<ExitCode> {
    let ctx = FieldCtx::new(p)?;
    let Some(dir) = modpoly_dir else {
        return Err(CliError::Usage(
            "scan needs --modpoly-dir or SSIG_MODPOLY_DIR".into(),
        ));
    };
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    for l in 2..=lmax {
        if !is_prime_u64(l) {
            continue;
        }
        if l == p {
            eprintln!("skipping l = {l} = p");
            continue;
        }
        let path = dir.join(format!("phi_j_{l}.txt"));
        if path.is_file() {
            levels.push((l, path));
        } else {
            eprintln!("warning: no data for l = {l} ({})", path.display());
            skipped.push(l);
        }
    }

    // independent pipelines; deterministic output order restored by sorting
    let mut results: Vec<(u64, ScanRow, bool)> = levels
        .par_iter()
        .map(|(l, path)| -> Result<(u64, ScanRow, bool), Error> {
            let t0 = Instant::now();
            let phi = ModPoly::load(path, *l, &ctx)?;
            let graph = IsogenyGraph::build(&ctx, &phi, seed)?;
            let verdict = hecke_pipeline_verdict(&graph)?;
            let row = ScanRow {
                l: *l,
                generates: verdict.condition_holds,
                aut_order: verdict.aut_order,
                vertex_count: graph.vertex_count(),
                elapsed_ms: t0.elapsed().as_millis() as u64,
            };
            Ok((*l, row, verdict.consistent_with_theorem))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    results.sort_by_key(|&(l, ..)| l);

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut generates_true = 0;
    let mut inconsistencies = 0;
    for (_, row, consistent) in &results {
        if row.generates {
            generates_true += 1;
        }
        if !consistent {
            inconsistencies += 1;
        }
        writeln!(out, "{}", serde_json::to_string(row).map_err(Error::from)?).map_err(Error::from)?;
    }
    let summary = ScanSummary {
        p,
        lmax,
        rows: results.len(),
        generates_true,
        generates_fraction: format!("{generates_true}/{}", results.len()),
        inconsistencies,
        skipped_missing: skipped,
    };
    writeln!(out, "{}", serde_json::to_string(&summary).map_err(Error::from)?).map_err(Error::from)?;
    eprintln!(
        "scan p = {p}: {}/{} levels generate; {} inconsistencies",
        generates_true,
        results.len(),
        inconsistencies
    );
    if inconsistencies > 0 {
        Ok(ExitCode::from(4))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

