use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dalpha_core::bounds::{BoundContext, BoundReport, IntervalReport};
use dalpha_core::census::{census, filter_census, Family, Filter};
use dalpha_core::graph::graph6::{emit_graph6, parse_graph6, write_graph6};
use dalpha_core::graph::{families, DistanceProfile, EdgeList};
use dalpha_core::par::Exec;
use dalpha_core::report::sig15_vec;
use dalpha_core::spectral::{energy_of, spectrum_from_profile};
use dalpha_core::transforms::{Branches, ThreeParts, Transform};
use dalpha_core::verify::{run_suite, SuiteConfig};
use dalpha_core::{Alpha, Error, Graph, Tolerances};

mod input;

use input::{parse_orders, GraphLines};

/// Distance α-matrix spectra, bounds, graft transformations and extremal checks.
#[derive(Parser)]
#[command(name = "dalpha", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// α value in [0,1); repeat for several. Defaults to the standard 12-point grid.
    #[arg(long = "alpha", global = true)]
    alphas: Vec<Alpha>,
    /// Eigen-residual tolerance factor (band is tol·(1+T_max)).
    #[arg(long, global = true)]
    tol_residual: Option<f64>,
    /// Strict-inequality tolerance factor (band is tol·(1+|value|)).
    #[arg(long, global = true)]
    tol_strict: Option<f64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, env = "DALPHA_WORKERS")]
    workers: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral radius, spectrum, Perron vector, transmissions, σ and energy per graph and α.
    Compute {
        /// graph6 (or JSON edge-list) files, one graph per line; stdin when absent.
        inputs: Vec<PathBuf>,
    },
    /// Every closed-form bound with its tightness verdict, per graph and α.
    Bounds { inputs: Vec<PathBuf> },
    /// Run the extremal-theorem suite.
    Verify {
        /// JSON suite configuration; missing fields take defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Orders to check, e.g. `7`, `4..7` or `4,5,9`; overrides the config.
        #[arg(long)]
        n: Option<String>,
        /// Seed for transform instances and census sampling.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Enumerate a census as graph6 lines (with a JSON sidecar when --out is set).
    Census {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// `max_degree=K`, `clique=K`, `odd_cycle` or `exclude=<named>`; repeatable.
        #[arg(long)]
        filter: Vec<Filter>,
    },
    /// Apply a graft transformation and check its claimed effect on μ_α.
    Transform {
        /// contract, relocate, shift_pair, transfer or shift_two_site.
        name: String,
        /// Input graph (graph6 or a named family such as `path:6`).
        #[arg(long)]
        graph: String,
        /// Parameters as JSON, e.g. `{"u":1,"v":2}`.
        #[arg(long, default_value = "{}")]
        params: String,
    },
}

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NonConvergence { .. } | Error::EigenSolver { .. }) => EXIT_NUMERIC,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let c = &cli.common;
    let exec = executor(c.workers)?;
    match &cli.command {
        Command::Compute { inputs } => stream(c, inputs, exec, compute_record),
        Command::Bounds { inputs } => stream(c, inputs, exec, bounds_record),
        Command::Verify { config, n, seed } => verify(c, exec, config.as_deref(), n.as_deref(), *seed),
        Command::Census { family, n, filter } => cmd_census(c, *family, *n, filter),
        Command::Transform { name, graph, params } => cmd_transform(c, name, graph, params),
    }
}

fn executor(workers: Option<usize>) -> anyhow::Result<Exec> {
    match workers {
        Some(0) => Err(Error::Config("--workers must be positive".into()).into()),
        Some(1) => Ok(Exec::Sequential),
        Some(_k) => {
            #[cfg(feature = "parallel")]
            rayon::ThreadPoolBuilder::new()
                .num_threads(_k)
                .build_global()
                .map_err(|e| anyhow::anyhow!("worker pool: {e}"))?;
            Ok(Exec::Parallel)
        }
        None => Ok(Exec::Parallel),
    }
}

fn tolerances(c: &Common, base: Tolerances) -> anyhow::Result<Tolerances> {
    let mut t = base;
    if let Some(r) = c.tol_residual {
        t.residual = r;
    }
    if let Some(s) = c.tol_strict {
        t.strict = s;
    }
    t.validate()?;
    Ok(t)
}

fn alphas(c: &Common) -> Vec<Alpha> {
    if c.alphas.is_empty() {
        Alpha::default_grid()
    } else {
        c.alphas.clone()
    }
}

fn output(c: &Common) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &c.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// One output row: the record itself, or an error tied to the input line.
enum Row {
    Records(Vec<serde_json::Value>),
    Error { numeric: bool, value: serde_json::Value },
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    index: usize,
    input: &'a str,
    error: String,
}

enum Sink {
    Json(Box<dyn Write>),
    Csv(csv::Writer<Box<dyn Write>>, bool),
}

type Handler = fn(&Graph, &[Alpha], &Tolerances) -> dalpha_core::Result<Vec<serde_json::Value>>;

const CHUNK: usize = 512;

/// Streams input lines in chunks, fanning each chunk out over the workers and
/// writing rows back in input order.
fn stream(c: &Common, inputs: &[PathBuf], exec: Exec, handler: Handler) -> anyhow::Result<u8> {
    let tol = tolerances(c, Tolerances::default())?;
    let alphas = alphas(c);
    let readers: Vec<Box<dyn BufRead>> = if inputs.is_empty() {
        vec![Box::new(BufReader::new(io::stdin()))]
    } else {
        inputs
            .iter()
            .map(|p| -> anyhow::Result<Box<dyn BufRead>> {
                let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
                Ok(Box::new(BufReader::new(f)))
            })
            .collect::<anyhow::Result<_>>()?
    };
    let mut sink = match c.format {
        Format::Json => Sink::Json(output(c)?),
        Format::Csv => Sink::Csv(csv::Writer::from_writer(output(c)?), false),
    };
    let mut numeric_failure = false;
    let mut lines = GraphLines::new(readers);
    loop {
        let chunk = lines.next_chunk(CHUNK)?;
        if chunk.is_empty() {
            break;
        }
        let rows = exec.map(&chunk, |(index, text)| {
            let parsed = input::parse_line(text).and_then(|g| handler(&g, &alphas, &tol));
            match parsed {
                Ok(records) => Row::Records(records),
                Err(e) => Row::Error {
                    numeric: matches!(e, Error::NonConvergence { .. } | Error::EigenSolver { .. }),
                    value: serde_json::to_value(ErrorRecord {
                        index: *index,
                        input: text,
                        error: e.to_string(),
                    })
                    .expect("error record"),
                },
            }
        });
        for ((index, _), row) in chunk.iter().zip(rows) {
            let records = match row {
                Row::Records(r) => r,
                Row::Error { numeric, value } => {
                    numeric_failure |= numeric;
                    vec![value]
                }
            };
            for mut rec in records {
                if let Some(obj) = rec.as_object_mut() {
                    obj.entry("index").or_insert((*index).into());
                }
                match &mut sink {
                    Sink::Csv(w, header_done) => write_csv_row(w, &rec, header_done)?,
                    Sink::Json(out) => {
                        serde_json::to_writer(&mut *out, &rec)?;
                        out.write_all(b"\n")?;
                    }
                }
            }
        }
    }
    match &mut sink {
        Sink::Json(out) => out.flush()?,
        Sink::Csv(w, _) => w.flush()?,
    }
    Ok(if numeric_failure { EXIT_NUMERIC } else { 0 })
}

const CSV_COLUMNS: [&str; 8] = ["index", "graph6", "alpha", "mu", "sigma", "energy", "name", "error"];

/// Flattens a record to the fixed CSV columns; nested values are written as JSON.
fn write_csv_row(w: &mut csv::Writer<Box<dyn Write>>, rec: &serde_json::Value, header_done: &mut bool) -> anyhow::Result<()> {
    if !*header_done {
        w.write_record(CSV_COLUMNS)?;
        *header_done = true;
    }
    let cell = |k: &str| match rec.get(k) {
        None | Some(serde_json::Value::Null) => String::new(),
        Some(serde_json::Value::String(s)) => s.clone(),
        Some(v) => v.to_string(),
    };
    let name = if rec.get("bounds").is_some() { "bounds".to_string() } else { cell("name") };
    let row: Vec<String> = CSV_COLUMNS
        .iter()
        .map(|&k| if k == "name" { name.clone() } else { cell(k) })
        .collect();
    w.write_record(&row)?;
    Ok(())
}

#[derive(Serialize)]
struct ComputeRecord<'a> {
    graph6: String,
    alpha: &'a Alpha,
    #[serde(serialize_with = "dalpha_core::report::sig15")]
    mu: f64,
    #[serde(serialize_with = "sig15_vec")]
    spectrum: Vec<f64>,
    #[serde(serialize_with = "sig15_vec")]
    perron: Vec<f64>,
    transmissions: &'a [u64],
    sigma: u64,
    #[serde(serialize_with = "dalpha_core::report::sig15")]
    energy: f64,
}

fn compute_record(g: &Graph, alphas: &[Alpha], tol: &Tolerances) -> dalpha_core::Result<Vec<serde_json::Value>> {
    let profile = DistanceProfile::new(g)?;
    let g6 = emit_graph6(g);
    alphas
        .iter()
        .map(|a| {
            let s = spectrum_from_profile(&profile, a.value(), tol)?;
            let rec = ComputeRecord {
                graph6: g6.clone(),
                alpha: a,
                mu: s.mu,
                energy: energy_of(&s.eigenvalues, a.value(), profile.sigma, profile.n()),
                spectrum: s.eigenvalues,
                perron: s.perron,
                transmissions: &profile.transmissions,
                sigma: profile.sigma,
            };
            Ok(serde_json::to_value(rec)?)
        })
        .collect()
}

#[derive(Serialize)]
struct BoundsRecord<'a> {
    graph6: String,
    alpha: &'a Alpha,
    #[serde(serialize_with = "dalpha_core::report::sig15")]
    mu: f64,
    bounds: Vec<BoundReport>,
    interval: IntervalReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap_skipped: Option<String>,
}

fn bounds_record(g: &Graph, alphas: &[Alpha], tol: &Tolerances) -> dalpha_core::Result<Vec<serde_json::Value>> {
    let g6 = emit_graph6(g);
    alphas
        .iter()
        .map(|a| {
            let ctx = BoundContext::new(g, a.value(), tol)?;
            let rec = BoundsRecord {
                graph6: g6.clone(),
                alpha: a,
                mu: ctx.spectrum.mu,
                bounds: ctx.all(),
                interval: ctx.nonmaximal_interval(),
                gap_skipped: ctx.gap_nontransmission_regular().err().map(|e| e.to_string()),
            };
            Ok(serde_json::to_value(rec)?)
        })
        .collect()
}

fn verify(c: &Common, exec: Exec, config: Option<&Path>, n: Option<&str>, seed: Option<u64>) -> anyhow::Result<u8> {
    let mut cfg = match config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str::<SuiteConfig>(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
        }
        None => SuiteConfig::default(),
    };
    if !c.alphas.is_empty() {
        cfg.alphas = c.alphas.clone();
    }
    if let Some(spec) = n {
        cfg.set_orders(&parse_orders(spec)?);
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.tolerances = tolerances(c, cfg.tolerances)?;
    let report = run_suite(&cfg, exec)?;
    let mut out = output(c)?;
    match c.format {
        Format::Json => out.write_all(report.to_json()?.as_bytes())?,
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush()?;
    let failing: Vec<_> = report.failing().collect();
    for r in &failing {
        eprintln!("FAIL {} n={:?} {}: {}", r.theorem_id, r.n_range, r.params, r.failures.join("; "));
    }
    eprintln!(
        "{} checks, {} failed",
        report.reports.len(),
        failing.len()
    );
    Ok(if report.passed { 0 } else { EXIT_VERIFY })
}

fn cmd_census(c: &Common, family: Family, n: usize, filters: &[Filter]) -> anyhow::Result<u8> {
    let mut cen = census(family, n)?;
    for f in filters {
        cen = filter_census(&cen, f)?;
    }
    match &c.out {
        Some(p) => {
            cen.export(p)?;
            eprintln!("{} graphs written to {}", cen.len(), p.display());
        }
        None => {
            let mut out = output(c)?;
            write_graph6(&mut out, &cen.graphs)?;
            out.flush()?;
        }
    }
    Ok(0)
}

fn graph_arg(text: &str) -> dalpha_core::Result<Graph> {
    if text.contains(':') || text == "petersen" {
        families::named(text)
    } else if text.trim_start().starts_with('{') {
        let list: EdgeList = serde_json::from_str(text)?;
        Graph::from_edge_list_json(&list)
    } else {
        parse_graph6(text.trim())
    }
}

fn transform_from(name: &str, params: &str) -> anyhow::Result<Transform> {
    let v: serde_json::Value =
        serde_json::from_str(params).map_err(|e| Error::Config(format!("--params: {e}")))?;
    let field = |k: &str| -> anyhow::Result<serde_json::Value> {
        v.get(k)
            .cloned()
            .ok_or_else(|| Error::Config(format!("{name} needs parameter {k:?}")).into())
    };
    let num = |k: &str| -> anyhow::Result<usize> {
        field(k)?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::Config(format!("parameter {k:?} must be a nonnegative integer")).into())
    };
    let typed = |k: &str| -> anyhow::Result<serde_json::Value> { field(k) };
    Ok(match name {
        "contract" | "contract_cut_edge_to_pendant" => Transform::Contract { u: num("u")?, v: num("v")? },
        "relocate" | "relocate_branches" => Transform::Relocate {
            branches: Branches {
                u: num("u")?,
                parts: serde_json::from_value(typed("parts")?).map_err(|e| Error::Config(e.to_string()))?,
            },
            k_set: serde_json::from_value(typed("k_set")?).map_err(|e| Error::Config(e.to_string()))?,
            v1: num("v1")?,
            v2: num("v2")?,
        },
        "shift_pair" | "shift_pendant_path_pair" => Transform::ShiftPair {
            u: num("u")?,
            p: num("p")?,
            q: num("q")?,
        },
        "transfer" | "transfer_neighbor_sets" => Transform::Transfer {
            parts: ThreeParts {
                u: num("u")?,
                v: num("v")?,
                g1: serde_json::from_value(typed("g1")?).map_err(|e| Error::Config(e.to_string()))?,
                g2: serde_json::from_value(typed("g2")?).map_err(|e| Error::Config(e.to_string()))?,
                g3: serde_json::from_value(typed("g3")?).map_err(|e| Error::Config(e.to_string()))?,
            },
            u_prime: num("u_prime")?,
            v_prime: num("v_prime")?,
        },
        "shift_two_site" | "shift_two_site_pendant_paths" => Transform::ShiftTwoSite {
            u: num("u")?,
            v: num("v")?,
            p: num("p")?,
            q: num("q")?,
        },
        other => return Err(Error::Config(format!("unknown transformation {other:?}")).into()),
    })
}

fn cmd_transform(c: &Common, name: &str, graph: &str, params: &str) -> anyhow::Result<u8> {
    let tol = tolerances(c, Tolerances::default())?;
    let g = graph_arg(graph)?;
    let t = transform_from(name, params)?;
    let applied = t.apply(&g)?;
    let outcomes = alphas(c)
        .iter()
        .map(|a| applied.outcome(a.value(), &tol))
        .collect::<dalpha_core::Result<Vec<_>>>()?;
    let mut out = output(c)?;
    serde_json::to_writer_pretty(&mut out, &outcomes)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(if outcomes.iter().all(|o| o.claim_verified) { 0 } else { EXIT_VERIFY })
}
