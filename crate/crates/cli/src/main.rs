use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chilab::detectors::{find_induced, PatternSpec};
use chilab::extraction::{broom_extract, gyarfas_extract, revalidate, stablechi_extract, ExtractOptions};
use chilab::graph::{parse_graph6, parse_sparse6, write_graph6};
use chilab::harness::{self, CheckSpec, Format, ScanConfig, Source};
use chilab::invariants::{exact_invariants_with_budget, RamseyTable, DEFAULT_BUDGET};
use chilab::scalar::parse_ratio;
use chilab::skeletons::{
    build_skeleton_step, find_skeleton, grow_skeleton, sparse_tree, validate_skeleton, SkeletonOptions,
    SKELETON_NODE_BUDGET,
};
use chilab::{Error, FamilySpec, Graph, Result};

#[derive(Parser)]
#[command(
    name = "chilab",
    version,
    about = "Chromatic-number bounds, induced subgraphs and tree skeletons on small graphs"
)]
struct Cli {
    /// Ramsey table replacing the bundled one.
    #[arg(long, global = true)]
    ramsey_table: Option<PathBuf>,
    /// Node budget for exact colouring.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Replaces the seed of `random:` sources.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as graph6.
    Gen {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact invariants of a graph.
    Inv { graph: String },
    /// Whether a graph contains none of the patterns as induced subgraphs.
    Free {
        graph: String,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
    },
    /// Run an extraction procedure and revalidate its certificate.
    Extract {
        #[arg(value_enum)]
        procedure: Procedure,
        graph: String,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Skeleton search and growth.
    Skeleton {
        #[arg(value_enum)]
        action: SkeletonAction,
        graph: String,
        #[command(flatten)]
        sparse: SparseArgs,
        #[arg(long, default_value = "1")]
        d: String,
        #[arg(long, default_value_t = 1)]
        h: usize,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Find an induced copy of a tree in a sparse graph.
    Tree {
        graph: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        sparse: SparseArgs,
        /// Skeleton width, only together with --force.
        #[arg(long)]
        width: Option<String>,
        #[arg(long)]
        force: bool,
    },
    /// Run checks over a graph source and write a report.
    Scan {
        #[arg(long)]
        source: String,
        /// `id` or `id(key=value,...)`; may be repeated.
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
        #[command(flatten)]
        params: CheckParams,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphs of a registered class with the largest chi / f(omega).
    Extremal {
        #[arg(long)]
        source: String,
        #[arg(long)]
        entry: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Maximum number of graphs examined.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Procedure {
    Gyarfas,
    Broom,
    Stablechi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SkeletonAction {
    Find,
    Grow,
    Step,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct SparseArgs {
    #[arg(long, default_value = "1/4")]
    c: String,
    #[arg(long, default_value_t = 1)]
    t: usize,
}

/// Overrides applied to every `--check`.
#[derive(Args)]
struct CheckParams {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    entry: Option<String>,
}

enum Status {
    Pass,
    Fail,
}

fn read_graph(text: &str) -> Result<Graph> {
    if text.starts_with(':') {
        return parse_sparse6(text);
    }
    match parse_graph6(text) {
        Ok(g) => Ok(g),
        Err(e) => text.parse::<FamilySpec>().map_or(Err(e), |spec| spec.generate()),
    }
}

fn emit(value: &impl Serialize, out: Option<&PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("output serialises");
    text.push('\n');
    write_text(&text, out)
}

fn write_text(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn source_with_seed(text: &str, seed: Option<u64>) -> Result<Source> {
    let mut source: Source = text.parse()?;
    if let (Source::Random { seed: s, .. }, Some(new)) = (&mut source, seed) {
        *s = new;
    }
    Ok(source)
}

#[derive(Serialize)]
struct InvOutput {
    graph6: String,
    n: usize,
    edges: usize,
    chi: usize,
    omega: usize,
    alpha: usize,
    degeneracy: usize,
}

#[derive(Serialize)]
struct FreeOutput {
    free: bool,
    pattern: Option<String>,
    witness: Option<Vec<usize>>,
}

fn run(cli: Cli) -> Result<Status> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let ramsey = match &cli.ramsey_table {
        Some(p) => RamseyTable::load(p)?,
        None => RamseyTable::bundled().clone(),
    };
    match cli.command {
        Command::Gen { spec, out } => {
            let g = spec.parse::<FamilySpec>()?.generate()?;
            write_text(&format!("{}\n", write_graph6(&g)), out.as_ref())?;
        }
        Command::Inv { graph } => {
            let g = read_graph(&graph)?;
            let inv = exact_invariants_with_budget(&g, budget)?;
            emit(
                &InvOutput {
                    graph6: write_graph6(&g),
                    n: g.n(),
                    edges: g.edge_count(),
                    chi: inv.chi,
                    omega: inv.omega,
                    alpha: inv.alpha,
                    degeneracy: inv.degeneracy,
                },
                None,
            )?;
        }
        Command::Free { graph, patterns } => {
            let g = read_graph(&graph)?;
            let mut result = FreeOutput {
                free: true,
                pattern: None,
                witness: None,
            };
            for text in &patterns {
                let p: PatternSpec = text.parse()?;
                if let Some(w) = find_induced(&g, &p)? {
                    result = FreeOutput {
                        free: false,
                        pattern: Some(p.to_string()),
                        witness: Some(w),
                    };
                    break;
                }
            }
            emit(&result, None)?;
        }
        Command::Extract {
            procedure,
            graph,
            s,
            q,
            k,
            l,
            force,
        } => {
            let g = read_graph(&graph)?;
            let opts = ExtractOptions { force, budget, ramsey };
            let (cert, trace) = match procedure {
                Procedure::Gyarfas => {
                    let e = gyarfas_extract(&g, s, q, k, &opts)?;
                    (e.certificate, Some(e.trace))
                }
                Procedure::Broom => {
                    let l = l.ok_or_else(|| Error::parameter("l", "the broom procedure needs --l"))?;
                    let e = broom_extract(&g, k, l, s, q, &opts)?;
                    (e.certificate, Some(e.trace))
                }
                Procedure::Stablechi => (stablechi_extract(&g, s, q, l, &opts)?, None),
            };
            let valid = revalidate(&g, &cert, q, budget).is_ok();
            emit(
                &serde_json::json!({ "certificate": cert, "trace": trace, "valid": valid }),
                None,
            )?;
            if !valid {
                return Ok(Status::Fail);
            }
        }
        Command::Skeleton {
            action,
            graph,
            sparse,
            d,
            h,
            root,
            force,
        } => {
            let g = read_graph(&graph)?;
            let c = parse_ratio(&sparse.c)?;
            let d = parse_ratio(&d)?;
            let opts = SkeletonOptions {
                force,
                budget: SKELETON_NODE_BUDGET,
                width: None,
            };
            match action {
                SkeletonAction::Find => {
                    if !d.is_integer() || d < chilab::scalar::int(1) {
                        return Err(Error::parameter("d", "find needs a positive integer d"));
                    }
                    let dc: usize = d
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::parameter("d", "too large"))?;
                    let sk = find_skeleton(&g, dc, h, root, SKELETON_NODE_BUDGET)?;
                    emit(&serde_json::json!({ "skeleton": sk }), None)?;
                }
                SkeletonAction::Grow => {
                    let sk = grow_skeleton(&g, &c, sparse.t, &d, h, &opts)?;
                    let valid = validate_skeleton(&g, &sk, &d, h).is_ok();
                    emit(&serde_json::json!({ "skeleton": sk, "valid": valid }), None)?;
                    if !valid {
                        return Ok(Status::Fail);
                    }
                }
                SkeletonAction::Step => {
                    let out = build_skeleton_step(&g, &c, sparse.t, &d, h, &opts)?;
                    emit(&out, None)?;
                }
            }
        }
        Command::Tree {
            graph,
            target,
            sparse,
            width,
            force,
        } => {
            let g = read_graph(&graph)?;
            let f = read_graph(&target)?;
            let opts = SkeletonOptions {
                force,
                budget: SKELETON_NODE_BUDGET,
                width: width.as_deref().map(parse_ratio).transpose()?,
            };
            let run = sparse_tree(&g, &f, &parse_ratio(&sparse.c)?, sparse.t, &opts)?;
            let valid = revalidate(&g, &run.certificate, 0, budget).is_ok();
            emit(&serde_json::json!({ "run": run, "valid": valid }), None)?;
            if !valid {
                return Ok(Status::Fail);
            }
        }
        Command::Scan {
            source,
            checks,
            params,
            format,
            out,
        } => {
            let source = source_with_seed(&source, cli.seed)?;
            let mut specs = Vec::with_capacity(checks.len());
            for text in &checks {
                let mut spec: CheckSpec = text.parse()?;
                let ints = [
                    ("m", params.m),
                    ("s", params.s),
                    ("k", params.k),
                    ("l", params.l),
                    ("q", params.q),
                ];
                for (key, v) in ints {
                    if let Some(v) = v {
                        spec.set(key, &v.to_string())?;
                    }
                }
                if let Some(e) = &params.eps {
                    spec.set("eps", e)?;
                }
                if let Some(e) = &params.entry {
                    spec.set("entry", e)?;
                }
                spec.validate()?;
                specs.push(spec);
            }
            let graphs = source.graphs()?;
            let report = harness::scan(&source.to_string(), &graphs, &specs, &ScanConfig { budget, ramsey })?;
            let format = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Csv => Format::Csv,
            };
            write_text(&harness::render(&report, format), out.as_ref())?;
            for s in &report.summaries {
                eprintln!(
                    "{}: {} pass, {} fail, {} skip, {} report, {} error, hypothesis met {}",
                    s.check, s.pass, s.fail, s.skip, s.report, s.error, s.hypothesis_met
                );
            }
            if report.failures() > 0 {
                return Ok(Status::Fail);
            }
            if report.errors() > 0 {
                return Err(Error::capability(
                    "scan",
                    format!("{} rows hit a capability limit", report.errors()),
                ));
            }
        }
        Command::Extremal {
            source,
            entry,
            top,
            limit,
            out,
        } => {
            let source = source_with_seed(&source, cli.seed)?;
            let bound = harness::lookup(&entry)?;
            let graphs = source.graphs()?;
            let result = harness::extremal_search(&graphs, &bound, top, limit.unwrap_or(usize::MAX), budget)?;
            emit(&result, out.as_ref())?;
        }
    }
    Ok(Status::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_capability_or_parameter() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
