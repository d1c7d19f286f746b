//! Subcommand bodies. Each returns the process exit code or a [`CliError`].

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use antimagic::graph::generate;
use antimagic::io::{
    labeling_json, lists_json, read_labeling, read_lists, read_weighting, solve_result_json, to_text,
    weighting_json,
};
use antimagic::oracle::{brute_force, sweep_min_k, OracleAnswer, OracleMode, OracleQuery, OracleVariant, SweepConfig};
use antimagic::pipeline::{solve as run_pipeline, SolveRequest, Variant};
use antimagic::poly::{certify_reduction_monomial, ReductionMode};
use antimagic::sample::{adversarial_lists, adversarial_weighting, rng};
use antimagic::search::SearchConfig;
use antimagic::verify::{verify_quasi_antimagic, Exemption, LabelDomain, SumMode, VerifyOptions};
use antimagic::{Error, Graph, ListAssignment, Rational, Weighting};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{
    CertifyArgs, Format, GenArgs, GenKind, ModeArg, OracleArgs, OracleVariantArg, SolveArgs, SweepArgs, VariantArg,
    VerifyArgs,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable input.
    Usage(String),
    /// The run itself failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Failure(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::Contract(_)
            | Error::Schema { .. }
            | Error::Infeasible { .. } => CliError::Usage(e.to_string()),
            Error::Certificate(_) | Error::Unsolved(_) | Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => {
                CliError::Failure(e.to_string())
            }
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::WeightedList => Variant::WeightedList,
            VariantArg::Oriented => Variant::Oriented,
        }
    }
}

impl From<OracleVariantArg> for OracleVariant {
    fn from(v: OracleVariantArg) -> Self {
        match v {
            OracleVariantArg::Antimagic => OracleVariant::Antimagic,
            OracleVariantArg::QuasiAntimagic => OracleVariant::QuasiAntimagic,
            OracleVariantArg::QuasiOriented => OracleVariant::QuasiOriented,
        }
    }
}

fn read_text(path: Option<&Path>) -> CliResult<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&Path>) -> CliResult<Graph> {
    let text = read_text(path)?;
    Graph::parse(&text).map_err(|e| {
        let name = path.map_or("stdin".into(), |p| p.display().to_string());
        CliError::Usage(format!("{name}: {e}"))
    })
}

/// Graphs in input order, paired with a display name.
fn read_graphs(paths: &[PathBuf]) -> CliResult<Vec<(String, Graph)>> {
    if paths.is_empty() {
        return Ok(vec![("-".into(), read_graph(None)?)]);
    }
    paths
        .iter()
        .map(|p| Ok((p.display().to_string(), read_graph(Some(p))?)))
        .collect()
}

/// Runs `f` over `items` on `jobs` threads; results keep input order.
fn batch<T, R, F>(jobs: usize, items: &[T], f: F) -> CliResult<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect()))
}

fn emit(text: &str) -> CliResult<()> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Failure(format!("stdout: {e}")))
}

fn emit_json_batch(docs: Vec<Value>) -> CliResult<()> {
    let value = if docs.len() == 1 {
        docs.into_iter().next().expect("one document")
    } else {
        Value::Array(docs)
    };
    emit(&to_text(&value))
}

fn emit_csv(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Failure(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(format!("csv: {e}")))?;
    emit(&String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

struct SolveInput {
    name: String,
    request: SolveRequest<Rational>,
    /// Weighted-list inputs given or sampled, echoed into the output so a
    /// later `verify` sees the same instance.
    echo_weights: bool,
    echo_lists: bool,
}

pub fn solve(args: SolveArgs) -> CliResult<ExitCode> {
    let variant = Variant::from(args.variant);
    let graphs = read_graphs(&args.graphs)?;
    let weights_text = args.weights.as_deref().map(|p| read_text(Some(p))).transpose()?;
    let lists_text = args.lists.as_deref().map(|p| read_text(Some(p))).transpose()?;
    let mut search = SearchConfig::default();
    if let Some(budget) = args.budget {
        search.budget = budget;
    }

    let mut inputs = Vec::new();
    for (i, (name, g)) in graphs.into_iter().enumerate() {
        let mut request = SolveRequest::new(g.clone(), variant).with_search(search);
        if let Some(k) = args.k {
            request = request.with_k(k);
        }
        let (mut echo_weights, mut echo_lists) = (false, false);
        if variant == Variant::WeightedList {
            let mut r = args.seed.map(|s| rng(s.wrapping_add(i as u64)));
            if let Some(text) = &weights_text {
                request = request.with_weighting(read_weighting(text, &g)?);
                echo_weights = true;
            } else if let Some(r) = r.as_mut() {
                request = request.with_weighting(adversarial_weighting(&g, r));
                echo_weights = true;
            }
            if let Some(text) = &lists_text {
                request = request.with_lists(read_lists(text, &g)?);
                echo_lists = true;
            } else if let Some(r) = r.as_mut() {
                let size = g.m() + request.k() as usize;
                request = request.with_lists(adversarial_lists(&g, size, 2, r));
                echo_lists = true;
            }
        } else if args.weights.is_some() || args.lists.is_some() {
            return Err(CliError::Usage("--weights and --lists apply to the weighted-list variant only".into()));
        }
        inputs.push(SolveInput {
            name,
            request,
            echo_weights,
            echo_lists,
        });
    }

    let results = batch(args.common.jobs, &inputs, |_, input| run_pipeline(&input.request))?;
    let mut all_ok = true;
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    for (input, result) in inputs.iter().zip(results) {
        let g = &input.request.graph;
        match result {
            Ok(res) => {
                for event in &res.trace {
                    log::debug!("{}: {}", input.name, serde_json::to_string(event).expect("trace events serialize"));
                }
                all_ok &= res.report.ok;
                let mut doc = solve_result_json(&res, args.trace);
                let map = doc.as_object_mut().expect("object");
                if input.echo_weights {
                    map.insert("weights".into(), weighting_json(&input.request.weighting)["weights"].take());
                }
                if let (true, Some(lists)) = (input.echo_lists, &input.request.lists) {
                    map.insert("lists".into(), lists_json(lists)["lists"].take());
                }
                docs.push(doc);
                rows.push(vec![
                    input.name.clone(),
                    g.n().to_string(),
                    g.m().to_string(),
                    variant.name().into(),
                    res.k.to_string(),
                    if res.report.ok { "ok" } else { "violations" }.into(),
                    String::new(),
                ]);
            }
            Err(e) => {
                if inputs.len() == 1 {
                    return Err(e.into());
                }
                all_ok = false;
                log::warn!("{}: {e}", input.name);
                docs.push(json!({ "input": input.name, "error": e.to_string() }));
                rows.push(vec![
                    input.name.clone(),
                    g.n().to_string(),
                    g.m().to_string(),
                    variant.name().into(),
                    input.request.k().to_string(),
                    "error".into(),
                    e.to_string(),
                ]);
            }
        }
    }
    match args.common.format {
        Format::Json => emit_json_batch(docs)?,
        Format::Csv => emit_csv(&["input", "n", "m", "variant", "k", "status", "error"], rows)?,
    }
    Ok(code(all_ok))
}

pub fn verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let g = read_graph(Some(&args.graph))?;
    let text = read_text(args.labeling.as_deref())?;
    let doc = read_labeling(&text, &g)?;
    let embedded: Value = serde_json::from_str(&text).expect("read_labeling accepted the document");

    let variant = args
        .variant
        .map(Variant::from)
        .or(doc.variant)
        .unwrap_or(Variant::WeightedList);
    let k = args.k.or(doc.k).unwrap_or_else(|| variant.bound(g.n()));
    let max = g.m() as u64 + k;

    let weights = match (&args.weights, embedded.get("weights")) {
        (Some(p), _) => read_weighting(&read_text(Some(p))?, &g)?,
        (None, Some(_)) => read_weighting(&text, &g)?,
        (None, None) => Weighting::zero(),
    };
    let lists = match (&args.lists, embedded.get("lists")) {
        (Some(p), _) => read_lists(&read_text(Some(p))?, &g)?,
        (None, Some(_)) => read_lists(&text, &g)?,
        (None, None) => ListAssignment::uniform_range(&g, max),
    };
    let opts = match variant {
        Variant::WeightedList => VerifyOptions {
            mode: SumMode::Weighted(&weights),
            domain: LabelDomain::Lists(&lists),
            exemption: if args.relaxed_k2 {
                Exemption::IsolatedAndK2Component
            } else {
                Exemption::IsolatedAndK2Pair
            },
        },
        Variant::Oriented => {
            if doc.labeling.orientation().is_none() {
                return Err(CliError::Usage("oriented labelings need an \"orientation\" object".into()));
            }
            VerifyOptions::quasi_oriented(max)
        }
    };
    let report = verify_quasi_antimagic(&g, &doc.labeling, &opts)?;
    match args.format {
        Format::Json => {
            let value = json!({
                "variant": variant.name(),
                "k": k,
                "ok": report.ok,
                "violations": serde_json::to_value(&report.violations).expect("violations serialize"),
            });
            emit(&to_text(&value))?;
        }
        Format::Csv => {
            let kinds: Vec<String> = serde_json::to_value(&report.violations)
                .expect("violations serialize")
                .as_array()
                .map(|a| a.iter().filter_map(|v| v["kind"].as_str().map(str::to_owned)).collect())
                .unwrap_or_default();
            emit_csv(
                &["variant", "k", "ok", "violations", "kinds"],
                vec![vec![
                    variant.name().into(),
                    k.to_string(),
                    report.ok.to_string(),
                    report.violations.len().to_string(),
                    kinds.join(";"),
                ]],
            )?;
        }
    }
    Ok(code(report.ok))
}

fn parse_range(text: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Usage(format!("expected a range A..B, found {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a < 4 || b < a {
        return Err(CliError::Usage(format!("range {text:?} must satisfy 4 <= A <= B")));
    }
    Ok((a, b))
}

pub fn certify(args: CertifyArgs) -> CliResult<ExitCode> {
    let (lo, hi) = parse_range(&args.n_range)?;
    let modes: &[ReductionMode] = match args.mode {
        ModeArg::Undirected => &[ReductionMode::Undirected],
        ModeArg::Oriented => &[ReductionMode::Oriented],
        ModeArg::Both => &[ReductionMode::Undirected, ReductionMode::Oriented],
    };
    let jobs: Vec<(ReductionMode, u32)> = modes.iter().flat_map(|&m| (lo..=hi).map(move |n| (m, n))).collect();
    let certs = batch(args.common.jobs, &jobs, |_, &(mode, n)| certify_reduction_monomial(n, mode))?
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let all_nonzero = certs.iter().all(|c| c.nonzero);
    match args.common.format {
        Format::Json => {
            let docs = certs
                .iter()
                .map(|c| serde_json::to_value(c).expect("certificates serialize"))
                .collect();
            emit(&to_text(&Value::Array(docs)))?;
        }
        Format::Csv => {
            let rows = certs
                .iter()
                .map(|c| {
                    vec![
                        c.mode.to_string(),
                        c.n.to_string(),
                        c.abc[0].to_string(),
                        c.abc[1].to_string(),
                        c.abc[2].to_string(),
                        c.coefficient.to_string(),
                        c.nonzero.to_string(),
                    ]
                })
                .collect();
            emit_csv(&["mode", "n", "a", "b", "c", "coefficient", "nonzero"], rows)?;
        }
    }
    Ok(code(all_nonzero))
}

pub fn oracle(args: OracleArgs) -> CliResult<ExitCode> {
    let g = read_graph(args.graph.as_deref())?;
    let variant = OracleVariant::from(args.variant);
    let mode = if args.count {
        OracleMode::Count
    } else if args.find {
        OracleMode::FindOne
    } else {
        OracleMode::Exists
    };
    let mut q = OracleQuery::<Rational>::new(g.clone(), variant, args.k).mode(mode).cap(args.cap);
    if let Some(p) = &args.weights {
        q = q.weighting(read_weighting(&read_text(Some(p))?, &g)?);
    }
    if let Some(p) = &args.lists {
        q = q.lists(read_lists(&read_text(Some(p))?, &g)?);
    }
    let res = brute_force(&q)?;
    let answer = match &res.answer {
        OracleAnswer::Exists(b) => json!({ "exists": b }),
        OracleAnswer::Found(f) => json!({
            "exists": f.is_some(),
            "labeling": f.as_ref().map(|f| labeling_json(f, Some(args.k), None)),
        }),
        OracleAnswer::Count(c) => json!({ "exists": *c > 0, "count": c.to_string() }),
    };
    let value = json!({
        "variant": variant.name(),
        "k": args.k,
        "answer": answer,
        "nodes": res.nodes,
        "estimate": res.estimate.to_string(),
    });
    emit(&to_text(&value))?;
    Ok(ExitCode::SUCCESS)
}

fn default_bound(variant: OracleVariant, n: usize) -> u64 {
    match variant {
        OracleVariant::QuasiOriented => Variant::Oriented.bound(n),
        _ => Variant::WeightedList.bound(n),
    }
}

pub fn sweep(args: SweepArgs) -> CliResult<ExitCode> {
    let variant = OracleVariant::from(args.variant);
    let graphs = read_graphs(&args.graphs)?;
    let reports = batch(args.common.jobs, &graphs, |i, (_, g)| {
        let mut r = rng(args.seed.wrapping_add(i as u64));
        let weightings = (0..args.samples).map(|_| adversarial_weighting(g, &mut r)).collect();
        let config = SweepConfig {
            variant,
            k_max: args.k_max.unwrap_or_else(|| default_bound(variant, g.n())),
            weightings,
            list_seed: args.with_lists.then(|| args.seed.wrapping_add(i as u64)),
            cap: args.cap,
        };
        sweep_min_k(g, &config)
    })?;
    let all_found = reports.iter().all(|r| r.min_k.is_some());
    match args.common.format {
        Format::Json => {
            let docs = graphs
                .iter()
                .zip(&reports)
                .map(|((name, g), rep)| {
                    json!({
                        "input": name,
                        "n": g.n(),
                        "m": g.m(),
                        "bound": default_bound(variant, g.n()),
                        "report": serde_json::to_value(rep).expect("reports serialize"),
                    })
                })
                .collect();
            emit_json_batch(docs)?;
        }
        Format::Csv => {
            let rows = graphs
                .iter()
                .zip(&reports)
                .map(|((name, g), rep)| {
                    vec![
                        name.clone(),
                        g.n().to_string(),
                        g.m().to_string(),
                        variant.name().into(),
                        rep.samples.to_string(),
                        rep.k_max.to_string(),
                        default_bound(variant, g.n()).to_string(),
                        rep.min_k.map(|k| k.to_string()).unwrap_or_default(),
                        rep.capped.to_string(),
                    ]
                })
                .collect();
            emit_csv(
                &["input", "n", "m", "variant", "samples", "k_max", "bound", "min_k", "capped"],
                rows,
            )?;
        }
    }
    Ok(code(all_found))
}

pub fn gen(args: GenArgs) -> CliResult<ExitCode> {
    let n = args.n;
    let need = |min: usize| {
        if n < min {
            Err(CliError::Usage(format!("{:?} graphs need at least {min} vertices", args.kind)))
        } else {
            Ok(())
        }
    };
    let g = match args.kind {
        GenKind::Path => {
            need(1)?;
            generate::path(n)
        }
        GenKind::Cycle => {
            need(3)?;
            generate::cycle(n)
        }
        GenKind::Complete => generate::complete(n),
        GenKind::Wheel => {
            need(4)?;
            generate::wheel(n)
        }
        GenKind::Star => {
            need(1)?;
            generate::star(n - 1)
        }
        GenKind::Random => {
            if !(0.0..=1.0).contains(&args.p) {
                return Err(CliError::Usage(format!("--p must lie in [0, 1], found {}", args.p)));
            }
            generate::random_capped(n, args.p, args.max_degree.unwrap_or(n), &mut rng(args.seed))
        }
    };
    emit(&g.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}
