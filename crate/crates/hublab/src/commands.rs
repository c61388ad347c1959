//! Command implementations. Each returns the run report; plain-text
//! results go to stdout.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use hublab_core::engine::{Engine, EngineOptions, QueryResult};
use hublab_core::graph::{
    bfs, diameter_of, dijkstra, gen_complete, gen_core_periphery, gen_cycle, gen_grid, gen_kary_tree,
    gen_partial_ktree, gen_path, gen_random_connected, gen_random_strong, gen_split, gen_star, median_of,
    oracle_ecc_dsum_with_witness, radius_of, Direction,
};
use hublab_core::indices::{brute_indices, CloserEngine, IndexOptions, IndexReport, SimpleEngine, Targets};
use hublab_core::labeling::{build_elimination, build_pruned, build_split, tighten, validate};
use hublab_core::sparse::{
    decide_diameter_le_k, depth_coloring, heuristic_forest, treedepth_exact, validate_low_td_coloring,
    DeciderOptions, ValidateOptions, EXACT_LIMIT,
};
use hublab_core::twdnc::{dnc_roundtrip, heuristic_td, DncOptions, TreeDecomposition};
use hublab_core::{DistanceMode, Graph, HubLabeling, Vertex, Weight};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::*;
use crate::formats::{self, Kind};
use crate::report::{big, bigint, rational, RunReport, Verdict};

pub fn dispatch(cli: &Cli) -> Outcome<RunReport> {
    let mut report = match &cli.command {
        Command::Gen(a) => gen(a, cli.seed)?,
        Command::Label(LabelCommand::Build(a)) => label_build(a, cli.seed)?,
        Command::Label(LabelCommand::Validate(a)) => label_validate(a)?,
        Command::Label(LabelCommand::Tighten(a)) => label_tighten(a)?,
        Command::Query(a) => query(a, cli.seed)?,
        Command::Stats(a) => stats(a, cli.seed)?,
        Command::Index(a) => index(a, cli.seed)?,
        Command::Twdnc(a) => twdnc(a)?,
        Command::Diamk(a) => diamk(a, cli.seed)?,
        Command::Oracle(a) => oracle(a)?,
        Command::Verify(a) => verify(a, cli.seed)?,
        Command::Bench(a) => bench(a, cli.seed)?,
    };
    report.param("seed", cli.seed);
    report.param("threads", rayon::current_num_threads());
    Ok(report)
}

/// A generated graph with whatever structure its generator exposes.
pub struct Generated {
    pub graph: Graph,
    pub td: Option<TreeDecomposition>,
    pub clique: Option<Vec<Vertex>>,
}

pub fn generate(a: &FamilyArgs, seed: u64) -> Outcome<Generated> {
    let plain = |graph| Generated { graph, td: None, clique: None };
    Ok(match a.family {
        Family::Path => plain(gen_path(a.n)?),
        Family::Cycle => plain(gen_cycle(a.n)?),
        Family::Star => plain(gen_star(a.n)?),
        Family::Grid => plain(gen_grid(a.n, if a.cols == 0 { a.n } else { a.cols })?),
        Family::Complete => plain(gen_complete(a.n)?),
        Family::Kary => plain(gen_kary_tree(a.n, a.fanout)?),
        Family::RandomConnected => plain(gen_random_connected(a.n, a.extra, seed)?),
        Family::RandomStrong => plain(gen_random_strong(a.n, a.m.unwrap_or(3 * a.n), a.wmax, seed)?),
        Family::CorePeriphery => plain(gen_core_periphery(a.n, a.core.min(a.n), a.extra, a.wmax, seed)?),
        Family::Split => {
            let k = a.k.min(a.n);
            let (graph, clique) = gen_split(k, a.n - k, a.p, seed)?;
            Generated { graph, td: None, clique: Some(clique) }
        }
        Family::PartialKtree => {
            let (graph, td) = gen_partial_ktree(a.n, a.k, a.p, seed)?;
            Generated { graph, td: Some(td), clique: None }
        }
    })
}

fn gen(a: &GenArgs, seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("gen");
    report.param("family", format!("{:?}", a.family.family).to_lowercase());
    report.param("n", a.family.n);
    let g = report.time("generate", || generate(&a.family, seed))?;
    if let (Some(path), Some(td)) = (&a.td_out, &g.td) {
        write_output(Some(path), &formats::write_td(td))?;
    }
    if let (Some(path), Some(clique)) = (&a.clique_out, &g.clique) {
        let text: String = clique.iter().map(|v| format!("{v}\n")).collect();
        write_output(Some(path), &text)?;
    }
    write_output(a.out.as_deref(), &formats::write_graph(&g.graph))?;
    report.results = json!({ "n": g.graph.n(), "arcs": g.graph.arc_count(), "directed": g.graph.is_directed() });
    Ok(report)
}

pub fn load_graph(path: &Path, report: &mut RunReport) -> Outcome<Graph> {
    let text = read_text(path, "graph", report)?;
    Ok(report.time("parse", || formats::parse_graph(&text))?)
}

/// Clique and stable set of a split graph from its degree sequence: with
/// degrees sorted descending, the clique is the longest prefix where the
/// `i`-th degree is at least `i - 1`.
pub fn split_partition(g: &Graph) -> Outcome<Vec<Vertex>> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = order.iter().enumerate().filter(|&(i, &v)| g.degree(v) >= i).map(|(i, _)| i + 1).max().unwrap_or(0);
    let mut clique = order[..m].to_vec();
    clique.sort_unstable();
    let mut inside = vec![false; g.n()];
    for &v in &clique {
        inside[v] = true;
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let ok = if inside[v] {
            nb.iter().filter(|&&w| inside[w]).count() + 1 == clique.len()
        } else {
            nb.iter().all(|&w| inside[w])
        };
        if !ok {
            return Err(Failure::Input("graph is not a split graph".into()));
        }
    }
    Ok(clique)
}

fn elimination_labels(g: &Graph) -> Outcome<HubLabeling> {
    let forest = treedepth_exact(g, EXACT_LIMIT)?.forest;
    Ok(build_elimination(g, &forest)?)
}

/// Labels for `g` from `--labels` or `--method`.
pub fn labels_for(g: &Graph, src: &LabelSource, report: &mut RunReport) -> Outcome<HubLabeling> {
    if let Some(path) = &src.labels {
        let text = read_text(path, "labels", report)?;
        let l = report.time("parse", || formats::parse_labeling(&text))?;
        if l.n() != g.n() {
            return Err(Failure::Input(format!("labeling has {} vertices, graph has {}", l.n(), g.n())));
        }
        return Ok(l);
    }
    report.param("method", format!("{:?}", src.method).to_lowercase());
    let l = match src.method {
        Method::Pruned => report.time("labels", || build_pruned(g))?,
        Method::Elimination => report.time("labels", || elimination_labels(g))?,
        Method::Split => {
            let clique = if src.clique == "auto" {
                split_partition(g)?
            } else {
                let text = read_text(Path::new(&src.clique), "clique", report)?;
                text.split_whitespace()
                    .map(|w| w.parse().map_err(|_| Failure::Input(format!("bad clique vertex '{w}'"))))
                    .collect::<Outcome<Vec<Vertex>>>()?
            };
            report.time("labels", || build_split(g, &clique))?
        }
        Method::External => return Err(Failure::Input("--method external needs --labels FILE".into())),
    };
    Ok(l)
}

fn label_build(a: &BuildArgs, _seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("label build");
    let g = load_graph(&a.input, &mut report)?;
    let mut l = labels_for(&g, &a.source, &mut report)?;
    if a.tighten {
        l = report.time("tighten", || tighten(&l))?;
    }
    report.results = json!({
        "n": l.n(),
        "max_label_size": l.max_label_size(),
        "total_size": l.total_size(),
        "flavor": l.flavor().name(),
    });
    write_output(a.out.as_deref(), &formats::write_labeling(&l))?;
    Ok(report)
}

fn label_validate(a: &ValidateArgs) -> Outcome<RunReport> {
    let mut report = RunReport::new("label validate");
    let g = load_graph(&a.input, &mut report)?;
    let text = read_text(&a.labels, "labels", &mut report)?;
    let l = formats::parse_labeling(&text)?;
    let r = report.time("validate", || validate(&g, &l, a.exact))?;
    let examples: Vec<String> = r
        .cover
        .iter()
        .take(5)
        .map(|c| format!("est({},{}) = {} but dist = {}", c.u, c.v, c.estimate, c.distance))
        .chain(r.entries.iter().take(5).map(|e| {
            format!("entry {} of {} ({:?}) stores {} but dist = {}", e.hub, e.vertex, e.direction, e.stored, e.distance)
        }))
        .collect();
    report.verdicts.push(Verdict {
        check: "labeling".into(),
        passed: r.is_empty(),
        mismatches: r.cover.len() + r.entries.len(),
        examples: examples.clone(),
    });
    report.results = json!({
        "max_label_size": l.max_label_size(),
        "cover_violations": r.cover.len(),
        "entry_violations": r.entries.len(),
        "sampled": r.sampled,
        "sources_checked": r.sources_checked,
    });
    let mut out = format!(
        "{} (k = {}, {} cover and {} entry violations{})\n",
        if r.is_empty() { "valid" } else { "invalid" },
        l.max_label_size(),
        r.cover.len(),
        r.entries.len(),
        if r.sampled { ", sampled sources" } else { "" }
    );
    for e in examples {
        let _ = writeln!(out, "  {e}");
    }
    write_output(None, &out)?;
    Ok(report)
}

fn label_tighten(a: &TightenArgs) -> Outcome<RunReport> {
    let mut report = RunReport::new("label tighten");
    let text = read_text(&a.input, "labels", &mut report)?;
    let l = formats::parse_labeling(&text)?;
    let t = report.time("tighten", || tighten(&l))?;
    report.results = json!({ "max_label_size": t.max_label_size(), "flavor": t.flavor().name() });
    write_output(a.out.as_deref(), &formats::write_labeling(&t))?;
    Ok(report)
}

/// Engine over the input (graph or labeling) for the given modes.
fn engine_for(a: &EngineArgs, modes: &[DistanceMode], seed: u64, report: &mut RunReport) -> Outcome<Engine> {
    let _ = seed;
    let text = read_text(&a.input, "input", report)?;
    let l = match formats::sniff(&text) {
        Some(Kind::Labeling) => report.time("parse", || formats::parse_labeling(&text))?,
        Some(Kind::Graph) => {
            let g = report.time("parse", || formats::parse_graph(&text))?;
            labels_for(&g, &a.source, report)?
        }
        None => return Err(Failure::Input("input is neither a graph ('p ...') nor a labeling ('hl ...')".into())),
    };
    let opts = EngineOptions { cap: a.cap, fast_source: a.fast_source, discovery: a.discovery.into() };
    report.param("mode", DistanceMode::from(a.mode).name());
    report.param("cap", a.cap);
    report.param("max_label_size", l.max_label_size());
    Ok(report.time("build", || Engine::from_labeling(&l, modes, opts))?)
}

fn all_queries(engine: &Engine, vertices: &[Vertex], mode: DistanceMode) -> Outcome<Vec<QueryResult>> {
    let out: Result<Vec<_>, _> = vertices.par_iter().map(|&u| engine.query(u, mode)).collect();
    Ok(out?)
}

fn covered(r: &QueryResult, u: Vertex) -> Outcome<(Weight, Vertex)> {
    r.ecc.ok_or_else(|| Failure::Input(format!("no target of {u} is covered by the labeling")))
}

fn query(a: &QueryArgs, seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("query");
    let mode = DistanceMode::from(a.engine.mode);
    let engine = engine_for(&a.engine, &[mode], seed, &mut report)?;
    let vertices: Vec<Vertex> = match a.vertex {
        Some(v) if v >= engine.n() => return Err(Failure::Input(format!("vertex {v} out of range"))),
        Some(v) => vec![v],
        None => (0..engine.n()).collect(),
    };
    let results = report.time("query", || all_queries(&engine, &vertices, mode))?;
    let mut out = String::new();
    let mut rows = Vec::with_capacity(results.len());
    for (&u, r) in vertices.iter().zip(&results) {
        match a.what {
            QueryWhat::Ecc => {
                let (e, w) = covered(r, u)?;
                let _ = writeln!(out, "{u} {e} {w}");
                rows.push(json!({ "vertex": u, "ecc": e, "witness": w }));
            }
            QueryWhat::Dsum => {
                let _ = writeln!(out, "{u} {}", r.dsum);
                rows.push(json!({ "vertex": u, "dsum": big(r.dsum) }));
            }
        }
    }
    report.param("what", format!("{:?}", a.what).to_lowercase());
    report.results = json!(rows);
    write_output(None, &out)?;
    Ok(report)
}

fn stats(a: &StatsArgs, seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("stats");
    let mode = DistanceMode::from(a.engine.mode);
    let engine = engine_for(&a.engine, &[mode], seed, &mut report)?;
    let vertices: Vec<Vertex> = (0..engine.n()).collect();
    let results = report.time("query", || all_queries(&engine, &vertices, mode))?;
    let ecc: Vec<Weight> = results.iter().zip(0..).map(|(r, u)| covered(r, u).map(|e| e.0)).collect::<Outcome<_>>()?;
    let dsum: Vec<u128> = results.iter().map(|r| r.dsum).collect();
    let (text, value) = match a.what {
        StatsWhat::Diameter => {
            let (d, u) = diameter_of(&ecc).ok_or_else(|| Failure::Input("empty graph".into()))?;
            let w = covered(&results[u], u)?.1;
            (format!("{d}\n"), json!({ "diameter": d, "vertex": u, "witness": w }))
        }
        StatsWhat::Radius => {
            let (r, u) = radius_of(&ecc).ok_or_else(|| Failure::Input("empty graph".into()))?;
            (format!("{r}\n"), json!({ "radius": r, "center": u }))
        }
        StatsWhat::Median => {
            let m = median_of(&dsum);
            let best = m.first().map(|&v| dsum[v]).unwrap_or(0);
            let list: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            (format!("{}\n", list.join(" ")), json!({ "median": m, "dsum": big(best) }))
        }
        StatsWhat::Wiener => {
            let w: u128 = dsum.iter().sum();
            (format!("{w}\n"), json!({ "wiener": big(w) }))
        }
    };
    report.param("what", format!("{:?}", a.what).to_lowercase());
    report.results = value;
    write_output(None, &text)?;
    Ok(report)
}

fn wants(which: &[IndexName], name: IndexName) -> bool {
    which.contains(&IndexName::All) || which.contains(&name)
}

/// Selected indices as JSON: unordered values at the top level (pairs
/// counted once) plus the ordered sums under `"ordered"`.
fn index_json(
    g: &Graph,
    l: &HubLabeling,
    which: &[IndexName],
    opts: IndexOptions,
    report: &mut RunReport,
) -> Outcome<Value> {
    use IndexName::*;
    let mut top = serde_json::Map::new();
    let mut ordered = serde_json::Map::new();
    let simple_needed = [Wiener, Hyperwiener, Power, Mti, Harary, Rcw].iter().any(|&x| wants(which, x));
    if g.is_weighted() && [Hyperwiener, Mti, Harary, Rcw, Szeged, Pi].iter().any(|&x| wants(which, x)) {
        return Err(Failure::Input("weighted graphs support only wiener and power sums".into()));
    }
    if simple_needed {
        let s = report.time("build", || SimpleEngine::build(g, l, 3, opts))?;
        let two = num_rational::BigRational::from_integer(2.into());
        if wants(which, Wiener) {
            let w = report.time("query", || s.wiener())?;
            top.insert("wiener".into(), big(w / 2));
            ordered.insert("wiener".into(), big(w));
        }
        if wants(which, Hyperwiener) {
            let h = report.time("query", || s.hyper_wiener())?;
            top.insert("hyper_wiener".into(), rational(&(&h / &two)));
            ordered.insert("hyper_wiener".into(), rational(&h));
        }
        if wants(which, Power) {
            let mut list = Vec::new();
            for alpha in 1..=3 {
                let p = report.time("query", || s.power_sum(alpha))?;
                list.push(bigint(&p.into()));
            }
            ordered.insert("power_sums".into(), json!(list));
        }
        if wants(which, Mti) {
            let m = report.time("query", || s.mti())?;
            top.insert("mti".into(), big(m / 2));
            ordered.insert("mti".into(), big(m));
        }
        if wants(which, Harary) {
            let h = report.time("query", || s.harary())?;
            top.insert("harary".into(), rational(&(&h / &two)));
            ordered.insert("harary".into(), rational(&h));
        }
        if wants(which, Rcw) {
            let r = report.time("query", || s.rcw())?;
            top.insert("rcw".into(), rational(&(&r / &two)));
            ordered.insert("rcw".into(), rational(&r));
        }
    }
    if wants(which, Szeged) {
        let c = report.time("build", || CloserEngine::build(g, l, Targets::Vertices, opts))?;
        top.insert("szeged".into(), big(report.time("query", || c.szeged())?));
    }
    if wants(which, Pi) {
        let c = report.time("build", || CloserEngine::build(g, l, Targets::Edges, opts))?;
        top.insert("pi".into(), big(report.time("query", || c.padmakar_ivan())?));
    }
    if !ordered.is_empty() {
        top.insert("ordered".into(), Value::Object(ordered));
    }
    Ok(Value::Object(top))
}

/// The brute-force report in the same shape as [`index_json`].
fn brute_index_json(r: &IndexReport) -> Value {
    let u = r.unordered();
    json!({
        "wiener": big(u.wiener),
        "hyper_wiener": rational(&u.hyper_wiener),
        "mti": big(u.mti),
        "harary": rational(&u.harary),
        "rcw": rational(&u.rcw),
        "szeged": big(r.szeged),
        "pi": big(r.padmakar_ivan),
        "randic": r.randic,
        "ordered": {
            "wiener": big(r.wiener),
            "hyper_wiener": rational(&r.hyper_wiener),
            "power_sums": r.power_sums.iter().map(|p| bigint(&p.clone().into())).collect::<Vec<_>>(),
            "mti": big(r.mti),
            "harary": rational(&r.harary),
            "rcw": rational(&r.rcw),
        },
    })
}

fn index(a: &IndexArgs, _seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("index");
    let g = load_graph(&a.input, &mut report)?;
    let l = labels_for(&g, &a.source, &mut report)?;
    let opts = IndexOptions { cap: a.cap, allow_weighted: a.allow_weighted, ..IndexOptions::default() };
    report.param("which", a.which.iter().map(|w| format!("{w:?}").to_lowercase()).collect::<Vec<_>>());
    report.param("max_label_size", l.max_label_size());
    let value = index_json(&g, &l, &a.which, opts, &mut report)?;
    write_output(None, &(serde_json::to_string_pretty(&value).unwrap_or_default() + "\n"))?;
    report.results = value;
    Ok(report)
}

fn load_td(arg: &str, g: &Graph, report: &mut RunReport) -> Outcome<TreeDecomposition> {
    if arg == "auto" {
        return Ok(report.time("decompose", || heuristic_td(g)));
    }
    let text = read_text(Path::new(arg), "td", report)?;
    Ok(formats::parse_td(&text)?)
}

fn twdnc(a: &TwdncArgs) -> Outcome<RunReport> {
    let mut report = RunReport::new("twdnc");
    let g = load_graph(&a.input, &mut report)?;
    let td = load_td(&a.td, &g, &mut report)?;
    report.param("td", &a.td);
    report.param("width", td.width());
    let opts = DncOptions { base: a.base, audit: a.audit, ..DncOptions::default() };
    let r = report.time("query", || dnc_roundtrip(&g, &td, opts))?;
    let vertices: Vec<Vertex> = match a.vertex {
        Some(v) if v >= g.n() => return Err(Failure::Input(format!("vertex {v} out of range"))),
        Some(v) => vec![v],
        None => (0..g.n()).collect(),
    };
    let mut out = String::new();
    for &v in &vertices {
        let _ = writeln!(out, "{v} {} {}", r.ecc[v], r.dsum[v]);
    }
    let balanced = r.splits.iter().all(|s| s.balanced());
    report.verdicts.push(Verdict {
        check: "separator balance".into(),
        passed: balanced,
        mismatches: r.splits.iter().filter(|s| !s.balanced()).count(),
        examples: Vec::new(),
    });
    report.results = json!({
        "ecc": vertices.iter().map(|&v| r.ecc[v]).collect::<Vec<_>>(),
        "dsum": vertices.iter().map(|&v| big(r.dsum[v])).collect::<Vec<_>>(),
        "splits": r.splits.len(),
        "base_cases": r.base_cases,
        "max_depth": r.max_depth,
        "audited": r.audited,
    });
    write_output(None, &out)?;
    Ok(report)
}

fn diamk(a: &DiamkArgs, seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("diamk");
    let g = load_graph(&a.input, &mut report)?;
    let coloring = if a.coloring == "auto" {
        report.time("coloring", || depth_coloring(&heuristic_forest(&g)))
    } else {
        let text = read_text(Path::new(&a.coloring), "coloring", &mut report)?;
        formats::parse_coloring(&text, g.n())?
    };
    report.param("k", a.k);
    report.param("colors", coloring.count());
    if a.check_coloring {
        let p = (a.k + 1).min(coloring.count());
        let opts = ValidateOptions { seed, ..ValidateOptions::default() };
        let check = report.time("check", || validate_low_td_coloring(&g, &coloring, p, opts))?;
        report.verdicts.push(Verdict {
            check: format!("coloring valid for {p} classes"),
            passed: check.is_valid(),
            mismatches: check.violations.len() + check.undecided,
            examples: check.violations.iter().take(5).map(|(c, d)| format!("classes {c:?} have tree-depth {d}")).collect(),
        });
        if !check.is_valid() {
            return Ok(report);
        }
    }
    let d = report.time("query", || decide_diameter_le_k(&g, a.k, &coloring, DeciderOptions::default()))?;
    let mut out = String::from(if d.at_most_k { "yes\n" } else { "no\n" });
    if let Some((u, v, dist)) = d.witness {
        let _ = writeln!(out, "witness {u} {v} {dist}");
    }
    report.results = json!({
        "at_most_k": d.at_most_k,
        "witness": d.witness.map(|(u, v, dist)| json!({ "u": u, "v": v, "dist": dist })),
        "unions": d.unions,
        "max_label_size": d.max_label,
    });
    write_output(None, &out)?;
    Ok(report)
}

fn oracle(a: &OracleArgs) -> Outcome<RunReport> {
    let mut report = RunReport::new("oracle");
    let g = load_graph(&a.input, &mut report)?;
    let mode = match a.what {
        OracleWhat::Twdnc => DistanceMode::Roundtrip,
        _ => DistanceMode::from(a.mode),
    };
    report.param("what", format!("{:?}", a.what).to_lowercase());
    report.param("mode", mode.name());
    let mut out = String::new();
    match a.what {
        OracleWhat::Index => {
            let r = report.time("oracle", || brute_indices(&g))?;
            let v = brute_index_json(&r);
            out = serde_json::to_string_pretty(&v).unwrap_or_default() + "\n";
            report.results = v;
        }
        OracleWhat::Diamk => {
            let k = a.k.ok_or_else(|| Failure::Input("oracle diamk needs --k".into()))?;
            let (diam, u, v) = report.time("oracle", || bfs_diameter(&g));
            let _ = writeln!(out, "{}", if diam <= k as Weight { "yes" } else { "no" });
            if diam > k as Weight {
                let _ = writeln!(out, "witness {u} {v} {diam}");
            }
            report.results = json!({ "at_most_k": diam <= k as Weight, "diameter": diam });
        }
        what => {
            let (ecc, wit, dsum) = report.time("oracle", || oracle_ecc_dsum_with_witness(&g, mode))?;
            let vertices: Vec<Vertex> = match a.vertex {
                Some(v) if v >= g.n() => return Err(Failure::Input(format!("vertex {v} out of range"))),
                Some(v) => vec![v],
                None => (0..g.n()).collect(),
            };
            let value = match what {
                OracleWhat::Ecc => {
                    for &v in &vertices {
                        let _ = writeln!(out, "{v} {} {}", ecc[v], wit[v]);
                    }
                    json!(vertices.iter().map(|&v| json!({ "vertex": v, "ecc": ecc[v], "witness": wit[v] })).collect::<Vec<_>>())
                }
                OracleWhat::Dsum => {
                    for &v in &vertices {
                        let _ = writeln!(out, "{v} {}", dsum[v]);
                    }
                    json!(vertices.iter().map(|&v| json!({ "vertex": v, "dsum": big(dsum[v]) })).collect::<Vec<_>>())
                }
                OracleWhat::Twdnc => {
                    for &v in &vertices {
                        let _ = writeln!(out, "{v} {} {}", ecc[v], dsum[v]);
                    }
                    json!({ "ecc": vertices.iter().map(|&v| ecc[v]).collect::<Vec<_>>(),
                            "dsum": vertices.iter().map(|&v| big(dsum[v])).collect::<Vec<_>>() })
                }
                OracleWhat::Diameter => {
                    let (d, u) = diameter_of(&ecc).unwrap_or((0, 0));
                    let _ = writeln!(out, "{d}");
                    json!({ "diameter": d, "vertex": u, "witness": wit.get(u) })
                }
                OracleWhat::Radius => {
                    let (r, u) = radius_of(&ecc).unwrap_or((0, 0));
                    let _ = writeln!(out, "{r}");
                    json!({ "radius": r, "center": u })
                }
                OracleWhat::Median => {
                    let m = median_of(&dsum);
                    let list: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(out, "{}", list.join(" "));
                    json!({ "median": m })
                }
                OracleWhat::Wiener => {
                    let w: u128 = dsum.iter().sum();
                    let _ = writeln!(out, "{w}");
                    json!({ "wiener": big(w) })
                }
                OracleWhat::Index | OracleWhat::Diamk => unreachable!(),
            };
            report.results = value;
        }
    }
    write_output(None, &out)?;
    Ok(report)
}

/// Unweighted diameter by BFS from every vertex, with the first pair
/// (smallest IDs) attaining it.
pub fn bfs_diameter(g: &Graph) -> (Weight, Vertex, Vertex) {
    let mut best = (0, 0, 0);
    for u in 0..g.n() {
        let d = bfs(g, u, Direction::Out);
        for (v, &x) in d.iter().enumerate() {
            if x > best.0 {
                best = (x, u, v);
            }
        }
    }
    best
}

fn verdict(check: String, mismatches: Vec<String>) -> Verdict {
    Verdict { check, passed: mismatches.is_empty(), mismatches: mismatches.len(), examples: mismatches.into_iter().take(5).collect() }
}

/// Engine against oracle for every mode, partition counts, and (where the
/// input allows) indices and the separator recursion.
fn verify_graph(name: &str, g: &Graph, src: &LabelSource, cap: usize, report: &mut RunReport) -> Outcome<()> {
    let l = labels_for(g, src, report)?;
    let engine = report.time("build", || {
        Engine::build(g, &l, &DistanceMode::ALL, EngineOptions { cap, ..EngineOptions::default() })
    })?;
    let n = g.n();
    let answers: Vec<Vec<QueryResult>> = report.time("query", || {
        (0..n).into_par_iter().map(|u| engine.query_modes(u, &DistanceMode::ALL)).collect::<Result<_, _>>()
    })?;
    let counts: Vec<u64> =
        report.time("query", || (0..n).into_par_iter().map(|u| engine.partition_count(u)).collect::<Result<_, _>>())?;
    for (i, &mode) in DistanceMode::ALL.iter().enumerate() {
        let (ecc, _, dsum) = report.time("oracle", || oracle_ecc_dsum_with_witness(g, mode))?;
        let mut bad = Vec::new();
        for u in 0..n {
            let r = &answers[u][i];
            let e = r.ecc.map(|x| x.0);
            if e != Some(ecc[u]) || r.dsum != dsum[u] {
                bad.push(format!("{name}: vertex {u} mode {mode}: engine ({e:?}, {}) oracle ({}, {})", r.dsum, ecc[u], dsum[u]));
            }
        }
        report.verdicts.push(verdict(format!("{name} {mode}"), bad));
    }
    let bad: Vec<String> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != n as u64)
        .map(|(u, c)| format!("{name}: vertex {u} matched {c} of {n}"))
        .collect();
    report.verdicts.push(verdict(format!("{name} partition count"), bad));

    if !g.is_directed() && !g.is_weighted() {
        let opts = IndexOptions { cap: cap.max(hublab_core::indices::INDEX_CAP), ..IndexOptions::default() };
        let fast = index_json(g, &l, &[IndexName::All], opts, report)?;
        let slow = brute_index_json(&report.time("oracle", || brute_indices(g))?);
        let bad: Vec<String> = fast
            .as_object()
            .into_iter()
            .flatten()
            .filter(|(k, v)| slow.get(k.as_str()) != Some(v))
            .map(|(k, v)| format!("{name}: {k} engine {v} oracle {}", slow[k.as_str()]))
            .collect();
        report.verdicts.push(verdict(format!("{name} indices"), bad));
    }
    let td = heuristic_td(g);
    if td.width() <= DncOptions::default().max_width {
        let r = report.time("twdnc", || dnc_roundtrip(g, &td, DncOptions::default()))?;
        let (ecc, dsum) = report.time("oracle", || hublab_core::graph::oracle_ecc_dsum(g, DistanceMode::Roundtrip))?;
        let bad: Vec<String> = (0..n)
            .filter(|&u| r.ecc[u] != ecc[u] || r.dsum[u] != dsum[u])
            .map(|u| format!("{name}: vertex {u} twdnc ({}, {}) oracle ({}, {})", r.ecc[u], r.dsum[u], ecc[u], dsum[u]))
            .collect();
        report.verdicts.push(verdict(format!("{name} twdnc"), bad));
    }
    Ok(())
}

fn verify(a: &VerifyArgs, seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("verify");
    report.param("cap", a.cap);
    if let Some(path) = &a.input {
        let g = load_graph(path, &mut report)?;
        verify_graph("input", &g, &a.source, a.cap, &mut report)?;
    } else {
        report.param("family", format!("{:?}", a.family).to_lowercase());
        report.param("n", a.n);
        report.param("seeds", a.seeds);
        let fam = FamilyArgs {
            family: a.family,
            n: a.n,
            cols: 0,
            fanout: 2,
            extra: a.extra,
            m: None,
            wmax: 20,
            core: a.core,
            k: 3,
            p: 0.5,
        };
        for s in seed..seed + a.seeds {
            let g = generate(&fam, s)?.graph;
            verify_graph(&format!("seed {s}"), &g, &a.source, a.cap, &mut report)?;
        }
    }
    let failed: Vec<&Verdict> = report.verdicts.iter().filter(|v| !v.passed).collect();
    let mut out = format!("{} checks, {} failed\n", report.verdicts.len(), failed.len());
    for v in failed {
        let _ = writeln!(out, "FAIL {} ({} mismatches)", v.check, v.mismatches);
        for e in &v.examples {
            let _ = writeln!(out, "  {e}");
        }
    }
    report.results = json!({ "checks": report.verdicts.len(), "failed": report.verdicts.iter().filter(|v| !v.passed).count() });
    write_output(None, &out)?;
    Ok(report)
}

fn bench(a: &BenchArgs, seed: u64) -> Outcome<RunReport> {
    let mut report = RunReport::new("bench");
    report.param("family", format!("{:?}", a.family).to_lowercase());
    report.param("sizes", &a.sizes);
    report.param("queries", a.queries);
    let mut csv = csv::Writer::from_writer(Vec::new());
    let header =
        ["family", "n", "label_size", "label_s", "engine_s", "query_mean_us", "dijkstra_mean_us", "speedup"];
    csv.write_record(header).map_err(|e| Failure::Input(e.to_string()))?;
    let mut rows = Vec::new();
    for &n in &a.sizes {
        let fam = FamilyArgs {
            family: a.family,
            n,
            cols: 0,
            fanout: a.fanout,
            extra: 0,
            m: None,
            wmax: 20,
            core: 6,
            k: 3,
            p: 0.5,
        };
        let g = generate(&fam, seed)?.graph;
        let src = LabelSource { labels: None, method: a.method, clique: "auto".into() };
        let start = Instant::now();
        let l = labels_for(&g, &src, &mut report)?;
        let label_s = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let opts = EngineOptions { cap: a.cap, fast_source: true, ..EngineOptions::default() };
        let engine = Engine::build(&g, &l, &[DistanceMode::Source], opts)?;
        let engine_s = start.elapsed().as_secs_f64();
        // Evenly spaced sample; no randomness needed.
        let q = a.queries.clamp(1, n);
        let sample: Vec<Vertex> = (0..q).map(|i| i * n / q).collect();
        let start = Instant::now();
        for &u in &sample {
            engine.query(u, DistanceMode::Source)?;
        }
        let query_us = start.elapsed().as_secs_f64() * 1e6 / q as f64;
        let start = Instant::now();
        for &u in &sample {
            let d = dijkstra(&g, u, Direction::Out)?;
            std::hint::black_box(d.iter().max());
        }
        let dijkstra_us = start.elapsed().as_secs_f64() * 1e6 / q as f64;
        let row = [
            format!("{:?}", a.family).to_lowercase(),
            n.to_string(),
            l.max_label_size().to_string(),
            format!("{label_s:.6}"),
            format!("{engine_s:.6}"),
            format!("{query_us:.3}"),
            format!("{dijkstra_us:.3}"),
            format!("{:.3}", dijkstra_us / query_us),
        ];
        csv.write_record(&row).map_err(|e| Failure::Input(e.to_string()))?;
        rows.push(json!({
            "n": n, "label_size": l.max_label_size(), "label_s": label_s, "engine_s": engine_s,
            "query_mean_us": query_us, "dijkstra_mean_us": dijkstra_us,
        }));
    }
    let bytes = csv.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
    write_output(a.out.as_deref(), &String::from_utf8_lossy(&bytes))?;
    report.results = json!(rows);
    Ok(report)
}
