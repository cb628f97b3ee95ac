use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use greenseq::exchange::{EulerData, ExchangeError};
use greenseq::polygon::{deformation_classes, PolygonError};
use greenseq::search::{
    enumerate_mgs, enumerate_mgs_with_stability, export_exchange_graph, format_sequence,
    lengths_form_interval, SearchConfig, SearchError, SearchReport, StabilityCheck,
};
use greenseq::tame::{compute_tame_data, is_regular_cluster, regular_cluster_graph, TameError};
use greenseq::{QuiverSpec, Seed};
use serde::Serialize;

use crate::presets::preset;
use crate::{exit, Cli, CliError, Command, Format, Input, QuiverFile, RunConfig};

/// Rendered result of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn err(e: CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome::err(e),
    }
}

fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Enum {
            input,
            config,
            trails,
        } => {
            let spec = load(&input)?;
            let (body, code) = cmd_enum(&spec, &config, trails)?;
            emit(&config, body, code)
        }
        Command::Nogap { input, config } => {
            let spec = load(&input)?;
            let (body, code) = cmd_nogap(&spec, &config)?;
            emit(&config, body, code)
        }
        Command::Classes { input, config } => {
            let spec = load(&input)?;
            let (body, code) = cmd_classes(&spec, &config)?;
            emit(&config, body, code)
        }
        Command::Regular { input, config } => {
            let spec = load(&input)?;
            let (body, code) = cmd_regular(&spec, &config)?;
            emit(&config, body, code)
        }
        Command::Graph { input, config } => {
            let spec = load(&input)?;
            let body = cmd_graph(&spec, &config)?;
            emit(&config, body, exit::OK)
        }
        Command::Preset { name } => {
            let spec = preset(&name)?;
            Ok(Outcome::ok(
                QuiverFile::from_spec(&spec).to_json() + "\n",
                exit::OK,
            ))
        }
    }
}

fn load(input: &Input) -> Result<QuiverSpec, CliError> {
    if let Some(name) = &input.preset {
        return preset(name);
    }
    let path = input.file.as_ref().expect("clap enforces file or preset");
    let file = if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        QuiverFile::parse(&text)?
    } else {
        QuiverFile::read(path)?
    };
    file.to_spec()
}

fn emit(config: &RunConfig, body: String, code: i32) -> Result<Outcome, CliError> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new(), code))
        }
        None => Ok(Outcome::ok(body, code)),
    }
}

fn search_config(spec: &QuiverSpec, config: &RunConfig) -> Result<SearchConfig, CliError> {
    let n = spec.rank();
    let max_depth = config.max_depth.unwrap_or(4 * n * n);
    if max_depth < n {
        return Err(CliError::Input(format!(
            "max depth {max_depth} is below the rank {n}"
        )));
    }
    Ok(SearchConfig {
        max_depth,
        max_count: config.max_count,
        audit_edges: false,
    })
}

fn search(
    spec: &QuiverSpec,
    config: &RunConfig,
    stability: bool,
) -> Result<SearchReport, CliError> {
    let cfg = search_config(spec, config)?;
    let report = if stability {
        enumerate_mgs_with_stability(spec, cfg)
    } else {
        enumerate_mgs(spec, cfg)
    };
    if let Some(v) = report.violations.first() {
        return Err(CliError::Internal(format!(
            "engine invariant violated: {v}"
        )));
    }
    Ok(report)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn search_err(e: SearchError) -> CliError {
    match e {
        SearchError::IncompleteSearch(m) => CliError::Incomplete(m),
        other => CliError::Internal(other.to_string()),
    }
}

fn polygon_err(e: PolygonError) -> CliError {
    match e {
        PolygonError::Search(s) => search_err(s),
        PolygonError::MissingNeighbour(m) => {
            CliError::Incomplete(format!("deformation neighbour {m} not enumerated"))
        }
        other => CliError::Internal(other.to_string()),
    }
}

fn tame_err(e: TameError) -> CliError {
    match e {
        TameError::NotTame(m) => CliError::NotTame(m),
        TameError::Exchange(ExchangeError::CyclicQuiver) => {
            CliError::NotTame("quiver has an oriented cycle".into())
        }
        TameError::Search(s) => search_err(s),
        other => CliError::Internal(other.to_string()),
    }
}

fn tame_setup(spec: &QuiverSpec) -> Result<(EulerData, greenseq::tame::TameData), CliError> {
    let e = EulerData::from_spec(spec).map_err(|e| tame_err(e.into()))?;
    let td = compute_tame_data(&e).map_err(tame_err)?;
    Ok((e, td))
}

#[derive(Serialize)]
struct Completeness {
    max_depth: usize,
    complete: bool,
    truncated_branches: usize,
    overflow: bool,
    stability: Option<StabilityCheck>,
    mgs_set_complete: bool,
}

impl Completeness {
    fn of(r: &SearchReport) -> Self {
        Self {
            max_depth: r.max_depth,
            complete: r.complete,
            truncated_branches: r.truncated_branches,
            overflow: r.overflow,
            stability: r.stability,
            mgs_set_complete: r.mgs_set_complete(),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(out: &mut String, spec: &QuiverSpec) {
    let d: Vec<String> = spec.symmetrizer().iter().map(|x| x.to_string()).collect();
    writeln!(
        out,
        "quiver: n={} d=({}) b0={}",
        spec.rank(),
        d.join(","),
        spec.b0()
    )
    .unwrap();
}

fn completeness_text(out: &mut String, r: &SearchReport) {
    writeln!(out, "max depth: {}", r.max_depth).unwrap();
    if r.complete {
        writeln!(out, "complete: yes").unwrap();
    } else {
        writeln!(
            out,
            "complete: no ({} truncated branches)",
            r.truncated_branches
        )
        .unwrap();
    }
    if r.overflow {
        writeln!(out, "overflow: stored sequence cap reached").unwrap();
    }
    if let Some(s) = r.stability {
        writeln!(
            out,
            "stability at depth {}: {}",
            s.depth,
            if s.stable {
                "same MGS set"
            } else {
                "MGS set changed"
            }
        )
        .unwrap();
    }
    writeln!(out, "MGS set complete: {}", yes_no(r.mgs_set_complete())).unwrap();
}

fn lengths_text(lengths: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = lengths.iter().map(|(l, c)| format!("{l}:{c}")).collect();
    parts.join(" ")
}

fn seed_text(s: &Seed) -> String {
    format!("B={} C={}", s.b(), s.c())
}

#[derive(Serialize)]
struct EnumJson<'a> {
    quiver: QuiverFile,
    sequences: Vec<Vec<usize>>,
    lengths: &'a BTreeMap<usize, usize>,
    #[serde(flatten)]
    completeness: Completeness,
    #[serde(skip_serializing_if = "Option::is_none")]
    trails: Option<Vec<&'a [Seed]>>,
}

pub fn cmd_enum(
    spec: &QuiverSpec,
    config: &RunConfig,
    trails: bool,
) -> Result<(String, i32), CliError> {
    let r = search(spec, config, config.stability_check)?;
    let code = if config.stability_check && !r.mgs_set_complete() {
        exit::INCOMPLETE
    } else {
        exit::OK
    };
    let body = match config.format {
        Format::Json => json(&EnumJson {
            quiver: QuiverFile::from_spec(spec),
            sequences: r.sequences(),
            lengths: &r.lengths,
            completeness: Completeness::of(&r),
            trails: trails.then(|| r.mgs_list.iter().map(|m| m.trail()).collect()),
        }),
        Format::Text => {
            let mut out = String::new();
            header(&mut out, spec);
            writeln!(out, "sequences: {}", r.mgs_list.len()).unwrap();
            for m in &r.mgs_list {
                writeln!(out, "{m}").unwrap();
                if trails {
                    let trail = m.trail();
                    writeln!(out, "  start {}", seed_text(&trail[0])).unwrap();
                    for (k, s) in m.indices().iter().zip(&trail[1..]) {
                        writeln!(out, "  mu{k}  {}", seed_text(s)).unwrap();
                    }
                }
            }
            writeln!(out, "lengths: {}", lengths_text(&r.lengths)).unwrap();
            completeness_text(&mut out, &r);
            out
        }
    };
    Ok((body, code))
}

#[derive(Serialize)]
struct NogapJson {
    quiver: QuiverFile,
    lengths: Vec<usize>,
    no_gap: bool,
    #[serde(flatten)]
    completeness: Completeness,
}

pub fn cmd_nogap(spec: &QuiverSpec, config: &RunConfig) -> Result<(String, i32), CliError> {
    let r = search(spec, config, true)?;
    r.require_mgs_set_complete().map_err(search_err)?;
    let lengths = r.length_set();
    let no_gap = lengths_form_interval(&lengths);
    let code = if no_gap { exit::OK } else { exit::NEGATIVE };
    let body = match config.format {
        Format::Json => json(&NogapJson {
            quiver: QuiverFile::from_spec(spec),
            lengths: lengths.into_iter().collect(),
            no_gap,
            completeness: Completeness::of(&r),
        }),
        Format::Text => {
            let mut out = String::new();
            header(&mut out, spec);
            let ls: Vec<String> = lengths.iter().map(|l| l.to_string()).collect();
            writeln!(out, "lengths: {{{}}}", ls.join(",")).unwrap();
            writeln!(out, "no gap: {}", yes_no(no_gap)).unwrap();
            completeness_text(&mut out, &r);
            out
        }
    };
    Ok((body, code))
}

#[derive(Serialize)]
struct ClassJson {
    size: usize,
    representative: Vec<usize>,
    members: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ClassesJson {
    quiver: QuiverFile,
    class_count: usize,
    classes: Vec<ClassJson>,
    deformation_edges: usize,
    #[serde(flatten)]
    completeness: Completeness,
}

pub fn cmd_classes(spec: &QuiverSpec, config: &RunConfig) -> Result<(String, i32), CliError> {
    let r = search(spec, config, true)?;
    let cp = deformation_classes(&r).map_err(polygon_err)?;
    let code = if cp.class_count() == 1 {
        exit::OK
    } else {
        exit::NEGATIVE
    };
    let body = match config.format {
        Format::Json => json(&ClassesJson {
            quiver: QuiverFile::from_spec(spec),
            class_count: cp.class_count(),
            classes: cp
                .classes
                .iter()
                .zip(&cp.representatives)
                .map(|(c, rep)| ClassJson {
                    size: c.len(),
                    representative: rep.clone(),
                    members: c.clone(),
                })
                .collect(),
            deformation_edges: cp.edge_count,
            completeness: Completeness::of(&r),
        }),
        Format::Text => {
            let mut out = String::new();
            header(&mut out, spec);
            writeln!(out, "classes: {}", cp.class_count()).unwrap();
            for (i, (c, rep)) in cp.classes.iter().zip(&cp.representatives).enumerate() {
                writeln!(
                    out,
                    "class {}: size {}, representative {}",
                    i + 1,
                    c.len(),
                    format_sequence(rep)
                )
                .unwrap();
            }
            writeln!(out, "deformation edges: {}", cp.edge_count).unwrap();
            completeness_text(&mut out, &r);
            out
        }
    };
    Ok((body, code))
}

#[derive(Serialize)]
struct FirstRegular {
    sequence: Vec<usize>,
    position: Option<usize>,
}

#[derive(Serialize)]
struct RegularJson {
    quiver: QuiverFile,
    eta: Vec<i64>,
    regular_clusters: Vec<String>,
    edges: Vec<(usize, usize)>,
    connected: bool,
    every_mgs_passes_regular: bool,
    max_regular_components: usize,
    first_regular: Vec<FirstRegular>,
    #[serde(flatten)]
    completeness: Completeness,
}

pub fn cmd_regular(spec: &QuiverSpec, config: &RunConfig) -> Result<(String, i32), CliError> {
    let (e, td) = tame_setup(spec)?;
    let r = search(spec, config, true)?;
    let g = regular_cluster_graph(&td, &e, &r).map_err(tame_err)?;
    let passes = g.every_mgs_passes_regular();
    let code = if g.connected && passes {
        exit::OK
    } else {
        exit::NEGATIVE
    };
    let clusters: Vec<String> = g.nodes.iter().map(|c| c.seed().c().to_string()).collect();
    let firsts: Vec<FirstRegular> = r
        .mgs_list
        .iter()
        .zip(&g.first_regular)
        .map(|(m, &p)| FirstRegular {
            sequence: m.index_values(),
            position: p,
        })
        .collect();
    let body = match config.format {
        Format::Json => json(&RegularJson {
            quiver: QuiverFile::from_spec(spec),
            eta: td.eta.0.clone(),
            regular_clusters: clusters,
            edges: g.edges.clone(),
            connected: g.connected,
            every_mgs_passes_regular: passes,
            max_regular_components: g.max_regular_components,
            first_regular: firsts,
            completeness: Completeness::of(&r),
        }),
        Format::Text => {
            let mut out = String::new();
            header(&mut out, spec);
            writeln!(out, "eta: {}", td.eta).unwrap();
            writeln!(out, "regular clusters: {}", clusters.len()).unwrap();
            for c in &clusters {
                writeln!(out, "  C={c}").unwrap();
            }
            writeln!(out, "first regular position per MGS:").unwrap();
            for f in &firsts {
                let pos = f.position.map_or("none".to_string(), |p| p.to_string());
                writeln!(out, "  {}: {}", format_sequence(&f.sequence), pos).unwrap();
            }
            writeln!(out, "max regular components: {}", g.max_regular_components).unwrap();
            writeln!(out, "connected: {}", yes_no(g.connected)).unwrap();
            writeln!(out, "every MGS passes regular: {}", yes_no(passes)).unwrap();
            completeness_text(&mut out, &r);
            if !r.complete {
                writeln!(
                    out,
                    "note: infinite green paths exist; the MGS set is certified by the stability check, not by exhausting the tree"
                )
                .unwrap();
            }
            out
        }
    };
    Ok((body, code))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn cmd_graph(spec: &QuiverSpec, config: &RunConfig) -> Result<String, CliError> {
    let r = search(spec, config, config.stability_check)?;
    let g = export_exchange_graph(&r);
    let tame = tame_setup(spec).ok();
    let mut out = String::new();
    writeln!(out, "digraph exchange {{").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, node) in g.nodes.iter().enumerate() {
        let label = dot_escape(&node.seed().c().to_string());
        let regular = match &tame {
            Some((e, td)) => is_regular_cluster(td, e, node.seed())
                .map_err(|x| CliError::Internal(x.to_string()))?,
            None => false,
        };
        if regular {
            writeln!(
                out,
                "  n{i} [label=\"{label}\", regular=true, style=filled];"
            )
            .unwrap();
        } else {
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
    }
    for e in &g.edges {
        let labels: Vec<String> = e.labels.iter().map(|k| k.to_string()).collect();
        writeln!(
            out,
            "  n{} -> n{} [label=\"{}\"];",
            e.from,
            e.to,
            labels.join(",")
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
