//! The `analyze`, `sweep`, `cover` and `generate` commands, independent of
//! argument parsing. Each returns the payload for standard output plus
//! diagnostics destined for standard error.

use std::fs;
use std::path::Path;

use netdim::cover::{box_cover, covering_profile_from_distances, LMax};
use netdim::netgen::{generate, GeneratorSpec};
use netdim::parse::{parse, InputFormat};
use netdim::{box_counting_dimension, tsallis_dimension, FitMode, Graph};

use crate::error::CliError;
use crate::report::{
    estimate_label, profile_rows, AnalysisReport, EstimateRow, InputInfo, Settings,
};
use crate::num::Sig17;

/// Row set of the published q-sweep tables.
pub const DEFAULT_Q_LIST: [f64; 8] = [0.1, 0.5, 1.0, 1.5, 2.0, 10.0, 100.0, 1000.0];
pub const DEFAULT_TRIALS: usize = 10;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormatChoice {
    #[default]
    Auto,
    EdgeList,
    Pajek,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputKind {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub format: FormatChoice,
    pub q_list: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub mode: FitMode,
    pub l_min: Option<u32>,
    pub l_max: Option<u32>,
    pub strict: bool,
    pub output: OutputKind,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            format: FormatChoice::Auto,
            q_list: vec![1.0],
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            mode: FitMode::Slope,
            l_min: None,
            l_max: None,
            strict: false,
            output: OutputKind::Json,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: String,
    pub diagnostics: Vec<String>,
    /// Set when the command produced output but part of the analysis failed.
    pub failure: Option<CliError>,
}

/// Loaded input, already reduced to a connected graph.
pub struct LoadedGraph {
    pub graph: Graph,
    pub format: InputFormat,
    pub original_nodes: usize,
    pub original_edges: usize,
    pub component_note: String,
}

pub fn read_graph(path: &Path, format: FormatChoice) -> Result<(Graph, InputFormat), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let format = match format {
        FormatChoice::Auto => InputFormat::detect(&text),
        FormatChoice::EdgeList => InputFormat::EdgeList,
        FormatChoice::Pajek => InputFormat::Pajek,
    };
    let graph = parse(&text, format).map_err(|e| match e {
        netdim::Error::Parse { line, message } => {
            CliError::Input(format!("{}:{line}: {message}", path.display()))
        }
        other => CliError::Input(format!("{}: {other}", path.display())),
    })?;
    Ok((graph, format))
}

/// Reads the input and keeps its largest connected component, or fails in
/// strict mode.
pub fn load_connected(
    path: &Path,
    format: FormatChoice,
    strict: bool,
    diagnostics: &mut Vec<String>,
) -> Result<LoadedGraph, CliError> {
    let (graph, format) = read_graph(path, format)?;
    let original_nodes = graph.node_count();
    let original_edges = graph.edge_count();
    let components = graph.components().len();
    if components <= 1 {
        return Ok(LoadedGraph {
            graph,
            format,
            original_nodes,
            original_edges,
            component_note: "connected".into(),
        });
    }
    if strict {
        return Err(CliError::Input(format!(
            "{}: graph has {components} connected components (--strict)",
            path.display()
        )));
    }
    let graph = graph.largest_connected_component();
    let note = format!(
        "largest of {components} components: {} of {original_nodes} nodes",
        graph.node_count()
    );
    diagnostics.push(format!("warning: {}: using {note}", path.display()));
    Ok(LoadedGraph {
        graph,
        format,
        original_nodes,
        original_edges,
        component_note: note,
    })
}

fn format_name(format: InputFormat) -> &'static str {
    match format {
        InputFormat::EdgeList => "edgelist",
        InputFormat::Pajek => "pajek",
    }
}

/// Full pipeline: component, distances, covering profile (computed once),
/// then one estimate per `q`.
pub fn run_analysis(path: &Path, opts: &AnalysisOptions) -> Result<(AnalysisReport, Outcome), CliError> {
    if opts.q_list.is_empty() {
        return Err(CliError::Usage("q list is empty".into()));
    }
    if let Some(q) = opts.q_list.iter().find(|q| !q.is_finite()) {
        return Err(CliError::Usage(format!("q must be finite, got {q}")));
    }
    if opts.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let mut outcome = Outcome::default();
    let loaded = load_connected(path, opts.format, opts.strict, &mut outcome.diagnostics)?;
    let dist = loaded.graph.all_pairs_distances()?;

    let l_min = opts.l_min.unwrap_or(1);
    let l_max = opts.l_max.map_or(LMax::Auto, LMax::Fixed);
    let profile = covering_profile_from_distances(&dist, l_min, l_max, opts.trials, opts.seed)?;
    if !profile.repaired.is_empty() {
        outcome.diagnostics.push(format!(
            "note: greedy covering regressed at l_B = {:?}; reused the covering of the previous box size",
            profile.repaired
        ));
    }
    let fit_range = (opts.l_min.is_some() || opts.l_max.is_some()).then_some((l_min, profile.l_max));

    let mode = opts.mode.to_string();
    let box_counting = EstimateRow::from_result(
        None,
        "box_counting",
        "slope",
        &box_counting_dimension(&profile, fit_range),
    );
    let mut estimates = Vec::with_capacity(opts.q_list.len());
    let mut failed = Vec::new();
    for &q in &opts.q_list {
        let result = tsallis_dimension(&profile, q, opts.mode, fit_range);
        if let Err(e) = &result {
            failed.push(format!("q={q}: {e}"));
        }
        estimates.push(EstimateRow::from_result(Some(q), estimate_label(q), &mode, &result));
    }
    if let Some(e) = &box_counting.error {
        outcome.diagnostics.push(format!("warning: box-counting fit: {e}"));
    }
    for f in &failed {
        outcome.diagnostics.push(format!("error: {f}"));
    }
    if !failed.is_empty() {
        outcome.failure = Some(CliError::Analysis(format!(
            "{} of {} estimates failed",
            failed.len(),
            opts.q_list.len()
        )));
    }

    let report = AnalysisReport {
        input: InputInfo {
            file: path.display().to_string(),
            format: format_name(loaded.format).into(),
            nodes: loaded.graph.node_count(),
            edges: loaded.graph.edge_count(),
            diameter: dist.diameter(),
            original_nodes: loaded.original_nodes,
            original_edges: loaded.original_edges,
            component_note: loaded.component_note,
        },
        settings: Settings {
            q_list: opts.q_list.iter().copied().map(Sig17).collect(),
            trials: opts.trials,
            seed: opts.seed,
            mode,
            l_min,
            l_max: profile.l_max,
            fit_range,
        },
        profile: profile_rows(&profile, &opts.q_list)?,
        box_counting,
        estimates,
    };
    outcome.stdout = match opts.output {
        OutputKind::Json => report.to_json(),
        OutputKind::Csv => report.to_csv(),
    };
    Ok((report, outcome))
}

/// Single-`q` analysis.
pub fn cmd_analyze(path: &Path, q: f64, opts: &AnalysisOptions) -> Result<Outcome, CliError> {
    let opts = AnalysisOptions {
        q_list: vec![q],
        ..opts.clone()
    };
    run_analysis(path, &opts).map(|(_, out)| out)
}

/// Multi-`q` analysis over one covering profile.
pub fn cmd_sweep(path: &Path, opts: &AnalysisOptions) -> Result<Outcome, CliError> {
    run_analysis(path, opts).map(|(_, out)| out)
}

/// Covers the input once at `l_b`: `N_B = k`, then optionally one
/// `box <i>: <labels>` line per box.
pub fn cmd_cover(
    path: &Path,
    format: FormatChoice,
    l_b: u32,
    trials: usize,
    seed: u64,
    strict: bool,
    dump_boxes: bool,
) -> Result<Outcome, CliError> {
    if l_b == 0 {
        return Err(CliError::Usage("box size must be at least 1".into()));
    }
    let mut outcome = Outcome::default();
    let loaded = load_connected(path, format, strict, &mut outcome.diagnostics)?;
    let dist = loaded.graph.all_pairs_distances()?;
    let covering = box_cover(&dist, l_b, trials, seed)?;
    let mut out = format!("N_B = {}\n", covering.box_count());
    if dump_boxes {
        for (i, members) in covering.boxes.iter().enumerate() {
            let labels: Vec<&str> = members.iter().map(|&v| loaded.graph.label(v)).collect();
            out.push_str(&format!("box {i}: {}\n", labels.join(" ")));
        }
    }
    outcome.stdout = out;
    Ok(outcome)
}

/// Parses generator parameters: `path|cycle|star|complete <n>`,
/// `grid <rows>x<cols>` (or `<rows> <cols>`), `er <n> <p>`.
pub fn parse_generator(model: &str, params: &[String], seed: u64) -> Result<GeneratorSpec, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "bad parameters {params:?} for model {model:?}; expected \
             path|cycle|star|complete N, grid RxC, er N P"
        ))
    };
    let int = |s: &str| s.parse::<usize>().map_err(|_| usage());
    let spec = match (model, params) {
        ("path", [n]) => GeneratorSpec::Path { n: int(n)? },
        ("cycle", [n]) => GeneratorSpec::Cycle { n: int(n)? },
        ("star", [n]) => GeneratorSpec::Star { n: int(n)? },
        ("complete", [n]) => GeneratorSpec::Complete { n: int(n)? },
        ("grid", [dims]) => {
            let (r, c) = dims.split_once(['x', 'X']).ok_or_else(usage)?;
            GeneratorSpec::Grid { rows: int(r)?, cols: int(c)? }
        }
        ("grid", [r, c]) => GeneratorSpec::Grid { rows: int(r)?, cols: int(c)? },
        ("er" | "er_random", [n, p]) => GeneratorSpec::ErRandom {
            n: int(n)?,
            p: p.parse().map_err(|_| usage())?,
            seed,
        },
        _ => return Err(usage()),
    };
    Ok(spec)
}

/// Edge-list serialization with a provenance comment line.
pub fn edge_list_text(spec: &GeneratorSpec, graph: &Graph) -> String {
    let mut out = format!("# {spec}\n");
    for (u, v) in graph.edges() {
        out.push_str(graph.label(u));
        out.push(' ');
        out.push_str(graph.label(v));
        out.push('\n');
    }
    out
}

/// Generates a graph; the edge list goes to `out` if given, otherwise to
/// standard output. Node and edge counts are always reported.
pub fn cmd_generate(spec: &GeneratorSpec, out: Option<&Path>) -> Result<Outcome, CliError> {
    let graph = generate(spec).map_err(|e| match e {
        netdim::Error::Generation(_) => CliError::Analysis(e.to_string()),
        other => CliError::from(other),
    })?;
    let text = edge_list_text(spec, &graph);
    let counts = format!("nodes: {}, edges: {}", graph.node_count(), graph.edge_count());
    let mut outcome = Outcome::default();
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            outcome.stdout = format!("{counts}\n");
        }
        None => {
            outcome.stdout = text;
            outcome.diagnostics.push(counts);
        }
    }
    Ok(outcome)
}
