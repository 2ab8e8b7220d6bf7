//! File formats: edge lists, MITAB interaction exports, network TSV, knapsack
//! and NE instance JSON, sweep results CSV and the SVG ratio chart.
//!
//! All text is UTF-8 with LF line endings.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, NodeId, SignedDigraph};
use crate::ne::{NeInstance, OracleAdvice};
use crate::netgen::randomize_signs_directions;
use crate::sim::{CellResult, SweepMeta, SweepResult};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListRecord {
    pub source_id: String,
    pub target_id: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MitabRecord {
    pub interactor_a: String,
    pub interactor_b: String,
    /// Columns after the first two, untouched.
    pub rest: Vec<String>,
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// Parses `source<TAB>target[<TAB>weight]` lines; a missing weight means +1.
pub fn parse_edgelist_str(text: &str, path: &Path) -> Result<Vec<EdgeListRecord>> {
    data_lines(text)
        .map(|(line, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            if !(2..=3).contains(&cols.len()) {
                return Err(parse_error(
                    path,
                    line,
                    format!(
                        "expected 2 or 3 tab-separated columns, found {}",
                        cols.len()
                    ),
                ));
            }
            if cols[0].is_empty() || cols[1].is_empty() {
                return Err(parse_error(path, line, "empty node identifier"));
            }
            let weight = match cols.get(2) {
                None => 1.0,
                Some(raw) => raw
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| parse_error(path, line, format!("bad weight {raw:?}")))?,
            };
            if !weight.is_finite() || weight == 0.0 {
                return Err(parse_error(
                    path,
                    line,
                    format!("weight {weight} must be finite and nonzero"),
                ));
            }
            Ok(EdgeListRecord {
                source_id: cols[0].to_string(),
                target_id: cols[1].to_string(),
                weight,
            })
        })
        .collect()
}

pub fn parse_edgelist(path: &Path) -> Result<Vec<EdgeListRecord>> {
    parse_edgelist_str(&fs::read_to_string(path)?, path)
}

pub fn parse_mitab_str(text: &str, path: &Path) -> Result<Vec<MitabRecord>> {
    data_lines(text)
        .map(|(line, l)| {
            let mut cols = l.split('\t');
            match (cols.next(), cols.next()) {
                (Some(a), Some(b)) => Ok(MitabRecord {
                    interactor_a: a.to_string(),
                    interactor_b: b.to_string(),
                    rest: cols.map(str::to_string).collect(),
                }),
                _ => Err(parse_error(
                    path,
                    line,
                    "MITAB line needs at least 2 columns",
                )),
            }
        })
        .collect()
}

/// Reads interaction pairs from a MITAB export. Pairs carry no sign or
/// direction; both are assigned later.
pub fn parse_mitab(path: &Path) -> Result<Vec<MitabRecord>> {
    parse_mitab_str(&fs::read_to_string(path)?, path)
}

impl From<&MitabRecord> for EdgeListRecord {
    fn from(r: &MitabRecord) -> Self {
        Self {
            source_id: r.interactor_a.clone(),
            target_id: r.interactor_b.clone(),
            weight: 1.0,
        }
    }
}

/// A graph together with the external identifier of each node.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub graph: SignedDigraph,
    pub ids: Vec<String>,
}

impl Network {
    /// Identifiers are the decimal node indices.
    pub fn with_index_ids(graph: SignedDigraph) -> Self {
        let ids = (0..graph.node_count()).map(|i| i.to_string()).collect();
        Self { graph, ids }
    }

    /// Keeps the identifiers of nodes that survived a re-indexing.
    pub fn remapped(&self, graph: SignedDigraph, index_map: &[Option<NodeId>]) -> Self {
        let mut ids = vec![String::new(); graph.node_count()];
        for (old, new) in index_map.iter().enumerate() {
            if let Some(new) = new {
                ids[*new] = self.ids[old].clone();
            }
        }
        Self { graph, ids }
    }
}

#[derive(Default)]
struct IdIndex {
    ids: Vec<String>,
    lookup: HashMap<String, NodeId>,
}

impl IdIndex {
    fn intern(&mut self, id: &str) -> NodeId {
        if let Some(&i) = self.lookup.get(id) {
            return i;
        }
        self.ids.push(id.to_string());
        self.lookup.insert(id.to_string(), self.ids.len() - 1);
        self.ids.len() - 1
    }
}

/// Indexes string identifiers densely in first-appearance order. Without
/// randomisation each record becomes `source -> target` with its own weight;
/// with it, direction and sign are redrawn by fair coins (magnitudes kept).
pub fn ids_to_graph(records: &[EdgeListRecord], assign_random: bool, seed: u64) -> Network {
    let mut index = IdIndex::default();
    let edges: Vec<Edge> = records
        .iter()
        .map(|r| {
            let s = index.intern(&r.source_id);
            let t = index.intern(&r.target_id);
            Edge::new(s, t, r.weight)
        })
        .collect();
    let graph = SignedDigraph::from_valid_edges(index.ids.len(), edges);
    let graph = if assign_random {
        randomize_signs_directions(&graph, seed)
    } else {
        graph
    };
    Network {
        graph,
        ids: index.ids,
    }
}

const NODE_DIRECTIVE: &str = "#node\t";

/// Serialises a network as a 3-column edge list. Every node is also declared
/// up front with a `#node<TAB>id` comment so that [`read_network`] restores the
/// same indices and keeps isolated nodes; plain edge-list readers skip them.
pub fn network_to_tsv(net: &Network) -> String {
    let mut out = String::new();
    for id in &net.ids {
        let _ = writeln!(out, "{NODE_DIRECTIVE}{id}");
    }
    for e in net.graph.edges() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            net.ids[e.source], net.ids[e.target], e.weight
        );
    }
    out
}

pub fn write_network(net: &Network, path: &Path) -> Result<()> {
    fs::write(path, network_to_tsv(net))?;
    Ok(())
}

pub fn read_network_str(text: &str, path: &Path) -> Result<Network> {
    let mut index = IdIndex::default();
    for line in text.lines() {
        if let Some(id) = line.strip_prefix(NODE_DIRECTIVE) {
            index.intern(id.strip_suffix('\r').unwrap_or(id));
        }
    }
    let records = parse_edgelist_str(text, path)?;
    let edges = records
        .iter()
        .map(|r| {
            Edge::new(
                index.intern(&r.source_id),
                index.intern(&r.target_id),
                r.weight,
            )
        })
        .collect();
    Ok(Network {
        graph: SignedDigraph::from_valid_edges(index.ids.len(), edges),
        ids: index.ids,
    })
}

pub fn read_network(path: &Path) -> Result<Network> {
    read_network_str(&fs::read_to_string(path)?, path)
}

/// JSON form of an NE instance: the interaction matrix as `[source, target,
/// weight]` triples, the advice string, and the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeFile {
    pub nodes: usize,
    pub edges: Vec<(NodeId, NodeId, f64)>,
    pub advice: OracleAdvice,
    pub tolerance: f64,
}

impl From<&NeInstance> for NeFile {
    fn from(ne: &NeInstance) -> Self {
        Self {
            nodes: ne.graph.node_count(),
            edges: ne
                .graph
                .edges()
                .iter()
                .map(|e| (e.source, e.target, e.weight))
                .collect(),
            advice: ne.advice.clone(),
            tolerance: ne.tolerance,
        }
    }
}

impl NeFile {
    pub fn into_instance(self) -> Result<NeInstance> {
        let graph = SignedDigraph::build(self.nodes, self.edges)?;
        NeInstance::new(Arc::new(graph), self.advice, self.tolerance)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let mut text = String::new();
    fs::File::open(path)?.read_to_string(&mut text)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Formats like C's `%g`: six significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-4, 1e6)`.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{x:.*}", (5 - exp) as usize))
    }
}

pub const RESULTS_HEADER: [&str; 11] = [
    "network",
    "n",
    "p",
    "t",
    "rounds",
    "mean_value",
    "mean_weight",
    "ratio",
    "seed",
    "solver",
    "weight_scale",
];

pub fn write_results_csv<W: Write>(results: &[SweepResult], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for res in results {
        let m = &res.meta;
        for c in &res.cells {
            w.write_record([
                m.network.clone(),
                m.n.to_string(),
                c.p.to_string(),
                fmt_sig6(c.t),
                c.rounds_completed.to_string(),
                fmt_sig6(c.mean_value),
                fmt_sig6(c.mean_weight),
                fmt_sig6(c.ratio),
                m.seed.to_string(),
                m.solver.clone(),
                fmt_sig6(m.weight_scale),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn results_to_csv(results: &[SweepResult]) -> Result<String> {
    let mut buf = Vec::new();
    write_results_csv(results, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
}

/// Reads a results CSV back, one [`SweepResult`] per run (consecutive rows
/// sharing network, size, seed, solver and weight scale).
pub fn read_results_csv(path: &Path) -> Result<Vec<SweepResult>> {
    let mut reader = csv::ReaderBuilder::new().from_path(path)?;
    let header = reader.headers()?.clone();
    if header.iter().ne(RESULTS_HEADER) {
        return Err(parse_error(path, 1, "unexpected results header"));
    }
    let mut results: Vec<SweepResult> = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let num = |col: usize| -> Result<f64> {
            row[col]
                .parse::<f64>()
                .map_err(|_| parse_error(path, line, format!("bad number {:?}", &row[col])))
        };
        let int = |col: usize| -> Result<u64> {
            row[col]
                .parse::<u64>()
                .map_err(|_| parse_error(path, line, format!("bad integer {:?}", &row[col])))
        };
        let meta = SweepMeta {
            network: row[0].to_string(),
            n: int(1)? as usize,
            seed: int(8)?,
            solver: row[9].to_string(),
            weight_scale: num(10)?,
        };
        let cell = CellResult {
            p: int(2)? as usize,
            t: num(3)?,
            rounds_completed: int(4)? as usize,
            mean_value: num(5)?,
            mean_weight: num(6)?,
            ratio: num(7)?,
        };
        match results.last_mut() {
            Some(last) if last.meta == meta => last.cells.push(cell),
            _ => results.push(SweepResult {
                meta,
                cells: vec![cell],
                warnings: Vec::new(),
            }),
        }
    }
    Ok(results)
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub svg: String,
    pub bars: usize,
    pub warnings: Vec<String>,
}

/// Grouped bar chart of the value-to-weight ratio at the highest pressure
/// present: one group per network, one bar per tolerance.
pub fn render_figure(results: &[SweepResult]) -> Result<Figure> {
    let p_max = results
        .iter()
        .flat_map(|r| &r.cells)
        .map(|c| c.p)
        .max()
        .ok_or_else(|| Error::EmptyFigure("no result cells".into()))?;
    let mut tolerances: Vec<f64> = results
        .iter()
        .flat_map(|r| &r.cells)
        .filter(|c| c.p == p_max)
        .map(|c| c.t)
        .collect();
    tolerances.sort_by(f64::total_cmp);
    tolerances.dedup();

    let mut warnings = Vec::new();
    let groups: Vec<(&str, Vec<Option<f64>>)> = results
        .iter()
        .map(|r| {
            let bars = tolerances
                .iter()
                .map(|&t| {
                    let ratio = r.cell(p_max, t).map(|c| c.ratio);
                    if ratio.is_none() {
                        warnings.push(format!(
                            "{}: no cell at p={p_max}, t={}",
                            r.meta.network,
                            fmt_sig6(t)
                        ));
                    }
                    ratio
                })
                .collect();
            (r.meta.network.as_str(), bars)
        })
        .collect();

    let y_max = groups
        .iter()
        .flat_map(|(_, b)| b.iter().flatten())
        .fold(0.0f64, |a, &b| a.max(b));
    let y_top = if y_max > 0.0 { y_max * 1.1 } else { 1.0 };

    let (bar_w, gap, margin_l, margin_r, margin_t, margin_b, plot_h) =
        (18.0, 24.0, 60.0, 140.0, 40.0, 50.0, 300.0);
    let group_w = bar_w * tolerances.len() as f64;
    let plot_w = (group_w + gap) * groups.len() as f64 + gap;
    let width = margin_l + plot_w + margin_r;
    let height = margin_t + plot_h + margin_b;
    let y_of = |v: f64| margin_t + plot_h * (1.0 - v / y_top);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="20" text-anchor="middle" font-size="13">V/W ratio at p = {p_max}</text>"#,
        margin_l + plot_w / 2.0
    );
    for k in 0..=4 {
        let v = y_top * k as f64 / 4.0;
        let y = y_of(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{margin_l:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/>"##,
            margin_l + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            margin_l - 6.0,
            y + 4.0,
            fmt_sig6((v * 100.0).round() / 100.0)
        );
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{margin_l:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black"/>"#,
        margin_t + plot_h,
        margin_l + plot_w,
        margin_t + plot_h
    );

    let mut bars = 0;
    for (g, (name, values)) in groups.iter().enumerate() {
        let x0 = margin_l + gap + g as f64 * (group_w + gap);
        for (b, value) in values.iter().enumerate() {
            let Some(v) = value else { continue };
            let y = y_of(*v);
            let _ = writeln!(
                svg,
                r#"<rect x="{:.1}" y="{y:.1}" width="{bar_w:.1}" height="{:.1}" fill="{}"><title>{} t={}: {}</title></rect>"#,
                x0 + b as f64 * bar_w,
                margin_t + plot_h - y,
                PALETTE[b % PALETTE.len()],
                xml_escape(name),
                fmt_sig6(tolerances[b]),
                fmt_sig6(*v)
            );
            bars += 1;
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x0 + group_w / 2.0,
            margin_t + plot_h + 18.0,
            xml_escape(name)
        );
    }
    for (b, &t) in tolerances.iter().enumerate() {
        let y = margin_t + 10.0 + b as f64 * 18.0;
        let x = margin_l + plot_w + 16.0;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.1}" y="{:.1}" width="12" height="12" fill="{}"/>"#,
            y - 10.0,
            PALETTE[b % PALETTE.len()]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{y:.1}">t = {}</text>"#,
            x + 18.0,
            fmt_sig6(t)
        );
    }
    svg.push_str("</svg>\n");
    Ok(Figure {
        svg,
        bars,
        warnings,
    })
}

pub fn emit_figure(results: &[SweepResult], path: &Path) -> Result<Figure> {
    let fig = render_figure(results)?;
    fs::write(path, &fig.svg)?;
    Ok(fig)
}

/// Network name used in results: the file stem.
pub fn network_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| PathBuf::from(path).display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.tsv")
    }

    #[test]
    fn edgelist_examples() {
        let r = parse_edgelist_str("a\tb\t-1.0\n", p()).unwrap();
        assert_eq!(
            r,
            vec![EdgeListRecord {
                source_id: "a".into(),
                target_id: "b".into(),
                weight: -1.0
            }]
        );
        let r = parse_edgelist_str("a\tb\n", p()).unwrap();
        assert_eq!(r[0].weight, 1.0);
        let err = parse_edgelist_str("a\tb\tx\n", p()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn edgelist_errors_report_line() {
        let text = "# header\na\tb\n\nc\n";
        assert!(matches!(
            parse_edgelist_str(text, p()),
            Err(Error::Parse { line: 4, .. })
        ));
        for bad in [
            "a\tb\tinf\n",
            "a\tb\t0\n",
            "a\tb\tNaN\n",
            "\tb\n",
            "a\tb\t1\textra\n",
        ] {
            assert!(parse_edgelist_str(bad, p()).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn mitab_examples() {
        let text = "#ID(s) interactor A\tID(s) interactor B\tAlt\n\
                    uniprotkb:P1\tuniprotkb:P2\t-\tx\n\
                    uniprotkb:P2\tuniprotkb:P3\n";
        let r = parse_mitab_str(text, p()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].interactor_a, "uniprotkb:P1");
        assert_eq!(r[0].rest, vec!["-", "x"]);
        assert!(r[1].rest.is_empty());
        assert!(matches!(
            parse_mitab_str("only-one-column\n", p()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn ids_to_graph_pass_through() {
        let recs = parse_edgelist_str("a\tb\t1\nb\tc\t-2.5\nc\ta\n", p()).unwrap();
        let net = ids_to_graph(&recs, false, 0);
        assert_eq!(net.ids, vec!["a", "b", "c"]);
        assert_eq!(
            net.graph.edges(),
            &[
                Edge::new(0, 1, 1.0),
                Edge::new(1, 2, -2.5),
                Edge::new(2, 0, 1.0)
            ]
        );
        assert_eq!(ids_to_graph(&recs, false, 0), net);
    }

    #[test]
    fn ids_to_graph_randomized_sign_balance() {
        let recs: Vec<EdgeListRecord> = (0..1000)
            .map(|i| EdgeListRecord {
                source_id: format!("s{i}"),
                target_id: format!("t{i}"),
                weight: 1.0,
            })
            .collect();
        let net = ids_to_graph(&recs, true, 2024);
        let positive = net.graph.edges().iter().filter(|e| e.weight > 0.0).count();
        let frac = positive as f64 / 1000.0;
        assert!((0.44..=0.56).contains(&frac), "{frac}");
        let flipped = net
            .graph
            .edges()
            .iter()
            .filter(|e| net.ids[e.source].starts_with('t'))
            .count();
        assert!((400..=600).contains(&flipped), "{flipped}");
    }

    #[test]
    fn network_tsv_keeps_indices_and_isolated_nodes() {
        let g = SignedDigraph::build(4, [(2, 0, -1.0), (0, 1, 0.25)]).unwrap();
        let net = Network::with_index_ids(g);
        let text = network_to_tsv(&net);
        let back = read_network_str(&text, p()).unwrap();
        assert_eq!(back, net);
        // plain readers see only the edges
        assert_eq!(parse_edgelist_str(&text, p()).unwrap().len(), 2);
    }

    #[test]
    fn sig6_formatting() {
        let cases = [
            (0.0, "0"),
            (4.0, "4"),
            (74.0, "74"),
            (1.0 / 3.0, "0.333333"),
            (30.9, "30.9"),
            (123456.7, "123457"),
            (999999.5, "1e+06"),
            (1234567.0, "1.23457e+06"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (500.0, "500"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_sig6(x), want, "{x}");
        }
    }

    fn sample_result(name: &str) -> SweepResult {
        SweepResult {
            meta: SweepMeta {
                network: name.into(),
                n: 10,
                seed: 3,
                solver: "dp".into(),
                weight_scale: 1.0,
            },
            cells: vec![
                CellResult {
                    p: 5,
                    t: 5.0,
                    rounds_completed: 2,
                    mean_value: 4.5,
                    mean_weight: 0.0,
                    ratio: 4.5,
                },
                CellResult {
                    p: 5,
                    t: 10.0,
                    rounds_completed: 2,
                    mean_value: 7.0,
                    mean_weight: 3.0,
                    ratio: 7.0 / 3.0,
                },
            ],
            warnings: vec![],
        }
    }

    #[test]
    fn results_csv_layout() {
        let csv = results_to_csv(&[sample_result("ba")]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "network,n,p,t,rounds,mean_value,mean_weight,ratio,seed,solver,weight_scale"
        );
        assert_eq!(lines[1], "ba,10,5,5,2,4.5,0,4.5,3,dp,1");
        assert_eq!(lines[2], "ba,10,5,10,2,7,3,2.33333,3,dp,1");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn figure_examples() {
        let mut r = sample_result("ba");
        for t in [50.0, 500.0] {
            r.cells.push(CellResult { t, ..r.cells[0] });
        }
        let fig = render_figure(std::slice::from_ref(&r)).unwrap();
        assert_eq!(fig.bars, 4);
        assert!(fig.warnings.is_empty());
        assert_eq!(fig.svg, render_figure(&[r.clone()]).unwrap().svg);
        assert!(fig.svg.starts_with("<svg"));

        assert!(matches!(render_figure(&[]), Err(Error::EmptyFigure(_))));

        let mut short = sample_result("er & co");
        short.cells.truncate(1);
        let fig = render_figure(&[r, short]).unwrap();
        assert_eq!(fig.bars, 5);
        assert_eq!(fig.warnings.len(), 3);
        assert!(fig.svg.contains("er &amp; co"));
    }
}
