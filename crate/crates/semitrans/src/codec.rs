//! Line-oriented text formats for graphs, orientations and words, plus DOT export.
//!
//! Graph text:
//!
//! ```text
//! c optional comment lines
//! p st <n> <m>
//! v <index> <label>      only for vertices whose label is not their index
//! e <u> <v>              1-based, u < v, one line per edge
//! ```
//!
//! An orientation file is a graph file followed by `a <u> <v>` lines (u -> v),
//! exactly one per edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use semitrans_core::orient::Directed;
use semitrans_core::words::Word;
use semitrans_core::{Graph, Orientation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected `p st <n> <m>` header")]
    MissingHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("second header")]
    DuplicateHeader,
    #[error("malformed `{0}` line")]
    Malformed(char),
    #[error("unknown line type `{0}`")]
    UnknownLine(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("edge {u} {v} must list the smaller index first")]
    NotIncreasing { u: usize, v: usize },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {0} labeled twice")]
    RelabeledVertex(usize),
    #[error("label `{0}` used by two vertices")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("arc {u} {v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("edge {u} {v} oriented twice")]
    DuplicateArc { u: usize, v: usize },
    #[error("edge {u} {v} has no arc")]
    MissingArc { u: usize, v: usize },
    #[error("empty input")]
    Empty,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Canonical text: header, label lines for non-default labels, edges in index order.
pub fn encode_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p st {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (i, l) in g.labels().iter().enumerate() {
        if *l != (i + 1).to_string() {
            writeln!(s, "v {} {}", i + 1, l).unwrap();
        }
    }
    for e in g.edges() {
        writeln!(s, "e {} {}", e.u + 1, e.v + 1).unwrap();
    }
    s
}

/// Graph text followed by one `a` line per edge, in edge order.
pub fn encode_orientation(o: &Orientation) -> String {
    let mut s = encode_graph(o.graph());
    for (t, h) in o.arcs() {
        writeln!(s, "a {} {}", t + 1, h + 1).unwrap();
    }
    s
}

struct Parsed {
    graph: Graph,
    arcs: Vec<(usize, usize, usize)>,
    last_line: usize,
}

fn index(tok: Option<&str>, n: usize, line: usize, kind: char) -> Result<usize, ParseError> {
    let i: usize = tok.and_then(|t| t.parse().ok()).ok_or(err(line, ParseErrorKind::Malformed(kind)))?;
    if i == 0 || i > n {
        return Err(err(line, ParseErrorKind::IndexOutOfRange { index: i, n }));
    }
    Ok(i - 1)
}

fn parse_document(text: &str, allow_arcs: bool) -> Result<Parsed, ParseError> {
    let mut n_m: Option<(usize, usize)> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut label_line: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        if kind == "p" {
            if n_m.is_some() {
                return Err(err(line, ParseErrorKind::DuplicateHeader));
            }
            let rest: Vec<&str> = toks.collect();
            let [fmt, n, m] = rest[..] else { return Err(err(line, ParseErrorKind::MalformedHeader)) };
            let (Ok(n), Ok(m)) = (n.parse::<usize>(), m.parse::<usize>()) else {
                return Err(err(line, ParseErrorKind::MalformedHeader));
            };
            if fmt != "st" {
                return Err(err(line, ParseErrorKind::MalformedHeader));
            }
            n_m = Some((n, m));
            labels = (1..=n).map(|i| i.to_string()).collect();
            continue;
        }
        let Some((n, _)) = n_m else { return Err(err(line, ParseErrorKind::MissingHeader)) };
        let c = kind.chars().next().unwrap();
        match kind {
            "v" => {
                let v = index(toks.next(), n, line, c)?;
                let label = toks.next().ok_or(err(line, ParseErrorKind::Malformed(c)))?;
                if toks.next().is_some() {
                    return Err(err(line, ParseErrorKind::Malformed(c)));
                }
                if label.chars().any(char::is_control) {
                    return Err(err(line, ParseErrorKind::InvalidLabel(label.to_string())));
                }
                if label_line.insert(v, line).is_some() {
                    return Err(err(line, ParseErrorKind::RelabeledVertex(v + 1)));
                }
                labels[v] = label.to_string();
            }
            "e" | "a" => {
                if kind == "a" && !allow_arcs {
                    return Err(err(line, ParseErrorKind::UnknownLine(kind.to_string())));
                }
                let u = index(toks.next(), n, line, c)?;
                let v = index(toks.next(), n, line, c)?;
                if toks.next().is_some() {
                    return Err(err(line, ParseErrorKind::Malformed(c)));
                }
                if kind == "a" {
                    arcs.push((u, v, line));
                    continue;
                }
                if u >= v {
                    return Err(err(line, ParseErrorKind::NotIncreasing { u: u + 1, v: v + 1 }));
                }
                // Edges come before arcs.
                if !arcs.is_empty() {
                    return Err(err(line, ParseErrorKind::Malformed(c)));
                }
                if !edges.insert((u, v)) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge { u: u + 1, v: v + 1 }));
                }
            }
            other => return Err(err(line, ParseErrorKind::UnknownLine(other.to_string()))),
        }
    }
    let Some((_, m)) = n_m else {
        return Err(err(last_line.max(1), if text.trim().is_empty() { ParseErrorKind::Empty } else { ParseErrorKind::MissingHeader }));
    };
    if edges.len() != m {
        return Err(err(last_line, ParseErrorKind::EdgeCountMismatch { declared: m, found: edges.len() }));
    }
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for (v, l) in labels.iter().enumerate() {
        if let Some(first) = seen.insert(l, v) {
            let line = label_line.get(&v).or(label_line.get(&first)).copied().unwrap_or(last_line);
            return Err(err(line, ParseErrorKind::DuplicateLabel(l.clone())));
        }
    }
    let graph = Graph::from_index_edges(labels, edges).expect("labels and indices validated above");
    Ok(Parsed { graph, arcs, last_line })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_document(text, false).map(|p| p.graph)
}

pub fn parse_orientation(text: &str) -> Result<Orientation, ParseError> {
    let Parsed { graph, arcs, last_line } = parse_document(text, true)?;
    let mut dirs = vec![None; graph.edge_count()];
    for (t, h, line) in arcs {
        let i = graph.edge_index(t, h).ok_or(err(line, ParseErrorKind::NotAnEdge { u: t + 1, v: h + 1 }))?;
        let e = graph.edges()[i];
        if dirs[i].replace(semitrans_core::Dir::from_arc(e, t)).is_some() {
            return Err(err(line, ParseErrorKind::DuplicateArc { u: e.u + 1, v: e.v + 1 }));
        }
    }
    let mut full = Vec::with_capacity(dirs.len());
    for (i, d) in dirs.into_iter().enumerate() {
        let e = graph.edges()[i];
        full.push(d.ok_or(err(last_line, ParseErrorKind::MissingArc { u: e.u + 1, v: e.v + 1 }))?);
    }
    Ok(Orientation::new(graph, full).expect("one direction per edge"))
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot(kind: &str, g: &Graph, arrow: &str, lines: impl Iterator<Item = (usize, usize)>) -> String {
    let mut s = format!("{kind} G {{\n");
    for i in 0..g.vertex_count() {
        writeln!(s, "  {} [label={}];", i + 1, dot_id(g.label(i))).unwrap();
    }
    for (u, v) in lines {
        writeln!(s, "  {} {arrow} {};", u + 1, v + 1).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Undirected DOT document, one node per vertex in index order.
pub fn graph_to_dot(g: &Graph) -> String {
    dot("graph", g, "--", g.edges().iter().map(|e| (e.u, e.v)))
}

pub fn orientation_to_dot(o: &Orientation) -> String {
    dot("digraph", o.graph(), "->", o.arcs())
}

/// One word per non-blank line. In compact mode every non-whitespace character is a letter.
pub fn parse_words(text: &str, compact: bool) -> Vec<(usize, Word)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, if compact { Word::parse_compact(l) } else { Word::parse(l) }))
        .collect()
}
