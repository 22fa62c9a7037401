//! Readers for whitespace edge lists and the Pajek `.net` subset.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Pajek,
}

impl InputFormat {
    /// A leading `*` (after whitespace) selects Pajek.
    pub fn detect(text: &str) -> Self {
        if text.trim_start().starts_with('*') {
            InputFormat::Pajek
        } else {
            InputFormat::EdgeList
        }
    }
}

pub fn parse(text: &str, format: InputFormat) -> Result<Graph> {
    match format {
        InputFormat::EdgeList => parse_edge_list(text),
        InputFormat::Pajek => parse_pajek(text),
    }
}

/// Parses one edge per line as two whitespace-separated tokens.
///
/// Blank lines and lines starting with `#` are skipped. Node labels are
/// assigned dense ids in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |tok| {
        *ids.entry(tok).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };

    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(
                idx + 1,
                format!("expected 2 node tokens, found {}", tokens.len()),
            ));
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Graph::from_edges(labels, edges)
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Preamble,
    Vertices,
    Pairs,
    Ignored,
}

/// Parses the Pajek subset: `*Vertices N`, optional vertex lines with quoted
/// or bare labels, then `*Edges` / `*Arcs` pair lines.
///
/// Keywords are case-insensitive, arcs are symmetrized and anything after
/// the first two columns of a pair line (weights, styling) is ignored.
pub fn parse_pajek(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut section = Section::Preamble;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(keyword) = line.strip_prefix('*') {
            let mut parts = keyword.split_whitespace();
            let name = parts.next().unwrap_or("").to_ascii_lowercase();
            section = match name.as_str() {
                "vertices" => {
                    if n.is_some() {
                        return Err(Error::parse(lineno, "duplicate *Vertices header"));
                    }
                    let count = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(lineno, "*Vertices needs a node count"))?;
                    n = Some(count);
                    labels = (1..=count).map(|i| i.to_string()).collect();
                    Section::Vertices
                }
                "edges" | "arcs" => {
                    if n.is_none() {
                        return Err(Error::parse(lineno, "missing *Vertices header"));
                    }
                    Section::Pairs
                }
                "network" => Section::Preamble,
                _ => Section::Ignored,
            };
            continue;
        }

        match section {
            Section::Preamble => {
                return Err(Error::parse(lineno, "missing *Vertices header"));
            }
            Section::Ignored => {}
            Section::Vertices => {
                let count = n.unwrap_or(0);
                let (index, rest) = split_first_token(line);
                let index = vertex_index(index, count, lineno)?;
                if let Some(label) = vertex_label(rest) {
                    labels[index] = label;
                }
            }
            Section::Pairs => {
                let count = n.unwrap_or(0);
                let mut tokens = line.split_whitespace();
                let (a, b) = match (tokens.next(), tokens.next()) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Error::parse(lineno, "expected a vertex pair")),
                };
                edges.push((vertex_index(a, count, lineno)?, vertex_index(b, count, lineno)?));
            }
        }
    }

    if n.is_none() {
        return Err(Error::parse(0, "missing *Vertices header"));
    }
    Graph::from_edges(labels, edges)
}

fn split_first_token(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(pos) => (&line[..pos], line[pos..].trim_start()),
        None => (line, ""),
    }
}

fn vertex_label(rest: &str) -> Option<String> {
    if let Some(quoted) = rest.strip_prefix('"') {
        let end = quoted.find('"').unwrap_or(quoted.len());
        return Some(quoted[..end].to_string());
    }
    rest.split_whitespace().next().map(str::to_string)
}

/// Converts a 1-based Pajek index into a dense id.
fn vertex_index(token: &str, n: usize, lineno: usize) -> Result<usize> {
    let idx: usize = token
        .parse()
        .map_err(|_| Error::parse(lineno, format!("invalid vertex index {token:?}")))?;
    if idx == 0 || idx > n {
        return Err(Error::parse(
            lineno,
            format!("vertex index {idx} out of range 1..{n}"),
        ));
    }
    Ok(idx - 1)
}
