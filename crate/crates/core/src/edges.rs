//! The edge-string format.
//!
//! A graph is written as the concatenation of its edges, two characters per
//! edge. Labels are `0-9` then `a-j`; `r` marks the root of a single-rooted
//! graph. Isolated vertices cannot be expressed, so the trivial graph `K_1`
//! serializes to the empty string and its order travels out of band.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rooted::SingleRootedGraph;

/// Plain vertex labels in index order.
pub const LABELS: &[u8; 20] = b"0123456789abcdefghij";
/// Label reserved for the root.
pub const ROOT_LABEL: u8 = b'r';

/// Result of parsing an edge string: rooted when `r` occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeString {
    Rooted(SingleRootedGraph),
    Plain(Graph),
}

fn label_index(c: u8) -> Option<usize> {
    LABELS.iter().position(|&l| l == c)
}

fn pairs(s: &str) -> Result<Vec<(u8, u8)>> {
    let b = s.as_bytes();
    if b.len() % 2 == 1 {
        return Err(Error::Parse(format!("odd length {}", b.len())));
    }
    let mut out = Vec::with_capacity(b.len() / 2);
    for p in b.chunks_exact(2) {
        for &c in p {
            if c != ROOT_LABEL && label_index(c).is_none() {
                return Err(Error::Parse(format!("unknown character {:?}", c as char)));
            }
        }
        if p[0] == p[1] {
            return Err(Error::Parse(format!("self-loop {}{}", p[0] as char, p[1] as char)));
        }
        out.push((p[0], p[1]));
    }
    Ok(out)
}

fn build(n: usize, edges: &[(usize, usize)], text: &str) -> Result<Graph> {
    let mut seen = HashSet::new();
    for &(u, v) in edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse(format!("duplicate edge in {text:?}")));
        }
    }
    Graph::from_edges(n, edges)
}

/// Parses an edge string. The root (when present) becomes vertex 0, the other
/// labels follow in order of first appearance.
pub fn parse_edges(s: &str) -> Result<EdgeString> {
    let p = pairs(s)?;
    let mut order: Vec<u8> = Vec::new();
    if s.as_bytes().contains(&ROOT_LABEL) {
        order.push(ROOT_LABEL);
    }
    for &(a, b) in &p {
        for c in [a, b] {
            if !order.contains(&c) {
                order.push(c);
            }
        }
    }
    let index = |c: u8| order.iter().position(|&x| x == c).expect("label collected above");
    let edges: Vec<(usize, usize)> = p.iter().map(|&(a, b)| (index(a), index(b))).collect();
    let g = build(order.len(), &edges, s)?;
    if order.first() == Some(&ROOT_LABEL) {
        Ok(EdgeString::Rooted(SingleRootedGraph::new(g, 0)?))
    } else {
        Ok(EdgeString::Plain(g))
    }
}

/// Parses a single-rooted graph; the empty string is the trivial `K_1`.
pub fn parse_single_rooted(s: &str) -> Result<SingleRootedGraph> {
    if s.is_empty() {
        return Ok(SingleRootedGraph::trivial());
    }
    match parse_edges(s)? {
        EdgeString::Rooted(h) => Ok(h),
        EdgeString::Plain(_) => Err(Error::Parse(format!("{s:?} has no root"))),
    }
}

/// Parses a plain graph.
pub fn parse_graph(s: &str) -> Result<Graph> {
    match parse_edges(s)? {
        EdgeString::Plain(g) => Ok(g),
        EdgeString::Rooted(_) => Err(Error::Parse(format!("{s:?} contains a root"))),
    }
}

/// Parses a plain edge string where label `LABELS[i]` is vertex `i`, on a
/// graph of the given order.
pub fn parse_indexed(s: &str, order: usize) -> Result<Graph> {
    if order > LABELS.len() {
        return Err(Error::OrderTooLarge { order, max: LABELS.len() });
    }
    let mut edges = Vec::new();
    for (a, b) in pairs(s)? {
        let (u, v) = match (label_index(a), label_index(b)) {
            (Some(u), Some(v)) => (u, v),
            _ => return Err(Error::Parse(format!("root label in indexed string {s:?}"))),
        };
        if u >= order || v >= order {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), order });
        }
        edges.push((u, v));
    }
    build(order, &edges, s)
}

/// Serializes a plain graph with vertex `i` labelled `LABELS[i]`; edges in
/// lexicographic order.
pub fn serialize_graph(g: &Graph) -> Result<String> {
    if g.order() > LABELS.len() {
        return Err(Error::OrderTooLarge { order: g.order(), max: LABELS.len() });
    }
    let mut s = String::with_capacity(2 * g.size());
    for (u, v) in g.edges() {
        s.push(LABELS[u] as char);
        s.push(LABELS[v] as char);
    }
    Ok(s)
}

/// Serializes a single-rooted graph: the root is `r`, the remaining vertices
/// take `LABELS` in index order. Root edges come first, then the rest in
/// lexicographic order.
pub fn serialize_single_rooted(h: &SingleRootedGraph) -> Result<String> {
    let g = h.graph();
    let n = g.order();
    if n > LABELS.len() + 1 {
        return Err(Error::OrderTooLarge { order: n, max: LABELS.len() + 1 });
    }
    let root = h.root();
    let rank = |v: usize| if v == root { 0 } else if v < root { v + 1 } else { v };
    let label = |v: usize| if v == root { ROOT_LABEL } else { LABELS[rank(v) - 1] };
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| if rank(u) < rank(v) { (u, v) } else { (v, u) })
        .collect();
    edges.sort_by_key(|&(u, v)| (rank(u), rank(v)));
    let mut s = String::with_capacity(2 * edges.len());
    for (u, v) in edges {
        s.push(label(u) as char);
        s.push(label(v) as char);
    }
    Ok(s)
}

impl EdgeString {
    pub fn serialize(&self) -> Result<String> {
        match self {
            EdgeString::Rooted(h) => serialize_single_rooted(h),
            EdgeString::Plain(g) => serialize_graph(g),
        }
    }
}

/// One line of a corpus file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusLine {
    pub label: String,
    pub edges: String,
}

/// Reads `label<TAB>edge-string` lines. Blank lines and lines starting with `#`
/// are skipped; labels must be unique. Edge strings are not interpreted here.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusLine>> {
    let mut out = Vec::new();
    let mut labels = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (label, edges) = match (fields.next(), fields.next(), fields.next()) {
            (Some(l), Some(e), None) => (l.trim(), e.trim()),
            _ => return Err(Error::Corpus(format!("line {}: expected label<TAB>edges", i + 1))),
        };
        if label.is_empty() {
            return Err(Error::Corpus(format!("line {}: empty label", i + 1)));
        }
        if !labels.insert(label.to_string()) {
            return Err(Error::Corpus(format!("line {}: duplicate label {label:?}", i + 1)));
        }
        out.push(CorpusLine { label: label.to_string(), edges: edges.to_string() });
    }
    Ok(out)
}
