//! Determinant certificates for the forbidden rooted graphs and for the
//! path-extension limits of the exceptional graphs.
//!
//! Two checks run here. The eight forbidden rooted graphs `F_R` must give
//! `det(A_{APE(F_R,0)} + 101/50 I) < 0`. For the path-extension lists, a
//! graph `F` with `A_F + 95/47 I` positive definite and a nonempty root set
//! `R` have `lim lambda_1((F_R, l)) < -95/47` as soon as
//! `A_{(F_R,0)} + 95/47 I - 6/7 E_{v0}` is not positive semidefinite, since
//! `6/7` lies below `95/94 - sqrt(189)/94`. Only `E_6`, `E_7` and one rooted
//! `E_6'` escape.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edges::{parse_corpus, parse_indexed, serialize_graph, LABELS};
use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, Graph};
use crate::iso::{canonical_form, isomorphic};
use crate::linalg::{det, is_positive_definite, rat, shifted_adjacency, sqrt_lower_bound, Rational};
use crate::linegraph::is_generalized_line_graph;
use crate::rooted::{extend, Extension, RootedGraph};
use crate::spectral::{constants, is_psd_at_two, limit_below};

/// The corpus shipped with the crate: `E6`, `B1`-`B4` and `G1`-`G31`.
pub const PATH_EXTENSION_CORPUS: &str = include_str!("../data/path_extension.txt");

/// Where a corpus entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    /// `E_6` and `E_7`.
    Exceptional,
    /// The eight forbidden rooted graphs.
    ForbiddenRooted,
    /// Connected one-vertex extensions of `E_6`.
    AList,
    /// Two-vertex extensions of `E_6` whose one-vertex deletions are `E_7`.
    BList,
    /// Minimal graphs that are not generalized line graphs.
    GList,
    /// The rooted `E_6'`.
    EPrime,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusGraph {
    Plain(Graph),
    Rooted(RootedGraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: String,
    pub graph: CorpusGraph,
    pub source: Source,
}

impl CorpusEntry {
    fn plain(label: impl Into<String>, g: Graph, source: Source) -> Self {
        CorpusEntry { label: label.into(), graph: CorpusGraph::Plain(g), source }
    }

    fn rooted(label: impl Into<String>, f: RootedGraph, source: Source) -> Self {
        CorpusEntry { label: label.into(), graph: CorpusGraph::Rooted(f), source }
    }
}

fn rooted(g: Graph, roots: u64) -> RootedGraph {
    RootedGraph::new(g, roots).expect("static rooted graph")
}

/// The eight forbidden rooted graphs.
pub fn forbidden_rooted() -> Vec<CorpusEntry> {
    let star = Graph::star(3);
    let s = Source::ForbiddenRooted;
    vec![
        CorpusEntry::rooted("K2bar", rooted(Graph::new(2), 0b11), s),
        // centre and one leaf
        CorpusEntry::rooted("S3", rooted(star, 0b11), s),
        CorpusEntry::rooted("K3", rooted(Graph::complete(3), 0b011), s),
        CorpusEntry::rooted("C5", rooted(Graph::cycle(5), 0b11), s),
        CorpusEntry::rooted("C7", rooted(Graph::cycle(7), 0b11), s),
        // two adjacent vertices in the middle of the path
        CorpusEntry::rooted("P7", rooted(Graph::path(8), 0b11000), s),
        CorpusEntry::rooted("P9", rooted(Graph::path(10), 0b11), s),
        CorpusEntry::rooted("K7", rooted(Graph::complete(7), full_mask(7)), s),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantRow {
    pub label: String,
    pub determinant: String,
    pub negative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenReport {
    pub rows: Vec<DeterminantRow>,
    pub passed: bool,
}

/// `det(A_{APE(F_R,0)} + 101/50 I)` for each rooted entry.
pub fn verify_forbidden_rooted(corpus: &[CorpusEntry]) -> Result<ForbiddenReport> {
    let q = &constants().q_forb;
    let mut rows = Vec::with_capacity(corpus.len());
    for e in corpus {
        let CorpusGraph::Rooted(f) = &e.graph else {
            return Err(Error::Corpus(format!("{} is not a rooted graph", e.label)));
        };
        let g = extend(f, &Extension::Augmented { len: 0 })?;
        let d = det(&shifted_adjacency(&g, q, None)?);
        rows.push(DeterminantRow { label: e.label.clone(), negative: d < Rational::from_integer(0.into()), determinant: d.to_string() });
    }
    let passed = !rows.is_empty() && rows.iter().all(|r| r.negative);
    Ok(ForbiddenReport { rows, passed })
}

/// `E_6` as drawn in the corpus: the path `1 - 2 - 3 - 4 - 5` with the
/// pendant `0` on `3`.
pub fn e6() -> Graph {
    Graph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (0, 3)]).expect("static graph")
}

/// `E_6'` rooted at the far end of its path.
pub fn rooted_e_prime() -> RootedGraph {
    rooted(Graph::e_prime_graph(6), 1 << 5)
}

/// Connected 7-vertex graphs containing `E_6` as an induced subgraph, in
/// canonical-string order.
pub fn a_list() -> Vec<CorpusEntry> {
    let base = e6();
    let mut seen = HashSet::new();
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for s in 1..1u64 << base.order() {
        let g = base.with_new_vertex(s);
        let c = canonical_form(&g);
        if seen.insert(c.clone()) {
            graphs.push((serialize_graph(&c).expect("small graph"), g));
        }
    }
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, (_, g))| CorpusEntry::plain(format!("A{}", i + 1), g, Source::AList))
        .collect()
}

/// Smallest order such that every label of `s` is a vertex.
fn parse_labelled(s: &str) -> Result<Graph> {
    let order = s
        .bytes()
        .filter_map(|c| LABELS.iter().position(|&l| l == c))
        .max()
        .map_or(0, |m| m + 1);
    parse_indexed(s, order)
}

/// Reads a `label<TAB>edge-string` corpus of plain graphs; vertex `i` is
/// label `LABELS[i]`. Labels starting with `E`, `B` and `G` are tagged with
/// their list.
pub fn load_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for line in parse_corpus(text)? {
        let g = parse_labelled(&line.edges).map_err(|e| Error::Corpus(format!("{}: {e}", line.label)))?;
        if !g.is_connected() {
            return Err(Error::Corpus(format!("{}: not connected", line.label)));
        }
        let source = match line.label.as_bytes().first() {
            Some(b'E') => Source::Exceptional,
            Some(b'B') => Source::BList,
            Some(b'G') => Source::GList,
            _ => Source::Other,
        };
        out.push(CorpusEntry::plain(line.label, g, source));
    }
    Ok(out)
}

/// Problems with the B-list: each member must have 8 vertices, lose `E_6`
/// when vertices 6 and 7 go, and become `E_7` when either one goes.
pub fn b_list_violations(corpus: &[CorpusEntry]) -> Vec<String> {
    let (e6, e7) = (e6(), Graph::e_graph(7));
    let mut bad = Vec::new();
    for e in corpus.iter().filter(|e| e.source == Source::BList) {
        let CorpusGraph::Plain(g) = &e.graph else {
            bad.push(format!("{}: rooted", e.label));
            continue;
        };
        if g.order() != 8 {
            bad.push(format!("{}: order {}", e.label, g.order()));
            continue;
        }
        if !isomorphic(&g.induced(full_mask(6)), &e6) {
            bad.push(format!("{}: F - {{6, 7}} is not E6", e.label));
        }
        for v in [6, 7] {
            if !isomorphic(&g.without_vertex(v), &e7) {
                bad.push(format!("{}: F - {v} is not E7", e.label));
            }
        }
    }
    bad
}

/// Connected graphs on at most `max_order` vertices that are not generalized
/// line graphs while all their vertex-deleted subgraphs are, ordered by
/// `(order, size, canonical string)`.
pub fn minimal_non_generalized_line_graphs(max_order: usize) -> Vec<Graph> {
    let mut level = vec![Graph::new(1)];
    let mut found: Vec<(usize, usize, String, Graph)> = Vec::new();
    let mut seen = HashSet::new();
    for _ in 1..max_order {
        let children: Vec<(Graph, bool)> = level
            .par_iter()
            .flat_map_iter(|g| {
                (1..1u64 << g.order()).map(move |s| {
                    let c = canonical_form(&g.with_new_vertex(s));
                    let glg = is_generalized_line_graph(&c);
                    (c, glg)
                })
            })
            .collect();
        let mut next = Vec::new();
        for (c, glg) in children {
            if !seen.insert(c.clone()) {
                continue;
            }
            if glg {
                next.push(c);
            } else if (0..c.order()).all(|v| is_generalized_line_graph(&c.without_vertex(v))) {
                let s = serialize_graph(&c).expect("small graph");
                found.push((c.order(), c.size(), s, c));
            }
        }
        level = next;
    }
    found.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    found.into_iter().map(|(.., g)| g).collect()
}

/// The corpus file contents: `E6`, the B-list and the generated G-list.
pub fn path_extension_corpus_text(b_list: &[Graph], g_list: &[Graph]) -> Result<String> {
    let mut s = String::from("# label\tedges (label i is vertex i)\n");
    s.push_str(&format!("E6\t{}\n", serialize_graph(&e6())?));
    for (i, g) in b_list.iter().enumerate() {
        s.push_str(&format!("B{}\t{}\n", i + 1, serialize_graph(g)?));
    }
    for (i, g) in g_list.iter().enumerate() {
        s.push_str(&format!("G{}\t{}\n", i + 1, serialize_graph(g)?));
    }
    Ok(s)
}

/// `6/7 < 95/94 - 3 sqrt(21) / 94`, with `sqrt(21)` bounded above by
/// `21 / r` for a rational `r <= sqrt(21)`.
pub fn coefficient_is_safe() -> Result<bool> {
    let r = sqrt_lower_bound(&rat(21, 1), 8)?;
    let upper = rat(21, 1) / r;
    Ok(constants().coef_appendix < (rat(95, 1) - rat(3, 1) * upper) / rat(94, 1))
}

/// How a surviving `(F, R)` is explained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exception {
    E6,
    E7,
    EPrime,
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub label: String,
    pub roots: Vec<usize>,
    pub determinant: String,
    pub exception: Exception,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    /// Graphs with `A_F + 95/47 I` positive definite.
    pub checked: Vec<String>,
    /// Graphs skipped because `A_F + 95/47 I` is not positive definite.
    pub skipped: Vec<String>,
    pub survivors: Vec<Survivor>,
    /// Rooted graphs the determinant rules out but [`limit_below`] does not.
    pub disagreements: Vec<String>,
    pub passed: bool,
}

fn classify(f: &RootedGraph) -> Exception {
    if isomorphic(f.graph(), &e6()) {
        Exception::E6
    } else if isomorphic(f.graph(), &Graph::e_graph(7)) {
        Exception::E7
    } else if isomorphic(f, &rooted_e_prime()) {
        Exception::EPrime
    } else {
        Exception::Unexplained
    }
}

/// Runs the appendix determinant test over plain corpus entries and every
/// nonempty root set.
pub fn verify_path_extension_limits(corpus: &[CorpusEntry]) -> Result<LimitReport> {
    let c = constants();
    let (q, coef) = (&c.q_appendix, &c.coef_appendix);
    let mut graphs = Vec::new();
    for e in corpus {
        match &e.graph {
            CorpusGraph::Plain(g) => graphs.push((e.label.clone(), g.clone())),
            CorpusGraph::Rooted(_) => return Err(Error::Corpus(format!("{} is rooted", e.label))),
        }
    }
    let (checked, skipped): (Vec<_>, Vec<_>) =
        graphs.into_iter().partition(|(_, g)| positive_definite_at(g, q));
    let rows: Vec<Result<(Vec<Survivor>, Vec<String>)>> = checked
        .par_iter()
        .map(|(label, g)| {
            let mut survivors = Vec::new();
            let mut disagreements = Vec::new();
            for roots in 1..1u64 << g.order() {
                let f = RootedGraph::new(g.clone(), roots)?;
                let ext = extend(&f, &Extension::Path { len: 0 })?;
                let v0 = ext.order() - 1;
                let d = det(&shifted_adjacency(&ext, q, Some((v0, coef)))?);
                if d >= Rational::from_integer(0.into()) {
                    survivors.push(Survivor {
                        label: label.clone(),
                        roots: bits(roots).collect(),
                        determinant: d.to_string(),
                        exception: classify(&f),
                    });
                } else if !limit_below(&f, q)? {
                    disagreements.push(format!("{label} R={:?}", bits(roots).collect::<Vec<_>>()));
                }
            }
            Ok((survivors, disagreements))
        })
        .collect();
    let mut survivors = Vec::new();
    let mut disagreements = Vec::new();
    for r in rows {
        let (s, d) = r?;
        survivors.extend(s);
        disagreements.extend(d);
    }
    let passed = survivors.iter().all(|s| s.exception != Exception::Unexplained) && disagreements.is_empty();
    Ok(LimitReport {
        checked: checked.into_iter().map(|(l, _)| l).collect(),
        skipped: skipped.into_iter().map(|(l, _)| l).collect(),
        survivors,
        disagreements,
        passed,
    })
}

fn positive_definite_at(g: &Graph, q: &Rational) -> bool {
    is_positive_definite(&shifted_adjacency(g, q, None).expect("no adjustment"))
}

/// Sanity facts about the G-list: connected, and outside `G(2)` or not.
pub fn g_list_summary(corpus: &[CorpusEntry]) -> Vec<(String, usize, bool)> {
    corpus
        .iter()
        .filter(|e| e.source == Source::GList)
        .filter_map(|e| match &e.graph {
            CorpusGraph::Plain(g) => Some((e.label.clone(), g.order(), is_psd_at_two(g))),
            CorpusGraph::Rooted(_) => None,
        })
        .collect()
}
