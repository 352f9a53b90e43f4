//! Enumeration of the connected bipartite single-rooted graphs `H_r`, root not
//! a leaf, with `lambda_1(APE(L(H_r), 0)) > -lambda*`.
//!
//! The search grows graphs one edge at a time from the cherry `r0r1`. A
//! candidate's augmented path extension contains its parent's as the principal
//! submatrix obtained by deleting the new edge, so every gate test is a
//! bordered determinant against the parent's cached adjugate.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edges::{parse_single_rooted, serialize_single_rooted};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::iso::{hash_single_rooted, isomorphic, single_rooted_fingerprint, SingleRootedHash};
use crate::rooted::{extend, line_graph, Extension, SingleRootedGraph};
use crate::spectral::{gate_lambda_star, min_ell0, Gate, GateParent};

/// One member of the rooted catalog.
#[derive(Clone, Debug)]
pub struct RootedCatalogEntry {
    pub graph: SingleRootedGraph,
    pub edge_string: String,
    pub size: usize,
    /// Filled by [`annotate_ell0`].
    pub ell0: Option<usize>,
    pub maximal: bool,
}

/// Serializable view of an entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedRecord {
    pub edges: String,
    pub size: usize,
    pub ell0: Option<usize>,
    pub maximal: bool,
}

impl RootedCatalogEntry {
    pub fn record(&self) -> RootedRecord {
        RootedRecord {
            edges: self.edge_string.clone(),
            size: self.size,
            ell0: self.ell0,
            maximal: self.maximal,
        }
    }
}

/// Relabels so the root is vertex 0 and the rest follow breadth-first order,
/// which gives readable, stable edge strings.
pub fn bfs_relabel(h: &SingleRootedGraph) -> SingleRootedGraph {
    let g = h.graph();
    let n = g.order();
    let mut order = vec![h.root()];
    let mut seen = 1u64 << h.root();
    let mut i = 0;
    while order.len() < n {
        if i == order.len() {
            // disconnected remainder
            let v = (0..n).find(|&v| seen >> v & 1 == 0).expect("unseen vertex");
            order.push(v);
            seen |= 1 << v;
        }
        for u in bits(g.neighbors(order[i]) & !seen) {
            order.push(u);
            seen |= 1 << u;
        }
        i += 1;
    }
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let part_a = bits(h.part_a()).fold(0u64, |m, v| m | 1 << perm[v]);
    SingleRootedGraph::with_parts(g.permuted(&perm), 0, part_a).expect("relabelling keeps parts")
}

fn entry(h: SingleRootedGraph) -> Result<RootedCatalogEntry> {
    let h = bfs_relabel(&h);
    Ok(RootedCatalogEntry {
        edge_string: serialize_single_rooted(&h)?,
        size: h.size(),
        ell0: None,
        maximal: false,
        graph: h,
    })
}

/// Vertices of `APE(L(H), 0)` adjacent to the vertex for a new edge `uv`:
/// the edges of `H` meeting `{u, v}`, plus `v_0` when the new edge touches the
/// root. Edge indices follow `H`'s lexicographic edge order, as in
/// [`line_graph`].
fn new_edge_subset(h: &SingleRootedGraph, edges: &[(usize, usize)], u: usize, v: usize) -> u64 {
    let mut s = 0u64;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == u || a == v || b == u || b == v {
            s |= 1 << i;
        }
    }
    if u == h.root() || v == h.root() {
        s |= 1 << edges.len();
    }
    s
}

/// All one-edge extensions of `h` that keep it bipartite with the same parts:
/// a new edge across the parts, or a pendant vertex on any vertex.
fn candidates(h: &SingleRootedGraph) -> Vec<(SingleRootedGraph, usize, usize)> {
    let g = h.graph();
    let n = g.order();
    let mut out = Vec::new();
    for u in bits(h.part_a()) {
        for v in bits(h.part_b() & !g.neighbors(u)) {
            out.push((h.with_edge(u, v), u, v));
        }
    }
    for v in 0..n {
        out.push((h.with_pendant(v), v, n));
    }
    out
}

/// Admitted one-edge extensions of a member, before deduplication.
fn grow(h: &SingleRootedGraph) -> Result<Vec<SingleRootedGraph>> {
    let base = extend(&line_graph(h), &Extension::Augmented { len: 0 })?;
    let parent = GateParent::new(&base).ok_or(Error::Undecidable)?;
    let edges: Vec<(usize, usize)> = h.graph().edges().collect();
    let mut out = Vec::new();
    for (child, u, v) in candidates(h) {
        let s = new_edge_subset(h, &edges, u, v);
        if parent.child(s)? == Gate::Above {
            out.push(child);
        }
    }
    Ok(out)
}

/// Isomorphism-class table keyed by hash and refined fingerprint.
#[derive(Default)]
struct Classes {
    buckets: HashMap<(SingleRootedHash, u64), Vec<usize>>,
    members: Vec<SingleRootedGraph>,
}

impl Classes {
    fn insert(&mut self, h: SingleRootedGraph) {
        let key = (hash_single_rooted(&h), single_rooted_fingerprint(&h));
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| isomorphic(&self.members[i], &h)) {
            return;
        }
        bucket.push(self.members.len());
        self.members.push(h);
    }
}

/// Runs the search. Levels are processed in order of size; within a level the
/// parents are extended in parallel and merged in a fixed order, so the result
/// does not depend on the number of workers.
pub fn enumerate_rooted() -> Result<Vec<RootedCatalogEntry>> {
    let trivial = SingleRootedGraph::trivial();
    let cherry = parse_single_rooted("r0r1")?;
    for seed in [&trivial, &cherry] {
        let g = extend(&line_graph(seed), &Extension::Augmented { len: 0 })?;
        if gate_lambda_star(&g)? != Gate::Above {
            return Err(Error::Undecidable);
        }
    }
    let mut catalog = vec![entry(trivial)?];
    let mut level = vec![cherry];
    while !level.is_empty() {
        let grown: Vec<Result<Vec<SingleRootedGraph>>> = level.par_iter().map(grow).collect();
        let mut next = Classes::default();
        for (h, children) in level.into_iter().zip(grown) {
            let children = children?;
            let mut e = entry(h)?;
            e.maximal = children.is_empty();
            catalog.push(e);
            for c in children {
                next.insert(c);
            }
        }
        level = next.members;
    }
    catalog.sort_by(|a, b| (a.size, &a.edge_string).cmp(&(b.size, &b.edge_string)));
    Ok(catalog)
}

/// Fills `ell0` for every entry.
pub fn annotate_ell0(catalog: &mut [RootedCatalogEntry]) -> Result<()> {
    let values: Vec<Result<usize>> = catalog
        .par_iter()
        .map(|e| min_ell0(&line_graph(&e.graph)))
        .collect();
    for (e, v) in catalog.iter_mut().zip(values) {
        e.ell0 = Some(v?);
    }
    Ok(())
}

/// Number of members of each size `0..=max`.
pub fn size_histogram(catalog: &[RootedCatalogEntry]) -> Vec<usize> {
    let max = catalog.iter().map(|e| e.size).max().unwrap_or(0);
    let mut h = vec![0; max + 1];
    for e in catalog {
        h[e.size] += 1;
    }
    h
}

/// The subgraph of `h` spanned by an edge subset, as a single-rooted graph on
/// the touched vertices, when it is connected, contains the root as a
/// non-leaf (or is empty, giving `K_1`).
fn edge_subgraph(h: &SingleRootedGraph, edges: &[(usize, usize)], mask: u64) -> Option<SingleRootedGraph> {
    if mask == 0 {
        return Some(SingleRootedGraph::trivial());
    }
    let n = h.graph().order();
    let mut g = Graph::new(n);
    let mut touched = 0u64;
    for i in bits(mask) {
        let (u, v) = edges[i];
        g.add_edge(u, v);
        touched |= 1 << u | 1 << v;
    }
    let r = h.root();
    if g.degree(r) < 2 || g.component_of(r, touched) != touched {
        return None;
    }
    let keep: Vec<usize> = bits(touched).collect();
    let sub = g.induced(touched);
    let root = keep.iter().position(|&v| v == r)?;
    let part_a = keep
        .iter()
        .enumerate()
        .filter(|(_, &v)| h.part_a() >> v & 1 == 1)
        .fold(0u64, |m, (i, _)| m | 1 << i);
    SingleRootedGraph::with_parts(sub, root, part_a).ok()
}

/// Every connected root-non-leaf general subgraph of every maximal member is
/// isomorphic to a catalog member. Returns the offending subgraphs (empty when
/// the catalog is closed).
pub fn general_subgraph_closure_violations(catalog: &[RootedCatalogEntry]) -> Vec<String> {
    let mut known: HashMap<(SingleRootedHash, u64), Vec<usize>> = HashMap::new();
    for (i, e) in catalog.iter().enumerate() {
        let key = (hash_single_rooted(&e.graph), single_rooted_fingerprint(&e.graph));
        known.entry(key).or_default().push(i);
    }
    let per_member: Vec<Vec<String>> = catalog
        .par_iter()
        .filter(|e| e.maximal)
        .map(|e| {
            let edges: Vec<(usize, usize)> = e.graph.graph().edges().collect();
            let mut missing = Vec::new();
            for mask in 0..1u64 << edges.len() {
                let Some(sub) = edge_subgraph(&e.graph, &edges, mask) else { continue };
                let key = (hash_single_rooted(&sub), single_rooted_fingerprint(&sub));
                let found = known
                    .get(&key)
                    .is_some_and(|b| b.iter().any(|&i| isomorphic(&catalog[i].graph, &sub)));
                if !found {
                    missing.push(serialize_single_rooted(&sub).unwrap_or_default());
                }
            }
            missing
        })
        .collect();
    let mut out: Vec<String> = per_member.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    out
}

pub fn check_general_subgraph_closure(catalog: &[RootedCatalogEntry]) -> bool {
    general_subgraph_closure_violations(catalog).is_empty()
}

/// `<edge-string>\t<size>\t<ell0>\t<maximal>` lines, then the histogram.
pub fn to_text(catalog: &[RootedCatalogEntry]) -> String {
    let mut s = String::new();
    for e in catalog {
        let ell0 = e.ell0.map_or_else(|| "-".to_string(), |v| v.to_string());
        s.push_str(&format!("{}\t{}\t{}\t{}\n", e.edge_string, e.size, ell0, e.maximal));
    }
    s.push_str("# size\tcount\n");
    for (size, count) in size_histogram(catalog).iter().enumerate() {
        if *count > 0 {
            s.push_str(&format!("# {size}\t{count}\n"));
        }
    }
    s
}
