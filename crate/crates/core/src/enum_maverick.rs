//! Enumeration of the maverick graphs: connected graphs with smallest
//! eigenvalue in `(-lambda*, -2)` that are not augmented path extensions.
//!
//! Graphs are grown one vertex at a time from `K_2`. Every member of level `n`
//! lies above `-lambda*`, and carries the list of vertex subsets a new vertex
//! may still be joined to: if `(G_S, 0)` fails the gate then so does every
//! graph containing it, so the children of `G` only need subsets `U` whose
//! trace on `V(G)` passed.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edges::{parse_indexed, serialize_graph};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::iso::{graph_fingerprint, isomorphic};
use crate::spectral::{is_psd_at_two, Gate, GateParent};

/// `(u0, u1, u2, uc)` such that `u0u1`, `u1u2`, `u0uc` are the only edges
/// meeting `{u1, u2, uc}`: the graph is an augmented path extension ending in
/// `u0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ApeWitness {
    pub u0: usize,
    pub u1: usize,
    pub u2: usize,
    pub uc: usize,
}

pub fn ape_witnesses(g: &Graph) -> Vec<ApeWitness> {
    let mut out = Vec::new();
    for u1 in 0..g.order() {
        if g.degree(u1) != 2 {
            continue;
        }
        for u2 in bits(g.neighbors(u1)) {
            if g.degree(u2) != 1 {
                continue;
            }
            let u0 = (g.neighbors(u1) & !(1 << u2)).trailing_zeros() as usize;
            for uc in bits(g.neighbors(u0) & !(1 << u1)) {
                if g.degree(uc) == 1 {
                    out.push(ApeWitness { u0, u1, u2, uc });
                }
            }
        }
    }
    out.sort();
    out
}

/// A level search node.
#[derive(Clone, Debug)]
struct Node {
    graph: Graph,
    subsets: Arc<Vec<u64>>,
}

/// Subset order used throughout: by size, then by mask.
fn subset_key(s: &u64) -> (u32, u64) {
    (s.count_ones(), *s)
}

/// Children of one node after the gate and the level restrictions, sharing one
/// subset list.
fn expand(node: &Node) -> Result<(Vec<Graph>, Arc<Vec<u64>>)> {
    let g = &node.graph;
    let n = g.order();
    let parent = GateParent::new(g).ok_or(Error::Undecidable)?;
    let new = 1u64 << n;
    let mut next_subsets = vec![new];
    let mut children = Vec::new();
    let unique_witness = n == 10 && ape_witnesses(g).len() == 1;
    for &s in node.subsets.iter() {
        if parent.child(s)? != Gate::Above {
            continue;
        }
        next_subsets.push(s);
        next_subsets.push(s | new);
        // a level-10 graph must already lie below -2
        if n == 9 && parent.child_is_psd_at_two(s) {
            continue;
        }
        let child = g.with_new_vertex(s);
        if unique_witness && !ape_witnesses(&child).is_empty() {
            continue;
        }
        children.push(child);
    }
    next_subsets.sort_by_key(subset_key);
    Ok((children, Arc::new(next_subsets)))
}

/// Options for [`enumerate_mavericks_with`].
#[derive(Clone, Debug, Default)]
pub struct MaverickOptions {
    /// Directory receiving one `level-<n>.txt` dump per completed level.
    pub checkpoint_dir: Option<PathBuf>,
    /// Continue from the highest level dump in `checkpoint_dir`.
    pub resume: bool,
    /// Stop after producing this level (for tests and partial runs).
    pub max_order: Option<usize>,
}

/// Result of the search.
#[derive(Clone, Debug)]
pub struct MaverickRun {
    pub mavericks: Vec<Graph>,
    /// Number of graphs kept at each order (index = order).
    pub level_sizes: Vec<usize>,
}

pub fn enumerate_mavericks() -> Result<Vec<Graph>> {
    Ok(enumerate_mavericks_with(&MaverickOptions::default())?.mavericks)
}

fn is_maverick(g: &Graph) -> bool {
    (g.order() > 9 || !is_psd_at_two(g)) && ape_witnesses(g).is_empty()
}

/// Nodes are expanded in chunks so the unmerged children of a whole level never
/// sit in memory at once.
type Expansion = (Vec<Graph>, Arc<Vec<u64>>);

const CHUNK: usize = 2048;

pub fn enumerate_mavericks_with(opts: &MaverickOptions) -> Result<MaverickRun> {
    let mut mavericks = Vec::new();
    let mut level_sizes = vec![0; 2];
    let mut level = vec![Node { graph: Graph::complete(2), subsets: Arc::new(vec![0b01, 0b10, 0b11]) }];
    if opts.resume {
        let dir = opts
            .checkpoint_dir
            .as_deref()
            .ok_or_else(|| Error::Checkpoint("resume needs a checkpoint directory".into()))?;
        let last = last_level(dir)?
            .ok_or_else(|| Error::Checkpoint(format!("no level dumps in {}", dir.display())))?;
        for n in 2..last {
            let nodes = read_level(&level_path(dir, n), n)?;
            level_sizes.push(nodes.len());
            mavericks.extend(nodes.into_iter().map(|x| x.graph).filter(is_maverick));
        }
        level = read_level(&level_path(dir, last), last)?;
    } else if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir)?;
        write_level(&level_path(dir, 2), &level)?;
    }
    loop {
        let order = level.first().map_or(0, |x| x.graph.order());
        level_sizes.push(level.len());
        mavericks.extend(level.iter().map(|x| &x.graph).filter(|g| is_maverick(g)).cloned());
        if level.is_empty() || opts.max_order.is_some_and(|m| order >= m) {
            break;
        }
        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut next: Vec<Node> = Vec::new();
        for chunk in level.chunks(CHUNK) {
            let grown: Vec<Result<Expansion>> = chunk.par_iter().map(expand).collect();
            for r in grown {
                let (children, subsets) = r?;
                // fingerprints in parallel, insertion in order
                let keyed: Vec<(u64, Graph)> =
                    children.into_par_iter().map(|c| (graph_fingerprint(&c), c)).collect();
                for (key, child) in keyed {
                    let bucket = buckets.entry(key).or_default();
                    if bucket.iter().any(|&i| isomorphic(&next[i].graph, &child)) {
                        continue;
                    }
                    bucket.push(next.len());
                    next.push(Node { graph: child, subsets: Arc::clone(&subsets) });
                }
            }
        }
        level = next;
        if let Some(dir) = &opts.checkpoint_dir {
            write_level(&level_path(dir, order + 1), &level)?;
        }
    }
    // level_sizes[n] = members of dict[n]; trailing entry is the empty level
    Ok(MaverickRun { mavericks, level_sizes })
}

fn level_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("level-{n}.txt"))
}

fn last_level(dir: &Path) -> Result<Option<usize>> {
    let mut best = None;
    for e in fs::read_dir(dir)? {
        let name = e?.file_name();
        let name = name.to_string_lossy();
        if let Some(n) = name.strip_prefix("level-").and_then(|s| s.strip_suffix(".txt")) {
            if let Ok(n) = n.parse::<usize>() {
                best = best.max(Some(n));
            }
        }
    }
    Ok(best)
}

fn write_level(path: &Path, level: &[Node]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
    for node in level {
        let subsets: Vec<String> = node.subsets.iter().map(|s| format!("{s:x}")).collect();
        writeln!(f, "{}\t{}\t{}", node.graph.order(), serialize_graph(&node.graph)?, subsets.join(","))?;
    }
    f.flush()?;
    drop(f);
    fs::rename(tmp, path)?;
    Ok(())
}

/// One checkpoint line: `<order>\t<edge-string>\t<hex subset masks>`, labels
/// being vertex indices.
pub fn parse_checkpoint_line(line: &str) -> Result<(Graph, Vec<u64>)> {
    let mut fields = line.split('\t');
    let (Some(n), Some(edges), Some(subsets), None) = (fields.next(), fields.next(), fields.next(), fields.next())
    else {
        return Err(Error::Checkpoint(format!("expected three fields in {line:?}")));
    };
    let n: usize = n.parse().map_err(|_| Error::Checkpoint(format!("bad order {n:?}")))?;
    let g = parse_indexed(edges, n)?;
    let mut out = Vec::new();
    for s in subsets.split(',').filter(|s| !s.is_empty()) {
        let m = u64::from_str_radix(s, 16).map_err(|_| Error::Checkpoint(format!("bad subset {s:?}")))?;
        if m == 0 || m >> n != 0 {
            return Err(Error::Checkpoint(format!("subset {s} out of range for order {n}")));
        }
        out.push(m);
    }
    Ok((g, out))
}

fn read_level(path: &Path, order: usize) -> Result<Vec<Node>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    // nodes with the same parent share one list on disk and in memory
    let mut last: Option<Arc<Vec<u64>>> = None;
    for line in text.lines().filter(|l| !l.is_empty()) {
        let (graph, subsets) = parse_checkpoint_line(line)?;
        if graph.order() != order {
            return Err(Error::Checkpoint(format!("order {} in the level-{order} dump", graph.order())));
        }
        let subsets = match &last {
            Some(a) if **a == subsets => Arc::clone(a),
            _ => Arc::new(subsets),
        };
        last = Some(Arc::clone(&subsets));
        out.push(Node { graph, subsets });
    }
    Ok(out)
}

/// Number of graphs of each order `0..=max`.
pub fn order_histogram(graphs: &[Graph]) -> Vec<usize> {
    let max = graphs.iter().map(Graph::order).max().unwrap_or(0);
    let mut h = vec![0; max + 1];
    for g in graphs {
        h[g.order()] += 1;
    }
    h
}

/// `<order>\t<edge-string>` lines, then the histogram.
pub fn to_text(graphs: &[Graph]) -> Result<String> {
    let mut s = String::new();
    for g in graphs {
        s.push_str(&format!("{}\t{}\n", g.order(), serialize_graph(g)?));
    }
    s.push_str("# order\tcount\n");
    for (order, count) in order_histogram(graphs).iter().enumerate() {
        if *count > 0 {
            s.push_str(&format!("# {order}\t{count}\n"));
        }
    }
    Ok(s)
}
