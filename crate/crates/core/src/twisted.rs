//! Twisted path extensions among the maverick graphs, and the structure of
//! large graphs in `(-lambda*, -2)`: a unique leaf whose removal leaves the
//! line graph of a bipartite graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edges::serialize_graph;
use crate::enum_rooted::RootedCatalogEntry;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::iso::isomorphic;
use crate::linegraph::bipartite_line_graph_leaves;
use crate::rooted::{extend, line_graph, Extension, RootedGraph};
use crate::spectral::min_ell0;

/// `(u0, u1, u2, uc)` such that `u0u1`, `u0u2`, `u1u2`, `u0uc` are the only
/// edges meeting `{u1, u2, uc}`. `u1 < u2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TpeWitness {
    pub u0: usize,
    pub u1: usize,
    pub u2: usize,
    pub uc: usize,
}

pub fn tpe_witnesses(g: &Graph) -> Vec<TpeWitness> {
    let mut out = Vec::new();
    for (u1, u2) in g.edges() {
        if g.degree(u1) != 2 || g.degree(u2) != 2 {
            continue;
        }
        let common = g.neighbors(u1) & g.neighbors(u2);
        for u0 in bits(common) {
            for uc in bits(g.neighbors(u0)) {
                if g.degree(uc) == 1 {
                    out.push(TpeWitness { u0, u1: u1.min(u2), u2: u1.max(u2), uc });
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMaverick {
    pub graph: Graph,
    pub witness: TpeWitness,
}

/// The mavericks with a twisted-path-extension witness.
///
/// Fails with [`Error::WitnessNotUnique`] if some graph has several.
pub fn filter_twisted(mavericks: &[Graph]) -> Result<Vec<TwistedMaverick>> {
    let found: Vec<(Graph, Vec<TpeWitness>)> = mavericks
        .par_iter()
        .map(|g| (g.clone(), tpe_witnesses(g)))
        .filter(|(_, w)| !w.is_empty())
        .collect();
    let multiple: Vec<String> = found
        .iter()
        .filter(|(_, w)| w.len() > 1)
        .map(|(g, w)| format!("{} ({} witnesses)", serialize_graph(g).unwrap_or_default(), w.len()))
        .collect();
    if !multiple.is_empty() {
        return Err(Error::WitnessNotUnique(multiple.join(", ")));
    }
    Ok(found.into_iter().map(|(graph, w)| TwistedMaverick { graph, witness: w[0] }).collect())
}

/// Rebuilds `TPE(F_R, 0)` from a witness: `F = G - {u0, u1, u2, uc}` rooted
/// at the remaining neighbours of `u0`.
pub fn reconstruct(g: &Graph, w: &TpeWitness) -> Result<(RootedGraph, Graph)> {
    let gadget = 1u64 << w.u0 | 1 << w.u1 | 1 << w.u2 | 1 << w.uc;
    let keep = g.vertex_mask() & !gadget;
    let index: Vec<usize> = bits(keep).collect();
    let f = g.induced(keep);
    let mut roots = 0u64;
    for (i, &v) in index.iter().enumerate() {
        if g.has_edge(v, w.u0) {
            roots |= 1 << i;
        }
    }
    let f = RootedGraph::new(f, roots)?;
    let rebuilt = extend(&f, &Extension::Twisted { len: 0 })?;
    Ok((f, rebuilt))
}

/// Twisted mavericks whose witness does not rebuild the graph.
pub fn reconstruction_failures(twisted: &[TwistedMaverick]) -> Vec<String> {
    twisted
        .par_iter()
        .filter(|t| match reconstruct(&t.graph, &t.witness) {
            Ok((_, rebuilt)) => !isomorphic(&rebuilt, &t.graph),
            Err(_) => true,
        })
        .map(|t| serialize_graph(&t.graph).unwrap_or_default())
        .collect()
}

pub fn order_histogram(twisted: &[TwistedMaverick]) -> Vec<usize> {
    let max = twisted.iter().map(|t| t.graph.order()).max().unwrap_or(0);
    let mut h = vec![0; max + 1];
    for t in twisted {
        h[t.graph.order()] += 1;
    }
    h
}

pub fn to_text(twisted: &[TwistedMaverick]) -> Result<String> {
    let mut s = String::new();
    for t in twisted {
        let w = &t.witness;
        s.push_str(&format!(
            "{}\t{}\t{},{},{},{}\n",
            t.graph.order(),
            serialize_graph(&t.graph)?,
            w.u0,
            w.u1,
            w.u2,
            w.uc
        ));
    }
    s.push_str("# order\tcount\n");
    for (order, count) in order_histogram(twisted).iter().enumerate() {
        if *count > 0 {
            s.push_str(&format!("# {order}\t{count}\n"));
        }
    }
    Ok(s)
}

/// Augmented path extensions `APE(L(H_r), l)` of catalog members with order in
/// `orders` and `l >= l0`, so that they lie in `(-lambda*, -2)`.
pub fn catalog_extensions(
    catalog: &[RootedCatalogEntry],
    orders: std::ops::RangeInclusive<usize>,
) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for e in catalog {
        let f = line_graph(&e.graph);
        let ell0 = match e.ell0 {
            Some(l) => l,
            None => min_ell0(&f)?,
        };
        for order in orders.clone() {
            // |L(H)| + l + 4 vertices
            let Some(len) = order.checked_sub(f.order() + 4) else { continue };
            if len >= ell0 {
                out.push(extend(&f, &Extension::Augmented { len })?);
            }
        }
    }
    Ok(out)
}

/// Graphs without exactly one leaf whose removal leaves the line graph of a
/// bipartite graph.
pub fn unique_leaf_violations(graphs: &[Graph]) -> Vec<String> {
    graphs
        .par_iter()
        .filter(|g| bipartite_line_graph_leaves(g).len() != 1)
        .map(|g| serialize_graph(g).unwrap_or_default())
        .collect()
}

/// Non-twisted mavericks of the given order that do not have a unique leaf
/// with an induced claw left after its removal.
pub fn claw_remark_violations(mavericks: &[Graph], order: usize) -> (usize, Vec<String>) {
    let plain: Vec<&Graph> = mavericks
        .iter()
        .filter(|g| g.order() == order && tpe_witnesses(g).is_empty())
        .collect();
    let bad = plain
        .iter()
        .filter(|g| {
            let leaves: Vec<usize> = g.leaves().collect();
            leaves.len() != 1 || !g.without_vertex(leaves[0]).has_induced_claw()
        })
        .map(|g| serialize_graph(g).unwrap_or_default())
        .collect();
    (plain.len(), bad)
}
