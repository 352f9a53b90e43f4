//! Rooted graphs, single-rooted bipartite graphs, and the extension
//! constructions built on top of them.
//!
//! Vertex numbering of every construction is fixed: the vertices of the
//! rooted graph `F` keep `0..|F|`, the path `v_0 .. v_l` follows, and the
//! attached piece (clique, second rooted graph or gadget) comes last.

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, Graph, MAX_GRAPH_ORDER};

/// A graph with a distinguished vertex subset `roots`.
///
/// The root set may be empty only for the null graph `K_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    graph: Graph,
    roots: u64,
}

impl RootedGraph {
    pub fn new(graph: Graph, roots: u64) -> Result<Self> {
        if roots & !graph.vertex_mask() != 0 {
            let vertex = 63 - roots.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, order: graph.order() });
        }
        if roots == 0 && graph.order() > 0 {
            return Err(Error::NoRoots);
        }
        Ok(RootedGraph { graph, roots })
    }

    /// The null rooted graph `K_0`.
    pub fn null() -> Self {
        RootedGraph { graph: Graph::new(0), roots: 0 }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn roots(&self) -> u64 {
        self.roots
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

/// A bipartite graph with one root and a fixed two-colouring. `part_a` is the
/// colour class holding the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingleRootedGraph {
    graph: Graph,
    root: usize,
    part_a: u64,
}

impl SingleRootedGraph {
    /// Colours each component by breadth-first search; the root (and, in other
    /// components, the lowest vertex) lands in part A.
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        let n = graph.order();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, order: n });
        }
        let mut part_a = 0u64;
        let mut seen = 0u64;
        let starts = std::iter::once(root).chain(0..n);
        for start in starts {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut layer = 1u64 << start;
            let mut even = true;
            while layer != 0 {
                seen |= layer;
                if even {
                    part_a |= layer;
                }
                let mut next = 0;
                for v in bits(layer) {
                    next |= graph.neighbors(v);
                }
                layer = next & !seen;
                even = !even;
            }
        }
        Self::with_parts(graph, root, part_a)
    }

    pub fn with_parts(graph: Graph, root: usize, part_a: u64) -> Result<Self> {
        let n = graph.order();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, order: n });
        }
        if part_a >> root & 1 == 0 || part_a & !full_mask(n) != 0 {
            return Err(Error::NotBipartite);
        }
        let part_b = full_mask(n) & !part_a;
        for v in bits(part_a) {
            if graph.neighbors(v) & part_a != 0 {
                return Err(Error::NotBipartite);
            }
        }
        for v in bits(part_b) {
            if graph.neighbors(v) & part_b != 0 {
                return Err(Error::NotBipartite);
            }
        }
        Ok(SingleRootedGraph { graph, root, part_a })
    }

    /// The trivial single-rooted graph `K_1`.
    pub fn trivial() -> Self {
        SingleRootedGraph { graph: Graph::new(1), root: 0, part_a: 1 }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn part_a(&self) -> u64 {
        self.part_a
    }

    pub fn part_b(&self) -> u64 {
        self.graph.vertex_mask() & !self.part_a
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.graph.size()
    }

    /// Adds an edge between existing vertices of opposite parts.
    pub(crate) fn with_edge(&self, u: usize, v: usize) -> SingleRootedGraph {
        debug_assert!((self.part_a >> u & 1) != (self.part_a >> v & 1));
        let mut graph = self.graph.clone();
        graph.add_edge(u, v);
        SingleRootedGraph { graph, root: self.root, part_a: self.part_a }
    }

    /// Adds a new vertex in the part opposite to `v`, joined to `v`.
    pub(crate) fn with_pendant(&self, v: usize) -> SingleRootedGraph {
        let n = self.graph.order();
        let graph = self.graph.with_new_vertex(1 << v);
        let part_a = if self.part_a >> v & 1 == 1 { self.part_a } else { self.part_a | 1 << n };
        SingleRootedGraph { graph, root: self.root, part_a }
    }
}

/// The ways a rooted graph can be extended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Path `v_0 .. v_len`, `v_0` joined to every root.
    Path { len: usize },
    /// Clique of the given order joined to every root.
    Clique { order: usize },
    /// Path extension followed by a clique joined to `v_len`.
    PathClique { len: usize, order: usize },
    /// Path whose far end `v_len` is joined to the roots of `other`.
    PathAugment { len: usize, other: RootedGraph },
    /// Augmented path extension: `v_len` gets a leaf and a neighbour carrying
    /// a pendant leaf.
    Augmented { len: usize },
    /// Twisted path extension: `v_len` forms a triangle with two new vertices
    /// and carries a leaf.
    Twisted { len: usize },
}

/// Gadget attached by the augmented path extension: vertex 0 carries the
/// pendant vertex 1, vertex 2 is isolated; roots `{0, 2}`.
pub fn augmented_gadget() -> RootedGraph {
    let g = Graph::from_edges(3, &[(0, 1)]).expect("static gadget");
    RootedGraph { graph: g, roots: 0b101 }
}

/// Gadget attached by the twisted path extension: edge `0 - 1` plus the
/// isolated vertex 2, all three rooted.
pub fn twisted_gadget() -> RootedGraph {
    let g = Graph::from_edges(3, &[(0, 1)]).expect("static gadget");
    RootedGraph { graph: g, roots: 0b111 }
}

/// Builds the extension of `f`.
///
/// Layout: `0..|F|` are the vertices of `F`; for path-bearing kinds the path
/// `v_0 .. v_len` follows; then the clique, second graph or gadget. For the
/// augmented kind the gadget order is (neighbour of `v_len` carrying the
/// pendant, the pendant, the leaf of `v_len`); for the twisted kind it is
/// (triangle vertex, triangle vertex, leaf of `v_len`).
pub fn extend(f: &RootedGraph, ext: &Extension) -> Result<Graph> {
    match ext {
        Extension::Path { len } => build(f, Some(*len), None),
        Extension::Clique { order } => {
            if *order == 0 {
                return Err(Error::MalformedExtension("clique order must be at least 1".into()));
            }
            let clique = RootedGraph { graph: Graph::complete(*order), roots: full_mask(*order) };
            build(f, None, Some(&clique))
        }
        Extension::PathClique { len, order } => {
            if *order == 0 {
                return Err(Error::MalformedExtension("clique order must be at least 1".into()));
            }
            let clique = RootedGraph { graph: Graph::complete(*order), roots: full_mask(*order) };
            build(f, Some(*len), Some(&clique))
        }
        Extension::PathAugment { len, other } => {
            if other.roots == 0 {
                return Err(Error::MalformedExtension("second rooted graph has no roots".into()));
            }
            build(f, Some(*len), Some(other))
        }
        Extension::Augmented { len } => build(f, Some(*len), Some(&augmented_gadget())),
        Extension::Twisted { len } => build(f, Some(*len), Some(&twisted_gadget())),
    }
}

/// `F`, then an optional path, then an optional rooted attachment joined to the
/// last path vertex (or to the roots of `F` when there is no path).
fn build(f: &RootedGraph, path: Option<usize>, tail: Option<&RootedGraph>) -> Result<Graph> {
    let nf = f.order();
    let np = path.map_or(0, |l| l + 1);
    let nt = tail.map_or(0, |t| t.order());
    let n = nf + np + nt;
    if n > MAX_GRAPH_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_GRAPH_ORDER });
    }
    let mut g = Graph::new(n);
    for (u, v) in f.graph.edges() {
        g.add_edge(u, v);
    }
    // the vertex set the next piece attaches to
    let mut anchor: Vec<usize> = bits(f.roots).collect();
    if np > 0 {
        for &r in &anchor {
            g.add_edge(r, nf);
        }
        for i in 1..np {
            g.add_edge(nf + i - 1, nf + i);
        }
        anchor = vec![nf + np - 1];
    }
    if let Some(t) = tail {
        let off = nf + np;
        for (u, v) in t.graph.edges() {
            g.add_edge(off + u, off + v);
        }
        for r in bits(t.roots) {
            for &a in &anchor {
                g.add_edge(a, off + r);
            }
        }
    }
    Ok(g)
}

/// Line graph of a single-rooted graph: one vertex per edge (lexicographic edge
/// order), adjacent when the edges share an endpoint, rooted at the edges
/// incident to the root.
pub fn line_graph(h: &SingleRootedGraph) -> RootedGraph {
    let edges: Vec<(usize, usize)> = h.graph.edges().collect();
    let mut g = Graph::new(edges.len());
    let mut roots = 0u64;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == h.root || b == h.root {
            roots |= 1 << i;
        }
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                g.add_edge(i, j);
            }
        }
    }
    RootedGraph { graph: g, roots }
}
