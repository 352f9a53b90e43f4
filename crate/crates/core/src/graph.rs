//! Simple undirected graphs stored as per-vertex adjacency bitmasks.

use std::fmt;

use crate::error::{Error, Result};

/// Largest order a [`Graph`] can hold (one `u64` mask per vertex).
pub const MAX_GRAPH_ORDER: usize = 64;

/// Iterates the set bits of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Mask with the low `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// # Panics
    /// If `n > MAX_GRAPH_ORDER`.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_GRAPH_ORDER, "graph order {n} exceeds {MAX_GRAPH_ORDER}");
        Graph { adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_GRAPH_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_GRAPH_ORDER });
        }
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), order: n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn from_adjacency(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_GRAPH_ORDER);
        debug_assert!((0..adj.len()).all(|v| adj[v] >> v & 1 == 0));
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let full = full_mask(n);
        Graph { adj: (0..n).map(|v| full & !(1 << v)).collect() }
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// `E_n`: a path on `n - 1` vertices with a pendant vertex attached to the
    /// third vertex. The pendant is vertex `n - 1`.
    pub fn e_graph(n: usize) -> Self {
        assert!(n >= 4);
        let mut g = Graph::new(n);
        for v in 1..n - 1 {
            g.add_edge(v - 1, v);
        }
        g.add_edge(2, n - 1);
        g
    }

    /// `E'_n`: a triangle `{0, 1, 2}` where vertex 2 carries a pendant vertex 3
    /// and the path `2 - 4 - 5 - ... - n-1`.
    pub fn e_prime_graph(n: usize) -> Self {
        assert!(n >= 4);
        let mut g = Graph::new(n);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        let mut prev = 2;
        for v in 4..n {
            g.add_edge(prev, v);
            prev = v;
        }
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.order())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| bits(self.adj[u] >> u >> 1).map(move |d| (u, u + 1 + d)))
    }

    /// Number of edges inside a vertex set.
    pub fn edges_within(&self, set: u64) -> usize {
        bits(set).map(|v| (self.adj[v] & set).count_ones() as usize).sum::<usize>() / 2
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&v| self.degree(v) == 1)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.component_of(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Subgraph induced by `set`, vertices renumbered in increasing order.
    pub fn induced(&self, set: u64) -> Graph {
        let keep: Vec<usize> = bits(set & self.vertex_mask()).collect();
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn without_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertex_mask() & !(1 << v))
    }

    /// Appends a vertex `n` adjacent to `subset` (the path extension of
    /// length zero at `subset`).
    pub fn with_new_vertex(&self, subset: u64) -> Graph {
        let n = self.order();
        let mut adj = self.adj.clone();
        for v in bits(subset) {
            adj[v] |= 1 << n;
        }
        adj.push(subset);
        Graph { adj }
    }

    /// Renumbers vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.order());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.order();
        let mut g = Graph::new(off + other.order());
        for (u, v) in self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))) {
            g.add_edge(u, v);
        }
        g
    }

    /// Whether the four vertices of some induced claw `K_{1,3}` exist.
    pub fn has_induced_claw(&self) -> bool {
        (0..self.order()).any(|c| {
            let nb: Vec<usize> = bits(self.adj[c]).collect();
            for (i, &a) in nb.iter().enumerate() {
                for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    for &d in &nb[j + 1..] {
                        if !self.has_edge(a, d) && !self.has_edge(b, d) {
                            return true;
                        }
                    }
                }
            }
            false
        })
    }

    /// Whether some induced diamond (`K_4` minus an edge) exists.
    pub fn has_induced_diamond(&self) -> bool {
        for (u, v) in self.edges() {
            let common: Vec<usize> = bits(self.adj[u] & self.adj[v]).collect();
            for (i, &a) in common.iter().enumerate() {
                for &b in &common[i + 1..] {
                    if !self.has_edge(a, b) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order())?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{u}-{v}")?;
        }
        write!(f, ")")
    }
}
