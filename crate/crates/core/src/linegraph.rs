//! Recognition of line graphs of bipartite graphs and of generalized line
//! graphs, by reconstructing a root graph.
//!
//! Each vertex of `G` is assigned an edge `{a, b}` of a root graph so that two
//! vertices are adjacent exactly when their edges share one endpoint. Vertices
//! are placed in breadth-first order, so every vertex after the first of its
//! component shares an endpoint with an already placed neighbour, which keeps
//! the branching small.

use crate::graph::{bits, Graph};

/// Constraints on the root graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// Simple bipartite root graph.
    Bipartite,
    /// Root graph with petals: a pendant double edge may occur, giving two
    /// non-adjacent vertices with the same pair of endpoints.
    Petals,
}

struct Search<'a> {
    g: &'a Graph,
    kind: RootKind,
    order: Vec<usize>,
    /// first position of the component each position belongs to
    comp_start: Vec<usize>,
    pairs: Vec<(u32, u32)>,
    /// side of each label (bipartite kind only)
    side: Vec<u8>,
}

fn shared(p: (u32, u32), q: (u32, u32)) -> usize {
    let mut c = 0;
    if p.0 == q.0 || p.0 == q.1 {
        c += 1;
    }
    if p.1 == q.0 || p.1 == q.1 {
        c += 1;
    }
    c
}

impl Search<'_> {
    fn consistent(&self, k: usize, p: (u32, u32)) -> bool {
        let v = self.order[k];
        let mut copies = 0;
        for i in 0..k {
            let w = self.order[i];
            let s = shared(p, self.pairs[w]);
            if self.g.has_edge(v, w) {
                if s != 1 {
                    return false;
                }
            } else if s == 2 {
                if self.kind != RootKind::Petals {
                    return false;
                }
                copies += 1;
                if copies > 1 {
                    return false;
                }
            } else if s == 1 {
                return false;
            }
        }
        true
    }

    /// Every doubled pair must be a petal: one endpoint carries nothing else.
    fn petals_ok(&self) -> bool {
        let n = self.order.len();
        for i in 0..n {
            for j in i + 1..n {
                let (p, q) = (self.pairs[self.order[i]], self.pairs[self.order[j]]);
                if shared(p, q) != 2 {
                    continue;
                }
                let lonely = |label: u32| {
                    (0..n).filter(|&k| k != i && k != j).all(|k| {
                        let r = self.pairs[self.order[k]];
                        r.0 != label && r.1 != label
                    })
                };
                if !lonely(p.0) && !lonely(p.1) {
                    return false;
                }
            }
        }
        true
    }

    fn fresh(&mut self, side: u8) -> u32 {
        self.side.push(side);
        (self.side.len() - 1) as u32
    }

    fn place(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return self.kind != RootKind::Petals || self.petals_ok();
        }
        let v = self.order[k];
        let labels_before = self.side.len();
        if self.comp_start[k] == k {
            let a = self.fresh(0);
            let b = self.fresh(1);
            self.pairs[v] = (a, b);
            if self.consistent(k, (a, b)) && self.place(k + 1) {
                return true;
            }
            self.side.truncate(labels_before);
            return false;
        }
        // a placed neighbour inside this component
        let start = self.comp_start[k];
        let u = self.order[start..k]
            .iter()
            .copied()
            .find(|&w| self.g.has_edge(v, w))
            .expect("breadth-first order");
        let (x, y) = self.pairs[u];
        let first_label = self.pairs[self.order[start]].0;
        for keep in [x, y] {
            let keep_side = self.side[keep as usize];
            let existing: Vec<u32> = (first_label..labels_before as u32)
                .filter(|&z| z != keep)
                .filter(|&z| self.kind != RootKind::Bipartite || self.side[z as usize] != keep_side)
                .collect();
            for z in existing.into_iter().map(Some).chain([None]) {
                let z = match z {
                    Some(z) => z,
                    None => self.fresh(1 - keep_side),
                };
                let p = (keep.min(z), keep.max(z));
                if self.consistent(k, p) {
                    self.pairs[v] = p;
                    if self.place(k + 1) {
                        return true;
                    }
                }
                self.side.truncate(labels_before);
            }
        }
        false
    }
}

/// Reconstructs a root graph: returns, for each vertex of `g`, the endpoints
/// of its edge in the root graph.
pub fn root_graph(g: &Graph, kind: RootKind) -> Option<Vec<(u32, u32)>> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut comp_start = Vec::with_capacity(n);
    let mut seen = 0u64;
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let start = order.len();
        order.push(s);
        seen |= 1 << s;
        let mut i = start;
        while i < order.len() {
            for u in bits(g.neighbors(order[i]) & !seen) {
                order.push(u);
                seen |= 1 << u;
            }
            i += 1;
        }
        comp_start.resize(order.len(), start);
    }
    let mut search = Search { g, kind, order, comp_start, pairs: vec![(0, 0); n], side: Vec::new() };
    if search.place(0) {
        Some(search.pairs)
    } else {
        None
    }
}

pub fn is_line_graph_of_bipartite(g: &Graph) -> bool {
    root_graph(g, RootKind::Bipartite).is_some()
}

pub fn is_generalized_line_graph(g: &Graph) -> bool {
    root_graph(g, RootKind::Petals).is_some()
}

/// Leaves `v` of `g` with `g - v` the line graph of a bipartite graph.
pub fn bipartite_line_graph_leaves(g: &Graph) -> Vec<usize> {
    g.leaves().filter(|&v| is_line_graph_of_bipartite(&g.without_vertex(v))).collect()
}
