//! Isomorphism hashes and a backtracking isomorphism test.
//!
//! The hashes are the cheap invariants used to bucket candidates during the
//! searches. [`isomorphic`] settles equality inside a bucket by extending a
//! partial map one vertex at a time, keeping only candidates with the same
//! refined invariant and consistent adjacency to the vertices already mapped.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::graph::{bits, Graph};
use crate::rooted::{RootedGraph, SingleRootedGraph};

/// `[d_r, d_A, d_B]`: root degree and the sorted degree sequences of the
/// root's part and of the other part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingleRootedHash {
    pub dr: usize,
    pub da: Vec<usize>,
    pub db: Vec<usize>,
}

/// Sorted sequence of generalized degrees `(d_v, d_w)`, where `d_w` counts the
/// edges among the neighbours of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedDegreeHash(pub Vec<(usize, usize)>);

pub fn hash_single_rooted(h: &SingleRootedGraph) -> SingleRootedHash {
    let g = h.graph();
    let mut da: Vec<usize> = bits(h.part_a()).map(|v| g.degree(v)).collect();
    let mut db: Vec<usize> = bits(h.part_b()).map(|v| g.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    SingleRootedHash { dr: g.degree(h.root()), da, db }
}

pub fn generalized_degree(g: &Graph, v: usize) -> (usize, usize) {
    (g.degree(v), g.edges_within(g.neighbors(v)))
}

pub fn hash_graph(g: &Graph) -> GeneralizedDegreeHash {
    let mut d: Vec<(usize, usize)> = (0..g.order()).map(|v| generalized_degree(g, v)).collect();
    d.sort_unstable();
    GeneralizedDegreeHash(d)
}

fn mix<T: Hash>(x: T) -> u64 {
    let mut s = DefaultHasher::new();
    x.hash(&mut s);
    s.finish()
}

/// Vertex colours refined twice by the multiset of neighbour colours.
fn refine(g: &Graph, seed: &[u64]) -> Vec<u64> {
    let mut c: Vec<u64> = (0..g.order())
        .map(|v| mix((seed[v], generalized_degree(g, v))))
        .collect();
    for _ in 0..2 {
        let next = (0..g.order())
            .map(|v| {
                let mut nb: Vec<u64> = bits(g.neighbors(v)).map(|u| c[u]).collect();
                nb.sort_unstable();
                mix((c[v], nb))
            })
            .collect();
        c = next;
    }
    c
}

fn sorted(c: &[u64]) -> Vec<u64> {
    let mut s = c.to_vec();
    s.sort_unstable();
    s
}

/// A bucket key: equal for isomorphic inputs.
pub(crate) fn fingerprint(g: &Graph, seed: &[u64]) -> u64 {
    mix((g.order(), g.size(), sorted(&refine(g, seed))))
}

pub(crate) fn graph_fingerprint(g: &Graph) -> u64 {
    fingerprint(g, &vec![0; g.order()])
}

fn single_rooted_colours(h: &SingleRootedGraph) -> Vec<u64> {
    (0..h.graph().order())
        .map(|v| (v == h.root()) as u64 * 2 + (h.part_a() >> v & 1))
        .collect()
}

fn rooted_colours(f: &RootedGraph) -> Vec<u64> {
    (0..f.order()).map(|v| f.roots() >> v & 1).collect()
}

pub(crate) fn single_rooted_fingerprint(h: &SingleRootedGraph) -> u64 {
    fingerprint(h.graph(), &single_rooted_colours(h))
}

/// Finds a colour-preserving isomorphism `g -> h`, returned as the image of
/// each vertex of `g`.
pub fn find_isomorphism(g: &Graph, cg: &[u64], h: &Graph, ch: &[u64]) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() {
        return None;
    }
    let rg = refine(g, cg);
    let rh = refine(h, ch);
    if sorted(&rg) != sorted(&rh) {
        return None;
    }
    let class_size = |c: u64| rg.iter().filter(|&&x| x == c).count();
    // Search order: rarest class first, then always the vertex with the most
    // already-placed neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                let links = (g.neighbors(v) & placed).count_ones();
                (links, std::cmp::Reverse(class_size(rg[v])), g.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        order.push(next);
        placed |= 1 << next;
    }
    let mut map = vec![usize::MAX; n];
    if extend_map(g, h, &rg, &rh, &order, 0, &mut map, 0) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_map(
    g: &Graph,
    h: &Graph,
    rg: &[u64],
    rh: &[u64],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: u64,
) -> bool {
    if k == order.len() {
        return true;
    }
    let u = order[k];
    let mut image = 0u64;
    for &p in &order[..k] {
        if g.has_edge(u, p) {
            image |= 1 << map[p];
        }
    }
    for w in 0..h.order() {
        if used >> w & 1 == 1 || rh[w] != rg[u] || h.neighbors(w) & used != image {
            continue;
        }
        map[u] = w;
        if extend_map(g, h, rg, rh, order, k + 1, map, used | 1 << w) {
            return true;
        }
    }
    map[u] = usize::MAX;
    false
}

/// Relabels `g` so that isomorphic graphs give equal results.
///
/// Vertices are sorted by refined colour; among the orderings that permute
/// colour classes internally, the one with the lexicographically largest
/// adjacency rows wins. Exponential in the class sizes; meant for small graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.order();
    let colours = refine(g, &vec![0; n]);
    let classes = sorted(&colours);
    let mut search = Canon { g, colours: &colours, classes: &classes, pos: vec![0; n], rows: vec![0; n], best: None };
    search.run(0, 0);
    let best = search.best.expect("some ordering exists");
    let mut out = Graph::new(n);
    for (k, row) in best.iter().enumerate() {
        for j in bits(*row) {
            out.add_edge(j, k);
        }
    }
    out
}

struct Canon<'a> {
    g: &'a Graph,
    colours: &'a [u64],
    classes: &'a [u64],
    /// vertex at each position
    pos: Vec<usize>,
    /// adjacency of each position to the earlier ones
    rows: Vec<u64>,
    best: Option<Vec<u64>>,
}

impl Canon<'_> {
    fn run(&mut self, k: usize, used: u64) {
        let n = self.pos.len();
        if k == n {
            self.best = Some(self.rows.clone());
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 1 || self.colours[v] != self.classes[k] {
                continue;
            }
            let row = (0..k).filter(|&j| self.g.has_edge(v, self.pos[j])).fold(0u64, |r, j| r | 1 << j);
            // every active prefix is at least the best one; prune only on a tie
            if let Some(best) = &self.best {
                if best[..k] == self.rows[..k] && row < best[k] {
                    continue;
                }
            }
            self.pos[k] = v;
            self.rows[k] = row;
            self.run(k + 1, used | 1 << v);
        }
    }
}

/// Isomorphism up to the structure each graph kind carries.
pub trait Isomorphism {
    fn is_isomorphic(&self, other: &Self) -> bool;
}

impl Isomorphism for Graph {
    fn is_isomorphic(&self, other: &Self) -> bool {
        find_isomorphism(self, &vec![0; self.order()], other, &vec![0; other.order()]).is_some()
    }
}

impl Isomorphism for RootedGraph {
    fn is_isomorphic(&self, other: &Self) -> bool {
        find_isomorphism(self.graph(), &rooted_colours(self), other.graph(), &rooted_colours(other)).is_some()
    }
}

impl Isomorphism for SingleRootedGraph {
    fn is_isomorphic(&self, other: &Self) -> bool {
        if hash_single_rooted(self) != hash_single_rooted(other) {
            return false;
        }
        find_isomorphism(
            self.graph(),
            &single_rooted_colours(self),
            other.graph(),
            &single_rooted_colours(other),
        )
        .is_some()
    }
}

pub fn isomorphic<T: Isomorphism>(a: &T, b: &T) -> bool {
    a.is_isomorphic(b)
}
