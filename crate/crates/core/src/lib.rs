//! Exact classification of connected graphs whose smallest adjacency
//! eigenvalue lies in `(-lambda*, -2)`.
//!
//! `lambda* = rho^(1/2) + rho^(-1/2) ~ 2.0198`, where `rho` is the real root of
//! `x^3 = x + 1`. Such graphs are either augmented path extensions of line
//! graphs of single-rooted bipartite graphs ([`enum_rooted`]) or one of
//! finitely many maverick graphs ([`enum_maverick`]). Every decision runs on
//! exact rationals.

pub mod appendix;
pub mod edges;
pub mod enum_maverick;
pub mod enum_rooted;
pub mod error;
pub mod graph;
pub mod iso;
pub mod linalg;
pub mod linegraph;
pub mod rooted;
pub mod spectral;
pub mod twisted;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::Rational;
pub use rooted::{Extension, RootedGraph, SingleRootedGraph};
