//! Maximum integral two-commodity flows (biflows) in undirected graphs.
//!
//! A biflow routes commodity 1 from `s1` to `t1` and commodity 2 from `s2`
//! to `t2` so that on every edge the two commodities together use at most
//! the edge capacity. In general the largest integral biflow can fall short
//! of the smallest bicut; this crate solves the problem exactly on the graphs
//! where the two always agree, and certifies every answer against the bicut.

pub mod bicut;
pub mod bridges;
pub mod error;
pub mod flowops;
pub mod generate;
pub mod gluing;
pub mod graph;
pub mod io;
pub mod maxflow;
pub mod planar;
pub mod solver;
pub mod structure;
pub mod triflow;

pub use error::{Error, Result};
pub use flowops::{ArcFlow, Biflow, PathFlowDecomposition};
pub use graph::{Cap, EdgeId, Graph, Instance, Terminals, Vertex};
pub use solver::{solve, SolveResult};
