//! Directed-graph algorithms around feedback arc sets and girth: exact and
//! certified feedback arc sets, edge-expansion sweeps, short cycles through a
//! vertex, strong-component periods and cycle-length spectra, plus the graph
//! families and brute-force references used to check them.

pub mod constructions;
pub mod degree;
pub mod expansion;
pub mod fas;
pub mod graph;
pub mod oracle;
pub mod periodicity;
pub mod rational;
pub mod scc;
pub mod traversal;

pub use graph::{Digraph, Edge, GraphError, Vertex};
pub use rational::Rational;
