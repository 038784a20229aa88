//! Command-line front end for `girthcut-core`: single-graph analysis, thin
//! wrappers over the core operations, and the corpus verification campaign.

pub mod analyze;
pub mod campaign;
pub mod cli;
pub mod corpus;
pub mod render;
