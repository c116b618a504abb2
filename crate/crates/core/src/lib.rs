//! Mod-2 linking structure of PL embeddings of complete bipartite graphs.

pub mod geometry;
pub mod graph;
pub mod diagram;
pub mod classify;
pub mod extract;
pub mod format;
pub mod campaign;
