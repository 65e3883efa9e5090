//! Approximate shortest cycles through every vertex and approximate distances
//! for a linear number of vertex pairs, with exact reference oracles, spanner
//! constructions and generators for hard instances.

pub mod dist;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod linkcut;
pub mod npsp;
pub mod sssp;
pub mod ansc;
pub mod cli;
pub mod cycle_est;
pub mod seed;
pub mod spanners;
pub mod tz;

pub use dist::{Dist, Finite, Inf};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexMap};
