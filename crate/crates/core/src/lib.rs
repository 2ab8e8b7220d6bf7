//! Network evolution as 0/1 knapsack.
//!
//! Genes are nodes of a signed directed interaction graph; an oracle advises
//! promoting or repressing some of them, and the best set of genes to force is
//! the optimum of a knapsack over per-gene benefits and damages.

pub mod error;
pub mod graph;
pub mod io;
pub mod knapsack;
pub mod ne;
pub mod netgen;
pub mod sim;

pub use error::{Error, Result};
