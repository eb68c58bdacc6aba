//! Graphs, Kneser graphs, orientations and the semi-transitivity search.
//!
//! Everything here works without `std` (only `alloc`); the default `std`
//! feature adds a wall-clock for search budgets.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bitset;
pub mod bounds;
pub mod graph;
pub mod kneser;
pub mod orient;
pub mod solver;
pub mod words;

pub use graph::{EdgeId, Graph, GraphError};
pub use orient::{Dir, Directed, Orientation, PartialOrientation, Verdict};
pub use solver::{Budget, SolveOutcome, SolveStatus};
