//! Magnitude homology of finite metric spaces, exact Euclidean geometry and
//! an equivalence decision for Euclidean sets based on their cores.
//!
//! All arithmetic is exact. Distances live in [`ExactReal`], a number system
//! of rational combinations of square roots, so betweenness, adjacency and
//! the length grading of chains are decided without tolerances.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod euclid;
pub mod exact;
pub mod homology;
pub mod io;
pub mod magchain;
pub mod metspace;
pub mod shape2d;

pub use error::{Error, Result};
pub use exact::{ExactLength, ExactReal};
pub use metspace::{FiniteMetricSpace, SpaceOracle};
