//! Eccentricity, distance-sum and topological-index computation on directed
//! weighted graphs that come with a hub labeling of small maximum label size.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! the terminal or threads lives in the companion `hublab` crate.
//!
//! Layout:
//! - [`graph`]: graph representation, Dijkstra, brute-force oracles, generators.
//! - [`labeling`]: hub labelings (build, validate, tighten, concatenate).
//! - [`range`]: static range trees with max/sum/count/inverse-shifted-weight queries.
//! - [`engine`]: per-vertex eccentricity and distance-sum queries for the four
//!   distance modes, plus the bi-chromatic variant used by [`twdnc`].
//! - [`indices`]: Wiener-type, Harary-type, Szeged and Padmakar-Ivan indices.
//! - [`twdnc`]: tree decompositions and the separator recursion for roundtrip
//!   eccentricities.
//! - [`sparse`]: elimination forests, low tree-depth colorings and the
//!   "diameter at most k" decider.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod graph;
pub mod indices;
pub mod labeling;
pub mod range;
pub mod sparse;
pub mod twdnc;

pub use error::{Error, Result};
pub use graph::{DistanceMode, Graph, Vertex, Weight, INFINITY};
pub use labeling::{Flavor, HubLabeling, Label};
