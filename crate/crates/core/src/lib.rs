//! Combinatorics of labeled oriented trees (LOTs) and the machinery needed
//! to certify their asphericity.
//!
//! The crate is `no_std` and only needs an allocator. Text formats, JSON,
//! DOT export and the command line live in the `lotcert` crate.
//!
//! - [`lot`]: labeled oriented graphs and trees, tree checks, the reduction
//!   predicates.
//! - [`presentation`]: LOT presentations, words, exponent sums.
//! - [`transform`]: compression, boundary reduction, folding, reduction
//!   traces, generator inversion and reorientation.
//! - [`sublot`]: sub-LOT enumeration, maximal proper sub-LOTs, collapsing and
//!   relative injectivity.
//! - [`whitehead`]: Whitehead graphs, forest tests (plain and relative) and
//!   the (relative) Stallings test.
//! - [`certify`]: the recursive certification algorithm and an independent
//!   certificate checker.
//! - [`diagram`]: combinatorial spherical diagrams, corner cycles, vertex
//!   reducedness and sink/source census.
//! - [`knot`]: Gauss codes of long virtual knots and their labeled oriented
//!   intervals.
#![no_std]

extern crate alloc;

pub mod certify;
pub mod diagram;
mod dsu;
mod error;
pub mod knot;
pub mod lot;
pub mod presentation;
pub mod sublot;
pub mod transform;
pub mod whitehead;

pub use error::Error;
pub use lot::{Edge, Log, Lot, Predicates, TreeDefect};
pub use presentation::{Letter, Presentation, Word};
pub use sublot::SubLot;

pub type Result<T, E = Error> = core::result::Result<T, E>;
