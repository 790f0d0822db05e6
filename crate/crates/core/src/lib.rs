//! Exact algorithms for covering a tree with `k` robots.
//!
//! Robots move synchronously along unit-length edges and may stay put. A
//! strategy assigns one walk per robot; it covers the tree when every vertex
//! appears in some walk. Two costs are studied: the cover time (longest walk)
//! and the cover length (total number of moves), each with or without periodic
//! rendezvous of all robots.
//!
//! * [`tree`] and [`strategy`]: the model and its cost measures.
//! * [`structure`]: decomposition of minimum-length strategies into paths and
//!   detour forests, and the path-tuple cost.
//! * [`dp`]: polynomial dynamic programs for minimum length with one or two
//!   start vertices.
//! * [`oracle`]: exhaustive solvers for all four problem variants on small
//!   trees, and a 3-PARTITION solver.
//! * [`hardness`]: 3-PARTITION reduction instances with witness strategies,
//!   plus random tree generators.
//! * [`format`]: text formats for instances and strategies, and DOT output.

pub mod dp;
pub mod error;
pub mod format;
pub mod hardness;
pub mod oracle;
pub mod strategy;
pub mod structure;
pub mod tree;

pub use error::{Error, Result, TreeError};
pub use strategy::{PathTuple, RendezvousViolation, Strategy, Walk};
pub use tree::{Tree, Vertex};
