//! Exact width computation and evaluation for Boolean conjunctive queries.
//!
//! The crate computes the submodular width and the ω-submodular width of a
//! query hypergraph by solving exact rational linear programs over the
//! polymatroid cone, extracts ω-Shannon inequality certificates together with
//! step-by-step proof sequences from the LP duals, and evaluates queries on
//! concrete databases with a PANDA-style engine that combines degree
//! partitioning with fast matrix multiplication.
//!
//! Modules mirror the pipeline:
//!
//! * [`hypergraph`] — vertex sets, hypergraphs, tree decompositions and
//!   (generalized) variable elimination orders;
//! * [`rational_lp`] — arbitrary-precision rationals and an exact simplex
//!   solver with verified dual certificates;
//! * [`entropy`] — the polymatroid cone, edge domination and the matrix
//!   multiplication information measures;
//! * [`width`] — submodular and ω-submodular width, closed forms, the cycle
//!   exponent dynamic program and fractional edge covers;
//! * [`shannon`] — ω-Shannon inequalities, Farkas witnesses, the reset lemma
//!   and proof sequences;
//! * [`engine`] — relations, degree partitioning, matrix kernels and the
//!   query evaluator;
//! * [`cli`] — query/database file formats and JSON reports.

pub mod cli;
pub mod engine;
pub mod entropy;
pub mod hypergraph;
pub mod rational_lp;
pub mod shannon;
pub mod width;

pub use hypergraph::{Hypergraph, VertexSet};
pub use rational_lp::Rat;
