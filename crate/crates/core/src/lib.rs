//! Nil-graphs of ideals of finite commutative rings.
//!
//! The pipeline is: build a ring ([`ring`]), enumerate its ideal lattice
//! ([`lattice`]), form the nil-graph and its relatives ([`nil_graph`]),
//! compute graph invariants ([`graph`]) and genus bounds ([`genus`]), then
//! check the structural theorems over a census of rings ([`census`]).

pub mod census;
pub mod error;
pub mod exec;
pub mod genus;
pub mod graph;
pub mod lattice;
pub mod nil_graph;
pub mod ring;

pub use error::{Error, Result};
pub use exec::Exec;
