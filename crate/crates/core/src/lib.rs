//! Maximal independent set enumeration for sparse graphs by reverse search,
//! with dynamic dominance structures for minor-closed and bounded-orientation
//! graphs and a constant-time-per-set enumerator for bounded degree.

pub mod bounded_degree;
pub mod cli;
pub mod dominance;
pub mod graph;
pub mod oracle;
pub mod reverse_search;
pub mod set;
