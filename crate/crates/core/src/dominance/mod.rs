//! Dynamic dominance and independence structures over a maintained vertex set `S`.

pub mod independence;
pub mod minor;
pub mod sparse;

pub use independence::{
    build_pair_graph, IndependenceCounter, PairGraph, PairGraphIndependence, PairLabel,
};
pub use minor::{LevelStats, MinorConfig, MinorDomStructure, NodeKind};
pub use sparse::SparseDomStructure;

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum DomError {
    #[error("vertex {0} is already a member")]
    AlreadyMember(Vertex),
    #[error("vertex {0} is not a member")]
    NotMember(Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

impl DomError {
    pub(crate) fn check_range(v: Vertex, n: usize) -> Result<(), DomError> {
        if v < n {
            Ok(())
        } else {
            Err(DomError::OutOfRange { vertex: v, n })
        }
    }
}

/// A dynamic set `S` answering "how many vertices are not dominated by `S`".
pub trait DominanceTester {
    fn insert(&mut self, v: Vertex) -> Result<(), DomError>;
    fn delete(&mut self, v: Vertex) -> Result<(), DomError>;
    /// Vertices neither in `S` nor adjacent to a member of `S`.
    fn undominated_count(&self) -> usize;
    fn contains(&self, v: Vertex) -> bool;
    /// Cumulative number of structure entries touched by updates.
    fn work(&self) -> u64;
}

impl<T: DominanceTester + ?Sized> DominanceTester for Box<T> {
    fn insert(&mut self, v: Vertex) -> Result<(), DomError> {
        (**self).insert(v)
    }
    fn delete(&mut self, v: Vertex) -> Result<(), DomError> {
        (**self).delete(v)
    }
    fn undominated_count(&self) -> usize {
        (**self).undominated_count()
    }
    fn contains(&self, v: Vertex) -> bool {
        (**self).contains(v)
    }
    fn work(&self) -> u64 {
        (**self).work()
    }
}
