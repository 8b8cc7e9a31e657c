//! Higher-rank graphs, their cubical cohomology, and the twisted groupoids built from
//! categorical 2-cocycles.
//!
//! A [`KGraph`] is built from a [`Skeleton`] and a [`SquareTable`] with [`validate`].
//! The [`cubical`] module computes homology and cohomology; [`bridge`] passes between
//! cubical and categorical cocycles; [`extension`] models central extensions; [`groupoid`]
//! builds the path groupoid and its continuous cocycles.

pub mod bridge;
pub mod catalog;
pub mod coeff;
pub mod cubical;
pub mod degree;
pub mod error;
pub mod extension;
pub mod graph;
pub mod groupoid;
pub mod matrix;
pub mod par;
pub mod sample;

pub use coeff::{CoeffGroup, GroupElem};
pub use degree::Degree;
pub use error::{Error, Result};
pub use graph::{validate, DerivedGraph, DerivedKind, EdgeId, KGraph, Morphism, Skeleton, SquareTable, VertexId};
