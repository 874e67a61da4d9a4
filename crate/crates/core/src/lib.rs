//! Chord-diagram weight systems computed through intersection graphs.
//!
//! The crate models (marked) chord diagrams, their intersection graphs, and
//! the GF(2) adjacency forms those graphs carry. On top of that it builds
//! the Conway, HOMFLYPT, and Kauffman weight systems, graph-level analogues,
//! relation generators (one-term, four-term, and chord-slide families), and
//! an exact rational span engine for quotient-space questions. A boundary
//! tracing oracle on banded surfaces keeps the linear algebra honest.

pub mod acceptance;
pub mod combination;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod graph;
pub mod poly;
pub mod relations;
pub mod surgery;
pub mod weights;

pub use combination::Combination;
pub use diagram::MarkedChordDiagram;
pub use error::{Error, Result};
pub use gf2::{CaravanClass, Gf2SymmetricMatrix};
pub use graph::{intersection_graph, MarkedGraph};
pub use poly::{BivariatePolynomial, XPolynomial};
pub use relations::{RelationKind, RelationSpan, Space};
pub use surgery::{boundary_components, surgery_trace, ArcStep, SurgeryTrace};
pub use weights::Functional;
