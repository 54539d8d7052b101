//! Algebraic and combinatorial machinery for phi^4 Feynman graphs
//! (graph polynomials, denominator reduction, c2 invariants, the p=2
//! completion bijections) together with positroid Le diagrams and the
//! T-duality map on them.

pub mod bipartition;
pub mod c2;
pub mod corpus;
pub mod graphpoly;
pub mod graphs;
pub mod poly;
pub mod positroid;
pub mod reduction;
pub mod tduality;

pub use bipartition::{CaseContext, CaseTag, CompletionReport};
pub use graphs::{EdgeBipartition, Multigraph, VertexPartition};
pub use poly::{PrimeField, SparsePoly};
pub use positroid::{DecoratedPermutation, LeDiagram};
pub use tduality::{LShape, Piece, RowContext, Section};
pub use reduction::{ReductionTrace, Stage, StageStatus};

