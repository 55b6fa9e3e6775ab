//! Finitely described cube complexes and their Roller compactification.
//!
//! The complexes handled here are finite products of factors, each a finite
//! median-graph core with skinny rays attached. Every vertex of the
//! compactified complex, and every Roller boundary point, is a tuple of
//! per-factor coordinates: a core vertex, a ray vertex at some depth, or a
//! ray end. Wall counting, Gromov products, medians, admissibility and the
//! integer cross ratio are all exact on this class.

mod classify;
mod complex;
mod count;
mod cross;
pub mod fixtures;
mod lines;
#[cfg(test)]
mod tests;
mod walls;

pub use classify::{classify_vertices, Decomposition, SkinnyRay, SkinnySegment};
pub use complex::{
    BoundaryEnumeration, ComplexDescription, Coord, EligibilityReport, Factor, Point, Ray,
    Truncation,
};
pub use count::{Count, CrossRatio, CrtTriple};
pub(crate) use cross::gromov_raw;
pub use cross::{
    cross_ratio, cross_ratio_at_basepoint, cross_ratio_wall_only, crt, crt_at_basepoint,
    gromov_product, is_admissible, median_bar,
};
pub use lines::{extend_to_straight_line, is_line_union, LineSpec, SymbolicRay};
pub use walls::{walls_between, walls_between_at_depth, WallDescriptor, WallKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RollerError {
    #[error("complex has no factors")]
    NoFactors,
    #[error("factor {factor}: core is not a median graph ({report})")]
    CoreNotMedian { factor: usize, report: String },
    #[error("factor {factor}: {source}")]
    CoreError {
        factor: usize,
        source: crate::median::MedianError,
    },
    #[error("factor {factor}: ray {ray:?} attached to unknown vertex {base:?}")]
    UnknownRayBase {
        factor: usize,
        ray: String,
        base: String,
    },
    #[error("factor {factor}: duplicate ray id {ray:?}")]
    DuplicateRay { factor: usize, ray: String },
    #[error("point has {got} coordinates, complex has {expected} factors")]
    PointArity { expected: usize, got: usize },
    #[error("factor {factor}: unknown vertex {id:?} in coordinate")]
    UnknownCoordVertex { factor: usize, id: String },
    #[error("factor {factor}: unknown ray {ray:?} in coordinate")]
    UnknownCoordRay { factor: usize, ray: String },
    #[error("factor {factor}: ray depth must be at least 1")]
    ZeroRayDepth { factor: usize },
    #[error("cannot parse coordinate {0:?}")]
    BadCoordinate(String),
    #[error("unknown point name {0:?}")]
    UnknownPoint(String),
    #[error("point {0} is not a vertex")]
    NotAVertex(String),
    #[error("point sets for wall counting must be nonempty and disjoint")]
    BadWallQuery,
    #[error("4-tuple is not admissible")]
    NotAdmissible,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(String, String),
    #[error("rays must share their base vertex ({0} vs {1})")]
    DifferentBases(String, String),
    #[error("symbolic ray is malformed: {0}")]
    BadRay(String),
    #[error("complex is not rigidity-eligible: {0}")]
    Ineligible(String),
    #[error("no straight continuation at {0}; the complex has an extremal vertex")]
    ExtensionStuck(String),
    #[error("operation requires a single-factor complex")]
    ProductUnsupported,
    #[error("operation is undefined for a complex isomorphic to the real line")]
    LineComplex,
    #[error("operation is undefined for a one-point complex")]
    PointComplex,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
