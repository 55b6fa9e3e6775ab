//! Combinatorial boundary geometry of cube complexes.
//!
//! The library works with finitely described, possibly infinite cube complexes:
//! a finite median-graph core with skinny rays attached, or a finite product of
//! such factors. On these it computes the wall calculus of the compactified
//! complex (separating-wall counts, Gromov products, medians), the integer
//! cross ratio on the boundary together with its triple form `⟪a:b:c⟫`, and the
//! boundary-only reconstruction pipeline: rebuilding the complex from a cross
//! ratio oracle and extending cross-ratio preserving boundary bijections to
//! cubical isomorphisms.
//!
//! Modules:
//! - [`median`]: finite median-graph primitives (distances, wall classes,
//!   intervals, medians, links).
//! - [`roller`]: ray-extended complexes, their compactification, wall counting
//!   and cross ratios.
//! - [`rigidity`]: boundary-only characterizations, oracles, reconstruction and
//!   isomorphism extension.

pub mod median;
pub mod rigidity;
pub mod roller;
