//! Boundary-only rigidity: cross ratio oracles, boundary characterizations
//! of opposition and straightness, reconstruction of a complex from its
//! boundary cross ratio data alone, and extension of cross-ratio preserving
//! boundary bijections to cubical isomorphisms.

mod characterize;
mod extend;
mod mobius;
mod oracle;
mod reconstruct;
mod recovery;
mod skeleton;

pub use characterize::{
    is_opposite_direct, is_opposite_oracle, is_straight_pair_direct, is_straight_pair_oracle,
    is_straight_point, opposite_witness, skinny_ray_witness, straight_points,
};
pub use extend::{extend_isomorphism, verify_uniqueness, CubicalMap, UniquenessReport};
pub use mobius::{is_mobius, MapCheck, MobiusCounterexample, MobiusMap, MobiusVerdict};
pub use oracle::{CrossRatioOracle, OracleRecord, Provenance};
pub use reconstruct::{reconstruct, ReconstructedComplex};
pub use recovery::{
    median_class_distance, recover_pair_product, recover_products_at_median, OppositeTriple,
};
pub use skeleton::FatSkeleton;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RigidityError {
    #[error(transparent)]
    Roller(#[from] crate::roller::RollerError),
    #[error("unknown boundary id {0:?}")]
    UnknownId(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("tuple ({0} {1} {2} {3}) is not admissible")]
    NotAdmissibleTuple(String, String, String, String),
    #[error("recovered shifts disagree: {0}")]
    ShiftMismatch(String),
    #[error("distance hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("oracle data is inconsistent: {0}")]
    CorruptOracle(String),
    #[error("map is not defined on every boundary point ({0})")]
    NotTotal(String),
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("map is not Moebius: counterexample ({0} {1} {2} {3})")]
    NotMobius(String, String, String, String),
    #[error("extension refused: {0}")]
    ExtensionRefused(String),
    #[error("extension failed, which violates the rigidity theorem: {0}")]
    ExtensionFailed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
