//! Executable rows of the classification of birational Kleinian groups on rational surfaces,
//! with a harness of proxy checks on sampled points.

pub mod cases;
pub mod domain;
pub mod numeric;
pub mod verify;

pub use cases::{
    build_case, registry, BaseDomain, CaseGenerator, CaseParams, CaseStatus, ExactCircle, ExactMap, GalleryCase,
    PeriodData, RegistryEntry, Relation, CONSTRUCTIBLE_ROWS,
};
pub use domain::{Ambient, DomainDescriptor, DomainKind, Factor};
pub use numeric::{MapValue, NumMap, SurfacePoint};
pub use verify::{
    verify_case, CheckOutcome, DiscontinuityStats, LatticeCheck, RelationOutcome, VerificationReport, VerifyConfig,
    Witness,
};
