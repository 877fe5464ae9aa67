//! Numeric PGL2(C): Mobius transformations, finitely generated groups, orbits, limit sets and
//! Schottky groups. Points of the Riemann sphere are `Complex64`, with infinity encoded by an
//! infinite real part.

mod group;
mod moebius;
pub mod sphere;

pub use group::{directed_hausdorff, schottky_build, Circle, CirclePair, KleinianGroup, LimitCloud, Orbit, Word, DEDUP_TOL, LIMIT_WORD_LENGTH, RELATION_TOL};
pub use moebius::{MoebiusElement, MoebiusType, CLASSIFY_TOL, DET_TOL};
