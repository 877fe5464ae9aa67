//! Birational maps: P^2 Cremona maps, the Jonquieres group, and maps of P^1 x P^1.

pub mod cremona;
pub mod jonquieres;
pub mod p1xp1;

pub use cremona::{check_inverse, CremonaMap, Evaluation, ProjPoint};
pub use jonquieres::{detect_affine, FiberDetection, JonquieresElement, Mobius};
pub use p1xp1::P1xP1Map;
