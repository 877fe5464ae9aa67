//! Exact birational maps of rational surfaces.
//!
//! Cremona maps of the plane, Jonquieres and monomial subgroups, degree growth and dynamical
//! degrees, Mobius and Kleinian groups, and a catalog of birational Kleinian group constructions.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod birational;
pub mod centralizers;
pub mod dynamics;
pub mod error;
pub mod gallery;
pub mod kleinian;
pub mod rng;
pub mod toric;

pub use error::{Error, Result};
