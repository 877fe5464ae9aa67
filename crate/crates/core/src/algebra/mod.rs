//! Exact arithmetic: Gaussian rationals, sparse polynomials, gcds and rational functions.

pub mod gcd;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod zi;

pub use gcd::{gcd, gcd_many};
pub use poly::{Monomial, Poly, VarSet};
pub use ratfun::{substitute_poly, RationalFunction};
pub use scalar::Scalar;
