use core::fmt;

use num_complex::Complex64;

use super::sphere::{is_infinite, INFINITY};
use crate::error::{Error, Result};

/// Matrices with `|det|` at most this are singular.
pub const DET_TOL: f64 = 1e-12;
/// Tolerance of the trace test in [`MoebiusElement::classify`].
pub const CLASSIFY_TOL: f64 = 1e-9;

/// `z -> (a z + b) / (c z + d)` with `ad - bc = 1`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct MoebiusElement {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

/// Conjugacy type of a Mobius transformation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoebiusType {
    Identity,
    Elliptic,
    /// `near_boundary` marks a trace square within tolerance of 4 but not equal to it, where
    /// parabolic, elliptic and loxodromic cannot be told apart numerically.
    Parabolic { near_boundary: bool },
    Loxodromic,
}

impl fmt::Display for MoebiusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoebiusType::Identity => "Identity",
            MoebiusType::Elliptic => "Elliptic",
            MoebiusType::Parabolic { .. } => "Parabolic",
            MoebiusType::Loxodromic => "Loxodromic",
        })
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl MoebiusElement {
    /// Normalizes to determinant one.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() <= DET_TOL || !det.is_finite() {
            return Err(Error::Singular);
        }
        let s = det.sqrt().inv();
        Ok(MoebiusElement { a: a * s, b: b * s, c: c * s, d: d * s })
    }

    pub fn identity() -> Self {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        MoebiusElement { a: o, b: z, c: z, d: o }
    }

    /// `z -> z + t`.
    pub fn translation(t: Complex64) -> Self {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        MoebiusElement { a: o, b: t, c: z, d: o }
    }

    /// `z -> k z`.
    pub fn dilation(k: Complex64) -> Result<Self> {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        MoebiusElement::new(k, z, z, o)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Image of a point of the sphere.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        if is_infinite(z) {
            return if self.c == c(0.0, 0.0) { INFINITY } else { self.a / self.c };
        }
        let den = self.c * z + self.d;
        if den == c(0.0, 0.0) {
            return INFINITY;
        }
        let w = (self.a * z + self.b) / den;
        if is_infinite(w) { INFINITY } else { w }
    }

    /// `self o o`.
    pub fn mul(&self, o: &MoebiusElement) -> MoebiusElement {
        MoebiusElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> MoebiusElement {
        MoebiusElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Max-norm distance of the matrix to the nearer of `I` and `-I`.
    pub fn distance_to_identity(&self) -> f64 {
        let o = c(1.0, 0.0);
        let dist = |s: f64| {
            let e = [self.a - o * s, self.b, self.c, self.d - o * s];
            e.iter().map(|z| z.norm()).fold(0.0, f64::max)
        };
        dist(1.0).min(dist(-1.0))
    }

    pub fn classify(&self) -> MoebiusType {
        if self.distance_to_identity() <= CLASSIFY_TOL {
            return MoebiusType::Identity;
        }
        let t2 = self.trace() * self.trace();
        let gap = t2 - c(4.0, 0.0);
        if gap.norm() <= CLASSIFY_TOL {
            return MoebiusType::Parabolic { near_boundary: gap != c(0.0, 0.0) };
        }
        if t2.im.abs() <= CLASSIFY_TOL && t2.re >= -CLASSIFY_TOL && t2.re < 4.0 {
            return MoebiusType::Elliptic;
        }
        MoebiusType::Loxodromic
    }

    /// Fixed point of the eigenvalue of larger modulus, for loxodromic elements.
    pub fn attracting_fixed_point(&self) -> Option<Complex64> {
        if self.classify() != MoebiusType::Loxodromic {
            return None;
        }
        let t = self.trace();
        let r = (t * t - c(4.0, 0.0)).sqrt();
        let (l1, l2) = ((t + r) / 2.0, (t - r) / 2.0);
        let l = if l1.norm() >= l2.norm() { l1 } else { l2 };
        // Eigenvector (b, l - a) from the first row or (l - d, c) from the second.
        let (p, q) = ((self.b, l - self.a), (l - self.d, self.c));
        let (x, y) = if p.0.norm() + p.1.norm() >= q.0.norm() + q.1.norm() { p } else { q };
        if y.norm() <= f64::EPSILON * x.norm() {
            return Some(INFINITY);
        }
        Some(x / y)
    }
}

/// `re+imi` with signed zeros folded to `0`.
struct Entry(Complex64);

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.0.re + 0.0, self.0.im + 0.0);
        if im < 0.0 { write!(f, "{re}-{}i", -im) } else { write!(f, "{re}+{im}i") }
    }
}

impl fmt::Display for MoebiusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = [self.a, self.b, self.c, self.d].map(Entry);
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> MoebiusElement {
        MoebiusElement::new(a, b, cc, d).unwrap()
    }

    #[test]
    fn trichotomy() {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(m(o, o, z, o).classify(), MoebiusType::Parabolic { near_boundary: false });
        assert_eq!(m(c(2.0, 0.0), z, z, c(0.5, 0.0)).classify(), MoebiusType::Loxodromic);
        let r = Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_4);
        assert_eq!(m(r, z, z, r.inv()).classify(), MoebiusType::Elliptic);
        assert_eq!(MoebiusElement::identity().classify(), MoebiusType::Identity);
        assert_eq!(m(-o, z, z, -o).classify(), MoebiusType::Identity);
    }

    #[test]
    fn singular_is_rejected() {
        let o = c(1.0, 0.0);
        assert_eq!(MoebiusElement::new(o, o, o, o), Err(Error::Singular));
    }

    #[test]
    fn fixed_points_of_dilation() {
        let g = MoebiusElement::dilation(c(2.0, 0.0)).unwrap();
        assert_eq!(g.attracting_fixed_point(), Some(INFINITY));
        assert_eq!(g.inverse().attracting_fixed_point(), Some(c(0.0, 0.0)));
        assert_eq!(g.apply(INFINITY), INFINITY);
        assert!((g.apply(c(1.0, 1.0)) - c(2.0, 2.0)).norm() < 1e-15);
    }
}
