//! Floating-point rational maps of the affine chart `(x, y)`, used to sample group actions.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::{Poly, RationalFunction};
use crate::kleinian::sphere::chordal;

/// A point of the affine chart.
pub type SurfacePoint = [Complex64; 2];

/// Denominators below this, relative to the size of the terms, vanish.
const VANISH_TOL: f64 = 1e-13;

/// Sum of `c x^i y^j`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NumPoly {
    terms: Vec<(u32, u32, Complex64)>,
}

impl NumPoly {
    pub fn new(terms: Vec<(u32, u32, Complex64)>) -> Self {
        NumPoly { terms: terms.into_iter().filter(|t| t.2 != Complex64::new(0.0, 0.0)).collect() }
    }

    pub fn constant(c: Complex64) -> Self {
        NumPoly::new(alloc::vec![(0, 0, c)])
    }

    /// Converts an exact polynomial in `x, y` (or in `x` alone).
    pub fn from_exact(p: &Poly) -> Self {
        let two = p.arity() >= 2;
        NumPoly::new(
            p.terms()
                .map(|(m, c)| (m.0[0], if two { m.0[1] } else { 0 }, c.to_complex()))
                .collect(),
        )
    }

    /// Value and the sum of the absolute values of the terms.
    fn eval_with_scale(&self, p: &SurfacePoint) -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for &(i, j, c) in &self.terms {
            let t = c * p[0].powu(i) * p[1].powu(j);
            acc += t;
            scale += t.norm();
        }
        (acc, scale)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swapped(&self) -> NumPoly {
        NumPoly::new(self.terms.iter().map(|&(i, j, c)| (j, i, c)).collect())
    }
}

/// Value of a rational function at a point.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum NumValue {
    Finite(Complex64),
    Pole,
    /// Numerator and denominator both vanish.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumRational {
    pub num: NumPoly,
    pub den: NumPoly,
}

impl NumRational {
    pub fn polynomial(num: NumPoly) -> Self {
        NumRational { num, den: NumPoly::constant(Complex64::new(1.0, 0.0)) }
    }

    pub fn from_exact(r: &RationalFunction) -> Self {
        NumRational { num: NumPoly::from_exact(r.num()), den: NumPoly::from_exact(r.den()) }
    }

    pub fn eval(&self, p: &SurfacePoint) -> NumValue {
        let (n, ns) = self.num.eval_with_scale(p);
        let (d, ds) = self.den.eval_with_scale(p);
        let d_zero = d.norm() <= VANISH_TOL * ds.max(1.0);
        let n_zero = n.norm() <= VANISH_TOL * ns.max(1.0);
        match (n_zero, d_zero) {
            (true, true) => NumValue::Indeterminate,
            (false, true) => NumValue::Pole,
            _ => {
                let v = n / d;
                if v.is_finite() { NumValue::Finite(v) } else { NumValue::Pole }
            }
        }
    }

    pub fn swapped(&self) -> NumRational {
        NumRational { num: self.num.swapped(), den: self.den.swapped() }
    }
}

/// Outcome of applying a map to a point.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum MapValue {
    Point(SurfacePoint),
    /// A coordinate went to infinity; the flags say which.
    Infinite([bool; 2]),
    Indeterminate,
}

/// `(x, y) -> (R1(x, y), R2(x, y))` in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct NumMap {
    pub comps: [NumRational; 2],
}

impl NumMap {
    pub fn new(r1: NumRational, r2: NumRational) -> Self {
        NumMap { comps: [r1, r2] }
    }

    pub fn from_exact(r: &(RationalFunction, RationalFunction)) -> Self {
        NumMap::new(NumRational::from_exact(&r.0), NumRational::from_exact(&r.1))
    }

    pub fn apply(&self, p: &SurfacePoint) -> MapValue {
        let v = [self.comps[0].eval(p), self.comps[1].eval(p)];
        if v.contains(&NumValue::Indeterminate) {
            return MapValue::Indeterminate;
        }
        match v {
            [NumValue::Finite(a), NumValue::Finite(b)] => MapValue::Point([a, b]),
            _ => MapValue::Infinite([v[0] == NumValue::Pole, v[1] == NumValue::Pole]),
        }
    }

    /// `s o self o s` for the coordinate swap `s`.
    pub fn conjugated_by_swap(&self) -> NumMap {
        NumMap::new(self.comps[1].swapped(), self.comps[0].swapped())
    }
}

/// Largest chordal distance between corresponding coordinates.
pub fn distance(p: &SurfacePoint, q: &SurfacePoint) -> f64 {
    chordal(p[0], q[0]).max(chordal(p[1], q[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Scalar, VarSet};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn evaluation_and_singularities() {
        let v = VarSet::Affine;
        let x = Poly::var(v, 0);
        let y = Poly::var(v, 1);
        let r = RationalFunction::new(y.clone(), x.clone()).unwrap();
        let f = NumMap::from_exact(&(RationalFunction::from_poly(x.scale(&Scalar::from_i64(2))), r));
        assert_eq!(f.apply(&[c(1.0), c(3.0)]), MapValue::Point([c(2.0), c(3.0)]));
        assert_eq!(f.apply(&[c(0.0), c(3.0)]), MapValue::Infinite([false, true]));
        assert_eq!(f.apply(&[c(0.0), c(0.0)]), MapValue::Indeterminate);
        let g = f.conjugated_by_swap();
        assert_eq!(g.apply(&[c(3.0), c(1.0)]), MapValue::Point([c(3.0), c(2.0)]));
    }
}
