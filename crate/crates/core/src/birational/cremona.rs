//! Birational self-maps of P^2 as saturated triples of homogeneous forms.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{gcd_many, Monomial, Poly, RationalFunction, Scalar, VarSet};
use crate::error::{Error, Result};

/// A point of P^2 scaled so that its first nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint([Scalar; 3]);

impl ProjPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        let k = coords.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        let inv = coords[k].inv()?;
        Ok(ProjPoint(coords.map(|c| &c * &inv)))
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.0[0], self.0[1], self.0[2])
    }
}

/// Result of evaluating a map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Point(ProjPoint),
    /// All components vanish: the point is a base point.
    Indeterminate,
}

/// `[F0 : F1 : F2]` with `F_i` homogeneous of a common degree and coprime. The scalar is fixed by
/// making the leading coefficient of the first nonzero component one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CremonaMap {
    comps: [Poly; 3],
}

fn check_forms(comps: &[Poly; 3]) -> Result<u32> {
    if comps.iter().any(|p| p.vars() != VarSet::P2) {
        return Err(Error::VarMismatch);
    }
    if comps.iter().all(Poly::is_zero) {
        return Err(Error::ZeroMap);
    }
    let mut degree = None;
    for p in comps.iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        match degree {
            None => degree = Some(p.total_degree()),
            Some(d) if d != p.total_degree() => return Err(Error::NotHomogeneous),
            _ => {}
        }
    }
    Ok(degree.unwrap_or(0))
}

fn normalize_scalar(comps: [Poly; 3]) -> [Poly; 3] {
    let lc = comps
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading_coeff())
        .expect("some component is nonzero")
        .inv()
        .expect("nonzero");
    comps.map(|p| p.scale(&lc))
}

impl CremonaMap {
    /// Builds a map from coprime homogeneous forms; rejects unsaturated triples.
    pub fn new(comps: [Poly; 3]) -> Result<Self> {
        check_forms(&comps)?;
        if !gcd_many(comps.iter())?.is_constant() {
            return Err(Error::NotSaturated);
        }
        Ok(CremonaMap { comps: normalize_scalar(comps) })
    }

    /// Builds a map after dividing out the common factor of the forms.
    pub fn saturate(comps: [Poly; 3]) -> Result<Self> {
        check_forms(&comps)?;
        let g = gcd_many(comps.iter())?;
        let comps = if g.is_constant() {
            comps
        } else {
            comps.map(|p| p.div_exact(&g).expect("gcd divides"))
        };
        Ok(CremonaMap { comps: normalize_scalar(comps) })
    }

    pub fn identity() -> Self {
        CremonaMap { comps: [0, 1, 2].map(|i| Poly::var(VarSet::P2, i)) }
    }

    /// The standard quadratic involution `[x1 x2 : x0 x2 : x0 x1]`.
    pub fn standard_quadratic_involution() -> Self {
        let x = |i| Poly::var(VarSet::P2, i);
        CremonaMap { comps: [&x(1) * &x(2), &x(0) * &x(2), &x(0) * &x(1)] }
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// `self o g`.
    pub fn compose(&self, g: &CremonaMap) -> CremonaMap {
        let comps = self
            .comps
            .clone()
            .map(|p| p.compose(&g.comps).expect("ternary forms"));
        CremonaMap::saturate(comps).expect("composition of dominant maps is dominant")
    }

    pub fn is_identity(&self) -> bool {
        *self == CremonaMap::identity()
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Evaluation {
        let v = self.comps.clone().map(|f| f.eval(p.coords()));
        match ProjPoint::new(v) {
            Ok(q) => Evaluation::Point(q),
            Err(_) => Evaluation::Indeterminate,
        }
    }

    /// Homogenizes the affine map `(x, y) -> (R1, R2)` in the chart `x0 = 1`.
    pub fn from_affine(r1: &RationalFunction, r2: &RationalFunction) -> Result<Self> {
        if r1.vars() != VarSet::Affine || r2.vars() != VarSet::Affine {
            return Err(Error::VarMismatch);
        }
        let (p1, q1, p2, q2) = (r1.num(), r1.den(), r2.num(), r2.den());
        let affine = [q1 * q2, p1 * q2, p2 * q1];
        let d = affine.iter().map(Poly::total_degree).max().unwrap_or(0);
        let comps = affine.map(|p| homogenize(&p, d));
        CremonaMap::saturate(comps)
    }

    /// Dehomogenizes at `x0 = 1`: the map in the affine chart.
    pub fn to_affine(&self) -> Result<(RationalFunction, RationalFunction)> {
        let [f0, f1, f2] = self.comps.clone().map(|p| dehomogenize(&p));
        if f0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok((RationalFunction::new(f1, f0.clone())?, RationalFunction::new(f2, f0)?))
    }
}

/// `p(x, y) -> x0^d p(x1/x0, x2/x0)`.
pub fn homogenize(p: &Poly, d: u32) -> Poly {
    Poly::from_terms(
        VarSet::P2,
        p.terms().map(|(m, c)| {
            let (a, b) = (m.0[0], m.0[1]);
            (Monomial::from_slice(&[d - a - b, a, b]), c.clone())
        }),
    )
}

/// `F(x0, x1, x2) -> F(1, x, y)`.
pub fn dehomogenize(p: &Poly) -> Poly {
    Poly::from_terms(
        VarSet::Affine,
        p.terms().map(|(m, c)| (Monomial::from_slice(&[m.0[1], m.0[2]]), c.clone())),
    )
}

/// Whether `g` is a two-sided inverse of `f`.
pub fn check_inverse(f: &CremonaMap, g: &CremonaMap) -> bool {
    f.compose(g).is_identity() && g.compose(f).is_identity()
}

impl fmt::Display for CremonaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.comps.iter().map(|p| alloc::format!("{p}")).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// A point of P^2 from an affine point, `[1 : x : y]`.
pub fn affine_point(x: Scalar, y: Scalar) -> ProjPoint {
    ProjPoint::new([Scalar::one(), x, y]).expect("first coordinate is one")
}
