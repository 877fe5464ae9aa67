//! The Jonquieres group: maps `(x, y) -> (eta(x), M(x) . y)` preserving the projection to x.

use core::fmt;

use num_traits::{One, Zero};

use super::cremona::CremonaMap;
use super::p1xp1::P1xP1Map;
use crate::algebra::{gcd_many, Monomial, Poly, RationalFunction, Scalar, VarSet};
use crate::error::{Error, Result};

/// A 2x2 matrix `[[a, b], [c, d]]` acting by `z -> (a z + b) / (c z + d)`.
pub type Mobius = [Scalar; 4];

/// `(eta, M)` with `eta` in PGL2(C) and `M` in PGL2(C(x)).
///
/// `eta` is scaled so that `c = 1`, or `d = 1` when `c = 0`. The fiber entries `A, B, C, D` are
/// coprime polynomials in x, scaled so that `C` is monic, or `D` when `C = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JonquieresElement {
    base: Mobius,
    fiber: [Poly; 4],
}

fn det(m: &Mobius) -> Scalar {
    &(&m[0] * &m[3]) - &(&m[1] * &m[2])
}

fn normalize_base(m: Mobius) -> Result<Mobius> {
    if det(&m).is_zero() {
        return Err(Error::Singular);
    }
    let pivot = if m[2].is_zero() { &m[3] } else { &m[2] };
    let inv = pivot.inv()?;
    Ok(m.map(|c| &c * &inv))
}

fn mobius_mul(f: &Mobius, g: &Mobius) -> Mobius {
    [
        &(&f[0] * &g[0]) + &(&f[1] * &g[2]),
        &(&f[0] * &g[1]) + &(&f[1] * &g[3]),
        &(&f[2] * &g[0]) + &(&f[3] * &g[2]),
        &(&f[2] * &g[1]) + &(&f[3] * &g[3]),
    ]
}

fn mobius_adj(m: &Mobius) -> Mobius {
    [m[3].clone(), -&m[1], -&m[2], m[0].clone()]
}

fn fiber_mul(f: &[Poly; 4], g: &[Poly; 4]) -> [Poly; 4] {
    [
        &(&f[0] * &g[0]) + &(&f[1] * &g[2]),
        &(&f[0] * &g[1]) + &(&f[1] * &g[3]),
        &(&f[2] * &g[0]) + &(&f[3] * &g[2]),
        &(&f[2] * &g[1]) + &(&f[3] * &g[3]),
    ]
}

fn normalize_fiber(m: [Poly; 4]) -> Result<[Poly; 4]> {
    if m.iter().any(|p| p.vars() != VarSet::X) {
        return Err(Error::VarMismatch);
    }
    let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let g = gcd_many(m.iter())?;
    let m = if g.is_constant() { m } else { m.map(|p| p.div_exact(&g).expect("gcd divides")) };
    let pivot = if m[2].is_zero() { &m[3] } else { &m[2] };
    let inv = pivot.leading_coeff().expect("nonzero pivot").inv()?;
    Ok(m.map(|p| p.scale(&inv)))
}

/// `sum_k p_k (a x + b)^k (c x + d)^(n - k)`: `p(eta(x))` with the denominator `(c x + d)^n` cleared.
pub fn mobius_substitute(p: &Poly, eta: &Mobius, n: u32) -> Poly {
    let x = Poly::var(VarSet::X, 0);
    let num = &x.scale(&eta[0]) + &Poly::constant(VarSet::X, eta[1].clone());
    let den = &x.scale(&eta[2]) + &Poly::constant(VarSet::X, eta[3].clone());
    let mut out = Poly::zero(VarSet::X);
    for (m, c) in p.terms() {
        let k = m.0[0];
        let t = &num.pow(k) * &den.pow(n - k);
        out = &out + &t.scale(c);
    }
    out
}

/// The affine polynomial `p(x)` as a polynomial of the univariate ring.
pub fn affine_to_x(p: &Poly) -> Result<Poly> {
    if p.vars() != VarSet::Affine || p.degree_in(1) > 0 {
        return Err(Error::VarMismatch);
    }
    Ok(Poly::from_terms(VarSet::X, p.terms().map(|(m, c)| (Monomial::var(0, m.0[0]), c.clone()))))
}

pub fn x_to_affine(p: &Poly) -> Poly {
    p.embed(VarSet::Affine, &[0])
}

impl JonquieresElement {
    /// Builds an element from a base matrix and a fiber matrix of rational functions in x.
    pub fn new(base: Mobius, fiber: [RationalFunction; 4]) -> Result<Self> {
        let l = fiber.iter().fold(Poly::one(VarSet::X), |acc, r| {
            let g = crate::algebra::gcd(&acc, r.den()).expect("nonzero denominators");
            (&acc * r.den()).div_exact(&g).expect("gcd divides")
        });
        let polys = fiber.map(|r| (r.num() * &l).div_exact(r.den()).expect("denominator divides lcm"));
        Self::from_polys(base, polys)
    }

    pub fn from_polys(base: Mobius, fiber: [Poly; 4]) -> Result<Self> {
        Ok(JonquieresElement { base: normalize_base(base)?, fiber: normalize_fiber(fiber)? })
    }

    pub fn identity() -> Self {
        let one = Scalar::one;
        let zero = Scalar::zero;
        JonquieresElement::from_polys(
            [one(), zero(), zero(), one()],
            [Poly::one(VarSet::X), Poly::zero(VarSet::X), Poly::zero(VarSet::X), Poly::one(VarSet::X)],
        )
        .expect("identity is invertible")
    }

    /// `(x, y) -> (x, R(x) y)`.
    pub fn fiber_scaling(r: &RationalFunction) -> Result<Self> {
        let x = VarSet::X;
        JonquieresElement::new(
            [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            [r.clone(), RationalFunction::zero(x), RationalFunction::zero(x), RationalFunction::one(x)],
        )
    }

    pub fn base(&self) -> &Mobius {
        &self.base
    }

    pub fn fiber(&self) -> &[Poly; 4] {
        &self.fiber
    }

    /// Maximal x-degree of the normalized fiber entries.
    pub fn fiber_degree(&self) -> u32 {
        self.fiber.iter().map(|p| p.degree_in(0)).max().unwrap_or(0)
    }

    /// `self o g`.
    pub fn compose(&self, g: &JonquieresElement) -> JonquieresElement {
        let base = mobius_mul(&self.base, &g.base);
        let n = self.fiber_degree();
        let shifted = self.fiber.clone().map(|p| mobius_substitute(&p, &g.base, n));
        JonquieresElement::from_polys(base, fiber_mul(&shifted, &g.fiber))
            .expect("product of invertible elements is invertible")
    }

    pub fn inverse(&self) -> JonquieresElement {
        let inv_base = mobius_adj(&self.base);
        let n = self.fiber_degree();
        let shifted = self.fiber.clone().map(|p| mobius_substitute(&p, &inv_base, n));
        let adj = [shifted[3].clone(), -&shifted[1], -&shifted[2], shifted[0].clone()];
        JonquieresElement::from_polys(inv_base, adj).expect("inverse of invertible element")
    }

    pub fn pow(&self, n: i64) -> JonquieresElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(JonquieresElement::identity(), |acc, _| acc.compose(&base))
    }

    pub fn is_identity(&self) -> bool {
        *self == JonquieresElement::identity()
    }

    /// The affine formulas `(eta(x), (A y + B) / (C y + D))`.
    pub fn affine_images(&self) -> (RationalFunction, RationalFunction) {
        let v = VarSet::Affine;
        let x = Poly::var(v, 0);
        let y = Poly::var(v, 1);
        let c = |s: &Scalar| Poly::constant(v, s.clone());
        let r1 = RationalFunction::new(
            &x.scale(&self.base[0]) + &c(&self.base[1]),
            &x.scale(&self.base[2]) + &c(&self.base[3]),
        )
        .expect("invertible base");
        let [a, b, cc, d] = self.fiber.clone().map(|p| x_to_affine(&p));
        let r2 = RationalFunction::new(&(&a * &y) + &b, &(&cc * &y) + &d).expect("invertible fiber");
        (r1, r2)
    }

    pub fn to_cremona(&self) -> CremonaMap {
        let (r1, r2) = self.affine_images();
        CremonaMap::from_affine(&r1, &r2).expect("Jonquieres maps are birational")
    }

    pub fn to_p1xp1(&self) -> P1xP1Map {
        let (r1, r2) = self.affine_images();
        P1xP1Map::from_affine(&r1, &r2).expect("Jonquieres maps are birational")
    }

    /// Recognizes `(x, y) -> (R1, R2)` as a Jonquieres element.
    pub fn from_affine(r1: &RationalFunction, r2: &RationalFunction) -> Result<Self> {
        match detect_affine(r1, r2)? {
            FiberDetection::Jonquieres(j) => Ok(j),
            FiberDetection::NotFiberPreserving => {
                Err(Error::NotJonquieres("first coordinate depends on y".into()))
            }
        }
    }
}

/// Outcome of testing whether a map preserves the projection `(x, y) -> x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberDetection {
    Jonquieres(JonquieresElement),
    NotFiberPreserving,
}

/// Decides fiber preservation for an affine map. A fiber-preserving map whose base is not a
/// Mobius transformation, or whose fiber action is not of degree one in y, is an error.
pub fn detect_affine(r1: &RationalFunction, r2: &RationalFunction) -> Result<FiberDetection> {
    if r1.num().degree_in(1) > 0 || r1.den().degree_in(1) > 0 {
        return Ok(FiberDetection::NotFiberPreserving);
    }
    let (n1, d1) = (affine_to_x(r1.num())?, affine_to_x(r1.den())?);
    if n1.total_degree() > 1 || d1.total_degree() > 1 {
        return Err(Error::NotJonquieres("base map is not a Mobius transformation".into()));
    }
    let coef = |p: &Poly, k| p.coeff(&Monomial::var(0, k));
    let base = [coef(&n1, 1), coef(&n1, 0), coef(&d1, 1), coef(&d1, 0)];
    if det(&base).is_zero() {
        return Err(Error::NotJonquieres("base map is constant".into()));
    }
    if r2.num().degree_in(1) > 1 || r2.den().degree_in(1) > 1 {
        return Err(Error::NotJonquieres("fiber map has degree above one in y".into()));
    }
    let split = |p: &Poly| -> Result<(Poly, Poly)> {
        let cs = p.coefficients_in(1);
        let get = |k| cs.get(&k).map(affine_to_x).unwrap_or(Ok(Poly::zero(VarSet::X)));
        Ok((get(1)?, get(0)?))
    };
    let (a, b) = split(r2.num())?;
    let (c, d) = split(r2.den())?;
    match JonquieresElement::from_polys(base, [a, b, c, d]) {
        Ok(j) => Ok(FiberDetection::Jonquieres(j)),
        Err(Error::Singular) => Err(Error::NotJonquieres("fiber map has degree zero in y".into())),
        Err(e) => Err(e),
    }
}

impl fmt::Display for JonquieresElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r1, r2) = self.affine_images();
        write!(f, "(x, y) -> ({r1}, {r2})")
    }
}
