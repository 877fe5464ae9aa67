//! Birational self-maps of P^1 x P^1 in bihomogeneous coordinates `([x0 : x1], [y0 : y1])`.

use core::fmt;

use super::jonquieres::{detect_affine, FiberDetection};
use crate::algebra::{gcd_many, Monomial, Poly, RationalFunction, VarSet};
use crate::error::{Error, Result};

const X_BLOCK: [usize; 2] = [0, 1];
const Y_BLOCK: [usize; 2] = [2, 3];

/// `([X0 : X1], [Y0 : Y1])`; each pair is bihomogeneous of a common bidegree, coprime, and
/// scaled so that the leading coefficient of its first nonzero entry is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P1xP1Map {
    comps: [Poly; 4],
}

fn pair_bidegree(a: &Poly, b: &Poly) -> Result<(u32, u32)> {
    let mut out = None;
    for p in [a, b].into_iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous_in_block(&X_BLOCK) || !p.is_homogeneous_in_block(&Y_BLOCK) {
            return Err(Error::NotBihomogeneous);
        }
        let d = (p.degree_in_block(&X_BLOCK), p.degree_in_block(&Y_BLOCK));
        match out {
            None => out = Some(d),
            Some(e) if e != d => return Err(Error::NotBihomogeneous),
            _ => {}
        }
    }
    out.ok_or(Error::ZeroMap)
}

fn saturate_pair(a: Poly, b: Poly) -> Result<(Poly, Poly)> {
    pair_bidegree(&a, &b)?;
    let g = gcd_many([&a, &b])?;
    let (a, b) = if g.is_constant() {
        (a, b)
    } else {
        (a.div_exact(&g).expect("gcd divides"), b.div_exact(&g).expect("gcd divides"))
    };
    let lead = if a.is_zero() { &b } else { &a };
    let inv = lead.leading_coeff().expect("nonzero").inv()?;
    Ok((a.scale(&inv), b.scale(&inv)))
}

/// `p(x, y) -> x0^dx y0^dy p(x1/x0, y1/y0)`.
fn bihomogenize(p: &Poly, dx: u32, dy: u32) -> Poly {
    Poly::from_terms(
        VarSet::Bihomogeneous,
        p.terms().map(|(m, c)| {
            let (a, b) = (m.0[0], m.0[1]);
            (Monomial::from_slice(&[dx - a, a, dy - b, b]), c.clone())
        }),
    )
}

fn dehomogenize(p: &Poly) -> Poly {
    Poly::from_terms(
        VarSet::Affine,
        p.terms().map(|(m, c)| (Monomial::from_slice(&[m.0[1], m.0[3]]), c.clone())),
    )
}

impl P1xP1Map {
    /// Builds a map from bihomogeneous pairs, dividing out common factors of each pair.
    pub fn new(comps: [Poly; 4]) -> Result<Self> {
        if comps.iter().any(|p| p.vars() != VarSet::Bihomogeneous) {
            return Err(Error::VarMismatch);
        }
        let [x0, x1, y0, y1] = comps;
        let (x0, x1) = saturate_pair(x0, x1)?;
        let (y0, y1) = saturate_pair(y0, y1)?;
        Ok(P1xP1Map { comps: [x0, x1, y0, y1] })
    }

    pub fn identity() -> Self {
        P1xP1Map { comps: [0, 1, 2, 3].map(|i| Poly::var(VarSet::Bihomogeneous, i)) }
    }

    pub fn components(&self) -> &[Poly; 4] {
        &self.comps
    }

    /// Bidegrees of the two pairs.
    pub fn bidegrees(&self) -> [(u32, u32); 2] {
        [
            pair_bidegree(&self.comps[0], &self.comps[1]).expect("validated"),
            pair_bidegree(&self.comps[2], &self.comps[3]).expect("validated"),
        ]
    }

    /// Sum of all four bidegree entries; the identity has degree 2.
    pub fn degree(&self) -> u32 {
        let [(a, b), (c, d)] = self.bidegrees();
        a + b + c + d
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(Poly::num_terms).sum()
    }

    /// `self o g`.
    pub fn compose(&self, g: &P1xP1Map) -> P1xP1Map {
        let comps = self.comps.clone().map(|p| p.compose(&g.comps).expect("four variables"));
        P1xP1Map::new(comps).expect("composition of birational maps is dominant")
    }

    pub fn is_identity(&self) -> bool {
        *self == P1xP1Map::identity()
    }

    /// From affine formulas `(x, y) -> (R1, R2)` in the chart `x0 = y0 = 1`.
    pub fn from_affine(r1: &RationalFunction, r2: &RationalFunction) -> Result<Self> {
        if r1.vars() != VarSet::Affine || r2.vars() != VarSet::Affine {
            return Err(Error::VarMismatch);
        }
        let pair = |r: &RationalFunction| {
            let dx = r.num().degree_in(0).max(r.den().degree_in(0));
            let dy = r.num().degree_in(1).max(r.den().degree_in(1));
            (bihomogenize(r.den(), dx, dy), bihomogenize(r.num(), dx, dy))
        };
        let (x0, x1) = pair(r1);
        let (y0, y1) = pair(r2);
        P1xP1Map::new([x0, x1, y0, y1])
    }

    pub fn to_affine(&self) -> Result<(RationalFunction, RationalFunction)> {
        let [x0, x1, y0, y1] = self.comps.clone().map(|p| dehomogenize(&p));
        Ok((RationalFunction::new(x1, x0)?, RationalFunction::new(y1, y0)?))
    }

    /// Recognizes elements of the Jonquieres group.
    pub fn detect_jonquieres(&self) -> Result<FiberDetection> {
        let (r1, r2) = self.to_affine()?;
        detect_affine(&r1, &r2)
    }
}

impl fmt::Display for P1xP1Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.comps;
        write!(f, "[{a} : {b} ; {c} : {d}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    #[test]
    fn identity_has_degree_two() {
        assert_eq!(P1xP1Map::identity().degree(), 2);
    }

    #[test]
    fn affine_conversion_and_composition() {
        let v = VarSet::Affine;
        let x = RationalFunction::var(v, 0);
        let y = RationalFunction::var(v, 1);
        let f = P1xP1Map::from_affine(&x.scale(&Scalar::from_i64(2)), &(&x * &y)).unwrap();
        assert_eq!(f.bidegrees(), [(1, 0), (1, 1)]);
        let f2 = f.compose(&f);
        assert_eq!(f2.degree(), 4);
        let (r1, r2) = f2.to_affine().unwrap();
        assert_eq!(r1, x.scale(&Scalar::from_i64(4)));
        assert_eq!(r2, (&(&x * &x) * &y).scale(&Scalar::from_i64(2)));
        assert!(f.compose(&P1xP1Map::identity()) == f);
        assert!(!f.is_identity());
        assert!(matches!(f.detect_jonquieres().unwrap(), FiberDetection::Jonquieres(_)));
        let swap = P1xP1Map::from_affine(&y, &x).unwrap();
        assert_eq!(swap.detect_jonquieres().unwrap(), FiberDetection::NotFiberPreserving);
        assert!(swap.compose(&swap).is_identity());
    }
}
