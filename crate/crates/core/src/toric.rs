//! Monomial maps `(x, y) -> (alpha x^a y^b, beta x^c y^d)` with `[[a, b], [c, d]]` in GL2(Z).

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Float, One, Zero};

use crate::algebra::{Monomial, Poly, RationalFunction, Scalar, VarSet};
use crate::birational::P1xP1Map;
use crate::dynamics::{Budget, DegreeGrowth, DegreeSequence, GrowthClass, Model};
use crate::error::{Error, Result};

/// A 2x2 integer matrix, row major.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix(pub [[i64; 2]; 2]);

fn ov<T>(x: Option<T>) -> Result<T> {
    x.ok_or(Error::Overflow("integer matrix arithmetic"))
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix([[1, 0], [0, 1]]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix([[a, b], [c, d]])
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn checked_mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        let (m, n) = (&self.0, &o.0);
        let e = |i: usize, j: usize| -> Result<i64> {
            ov(m[i][0].checked_mul(n[0][j]).and_then(|x| x.checked_add(m[i][1].checked_mul(n[1][j])?)))
        };
        Ok(IntMatrix([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]]))
    }

    pub fn checked_pow(&self, n: u32) -> Result<IntMatrix> {
        let mut out = IntMatrix::IDENTITY;
        for _ in 0..n {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let det = self.det();
        if det.abs() != 1 {
            return Err(Error::Constraint(format!("det = {det} is not a unit")));
        }
        let [[a, b], [c, d]] = self.0;
        Ok(IntMatrix([[d * det, -b * det], [-c * det, a * det]]))
    }

    pub fn apply(&self, v: ValuationVector) -> Result<ValuationVector> {
        let [[a, b], [c, d]] = self.0;
        let [x, y] = v.0;
        let row = |p: i64, q: i64| ov(p.checked_mul(x).and_then(|s| s.checked_add(q.checked_mul(y)?)));
        Ok(ValuationVector([row(a, b)?, row(c, d)?]))
    }

    /// Sum of the absolute values of the entries.
    pub fn l1_norm(&self) -> Result<u64> {
        self.0.iter().flatten().try_fold(0u64, |acc, &e| ov(acc.checked_add(e.unsigned_abs())))
    }

    /// The order of a finite-order element of GL2(Z), which is 1, 2, 3, 4 or 6.
    pub fn finite_order(&self) -> Option<u32> {
        let mut p = *self;
        for k in 1..=6 {
            if p == IntMatrix::IDENTITY {
                return Some(k);
            }
            p = p.checked_mul(self).ok()?;
        }
        None
    }

    pub fn spectral_radius(&self) -> SpectralRadius {
        let (t, det) = (self.trace(), self.det());
        SpectralRadius { trace: t.unsigned_abs(), disc: t * t - 4 * det }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// `(|tr| + sqrt(disc)) / 2` when `disc > 0`, otherwise the eigenvalues lie on the unit circle
/// and the radius is one.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SpectralRadius {
    pub trace: u64,
    pub disc: i64,
}

impl SpectralRadius {
    /// Real distinct eigenvalues.
    pub fn is_real_split(&self) -> bool {
        self.disc > 0
    }

    pub fn value(&self) -> f64 {
        if self.disc > 0 {
            (self.trace as f64 + Float::sqrt(self.disc as f64)) / 2.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for SpectralRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disc > 0 {
            write!(f, "({}+sqrt({}))/2", self.trace, self.disc)
        } else {
            f.write_str("1")
        }
    }
}

/// Orders of vanishing `(v(x), v(y))` of a divisorial valuation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuationVector(pub [i64; 2]);

impl ValuationVector {
    pub fn max_norm(&self) -> u64 {
        self.0[0].unsigned_abs().max(self.0[1].unsigned_abs())
    }
}

/// `(x, y) -> (alpha x^a y^b, beta x^c y^d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    alpha: Scalar,
    beta: Scalar,
    matrix: IntMatrix,
}

/// `s1^e1 s2^e2`.
fn scalar_monomial(s1: &Scalar, e1: i64, s2: &Scalar, e2: i64) -> Scalar {
    let p = s1.powi(e1).expect("nonzero scalar");
    &p * &s2.powi(e2).expect("nonzero scalar")
}

/// `c x^e1 y^e2` as a rational function in the affine chart.
fn laurent(c: &Scalar, e1: i64, e2: i64) -> RationalFunction {
    let split = |e: i64| if e >= 0 { (e as u32, 0) } else { (0, e.unsigned_abs() as u32) };
    let (n1, d1) = split(e1);
    let (n2, d2) = split(e2);
    let num = Poly::monomial(VarSet::Affine, Monomial::from_slice(&[n1, n2]), c.clone());
    let den = Poly::monomial(VarSet::Affine, Monomial::from_slice(&[d1, d2]), Scalar::one());
    RationalFunction::new(num, den).expect("monomial denominator")
}

/// `[x0^|a| .. : c x1^|a| ..]` with the roles of `x0`, `x1` swapped when the exponent is negative.
fn bihomogeneous_pair(c: &Scalar, e1: i64, e2: i64) -> (Poly, Poly) {
    let mut den = [0u32; 4];
    let mut num = [0u32; 4];
    for (k, e) in [e1, e2].into_iter().enumerate() {
        let (lo, hi) = (2 * k, 2 * k + 1);
        let a = e.unsigned_abs() as u32;
        if e >= 0 {
            den[lo] = a;
            num[hi] = a;
        } else {
            den[hi] = a;
            num[lo] = a;
        }
    }
    let v = VarSet::Bihomogeneous;
    (
        Poly::monomial(v, Monomial::from_slice(&den), Scalar::one()),
        Poly::monomial(v, Monomial::from_slice(&num), c.clone()),
    )
}

impl MonomialMap {
    pub fn new(alpha: Scalar, beta: Scalar, matrix: IntMatrix) -> Result<Self> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::Constraint("alpha and beta must be nonzero".into()));
        }
        if matrix.det().abs() != 1 {
            return Err(Error::Constraint(format!("det A = {} is not +-1", matrix.det())));
        }
        Ok(MonomialMap { alpha, beta, matrix })
    }

    /// The pure monomial map `alpha = beta = 1`.
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        MonomialMap::new(Scalar::one(), Scalar::one(), matrix)
    }

    pub fn identity() -> Self {
        MonomialMap { alpha: Scalar::one(), beta: Scalar::one(), matrix: IntMatrix::IDENTITY }
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self o g`: `A_f A_g`, with the scalars of `g` raised to the exponents of `f`.
    pub fn compose(&self, g: &MonomialMap) -> Result<MonomialMap> {
        let matrix = self.matrix.checked_mul(&g.matrix)?;
        let [[a, b], [c, d]] = self.matrix.0;
        let alpha = &self.alpha * &scalar_monomial(&g.alpha, a, &g.beta, b);
        let beta = &self.beta * &scalar_monomial(&g.alpha, c, &g.beta, d);
        Ok(MonomialMap { alpha, beta, matrix })
    }

    pub fn inverse(&self) -> MonomialMap {
        let matrix = self.matrix.inverse().expect("unimodular by construction");
        let [[a, b], [c, d]] = matrix.0;
        let ia = self.alpha.inv().expect("nonzero");
        let ib = self.beta.inv().expect("nonzero");
        MonomialMap {
            alpha: scalar_monomial(&ia, a, &ib, b),
            beta: scalar_monomial(&ia, c, &ib, d),
            matrix,
        }
    }

    pub fn pow(&self, n: u32) -> Result<MonomialMap> {
        (0..n).try_fold(MonomialMap::identity(), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == MonomialMap::identity()
    }

    /// Affine formulas with negative exponents moved to denominators.
    pub fn affine_images(&self) -> (RationalFunction, RationalFunction) {
        let [[a, b], [c, d]] = self.matrix.0;
        (laurent(&self.alpha, a, b), laurent(&self.beta, c, d))
    }

    /// The induced birational map of P^1 x P^1.
    pub fn to_p1xp1(&self) -> P1xP1Map {
        let [[a, b], [c, d]] = self.matrix.0;
        let (x0, x1) = bihomogeneous_pair(&self.alpha, a, b);
        let (y0, y1) = bihomogeneous_pair(&self.beta, c, d);
        P1xP1Map::new([x0, x1, y0, y1]).expect("coprime monomial pairs")
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r1, r2) = self.affine_images();
        write!(f, "(x, y) -> ({r1}, {r2})")
    }
}

/// Dynamical type read off the matrix: loxodromic for a hyperbolic matrix, a Jonquieres twist
/// for `+-` a nontrivial unipotent, elliptic for finite order.
pub fn monomial_type(f: &MonomialMap) -> GrowthClass {
    let a = f.matrix;
    let r = a.spectral_radius();
    if r.is_real_split() && r.value() > 1.0 {
        return GrowthClass::Loxodromic { lambda_estimate: r.value() };
    }
    if a.finite_order().is_some() {
        return GrowthClass::Elliptic;
    }
    // What remains has trace +-2 and determinant 1, and is not +-identity.
    GrowthClass::JonquieresTwist
}

/// `[A v, A^2 v, ..., A^n v]`.
pub fn valuation_orbit(a: &IntMatrix, v: ValuationVector, n: usize) -> Result<Vec<ValuationVector>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = v;
    for _ in 0..n {
        cur = a.apply(cur)?;
        out.push(cur);
    }
    Ok(out)
}

/// The scalar `s` with `f^*(dx ^ dy / (x y)) = s dx ^ dy / (x y)`, computed from the Jacobian of
/// the affine formulas and checked against `det A`.
pub fn logform_pullback_scalar(f: &MonomialMap) -> Result<i64> {
    let (u, v) = f.affine_images();
    let jac = &(&u.derivative(0) * &v.derivative(1)) - &(&u.derivative(1) * &v.derivative(0));
    let xy = RationalFunction::from_poly(Poly::monomial(
        VarSet::Affine,
        Monomial::from_slice(&[1, 1]),
        Scalar::one(),
    ));
    let ratio = (&jac * &xy).checked_div(&(&u * &v))?;
    let det = f.matrix.det();
    match ratio.as_constant() {
        Some(s) if s == Scalar::from_i64(det) => Ok(det),
        _ => Err(Error::InvariantViolation(format!(
            "log-form pullback of {f} is {ratio}, expected {det}"
        ))),
    }
}

impl DegreeGrowth for MonomialMap {
    /// Degrees of the iterates on P^1 x P^1, which equal the sum of `|entries|` of `A^n`.
    fn degree_sequence_with(&self, n: usize, _budget: Budget) -> DegreeSequence {
        let mut degrees = Vec::with_capacity(n);
        let mut p = self.matrix;
        let mut truncated = false;
        for k in 0..n {
            if k > 0 {
                match p.checked_mul(&self.matrix) {
                    Ok(q) => p = q,
                    Err(_) => {
                        truncated = true;
                        break;
                    }
                }
            }
            match p.l1_norm() {
                Ok(d) => degrees.push(d),
                Err(_) => {
                    truncated = true;
                    break;
                }
            }
        }
        DegreeSequence { degrees, model: Model::P1xP1, fiber_degrees: None, truncated }
    }
}
