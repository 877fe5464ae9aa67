//! Reduced rational functions over Q(i).

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Poly, VarSet};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and monic `den`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.vars() != den.vars() {
            return Err(Error::VarMismatch);
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero(num.vars()));
        }
        let g = gcd(&num, &den)?;
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().expect("nonzero").inv()?;
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        let vars = p.vars();
        RationalFunction { num: p, den: Poly::one(vars) }
    }

    pub fn constant(vars: VarSet, c: Scalar) -> Self {
        RationalFunction::from_poly(Poly::constant(vars, c))
    }

    pub fn zero(vars: VarSet) -> Self {
        RationalFunction::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: VarSet) -> Self {
        RationalFunction::from_poly(Poly::one(vars))
    }

    pub fn var(vars: VarSet, idx: usize) -> Self {
        RationalFunction::from_poly(Poly::var(vars, idx))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact evaluation; fails at poles.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(&self.num.eval(point) / &d)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let n = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        RationalFunction::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Substitutes rational functions for the variables.
    pub fn compose(&self, args: &[RationalFunction]) -> Result<Self> {
        substitute_poly(&self.num, args)?.checked_div(&substitute_poly(&self.den, args)?)
    }
}

/// Substitutes rational functions into a polynomial, clearing a common denominator per term.
pub fn substitute_poly(p: &Poly, args: &[RationalFunction]) -> Result<RationalFunction> {
    if args.len() != p.arity() {
        return Err(Error::Arity { expected: p.arity(), found: args.len() });
    }
    let target = args.first().map(|a| a.vars()).unwrap_or(p.vars());
    // p(n_1/d_1, ...) = P(n, d) / prod d_v^{deg_v p}
    let degs: alloc::vec::Vec<u32> = (0..p.arity()).map(|v| p.degree_in(v)).collect();
    let mut acc = Poly::zero(target);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(target, c.clone());
        for v in 0..p.arity() {
            let e = m.0[v];
            if e > 0 {
                t = &t * &args[v].num.pow(e);
            }
            if degs[v] > e {
                t = &t * &args[v].den.pow(degs[v] - e);
            }
        }
        acc = &acc + &t;
    }
    let mut den = Poly::one(target);
    for v in 0..p.arity() {
        den = &den * &args[v].den.pow(degs[v]);
    }
    RationalFunction::new(acc, den)
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

/// Panics on division by zero; see [`RationalFunction::checked_div`].
impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("rational function division by zero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}
