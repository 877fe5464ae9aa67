//! Sparse multivariate polynomials over Q(i) in lexicographic order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Maximum number of variables of any supported ring.
pub const MAX_VARS: usize = 4;

/// The ordered variable list of a polynomial ring. Earlier variables are larger in lex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSet {
    /// `x0, x1, x2`: homogeneous coordinates on P^2.
    P2,
    /// `x, y`: affine chart.
    Affine,
    /// `x0, x1, y0, y1`: bihomogeneous coordinates on P^1 x P^1.
    Bihomogeneous,
    /// `x`: univariate, used for fiber coefficients.
    X,
}

impl VarSet {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            VarSet::P2 => &["x0", "x1", "x2"],
            VarSet::Affine => &["x", "y"],
            VarSet::Bihomogeneous => &["x0", "x1", "y0", "y1"],
            VarSet::X => &["x"],
        }
    }

    pub fn arity(self) -> usize {
        self.names().len()
    }
}

/// Exponent vector; slots past the ring arity stay zero.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_slice(e: &[u32]) -> Self {
        let mut m = [0; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Monomial(m)
    }

    pub fn var(idx: usize, e: u32) -> Self {
        let mut m = [0; MAX_VARS];
        m[idx] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn div_into(&self, o: &Monomial) -> Monomial {
        let mut m = o.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn meet(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = (*a).min(b);
        }
        Monomial(m)
    }
}

/// A polynomial with no stored zero coefficients. Iteration is in increasing lex order,
/// so the leading term is the last one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: VarSet) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: Scalar) -> Self {
        Poly::monomial(vars, Monomial::ONE, c)
    }

    pub fn one(vars: VarSet) -> Self {
        Poly::constant(vars, Scalar::one())
    }

    pub fn monomial(vars: VarSet, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { vars, terms }
    }

    /// The `idx`-th variable of the ring.
    pub fn var(vars: VarSet, idx: usize) -> Self {
        assert!(idx < vars.arity(), "variable index out of range");
        Poly::monomial(vars, Monomial::var(idx, 1), Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(vars: VarSet, it: I) -> Self {
        let mut p = Poly::zero(vars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Degree in a block of variables, e.g. `(x0, x1)` of the bihomogeneous ring.
    pub fn degree_in_block(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.0[v]).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_in_block(&[0, 1, 2, 3][..self.arity()])
    }

    pub fn is_homogeneous_in_block(&self, vars: &[usize]) -> bool {
        let mut it = self.terms.keys().map(|m| vars.iter().map(|&v| m.0[v]).sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Scaled so that the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Monomial::ONE,
        };
        it.fold(first, |acc, m| acc.meet(m))
    }

    /// Division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, a)| (m.div_into(k), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        if e == 0 {
            return Poly::one(self.vars);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mut exps = m.0;
            for x in exps.iter_mut() {
                *x *= e;
            }
            return Poly::monomial(self.vars, Monomial(exps), c.pow(e));
        }
        let mut acc = Poly::one(self.vars);
        let mut b = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc_inv) = (*dm, dc.inv().ok()?);
        let mut q = Poly::zero(self.vars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let tm = dm.div_into(rm);
            let tc = rc * &dc_inv;
            for (m, c) in d.terms.iter() {
                r.add_term(m.mul(&tm), &-(c * &tc));
            }
            q.add_term(tm, &tc);
        }
        Some(q)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate().take(self.arity()) {
                if e > 0 {
                    t = &t * &point[v].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (v, &e) in m.0.iter().enumerate().take(self.arity()) {
                if e > 0 {
                    t *= point[v].powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut p = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut n = *m;
                n.0[var] -= 1;
                p.add_term(n, &(c * &Scalar::from_i64(e as i64)));
            }
        }
        p
    }

    /// Substitutes `args[v]` for variable `v`; the result lives in the ring of the arguments.
    pub fn compose(&self, args: &[Poly]) -> Result<Poly> {
        if args.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), found: args.len() });
        }
        let target = args.first().map(|a| a.vars).unwrap_or(self.vars);
        if args.iter().any(|a| a.vars != target) {
            return Err(Error::VarMismatch);
        }
        let mut powers: Vec<Vec<Poly>> = args.iter().map(|a| vec![Poly::one(target), a.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for v in 0..self.arity() {
                let e = m.0[v] as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = &powers[v][powers[v].len() - 1] * &args[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-embeds into another ring, sending variable `v` to `mapping[v]`.
    pub fn embed(&self, target: VarSet, mapping: &[usize]) -> Poly {
        let mut p = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut n = Monomial::ONE;
            for (v, &t) in mapping.iter().enumerate() {
                n.0[t] += m.0[v];
            }
            p.add_term(n, c);
        }
        p
    }

    /// Coefficients with respect to one variable, as polynomials free of it.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut n = *m;
            let e = n.0[var];
            n.0[var] = 0;
            out.entry(e).or_insert_with(|| Poly::zero(self.vars)).add_term(n, c);
        }
        out
    }

    /// Lowest common multiple of all coefficient denominators.
    pub fn denom_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(self.vars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "variable set mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "variable set mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "variable set mismatch");
        let mut out = Poly::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_monomial(vars: VarSet, m: &Monomial) -> String {
    let mut s = String::new();
    for (v, name) in vars.names().iter().enumerate() {
        let e = m.0[v];
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(name);
        if e > 1 {
            s.push('^');
            s.push_str(&alloc::format!("{e}"));
        }
    }
    s
}

/// Terms in decreasing lex order, e.g. `2*x0^2*x1 - 1/3*x2^3`. Coefficients with both real
/// and imaginary parts are parenthesized.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(self.vars, m);
            let negative = c.is_real() && c.re() < &num_rational::BigRational::zero()
                || c.re().is_zero() && c.im() < &num_rational::BigRational::zero();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let coeff = if mag.is_real() || mag.re().is_zero() {
                alloc::format!("{mag}")
            } else {
                alloc::format!("({mag})")
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x(i: usize) -> Poly {
        Poly::var(VarSet::P2, i)
    }

    #[test]
    fn display_is_decreasing_lex() {
        let p = &(&x(0).pow(2) * &x(1)).scale(&Scalar::from_i64(2)) - &x(2).pow(3).scale(&Scalar::ratio(1, 3));
        assert_eq!(p.to_string(), "2*x0^2*x1 - 1/3*x2^3");
        let q = &x(1) + &Poly::constant(VarSet::P2, Scalar::gaussian(1, 2));
        assert_eq!(q.to_string(), "x1 + (1+2*i)");
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&x(1) + &x(2))).is_none());
    }

    #[test]
    fn compose_substitutes() {
        let p = &x(0) * &x(1);
        let args = [&x(0) + &x(1), x(1), x(2)];
        assert_eq!(p.compose(&args).unwrap(), &(&x(0) * &x(1)) + &x(1).pow(2));
    }

    #[test]
    fn leading_term_is_lex_max() {
        let p = &x(1).pow(5) + &x(0);
        assert_eq!(p.leading_term().unwrap().0, &Monomial::var(0, 1));
        assert_eq!(p.to_string(), "x0 + x1^5");
    }
}
