//! Multivariate gcd by recursive content / primitive-part pseudo-remainder sequences.

use alloc::vec::Vec;

use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

/// Monic gcd of `p` and `q` (leading coefficient one in lex order).
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.vars() != q.vars() {
        return Err(Error::VarMismatch);
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(Error::GcdOfZeroPair),
        (true, false) => Ok(q.monic()),
        (false, true) => Ok(p.monic()),
        (false, false) => Ok(gcd_nonzero(p, q).monic()),
    }
}

/// Monic gcd of a nonempty list, skipping zeros.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Result<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.monic(),
            Some(g) if g.is_constant() => return Ok(g),
            Some(g) => gcd_nonzero(&g, p).monic(),
        });
    }
    acc.ok_or(Error::GcdOfZeroPair)
}

fn gcd_nonzero(p: &Poly, q: &Poly) -> Poly {
    let mp = p.min_exponents();
    let mq = q.min_exponents();
    let m = mp.meet(&mq);
    let g = gcd_rec(&p.div_monomial(&mp), &q.div_monomial(&mq));
    g.mul_monomial(&m)
}

fn highest_var(p: &Poly) -> Option<usize> {
    (0..p.arity()).find(|&v| p.degree_in(v) > 0)
}

/// Both inputs nonzero and free of monomial content.
fn gcd_rec(p: &Poly, q: &Poly) -> Poly {
    let vars = p.vars();
    if p.is_constant() || q.is_constant() {
        return Poly::one(vars);
    }
    if p.num_terms() == 1 || q.num_terms() == 1 {
        // A monomial without monomial content is a constant.
        return Poly::one(vars);
    }
    let vp = highest_var(p);
    let vq = highest_var(q);
    let var = match (vp, vq) {
        (Some(a), Some(b)) => a.min(b),
        _ => return Poly::one(vars),
    };
    let dp = p.degree_in(var);
    let dq = q.degree_in(var);
    if dp == 0 {
        return gcd_rec_content(p, q, var);
    }
    if dq == 0 {
        return gcd_rec_content(q, p, var);
    }
    let cp = content(p, var);
    let cq = content(q, var);
    let c = gcd_general(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let (mut a, mut b) = if dp >= dq { (pp, qq) } else { (qq, pp) };
    loop {
        let r = prem(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            return c;
        }
        a = b;
        b = primitive_part(&r, var);
    }
    &c * &primitive_part(&b, var)
}

/// `gcd(p, q)` where `p` does not involve `var`.
fn gcd_rec_content(p: &Poly, q: &Poly, var: usize) -> Poly {
    let mut g = p.monic();
    for c in q.coefficients_in(var).values() {
        g = gcd_general(&g, c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn gcd_general(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    gcd_nonzero(p, q).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub(crate) fn content(p: &Poly, var: usize) -> Poly {
    let coeffs: Vec<Poly> = p.coefficients_in(var).into_values().collect();
    let mut g = coeffs[0].monic();
    for c in &coeffs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_general(&g, c);
    }
    g
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides").monic()
}

fn lc_in(p: &Poly, var: usize) -> (u32, Poly) {
    let coeffs = p.coefficients_in(var);
    let (d, c) = coeffs.into_iter().next_back().expect("nonzero polynomial");
    (d, c)
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `var`.
fn prem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let (db, lb) = lc_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lc_in(&r, var);
        if dr < db {
            break;
        }
        let shift = Monomial::var(var, dr - db);
        r = &(&r * &lb) - &(&lr * b).mul_monomial(&shift);
    }
    r
}
