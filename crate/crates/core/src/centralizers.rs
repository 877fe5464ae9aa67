//! Centralizers of elliptic elements of infinite order in the Jonquieres group.
//!
//! An elliptic element of infinite order is conjugate to `(alpha x, beta y)` or to
//! `(alpha x, y + 1)`. Membership in the centralizer is decided by exact commutation and
//! cross-checked against the shape the normal form predicts.

use alloc::format;
use alloc::string::String;

use num_traits::{One, Zero};

use crate::algebra::{Poly, Scalar, VarSet};
use crate::birational::{JonquieresElement, Mobius};
use crate::error::{Error, Result};

/// Exponent bound of the search for multiplicative relations `alpha^i beta^j = 1`, `j != 0`,
/// when `alpha` is not a root of unity.
pub const RELATION_SEARCH_BOUND: i64 = 16;

/// Order of a root of unity of Q(i): only `1, -1, i, -i` lie in the field.
pub fn root_of_unity_order(z: &Scalar) -> Option<u32> {
    let i = Scalar::i();
    if z.is_one() {
        Some(1)
    } else if *z == -Scalar::one() {
        Some(2)
    } else if *z == i || *z == -i {
        Some(4)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalFormElliptic {
    /// `(alpha x, beta y)`; the relations `alpha^i beta^j = 1` are the multiples of `(k, 0)`.
    Diagonal { alpha: Scalar, beta: Scalar, k: u32 },
    /// `(alpha x, y + 1)`.
    Translation { alpha: Scalar },
}

impl NormalFormElliptic {
    pub fn diagonal(alpha: Scalar, beta: Scalar) -> Result<Self> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::Constraint("alpha and beta must be nonzero".into()));
        }
        if let Some(m) = root_of_unity_order(&beta) {
            return Err(Error::Constraint(format!("beta is a root of unity of order {m}; the element has finite order or a fiber relation")));
        }
        let k = match root_of_unity_order(&alpha) {
            // alpha^i beta^j = 1 with j != 0 would make beta a root of unity.
            Some(k) => k,
            None => {
                for j in 1..=RELATION_SEARCH_BOUND {
                    let bj = beta.powi(j)?;
                    for i in -RELATION_SEARCH_BOUND..=RELATION_SEARCH_BOUND {
                        if (&alpha.powi(i)? * &bj).is_one() {
                            return Err(Error::Constraint(format!(
                                "alpha^{i} beta^{j} = 1: the relation lattice is not generated by (k, 0)"
                            )));
                        }
                    }
                }
                0
            }
        };
        Ok(NormalFormElliptic::Diagonal { alpha, beta, k })
    }

    pub fn translation(alpha: Scalar) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Constraint("alpha must be nonzero".into()));
        }
        Ok(NormalFormElliptic::Translation { alpha })
    }

    /// Reads a normal form off `(alpha x, beta y)` or `(alpha x, y + 1)`.
    pub fn recognize(f: &JonquieresElement) -> Result<Self> {
        let [a, b, c, d] = f.base();
        if !b.is_zero() || !c.is_zero() {
            return Err(Error::Constraint("base action is not x -> alpha x".into()));
        }
        let alpha = a.checked_div(d)?;
        let fib: [Option<Scalar>; 4] = f.fiber().clone().map(|p| p.as_constant());
        match fib {
            [Some(p), Some(q), Some(r), Some(s)] if r.is_zero() && q.is_zero() => {
                NormalFormElliptic::diagonal(alpha, p.checked_div(&s)?)
            }
            [Some(p), Some(q), Some(r), Some(s)] if r.is_zero() && p == s && q == s => {
                NormalFormElliptic::translation(alpha)
            }
            _ => Err(Error::Constraint("fiber action is not y -> beta y or y -> y + 1".into())),
        }
    }

    pub fn alpha(&self) -> &Scalar {
        match self {
            NormalFormElliptic::Diagonal { alpha, .. } | NormalFormElliptic::Translation { alpha } => alpha,
        }
    }

    /// Order of `alpha`, or 0 when it has infinite order.
    pub fn k(&self) -> u32 {
        match self {
            NormalFormElliptic::Diagonal { k, .. } => *k,
            NormalFormElliptic::Translation { alpha } => root_of_unity_order(alpha).unwrap_or(0),
        }
    }

    pub fn to_jonquieres(&self) -> JonquieresElement {
        let x = VarSet::X;
        let c = |s: Scalar| Poly::constant(x, s);
        let base = [self.alpha().clone(), Scalar::zero(), Scalar::zero(), Scalar::one()];
        let fiber = match self {
            NormalFormElliptic::Diagonal { beta, .. } => {
                [c(beta.clone()), Poly::zero(x), Poly::zero(x), Poly::one(x)]
            }
            NormalFormElliptic::Translation { .. } => [Poly::one(x), Poly::one(x), Poly::zero(x), Poly::one(x)],
        };
        JonquieresElement::from_polys(base, fiber).expect("normal forms are invertible")
    }

    /// The shape of the centralizer.
    pub fn predicted_form(&self) -> String {
        match (self, self.k()) {
            (NormalFormElliptic::Diagonal { .. }, 0) => "(eta(x), c y), eta(alpha x) = alpha eta(x)".into(),
            (NormalFormElliptic::Diagonal { .. }, k) => {
                format!("(eta(x), y R(x^{k})), eta(alpha x) = alpha eta(x)")
            }
            (NormalFormElliptic::Translation { .. }, 0) => "(eta(x), y + c), eta(alpha x) = alpha eta(x)".into(),
            (NormalFormElliptic::Translation { .. }, k) => {
                format!("(eta(x), y + R(x^{k})), eta(alpha x) = alpha eta(x)")
            }
        }
    }
}

/// `f o g == g o f`.
pub fn commutes(f: &JonquieresElement, g: &JonquieresElement) -> bool {
    f.compose(g) == g.compose(f)
}

/// Whether `eta` commutes with `x -> alpha x` in PGL2.
fn commutes_with_scaling(eta: &Mobius, alpha: &Scalar) -> bool {
    let [a, b, c, d] = eta;
    let m1 = [a * alpha, b.clone(), c * alpha, d.clone()];
    let m2 = [a * alpha, b * alpha, c.clone(), d.clone()];
    (0..4).all(|i| (i + 1..4).all(|j| &m1[i] * &m2[j] == &m1[j] * &m2[i]))
}

/// All exponents of the nonzero polynomials agree modulo `k`; with `k = 0` all are zero.
fn exponents_congruent(polys: &[&Poly], k: u32) -> bool {
    let mut residue = None;
    for p in polys {
        for (m, _) in p.terms() {
            let e = m.0[0];
            let r = if k == 0 { e } else { e % k };
            if k == 0 && r != 0 {
                return false;
            }
            match residue {
                None => residue = Some(r),
                Some(s) if s != r => return false,
                _ => {}
            }
        }
    }
    true
}

fn predicted_member(f: &NormalFormElliptic, g: &JonquieresElement) -> bool {
    if !commutes_with_scaling(g.base(), f.alpha()) {
        return false;
    }
    let [a, b, c, d] = g.fiber();
    let k = f.k();
    match f {
        NormalFormElliptic::Diagonal { .. } => b.is_zero() && c.is_zero() && exponents_congruent(&[a, d], k),
        NormalFormElliptic::Translation { .. } => {
            c.is_zero() && a == d && exponents_congruent(&[b, d], k)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub predicted_form: String,
    /// For non-members, the two unequal composites.
    pub witness: Option<String>,
}

/// Decides `g` in the centralizer of `f` by exact commutation, and fails if the predicted shape
/// disagrees.
pub fn centralizer_membership(f: &NormalFormElliptic, g: &JonquieresElement) -> Result<MembershipVerdict> {
    let fj = f.to_jonquieres();
    let (fg, gf) = (fj.compose(g), g.compose(&fj));
    let member = fg == gf;
    let predicted = predicted_member(f, g);
    if member != predicted {
        return Err(Error::InvariantViolation(format!(
            "commutation says {member}, predicted shape says {predicted} for g = {g}"
        )));
    }
    Ok(MembershipVerdict {
        member,
        predicted_form: f.predicted_form(),
        witness: (!member).then(|| format!("f o g = {fg}; g o f = {gf}")),
    })
}
