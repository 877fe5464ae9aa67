//! Degrees of P^2 iterates by pushing a line forward: `c_n = f(c_{n-1})` with common factors
//! removed, so that `deg f^n = deg c_n` for a line avoiding the base points of the iterates.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::zi::{gcd_list, GaussInt, ZiPoly};
use crate::algebra::{Poly, Scalar};
use crate::birational::CremonaMap;

/// Two fixed lines `t -> P + t Q`. All 2x2 minors of `(P, Q)` are nonzero and the second line
/// has non-real coefficients, so neither passes through coordinate points or small rational
/// points.
const LINES: [[(i64, i64); 6]; 2] = [
    [(1, 0), (3, 0), (-7, 0), (2, 0), (-5, 0), (4, 0)],
    [(5, 0), (2, 1), (-3, 0), (-1, 0), (4, 0), (3, -2)],
];

fn gi(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re.into(), im.into())
}

/// Components of `f` with denominators cleared, as `(exponents, Gaussian integer)` terms.
fn integral_terms(f: &CremonaMap) -> [Vec<([u32; 3], GaussInt)>; 3] {
    let l = f.components().iter().fold(BigInt::from(1), |acc, p| {
        num_integer::Integer::lcm(&acc, &p.denom_lcm())
    });
    let lr = Scalar::from_rational(BigRational::from_integer(l));
    let conv = |p: &Poly| {
        p.terms()
            .map(|(m, c)| {
                let c = c * &lr;
                let g = GaussInt::new(c.re().to_integer(), c.im().to_integer());
                ([m.0[0], m.0[1], m.0[2]], g)
            })
            .collect()
    };
    let [a, b, c] = f.components();
    [conv(a), conv(b), conv(c)]
}

/// Iterates `f` on a parametrized curve, tracking degrees.
pub(crate) struct LineOrbit {
    terms: [Vec<([u32; 3], GaussInt)>; 3],
    degree: u32,
    curve: [ZiPoly; 3],
}

impl LineOrbit {
    pub(crate) fn new(f: &CremonaMap, line: usize) -> Self {
        let l = LINES[line];
        let curve = [0, 1, 2].map(|k| {
            let (p, q) = (l[k], l[k + 3]);
            ZiPoly::linear(gi(p.0, p.1), gi(q.0, q.1))
        });
        LineOrbit { terms: integral_terms(f), degree: f.degree(), curve }
    }

    /// Total stored coefficients.
    pub(crate) fn size(&self) -> usize {
        self.curve.iter().map(ZiPoly::len).sum()
    }

    pub(crate) fn degree(&self) -> usize {
        self.curve.iter().map(ZiPoly::degree).max().unwrap_or(0)
    }

    /// Applies `f` once more and returns the new degree.
    pub(crate) fn step(&mut self) -> usize {
        let d = self.degree as usize;
        let powers: Vec<Vec<ZiPoly>> = self
            .curve
            .iter()
            .map(|c| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(ZiPoly::constant(gi(1, 0)));
                for k in 1..=d {
                    let next = v[k - 1].mul(c);
                    v.push(next);
                }
                v
            })
            .collect();
        let image = [0, 1, 2].map(|i| {
            let mut acc = ZiPoly::zero();
            for (e, c) in &self.terms[i] {
                let t = powers[0][e[0] as usize]
                    .mul(&powers[1][e[1] as usize])
                    .mul(&powers[2][e[2] as usize]);
                acc = acc.add(&t.scale(c));
            }
            acc
        });
        let g = gcd_list(&image);
        let reduced = if g.degree() == 0 {
            image
        } else {
            image.map(|p| p.div_exact(&g).expect("gcd divides"))
        };
        self.curve = reduced.map(|p| p.remove_integer_content());
        self.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn involution_returns_to_degree_one() {
        let s = CremonaMap::standard_quadratic_involution();
        let mut o = LineOrbit::new(&s, 0);
        assert_eq!(o.step(), 2);
        assert_eq!(o.step(), 1);
    }

    #[test]
    fn lines_avoid_coordinate_points() {
        for l in LINES {
            let p = [0, 1, 2].map(|k| Scalar::gaussian(l[k].0, l[k].1));
            let q = [0, 1, 2].map(|k| Scalar::gaussian(l[k + 3].0, l[k + 3].1));
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                assert!(!(&(&p[a] * &q[b]) - &(&p[b] * &q[a])).is_zero());
            }
        }
    }
}
