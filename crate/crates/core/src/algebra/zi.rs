//! Dense univariate polynomials over the Gaussian integers, with a modular gcd.
//!
//! The gcd maps into F_p for primes `p = 1 mod 4` through both embeddings `i -> r`,
//! `i -> -r` with `r^2 = -1`. A constant image gcd certifies coprimality; otherwise the monic
//! gcd is rebuilt by CRT and rational reconstruction and confirmed by exact division.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::Scalar;

/// A Gaussian integer `re + im i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    /// Quotient rounded to the nearest Gaussian integer.
    fn div_round(&self, d: &GaussInt) -> GaussInt {
        let n = d.norm();
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        let two_n = &n * 2;
        let round = |x: BigInt| (x * BigInt::from(2) + &n).div_floor(&two_n);
        GaussInt::new(round(re), round(im))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| GaussInt::new(qr, qi))
    }

    pub fn gcd(&self, o: &GaussInt) -> GaussInt {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }
}

/// Dense integer polynomial multiplication; Karatsuba above a small threshold.
fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    karatsuba(a, b, &mut out);
    out
}

const KARATSUBA_THRESHOLD: usize = 24;

fn schoolbook(a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
}

/// Accumulates `a * b` into `out`.
fn karatsuba(a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        schoolbook(a, b, out);
        return;
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        // Unbalanced: split the longer operand only.
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut k = 0;
        while k < long.len() {
            let end = (k + short.len()).min(long.len());
            karatsuba(&long[k..end], short, &mut out[k..]);
            k = end;
        }
        return;
    }
    let z0 = int_mul_raw(a0, b0);
    let z2 = int_mul_raw(a1, b1);
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let mut z1 = int_mul_raw(&sa, &sb);
    for (k, v) in z0.iter().enumerate() {
        z1[k] -= v;
    }
    for (k, v) in z2.iter().enumerate() {
        z1[k] -= v;
    }
    for (k, v) in z0.into_iter().enumerate() {
        out[k] += v;
    }
    for (k, v) in z1.into_iter().enumerate() {
        if k + m < out.len() {
            out[k + m] += v;
        }
    }
    for (k, v) in z2.into_iter().enumerate() {
        out[k + 2 * m] += v;
    }
}

fn int_mul_raw(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    karatsuba(a, b, &mut out);
    out
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let mut s = a.get(k).cloned().unwrap_or_default();
            if let Some(y) = b.get(k) {
                s += y;
            }
            s
        })
        .collect()
}

fn sub_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let mut s = a.get(k).cloned().unwrap_or_default();
            if let Some(y) = b.get(k) {
                s -= y;
            }
            s
        })
        .collect()
}

/// Dense polynomial in Z[i][t], stored as real and imaginary coefficient vectors.
/// Trailing zeros are trimmed; an empty imaginary part means the polynomial is real.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZiPoly {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
}

impl ZiPoly {
    pub fn zero() -> Self {
        ZiPoly::default()
    }

    pub fn from_parts(re: Vec<BigInt>, im: Vec<BigInt>) -> Self {
        let mut p = ZiPoly { re, im };
        p.trim();
        p
    }

    pub fn constant(c: GaussInt) -> Self {
        ZiPoly::from_parts(vec![c.re], vec![c.im])
    }

    /// `a + b t`.
    pub fn linear(a: GaussInt, b: GaussInt) -> Self {
        ZiPoly::from_parts(vec![a.re, b.re], vec![a.im, b.im])
    }

    fn trim(&mut self) {
        while self.re.last().is_some_and(Zero::is_zero) {
            self.re.pop();
        }
        while self.im.last().is_some_and(Zero::is_zero) {
            self.im.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_empty() && self.im.is_empty()
    }

    pub fn len(&self) -> usize {
        self.re.len().max(self.im.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussInt {
        GaussInt::new(
            self.re.get(k).cloned().unwrap_or_default(),
            self.im.get(k).cloned().unwrap_or_default(),
        )
    }

    pub fn leading(&self) -> GaussInt {
        self.coeff(self.degree())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_empty()
    }

    pub fn add(&self, o: &ZiPoly) -> ZiPoly {
        ZiPoly::from_parts(add_slices(&self.re, &o.re), add_slices(&self.im, &o.im))
    }

    pub fn sub(&self, o: &ZiPoly) -> ZiPoly {
        ZiPoly::from_parts(sub_slices(&self.re, &o.re), sub_slices(&self.im, &o.im))
    }

    pub fn mul(&self, o: &ZiPoly) -> ZiPoly {
        if self.is_zero() || o.is_zero() {
            return ZiPoly::zero();
        }
        if self.is_real() && o.is_real() {
            return ZiPoly::from_parts(int_mul(&self.re, &o.re), Vec::new());
        }
        if o.is_real() {
            return ZiPoly::from_parts(int_mul(&self.re, &o.re), int_mul(&self.im, &o.re));
        }
        if self.is_real() {
            return ZiPoly::from_parts(int_mul(&self.re, &o.re), int_mul(&self.re, &o.im));
        }
        // Three real products: ac, bd, (a+b)(c+d).
        let ac = int_mul(&self.re, &o.re);
        let bd = int_mul(&self.im, &o.im);
        let s = int_mul(&add_slices(&self.re, &self.im), &add_slices(&o.re, &o.im));
        let re = sub_slices(&ac, &bd);
        let im = sub_slices(&sub_slices(&s, &ac), &bd);
        ZiPoly::from_parts(re, im)
    }

    pub fn scale(&self, c: &GaussInt) -> ZiPoly {
        let re: Vec<BigInt> = (0..self.len())
            .map(|k| {
                let a = self.re.get(k).cloned().unwrap_or_default();
                let b = self.im.get(k).cloned().unwrap_or_default();
                a * &c.re - b * &c.im
            })
            .collect();
        let im: Vec<BigInt> = if self.is_real() && c.im.is_zero() {
            Vec::new()
        } else {
            (0..self.len())
                .map(|k| {
                    let a = self.re.get(k).cloned().unwrap_or_default();
                    let b = self.im.get(k).cloned().unwrap_or_default();
                    a * &c.im + b * &c.re
                })
                .collect()
        };
        ZiPoly::from_parts(re, im)
    }

    /// Gcd of all integer parts, made positive.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.re.iter().chain(self.im.iter()) {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_integer(&self, d: &BigInt) -> ZiPoly {
        ZiPoly::from_parts(
            self.re.iter().map(|c| c / d).collect(),
            self.im.iter().map(|c| c / d).collect(),
        )
    }

    pub fn remove_integer_content(&self) -> ZiPoly {
        let g = self.integer_content();
        if g.is_zero() || g.is_one() {
            self.clone()
        } else {
            self.div_integer(&g)
        }
    }

    /// Exact quotient in Z[i][t], or `None`.
    pub fn div_exact(&self, d: &ZiPoly) -> Option<ZiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZiPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let dd = d.degree();
        let lc = d.leading();
        let n = self.degree() - dd + 1;
        let mut r_re = self.re.clone();
        let mut r_im = self.im.clone();
        r_re.resize(self.len(), BigInt::zero());
        r_im.resize(self.len(), BigInt::zero());
        let mut q_re = vec![BigInt::zero(); n];
        let mut q_im = vec![BigInt::zero(); n];
        for k in (0..n).rev() {
            let top = GaussInt::new(r_re[k + dd].clone(), r_im[k + dd].clone());
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(&lc)?;
            for j in 0..=dd {
                let c = d.coeff(j);
                if c.is_zero() {
                    continue;
                }
                let p = q.mul(&c);
                r_re[k + j] -= p.re;
                r_im[k + j] -= p.im;
            }
            q_re[k] = q.re;
            q_im[k] = q.im;
        }
        if r_re.iter().chain(r_im.iter()).any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZiPoly::from_parts(q_re, q_im))
    }

    /// Converts a univariate polynomial with Gaussian-rational coefficients, clearing denominators.
    pub fn from_scalars(coeffs: &[Scalar]) -> ZiPoly {
        let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
        let conv = |r: &BigRational| (r * BigRational::from_integer(l.clone())).to_integer();
        ZiPoly::from_parts(
            coeffs.iter().map(|c| conv(c.re())).collect(),
            coeffs.iter().map(|c| conv(c.im())).collect(),
        )
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        (0..self.len())
            .map(|k| {
                let c = self.coeff(k);
                Scalar::new(BigRational::from_integer(c.re), BigRational::from_integer(c.im))
            })
            .collect()
    }

    fn reduce(&self, p: u64, r: u64) -> Vec<u64> {
        let n = self.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.re.get(k).map_or(0, |c| mod_big(c, p));
            let b = self.im.get(k).map_or(0, |c| mod_big(c, p));
            out.push((a + mulmod(b, r, p)) % p);
        }
        out
    }
}

fn mod_big(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.to_u64().expect("reduced residue fits")
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p = 1 mod 4` below 2^62 in decreasing order, each with a square root of -1.
struct GaussPrimes {
    next: u64,
}

impl GaussPrimes {
    fn new() -> Self {
        GaussPrimes { next: (1u64 << 62) - 3 }
    }
}

impl Iterator for GaussPrimes {
    type Item = (u64, u64);
    fn next(&mut self) -> Option<(u64, u64)> {
        loop {
            let p = self.next;
            self.next -= 4;
            if p % 4 != 1 || !is_prime(p) {
                continue;
            }
            let r = (2..)
                .map(|g| powmod(g, (p - 1) / 4, p))
                .find(|&r| mulmod(r, r, p) == p - 1)
                .expect("p = 1 mod 4 has a square root of -1");
            return Some((p, r));
        }
    }
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd in F_p[t].
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let db = b.len() - 1;
        let inv = invmod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let q = mulmod(a[da], inv, p);
            if q != 0 {
                for j in 0..=db {
                    let t = mulmod(q, b[j], p);
                    a[da - db + j] = (a[da - db + j] + p - t) % p;
                }
            }
            a.pop();
            trim_mod(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = invmod(lc, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

/// Reconstructs `n/d` from `u mod m` with `|n|, |d| <= sqrt(m/2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Gcd of a list of polynomials, primitive over Z[i] and defined up to a unit.
/// Zero entries are ignored; the gcd of all zeros is zero.
pub fn gcd_list(polys: &[ZiPoly]) -> ZiPoly {
    let nz: Vec<&ZiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        return ZiPoly::zero();
    }
    if nz.iter().any(|p| p.degree() == 0) {
        return ZiPoly::constant(GaussInt::new(BigInt::one(), BigInt::zero()));
    }
    let real = nz.iter().all(|p| p.is_real());
    let one = ZiPoly::constant(GaussInt::new(BigInt::one(), BigInt::zero()));

    let mut min_deg = usize::MAX;
    // Accumulated residues of the real and imaginary parts of the monic gcd.
    let mut modulus = BigInt::one();
    let mut acc_re: Vec<BigInt> = Vec::new();
    let mut acc_im: Vec<BigInt> = Vec::new();
    for (p, r) in GaussPrimes::new() {
        let embeddings: &[u64] = if real { &[0] } else { &[r, p - r] };
        let mut images = Vec::with_capacity(2);
        let mut bad = false;
        for &s in embeddings {
            let reduced: Vec<Vec<u64>> = nz.iter().map(|q| q.reduce(p, s)).collect();
            if reduced.iter().zip(&nz).any(|(v, q)| v.len() != q.len() || v.last() == Some(&0)) {
                bad = true;
                break;
            }
            let mut g = reduced[0].clone();
            for v in &reduced[1..] {
                g = gcd_mod(&g, v, p);
                if g.len() == 1 {
                    break;
                }
            }
            if g.len() == 1 {
                return one;
            }
            images.push(g);
        }
        if bad {
            continue;
        }
        let d = images[0].len() - 1;
        if images.iter().any(|g| g.len() - 1 != d) {
            continue;
        }
        if d > min_deg {
            continue;
        }
        if d < min_deg {
            min_deg = d;
            modulus = BigInt::one();
            acc_re = vec![BigInt::zero(); d + 1];
            acc_im = vec![BigInt::zero(); d + 1];
        }
        let inv2 = invmod(2, p);
        let inv2r = invmod(mulmod(2, r, p), p);
        let pb = BigInt::from(p);
        for k in 0..=d {
            let (a, b) = if real {
                (images[0][k], 0)
            } else {
                let (u, v) = (images[0][k], images[1][k]);
                (mulmod((u + v) % p, inv2, p), mulmod((u + p - v) % p, inv2r, p))
            };
            acc_re[k] = crt(&acc_re[k], &modulus, a, &pb);
            acc_im[k] = crt(&acc_im[k], &modulus, b, &pb);
        }
        modulus *= &pb;
        if let Some(candidate) = reconstruct(&acc_re, &acc_im, &modulus) {
            if nz.iter().all(|q| q.div_exact(&candidate).is_some()) {
                return candidate;
            }
        }
    }
    unreachable!("prime supply is unbounded")
}

fn crt(x: &BigInt, m: &BigInt, a: u64, p: &BigInt) -> BigInt {
    // y = x + m * ((a - x) * m^{-1} mod p)
    let pu = p.to_u64().expect("word-sized prime");
    let xm = mod_big(x, pu);
    let mm = mod_big(m, pu);
    let t = mulmod((a + pu - xm) % pu, invmod(mm, pu), pu);
    x + m * BigInt::from(t)
}

fn reconstruct(re: &[BigInt], im: &[BigInt], m: &BigInt) -> Option<ZiPoly> {
    let mut coeffs = Vec::with_capacity(re.len());
    for (a, b) in re.iter().zip(im) {
        coeffs.push(Scalar::new(rational_reconstruct(a, m)?, rational_reconstruct(b, m)?));
    }
    let z = ZiPoly::from_scalars(&coeffs);
    Some(gaussian_primitive(&z))
}

/// Divides out the Gaussian gcd of all coefficients.
pub fn gaussian_primitive(z: &ZiPoly) -> ZiPoly {
    let z = z.remove_integer_content();
    let mut g = GaussInt::default();
    for k in 0..z.len() {
        g = g.gcd(&z.coeff(k));
        if g.norm().is_one() {
            return z;
        }
    }
    if g.is_zero() {
        return z;
    }
    let re = (0..z.len()).map(|k| z.coeff(k).div_exact(&g).expect("gcd divides")).collect::<Vec<_>>();
    ZiPoly::from_parts(
        re.iter().map(|c| c.re.clone()).collect(),
        re.iter().map(|c| c.im.clone()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(re: &[i64], im: &[i64]) -> ZiPoly {
        ZiPoly::from_parts(re.iter().map(|&c| c.into()).collect(), im.iter().map(|&c| c.into()).collect())
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..70).map(|k| BigInt::from(k * 7 % 13 - 6)).collect();
        let b: Vec<BigInt> = (0..53).map(|k| BigInt::from(k * 5 % 11 - 5)).collect();
        let mut s = vec![BigInt::zero(); a.len() + b.len() - 1];
        schoolbook(&a, &b, &mut s);
        assert_eq!(int_mul(&a, &b), s);
    }

    #[test]
    fn gcd_detects_common_gaussian_factor() {
        // (t - i) * (t + 2) and (t - i) * (3t + 1)
        let g = zp(&[0, 1], &[-1, 0]);
        let a = g.mul(&zp(&[2, 1], &[]));
        let b = g.mul(&zp(&[1, 3], &[]));
        let h = gcd_list(&[a.clone(), b.clone()]);
        assert_eq!(h.degree(), 1);
        assert!(a.div_exact(&h).is_some() && b.div_exact(&h).is_some());
    }

    #[test]
    fn coprime_certified() {
        let a = zp(&[1, 0, 1], &[]);
        let b = zp(&[2, 1], &[0, 1]);
        assert_eq!(gcd_list(&[a, b]).degree(), 0);
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(1_000_000_007u64);
        let u = BigInt::from(3) * BigInt::from(invmod(7, 1_000_000_007));
        let r = rational_reconstruct(&u, &m).unwrap();
        assert_eq!(r, BigRational::new(3.into(), 7.into()));
    }
}
