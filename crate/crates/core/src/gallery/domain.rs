//! Invariant open sets `U`, with membership tests and seeded samplers.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use super::numeric::SurfacePoint;
use crate::kleinian::KleinianGroup;
use crate::rng::Lcg;

/// Ping-pong steps after which a point counts as lying on a Schottky limit set.
pub const PING_PONG_DEPTH: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    P2,
    P1xP1,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::P2 => "P2",
            Ambient::P1xP1 => "P1xP1",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    /// `C^2`.
    AffinePlane,
    /// `C x C*`.
    CStarCross,
    /// `C* x C*`.
    TorusCover,
    /// `C^2 \ {0}`.
    PuncturedPlane,
    /// `H x C`.
    HalfPlaneCross,
    /// `D x C`.
    DiskCross,
    /// `D x C*`.
    DiskCrossStar,
    /// `D x P^1`.
    DiskCrossP1,
    /// `D1 x D2` for invariant components of two Kleinian groups.
    ProductOfComponents,
    /// The complement of two sections of a Hirzebruch surface `F_n`, seen in the chart
    /// `C x C*` over the finite fibers.
    ZariskiFiberComplement { n: u32 },
}

impl DomainKind {
    pub fn name(&self) -> &'static str {
        match self {
            DomainKind::AffinePlane => "AffinePlane",
            DomainKind::CStarCross => "CStarCross",
            DomainKind::TorusCover => "TorusCover",
            DomainKind::PuncturedPlane => "PuncturedPlane",
            DomainKind::HalfPlaneCross => "HalfPlaneCross",
            DomainKind::DiskCross => "DiskCross",
            DomainKind::DiskCrossStar => "DiskCrossStar",
            DomainKind::DiskCrossP1 => "DiskCrossP1",
            DomainKind::ProductOfComponents => "ProductOfComponents",
            DomainKind::ZariskiFiberComplement { .. } => "ZariskiFiberComplement",
        }
    }
}

/// A one-dimensional factor of a product domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    /// `C`.
    Plane,
    /// `C*`.
    Punctured,
    /// `Im z > 0`.
    UpperHalfPlane,
    /// `|z - center| < radius`.
    Disk { center: Complex64, radius: f64 },
    /// `P^1`; points at infinity are members but are never sampled.
    Sphere,
    /// The domain of discontinuity of a Schottky group.
    SchottkyComponent(KleinianGroup),
}

impl Factor {
    pub fn contains(&self, z: Complex64) -> bool {
        let finite = z.is_finite();
        match self {
            Factor::Plane => finite,
            Factor::Punctured => finite && z != Complex64::new(0.0, 0.0),
            Factor::UpperHalfPlane => finite && z.im > 0.0,
            Factor::Disk { center, radius } => finite && (z - center).norm() < *radius,
            Factor::Sphere => true,
            Factor::SchottkyComponent(g) => {
                !finite || g.ping_pong_depth(z, PING_PONG_DEPTH).is_some()
            }
        }
    }

    /// Whether infinity belongs to the factor.
    pub fn contains_infinity(&self) -> bool {
        match self {
            Factor::Sphere => true,
            Factor::SchottkyComponent(g) => g.ping_pong_depth(crate::kleinian::sphere::INFINITY, 0).is_some(),
            _ => false,
        }
    }

    /// Uniform in bounded boxes, log-uniform in the modulus for punctured and half-plane
    /// factors, uniform in hyperbolic area for disks.
    pub fn sample(&self, rng: &mut Lcg) -> Complex64 {
        match self {
            Factor::Plane => Complex64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)),
            Factor::Punctured => {
                Complex64::from_polar(Float::exp(rng.uniform(-2.0, 2.0)), rng.uniform(0.0, 2.0 * PI))
            }
            Factor::UpperHalfPlane => Complex64::new(rng.uniform(-2.0, 2.0), Float::exp(rng.uniform(-2.0, 2.0))),
            Factor::Disk { center, radius } => {
                // Hyperbolic radius at most 3, uniform in hyperbolic area.
                let s = Float::sinh(1.5f64);
                let rho = 2.0 * Float::asinh(Float::sqrt(rng.next_f64()) * s);
                let r = Float::tanh(rho / 2.0) * radius;
                center + Complex64::from_polar(r, rng.uniform(0.0, 2.0 * PI))
            }
            Factor::Sphere => {
                let u = rng.uniform(0.02, 0.98);
                Complex64::from_polar(Float::sqrt(u / (1.0 - u)), rng.uniform(0.0, 2.0 * PI))
            }
            Factor::SchottkyComponent(g) => loop {
                let z = Complex64::new(rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0));
                if g.ping_pong_depth(z, 0).is_some() {
                    break z;
                }
            },
        }
    }

    pub fn label(&self) -> String {
        use alloc::format;
        match self {
            Factor::Plane => "C".into(),
            Factor::Punctured => "C*".into(),
            Factor::UpperHalfPlane => "H".into(),
            Factor::Disk { center, radius } => format!("D({center}, {radius})"),
            Factor::Sphere => "P1".into(),
            Factor::SchottkyComponent(_) => "Omega".into(),
        }
    }
}

/// The invariant open set of a case.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainDescriptor {
    pub ambient: Ambient,
    pub kind: DomainKind,
    /// Factors in `x` and `y`; for `PuncturedPlane` both are `C` and the origin is removed.
    pub factors: [Factor; 2],
    pub description: String,
}

impl DomainDescriptor {
    pub fn new(ambient: Ambient, kind: DomainKind, factors: [Factor; 2], description: &str) -> Self {
        DomainDescriptor { ambient, kind, factors, description: description.into() }
    }

    pub fn contains(&self, p: &SurfacePoint) -> bool {
        if self.kind == DomainKind::PuncturedPlane && p[0].norm() == 0.0 && p[1].norm() == 0.0 {
            return false;
        }
        self.factors[0].contains(p[0]) && self.factors[1].contains(p[1])
    }

    /// Whether coordinate `k` may be infinite.
    pub fn allows_infinity(&self, k: usize) -> bool {
        self.factors[k].contains_infinity()
    }

    /// `count` points of `U`, reproducible from the seed.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<SurfacePoint> {
        let mut rng = Lcg::new(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let p = [self.factors[0].sample(&mut rng), self.factors[1].sample(&mut rng)];
            if self.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// The image of `U` under the coordinate swap.
    pub fn swapped(&self) -> DomainDescriptor {
        let [a, b] = self.factors.clone();
        DomainDescriptor {
            ambient: self.ambient,
            kind: self.kind,
            factors: [b, a],
            description: alloc::format!("swap of {}", self.description),
        }
    }
}
