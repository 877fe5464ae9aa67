//! Constructors for the rational-surface rows of the classification table.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::domain::{Ambient, DomainDescriptor, DomainKind, Factor};
use super::numeric::{NumMap, NumPoly, NumRational};
use crate::algebra::{Poly, RationalFunction, Scalar, VarSet};
use crate::birational::JonquieresElement;
use crate::error::{Error, Result};
use crate::kleinian::{schottky_build, Circle, CirclePair, KleinianGroup};

/// Rows with a constructor.
pub const CONSTRUCTIBLE_ROWS: [u8; 12] = [7, 8, 9, 10, 11, 12, 15, 16, 17, 18, 19, 20];

/// An affine pair of rational functions in `x, y`.
pub type AffinePair = (RationalFunction, RationalFunction);

fn var(i: usize) -> RationalFunction {
    RationalFunction::var(VarSet::Affine, i)
}

fn cst(c: &Scalar) -> RationalFunction {
    RationalFunction::constant(VarSet::Affine, c.clone())
}

fn compose_pair(f: &AffinePair, g: &AffinePair) -> Result<AffinePair> {
    let args = [g.0.clone(), g.1.clone()];
    Ok((f.0.compose(&args)?, f.1.compose(&args)?))
}

/// A birational map of the affine chart together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMap {
    pub forward: AffinePair,
    pub inverse: AffinePair,
}

impl ExactMap {
    pub fn identity() -> Self {
        ExactMap { forward: (var(0), var(1)), inverse: (var(0), var(1)) }
    }

    /// Inverts a Jonquieres map exactly.
    pub fn jonquieres(forward: AffinePair) -> Result<Self> {
        let j = JonquieresElement::from_affine(&forward.0, &forward.1)?;
        Ok(ExactMap { forward, inverse: j.inverse().affine_images() })
    }

    /// `self o g`.
    pub fn compose(&self, g: &ExactMap) -> Result<ExactMap> {
        Ok(ExactMap {
            forward: compose_pair(&self.forward, &g.forward)?,
            inverse: compose_pair(&g.inverse, &self.inverse)?,
        })
    }

    pub fn inverted(&self) -> ExactMap {
        ExactMap { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<ExactMap> {
        let base = if e < 0 { self.inverted() } else { self.clone() };
        let mut acc = ExactMap::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.forward == (var(0), var(1))
    }

    pub fn formula(&self) -> String {
        format!("(x, y) -> ({}, {})", self.forward.0, self.forward.1)
    }
}

/// A generator with exact formulas when its coefficients lie in Q(i).
#[derive(Clone, Debug, PartialEq)]
pub struct CaseGenerator {
    pub label: String,
    pub formula: String,
    pub exact: Option<ExactMap>,
    pub forward: NumMap,
    pub inverse: NumMap,
}

impl CaseGenerator {
    fn exact(label: &str, map: ExactMap) -> Self {
        CaseGenerator {
            label: label.into(),
            formula: map.formula(),
            forward: NumMap::from_exact(&map.forward),
            inverse: NumMap::from_exact(&map.inverse),
            exact: Some(map),
        }
    }

    fn numeric(label: &str, formula: String, forward: NumMap, inverse: NumMap) -> Self {
        CaseGenerator { label: label.into(), formula, exact: None, forward, inverse }
    }

    /// `s o g o s` for the coordinate swap `s`.
    pub fn conjugated_by_swap(&self) -> CaseGenerator {
        let swap = |m: &AffinePair| (m.1.compose(&[var(1), var(0)]), m.0.compose(&[var(1), var(0)]));
        let exact = self.exact.as_ref().and_then(|e| match (swap(&e.forward), swap(&e.inverse)) {
            ((Ok(a), Ok(b)), (Ok(c), Ok(d))) => Some(ExactMap { forward: (a, b), inverse: (c, d) }),
            _ => None,
        });
        CaseGenerator {
            label: format!("s*{}*s", self.label),
            formula: exact.as_ref().map(ExactMap::formula).unwrap_or_else(|| format!("swap conjugate of {}", self.formula)),
            exact,
            forward: self.forward.conjugated_by_swap(),
            inverse: self.inverse.conjugated_by_swap(),
        }
    }
}

/// `lhs = rhs` in the group; words are `(generator, exponent)` lists composed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: Vec<(usize, i64)>,
    pub rhs: Vec<(usize, i64)>,
}

impl Relation {
    fn commute(labels: &[&str], i: usize, j: usize) -> Self {
        Relation {
            label: format!("{} {} = {} {}", labels[i], labels[j], labels[j], labels[i]),
            lhs: vec![(i, 1), (j, 1)],
            rhs: vec![(j, 1), (i, 1)],
        }
    }
}

fn all_commute(labels: &[&str]) -> Vec<Relation> {
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            out.push(Relation::commute(labels, i, j));
        }
    }
    out
}

/// A circle with exact center and positive rational radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCircle {
    pub center: Scalar,
    pub radius: Scalar,
}

/// Where the base group of rows 18 acts.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BaseDomain {
    UpperHalfPlane,
    Punctured,
}

/// Typed parameters of each constructible row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseParams {
    /// Row 7: translations `(x + a, y + b)`.
    Lattice { vectors: Vec<[Scalar; 2]> },
    /// Row 8: `(x + a, b y)`.
    CylinderLattice { gens: Vec<[Scalar; 2]> },
    /// Row 9: `(a x, b y)`.
    TorusLattice { gens: Vec<[Scalar; 2]> },
    /// Row 10: `(x, y + 1), (x, y + a), (x + 1, c x + y), (x + b, d x + y)` with `d = c b - 1`.
    Kodaira { a: Scalar, b: Scalar, c: Scalar },
    /// Row 11: `(x, y) -> M (x, y)`, `M = [[m0, m1], [m2, m3]]`.
    Hopf { matrix: [Scalar; 4] },
    /// Row 12: the companion matrix of `t^3 - t - 1`, computed numerically.
    Inoue,
    /// Row 15: `(a x, b y)` on the complement of two sections of `F_n`.
    HirzebruchScaling { n: u32, a: Scalar, b: Scalar },
    /// Row 16: `(x + c, b y)` on the complement of two sections of `F_n`.
    HirzebruchTranslation { n: u32, b: Scalar, c: Scalar },
    /// Row 17: a Schottky group in `x` times `(x, m y)`.
    SchottkyProduct { pairs: Vec<[ExactCircle; 2]>, multiplier: Scalar },
    /// Row 18: `(x, a y)` and `(q x, R(x) y)`.
    FiberScaling { base: BaseDomain, q: Scalar, r: RationalFunction, a: Scalar },
    /// Row 19: `(x, y + t1), (x, y + t2), (q x, y + R(x))`.
    FiberTranslation { q: Scalar, r: RationalFunction, t1: Scalar, t2: Scalar },
    /// Row 20: `(q x, R(x) y)` on `C* x P^1`.
    RuledBundle { q: Scalar, r: RationalFunction },
}

fn s(n: i64) -> Scalar {
    Scalar::from_i64(n)
}

impl CaseParams {
    pub fn default_for(row: u8) -> Option<CaseParams> {
        let i = Scalar::i();
        let z = Scalar::zero();
        let x = var(0);
        let circle = |c: Scalar| ExactCircle { center: c, radius: s(1) };
        Some(match row {
            7 => CaseParams::Lattice {
                vectors: vec![[s(1), z.clone()], [i.clone(), z.clone()], [z.clone(), s(1)], [z, i]],
            },
            8 => CaseParams::CylinderLattice { gens: vec![[s(1), s(1)], [i, s(1)], [z, s(2)]] },
            9 => CaseParams::TorusLattice { gens: vec![[s(2), i.clone()], [i, s(3)]] },
            10 => CaseParams::Kodaira { a: Scalar::gaussian(0, 2), b: i, c: s(1) },
            11 => CaseParams::Hopf { matrix: [Scalar::ratio(1, 2), z.clone(), z, Scalar::ratio(1, 2)] },
            12 => CaseParams::Inoue,
            15 => CaseParams::HirzebruchScaling { n: 1, a: s(3), b: Scalar::ratio(1, 2) },
            16 => CaseParams::HirzebruchTranslation { n: 1, b: Scalar::ratio(1, 2), c: s(1) },
            17 => CaseParams::SchottkyProduct {
                pairs: vec![
                    [circle(s(3)), circle(s(-3))],
                    [circle(Scalar::gaussian(0, 3)), circle(Scalar::gaussian(0, -3))],
                ],
                multiplier: s(2),
            },
            18 => CaseParams::FiberScaling { base: BaseDomain::UpperHalfPlane, q: s(4), r: x, a: s(2) },
            19 => CaseParams::FiberTranslation { q: s(4), r: x, t1: s(1), t2: i },
            20 => CaseParams::RuledBundle { q: s(2), r: x },
            _ => return None,
        })
    }

    /// Named scalars, for reports.
    pub fn named(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut put = |k: String, v: String| out.push((k, v));
        match self {
            CaseParams::Lattice { vectors } => {
                for (k, v) in vectors.iter().enumerate() {
                    put(format!("v{}", k + 1), format!("({}, {})", v[0], v[1]));
                }
            }
            CaseParams::CylinderLattice { gens } | CaseParams::TorusLattice { gens } => {
                for (k, v) in gens.iter().enumerate() {
                    put(format!("g{}", k + 1), format!("({}, {})", v[0], v[1]));
                }
            }
            CaseParams::Kodaira { a, b, c } => {
                put("a".into(), a.to_string());
                put("b".into(), b.to_string());
                put("c".into(), c.to_string());
                put("d".into(), (&(c * b) - &Scalar::one()).to_string());
            }
            CaseParams::Hopf { matrix } => {
                put("matrix".into(), format!("[[{}, {}], [{}, {}]]", matrix[0], matrix[1], matrix[2], matrix[3]));
            }
            CaseParams::Inoue => put("M".into(), "companion(t^3 - t - 1)".into()),
            CaseParams::HirzebruchScaling { n, a, b } => {
                put("n".into(), n.to_string());
                put("a".into(), a.to_string());
                put("b".into(), b.to_string());
            }
            CaseParams::HirzebruchTranslation { n, b, c } => {
                put("n".into(), n.to_string());
                put("b".into(), b.to_string());
                put("c".into(), c.to_string());
            }
            CaseParams::SchottkyProduct { pairs, multiplier } => {
                let text: Vec<String> = pairs
                    .iter()
                    .map(|[p, q]| format!("{},{};{},{}", p.center, p.radius, q.center, q.radius))
                    .collect();
                put("circles".into(), text.join("|"));
                put("multiplier".into(), multiplier.to_string());
            }
            CaseParams::FiberScaling { base, q, r, a } => {
                put("base".into(), base_name(*base).into());
                put("q".into(), q.to_string());
                put("R".into(), r.to_string());
                put("a".into(), a.to_string());
            }
            CaseParams::FiberTranslation { q, r, t1, t2 } => {
                put("q".into(), q.to_string());
                put("R".into(), r.to_string());
                put("t1".into(), t1.to_string());
                put("t2".into(), t2.to_string());
            }
            CaseParams::RuledBundle { q, r } => {
                put("q".into(), q.to_string());
                put("R".into(), r.to_string());
            }
        }
        out
    }

    fn row(&self) -> u8 {
        match self {
            CaseParams::Lattice { .. } => 7,
            CaseParams::CylinderLattice { .. } => 8,
            CaseParams::TorusLattice { .. } => 9,
            CaseParams::Kodaira { .. } => 10,
            CaseParams::Hopf { .. } => 11,
            CaseParams::Inoue => 12,
            CaseParams::HirzebruchScaling { .. } => 15,
            CaseParams::HirzebruchTranslation { .. } => 16,
            CaseParams::SchottkyProduct { .. } => 17,
            CaseParams::FiberScaling { .. } => 18,
            CaseParams::FiberTranslation { .. } => 19,
            CaseParams::RuledBundle { .. } => 20,
        }
    }
}

pub fn base_name(b: BaseDomain) -> &'static str {
    match b {
        BaseDomain::UpperHalfPlane => "H",
        BaseDomain::Punctured => "C*",
    }
}

/// Real periods whose span should be a lattice of the universal cover of `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    pub vectors: Vec<[f64; 4]>,
}

/// A row of the table made executable.
#[derive(Clone, Debug, PartialEq)]
pub struct GalleryCase {
    pub row_id: u8,
    pub generators: Vec<CaseGenerator>,
    pub domain: DomainDescriptor,
    pub expected_group: String,
    pub expected_quotient: String,
    pub params: CaseParams,
    pub relations: Vec<Relation>,
    pub periods: Option<PeriodData>,
}

impl GalleryCase {
    /// The case transported by the coordinate swap `(x, y) -> (y, x)`.
    pub fn conjugated_by_swap(&self) -> GalleryCase {
        GalleryCase {
            generators: self.generators.iter().map(CaseGenerator::conjugated_by_swap).collect(),
            domain: self.domain.swapped(),
            periods: self.periods.as_ref().map(|p| PeriodData {
                vectors: p.vectors.iter().map(|v| [v[2], v[3], v[0], v[1]]).collect(),
            }),
            ..self.clone()
        }
    }
}

/// Whether a row has a constructor.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CaseStatus {
    Constructible,
    DocumentedNotConstructible,
}

impl CaseStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CaseStatus::Constructible => "constructible",
            CaseStatus::DocumentedNotConstructible => "documented, not constructible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    pub row_id: u8,
    pub status: CaseStatus,
    pub expected_quotient: &'static str,
    /// Parameter names and their meaning.
    pub params_schema: &'static [(&'static str, &'static str)],
}

const NO_PARAMS: &[(&str, &str)] = &[];

/// All twenty rows.
pub fn registry() -> Vec<RegistryEntry> {
    use CaseStatus::*;
    let rows: [(u8, CaseStatus, &str, &'static [(&str, &str)]); 20] = [
        (1, DocumentedNotConstructible, "abelian surface over an elliptic base", NO_PARAMS),
        (2, DocumentedNotConstructible, "bielliptic surface", NO_PARAMS),
        (3, DocumentedNotConstructible, "blow-up of a decomposable ruled surface", NO_PARAMS),
        (4, DocumentedNotConstructible, "elliptic fibration over a non-rational curve", NO_PARAMS),
        (5, DocumentedNotConstructible, "ruled surface over an elliptic curve", NO_PARAMS),
        (6, DocumentedNotConstructible, "Kodaira surface over an elliptic base", NO_PARAMS),
        (7, Constructible, "complex torus", &[("vectors", "four translation vectors (a, b) in C^2")]),
        (8, Constructible, "complex torus", &[("gens", "three pairs (a, b) acting by (x + a, b y)")]),
        (9, Constructible, "complex torus", &[("gens", "two pairs (a, b) acting by (a x, b y)")]),
        (10, Constructible, "primary Kodaira surface", &[("a", "second vertical period"), ("b", "second base period"), ("c", "shear of the first base generator")]),
        (11, Constructible, "Hopf surface", &[("matrix", "contracting linear map [m0, m1, m2, m3]")]),
        (12, Constructible, "Inoue surface", NO_PARAMS),
        (13, DocumentedNotConstructible, "ball quotient", NO_PARAMS),
        (14, DocumentedNotConstructible, "irreducible bidisk quotient", NO_PARAMS),
        (15, Constructible, "Hopf surface", &[("n", "Hirzebruch index"), ("a", "base multiplier"), ("b", "fiber multiplier, 0 < |b| < 1, |b| < |a|^n")]),
        (16, Constructible, "Hopf surface", &[("n", "Hirzebruch index"), ("b", "fiber multiplier, 0 < |b| < 1"), ("c", "base translation, c != 0")]),
        (17, Constructible, "product of curves D1/G1 x D2/G2", &[("circles", "Schottky circle pairs c,r;c,r|..."), ("multiplier", "fiber multiplier m, |m| != 1")]),
        (18, Constructible, "elliptic fibration over D1/G1", &[("base", "H or C*"), ("q", "base multiplier"), ("R", "fiber factor without zeros or poles on D1"), ("a", "central multiplier")]),
        (19, Constructible, "elliptic fibration over D1/G1", &[("q", "base multiplier"), ("R", "fiber shift without poles on C*"), ("t1", "period"), ("t2", "period")]),
        (20, Constructible, "ruled surface over D1/G1", &[("q", "base multiplier"), ("R", "fiber factor c x^k")]),
    ];
    rows.into_iter()
        .map(|(row_id, status, expected_quotient, params_schema)| RegistryEntry { row_id, status, expected_quotient, params_schema })
        .collect()
}

fn constraint(msg: String) -> Error {
    Error::Constraint(msg)
}

fn norm2(a: &Scalar) -> BigRational {
    a.norm_sqr()
}

fn is_unit_modulus(a: &Scalar) -> bool {
    norm2(a).is_one()
}

fn nonzero(name: &str, row: u8, a: &Scalar) -> Result<()> {
    if a.is_zero() {
        return Err(constraint(format!("row {row} requires {name} != 0")));
    }
    Ok(())
}

fn off_unit_circle(name: &str, row: u8, a: &Scalar) -> Result<()> {
    nonzero(name, row, a)?;
    if is_unit_modulus(a) {
        return Err(constraint(format!("row {row} requires |{name}| != 1")));
    }
    Ok(())
}

fn log_c(z: Complex64) -> Complex64 {
    z.ln()
}

/// Checks that `R` involves only `x`.
fn check_base_only(r: &RationalFunction) -> Result<()> {
    if r.vars() != VarSet::Affine || r.num().degree_in(1) > 0 || r.den().degree_in(1) > 0 {
        return Err(constraint("R must be a rational function of x alone".into()));
    }
    if r.is_zero() {
        return Err(constraint("R must be nonzero".into()));
    }
    Ok(())
}

/// Roots of a univariate polynomial (given as `x`-only affine polynomial) by Durand-Kerner.
fn numeric_roots(p: &Poly) -> Vec<Complex64> {
    let n = p.degree_in(0) as usize;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[0] as usize] = c.to_complex();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let prev = roots.clone();
        for k in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for (j, r) in prev.iter().enumerate() {
                if j != k {
                    den *= roots[k] - r;
                }
            }
            let step = eval(roots[k]) / den;
            roots[k] -= step;
        }
    }
    roots
}

/// A zero of a univariate polynomial inside the base domain, decided exactly for linear factors.
fn root_in(p: &Poly, base: BaseDomain) -> Option<String> {
    let stripped = p.div_monomial(&p.min_exponents());
    let deg = stripped.degree_in(0);
    if deg == 0 {
        return None;
    }
    match base {
        BaseDomain::Punctured => Some(format!("{p} vanishes on C*")),
        BaseDomain::UpperHalfPlane if deg == 1 => {
            let c1 = stripped.coeff(&crate::algebra::Monomial::var(0, 1));
            let c0 = stripped.coeff(&crate::algebra::Monomial::default());
            let root = &(-&c0) * &c1.inv().expect("degree one");
            root.im().is_positive().then(|| format!("{p} vanishes at {root} in H"))
        }
        BaseDomain::UpperHalfPlane => numeric_roots(&stripped)
            .into_iter()
            .find(|z| z.im > 1e-9)
            .map(|z| format!("{p} vanishes near {z} in H (numeric root)")),
    }
}

fn scaling_pair(q: &Scalar, r: &RationalFunction) -> AffinePair {
    (var(0).scale(q), &var(1) * r)
}

fn domain(ambient: Ambient, kind: DomainKind, factors: [Factor; 2], description: &str) -> DomainDescriptor {
    DomainDescriptor::new(ambient, kind, factors, description)
}

/// Builds a row with the given parameters, or its defaults.
pub fn build_case(row_id: u8, params: Option<CaseParams>) -> Result<GalleryCase> {
    let params = match params {
        Some(p) => p,
        None => CaseParams::default_for(row_id).ok_or_else(|| {
            constraint(format!("row {row_id} is documented, not constructible"))
        })?,
    };
    if params.row() != row_id {
        return Err(constraint(format!("parameters of row {} given for row {row_id}", params.row())));
    }
    let x = var(0);
    let y = var(1);
    let mut relations = Vec::new();
    let mut periods = None;
    let (generators, dom, group, quotient): (Vec<CaseGenerator>, DomainDescriptor, &str, &str) = match &params {
        CaseParams::Lattice { vectors } => {
            if vectors.len() != 4 {
                return Err(constraint(format!("row 7 needs 4 translation vectors, got {}", vectors.len())));
            }
            let labels = ["t1", "t2", "t3", "t4"];
            let mut gens = Vec::new();
            let mut per = Vec::new();
            for (k, [a, b]) in vectors.iter().enumerate() {
                let map = ExactMap::jonquieres((&x + &cst(a), &y + &cst(b)))?;
                gens.push(CaseGenerator::exact(labels[k], map));
                let (a, b) = (a.to_complex(), b.to_complex());
                per.push([a.re, a.im, b.re, b.im]);
            }
            relations = all_commute(&labels);
            periods = Some(PeriodData { vectors: per });
            (gens, domain(Ambient::P2, DomainKind::AffinePlane, [Factor::Plane, Factor::Plane], "C x C"), "Z^4", "complex torus")
        }
        CaseParams::CylinderLattice { gens: g } => {
            if g.len() != 3 {
                return Err(constraint(format!("row 8 needs 3 generators, got {}", g.len())));
            }
            let labels = ["g1", "g2", "g3"];
            let mut gens = Vec::new();
            let mut per = Vec::new();
            for (k, [a, b]) in g.iter().enumerate() {
                nonzero("b", 8, b)?;
                let map = ExactMap::jonquieres((&x + &cst(a), y.scale(b)))?;
                gens.push(CaseGenerator::exact(labels[k], map));
                let (a, lb) = (a.to_complex(), log_c(b.to_complex()));
                per.push([a.re, a.im, lb.re, lb.im]);
            }
            per.push([0.0, 0.0, 0.0, 2.0 * core::f64::consts::PI]);
            relations = all_commute(&labels);
            periods = Some(PeriodData { vectors: per });
            (gens, domain(Ambient::P2, DomainKind::CStarCross, [Factor::Plane, Factor::Punctured], "C x C*"), "Z^3", "complex torus")
        }
        CaseParams::TorusLattice { gens: g } => {
            if g.len() != 2 {
                return Err(constraint(format!("row 9 needs 2 generators, got {}", g.len())));
            }
            let labels = ["g1", "g2"];
            let mut gens = Vec::new();
            let mut per = Vec::new();
            for (k, [a, b]) in g.iter().enumerate() {
                nonzero("a", 9, a)?;
                nonzero("b", 9, b)?;
                let map = ExactMap::jonquieres((x.scale(a), y.scale(b)))?;
                gens.push(CaseGenerator::exact(labels[k], map));
                let (la, lb) = (log_c(a.to_complex()), log_c(b.to_complex()));
                per.push([la.re, la.im, lb.re, lb.im]);
            }
            let tau = 2.0 * core::f64::consts::PI;
            per.push([0.0, tau, 0.0, 0.0]);
            per.push([0.0, 0.0, 0.0, tau]);
            relations = all_commute(&labels);
            periods = Some(PeriodData { vectors: per });
            (gens, domain(Ambient::P2, DomainKind::TorusCover, [Factor::Punctured, Factor::Punctured], "C* x C*"), "Z^2", "complex torus")
        }
        CaseParams::Kodaira { a, b, c } => {
            if a.im().is_zero() || b.im().is_zero() {
                return Err(constraint("row 10 requires Im a != 0 and Im b != 0 so the periods span a lattice".into()));
            }
            nonzero("c", 10, c)?;
            let d = &(c * b) - &Scalar::one();
            let one = Scalar::one();
            let maps = [
                ("t1", (x.clone(), &y + &cst(&one))),
                ("t2", (x.clone(), &y + &cst(a))),
                ("g1", (&x + &cst(&one), &x.scale(c) + &y)),
                ("g2", (&x + &cst(b), &x.scale(&d) + &y)),
            ];
            let mut gens = Vec::new();
            for (l, m) in maps {
                gens.push(CaseGenerator::exact(l, ExactMap::jonquieres(m)?));
            }
            let labels = ["t1", "t2", "g1", "g2"];
            relations = vec![
                Relation::commute(&labels, 0, 1),
                Relation::commute(&labels, 0, 2),
                Relation::commute(&labels, 0, 3),
                Relation::commute(&labels, 1, 2),
                Relation::commute(&labels, 1, 3),
                Relation {
                    label: "g1 g2 g1^-1 g2^-1 = t1".into(),
                    lhs: vec![(2, 1), (3, 1), (2, -1), (3, -1)],
                    rhs: vec![(0, 1)],
                },
            ];
            (
                gens,
                domain(Ambient::P2, DomainKind::AffinePlane, [Factor::Plane, Factor::Plane], "C x C"),
                "nilpotent extension of Z^2 by Z^2",
                "primary Kodaira surface",
            )
        }
        CaseParams::Hopf { matrix: m } => {
            let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
            if det.is_zero() {
                return Err(constraint("row 11 requires an invertible linear map".into()));
            }
            let [a, b, c, d] = m.clone().map(|s| s.to_complex());
            let t = a + d;
            let disc = (t * t - 4.0 * (a * d - b * c)).sqrt();
            let rho = ((t + disc) / 2.0).norm().max(((t - disc) / 2.0).norm());
            if rho >= 1.0 {
                return Err(constraint(format!("row 11 requires spectral radius < 1, got {rho}")));
            }
            let inv = det.inv()?;
            let lin = |p: &[Scalar; 4]| (&x.scale(&p[0]) + &y.scale(&p[1]), &x.scale(&p[2]) + &y.scale(&p[3]));
            let mi = [&m[3] * &inv, &(-&m[1]) * &inv, &(-&m[2]) * &inv, &m[0] * &inv];
            let map = ExactMap { forward: lin(m), inverse: lin(&mi) };
            (
                vec![CaseGenerator::exact("h", map)],
                domain(Ambient::P2, DomainKind::PuncturedPlane, [Factor::Plane, Factor::Plane], "C^2 minus the origin"),
                "Z",
                "Hopf surface",
            )
        }
        CaseParams::Inoue => {
            let (gens, rels) = inoue_generators();
            relations = rels;
            (
                gens,
                domain(Ambient::P2, DomainKind::HalfPlaneCross, [Factor::UpperHalfPlane, Factor::Plane], "H x C"),
                "Z^3 semidirect Z",
                "Inoue surface",
            )
        }
        CaseParams::HirzebruchScaling { n, a, b } => {
            nonzero("a", 15, a)?;
            let nb = norm2(b);
            if nb.is_zero() || nb >= BigRational::one() {
                return Err(constraint(format!("row 15 requires 0 < |b| < 1, got |b|^2 = {nb}")));
            }
            let na = num_traits::pow(norm2(a), *n as usize);
            if nb >= na {
                return Err(constraint(format!("row 15 requires |b| < |a|^n, got |b|^2 = {nb} >= |a|^(2n) = {na}")));
            }
            let map = ExactMap::jonquieres((x.scale(a), y.scale(b)))?;
            (
                vec![CaseGenerator::exact("f", map)],
                domain(
                    Ambient::P1xP1,
                    DomainKind::ZariskiFiberComplement { n: *n },
                    [Factor::Plane, Factor::Punctured],
                    "F_n minus two sections, chart over the finite fibers",
                ),
                "Z",
                "Hopf surface",
            )
        }
        CaseParams::HirzebruchTranslation { n, b, c } => {
            let nb = norm2(b);
            if nb.is_zero() || nb >= BigRational::one() {
                return Err(constraint(format!("row 16 requires 0 < |b| < 1, got |b|^2 = {nb}")));
            }
            nonzero("c", 16, c)?;
            let map = ExactMap::jonquieres((&x + &cst(c), y.scale(b)))?;
            (
                vec![CaseGenerator::exact("g", map)],
                domain(
                    Ambient::P1xP1,
                    DomainKind::ZariskiFiberComplement { n: *n },
                    [Factor::Plane, Factor::Punctured],
                    "F_n minus two sections, chart over the finite fibers",
                ),
                "Z",
                "Hopf surface",
            )
        }
        CaseParams::SchottkyProduct { pairs, multiplier } => {
            off_unit_circle("m", 17, multiplier)?;
            let mut numeric_pairs = Vec::new();
            for [p, q] in pairs {
                for c in [p, q] {
                    if !c.radius.is_real() || !c.radius.re().is_positive() {
                        return Err(constraint("row 17 requires positive real radii".into()));
                    }
                }
                let circ = |c: &ExactCircle| Circle { center: c.center.to_complex(), radius: c.radius.to_complex().re };
                numeric_pairs.push(CirclePair { source: circ(p), target: circ(q) });
            }
            let group: KleinianGroup = schottky_build(&numeric_pairs)?;
            let mut gens = Vec::new();
            let mut labels: Vec<String> = Vec::new();
            for (k, [p, q]) in pairs.iter().enumerate() {
                // z -> c' + r r' / (z - c)
                let rr = &p.radius * &q.radius;
                let num = &(&x.scale(&q.center) + &cst(&rr)) - &cst(&(&q.center * &p.center));
                let den = &x - &cst(&p.center);
                let fx = num.checked_div(&den)?;
                let label = format!("s{}", k + 1);
                gens.push(CaseGenerator::exact(&label, ExactMap::jonquieres((fx, y.clone()))?));
                labels.push(label);
            }
            gens.push(CaseGenerator::exact("h", ExactMap::jonquieres((x.clone(), y.scale(multiplier)))?));
            labels.push("h".into());
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let h = refs.len() - 1;
            relations = (0..h).map(|k| Relation::commute(&refs, k, h)).collect();
            (
                gens,
                domain(
                    Ambient::P1xP1,
                    DomainKind::ProductOfComponents,
                    [Factor::SchottkyComponent(group), Factor::Punctured],
                    "Omega x C*",
                ),
                "free group times Z",
                "product of curves",
            )
        }
        CaseParams::FiberScaling { base, q, r, a } => {
            check_base_only(r)?;
            off_unit_circle("q", 18, q)?;
            off_unit_circle("a", 18, a)?;
            if *base == BaseDomain::UpperHalfPlane && !(q.is_real() && q.re().is_positive()) {
                return Err(constraint("row 18 over H requires q real and positive".into()));
            }
            for p in [r.num(), r.den()] {
                if let Some(w) = root_in(p, *base) {
                    return Err(constraint(format!("row 18 requires R without zeros or poles in D1: {w}")));
                }
            }
            let gens = vec![
                CaseGenerator::exact("h", ExactMap::jonquieres((x.clone(), y.scale(a)))?),
                CaseGenerator::exact("g", ExactMap::jonquieres(scaling_pair(q, r))?),
            ];
            relations = all_commute(&["h", "g"]);
            let (kind, f0, desc) = match base {
                BaseDomain::UpperHalfPlane => (DomainKind::DiskCrossStar, Factor::UpperHalfPlane, "H x C*"),
                BaseDomain::Punctured => (DomainKind::TorusCover, Factor::Punctured, "C* x C*"),
            };
            (gens, domain(Ambient::P1xP1, kind, [f0, Factor::Punctured], desc), "central extension of G1 = Z by Z", "elliptic fibration")
        }
        CaseParams::FiberTranslation { q, r, t1, t2 } => {
            check_base_only(r)?;
            off_unit_circle("q", 19, q)?;
            if r.den().num_terms() != 1 {
                return Err(constraint(format!("row 19 requires R without poles in C*: denominator {}", r.den())));
            }
            if (t1 * &t2.conj()).im().is_zero() {
                return Err(constraint("row 19 requires t1, t2 linearly independent over R".into()));
            }
            let gens = vec![
                CaseGenerator::exact("t1", ExactMap::jonquieres((x.clone(), &y + &cst(t1)))?),
                CaseGenerator::exact("t2", ExactMap::jonquieres((x.clone(), &y + &cst(t2)))?),
                CaseGenerator::exact("g", ExactMap::jonquieres((x.scale(q), &y + r))?),
            ];
            relations = all_commute(&["t1", "t2", "g"]);
            (
                gens,
                domain(Ambient::P1xP1, DomainKind::CStarCross, [Factor::Punctured, Factor::Plane], "C* x C"),
                "central extension of G1 = Z by Z^2",
                "elliptic fibration",
            )
        }
        CaseParams::RuledBundle { q, r } => {
            check_base_only(r)?;
            off_unit_circle("q", 20, q)?;
            for p in [r.num(), r.den()] {
                if let Some(w) = root_in(p, BaseDomain::Punctured) {
                    return Err(constraint(format!("row 20 requires R without zeros or poles on C*: {w}")));
                }
            }
            let gens = vec![CaseGenerator::exact("g", ExactMap::jonquieres(scaling_pair(q, r))?)];
            (
                gens,
                domain(Ambient::P1xP1, DomainKind::DiskCrossP1, [Factor::Punctured, Factor::Sphere], "C* x P1"),
                "isomorphic to G1 = Z",
                "ruled surface",
            )
        }
    };
    Ok(GalleryCase {
        row_id,
        generators,
        domain: dom,
        expected_group: group.into(),
        expected_quotient: quotient.into(),
        params,
        relations,
        periods,
    })
}

/// The integer matrix `M` with characteristic polynomial `t^3 - t - 1`.
pub const INOUE_MATRIX: [[i64; 3]; 3] = [[0, 1, 0], [0, 0, 1], [1, 1, 0]];

/// Real root `alpha` and the complex root `beta` with positive imaginary part of `t^3 - t - 1`.
pub fn inoue_eigenvalues() -> (f64, Complex64) {
    let mut a = 1.3f64;
    for _ in 0..60 {
        a -= (a * a * a - a - 1.0) / (3.0 * a * a - 1.0);
    }
    // t^3 - t - 1 = (t - a)(t^2 + a t + a^2 - 1)
    let disc = 4.0 * (a * a - 1.0) - a * a;
    (a, Complex64::new(-a / 2.0, Float::sqrt(disc) / 2.0))
}

fn inoue_generators() -> (Vec<CaseGenerator>, Vec<Relation>) {
    let (alpha, beta) = inoue_eigenvalues();
    let c = |re: f64| Complex64::new(re, 0.0);
    let lin = |k: Complex64, i: u32, j: u32| NumRational::polynomial(NumPoly::new(vec![(i, j, k)]));
    let shift = |i: u32, j: u32, t: Complex64| {
        NumRational::polynomial(NumPoly::new(vec![(i, j, c(1.0)), (0, 0, t)]))
    };
    let g0 = CaseGenerator::numeric(
        "g0",
        format!("(x, y) -> ({alpha:.12} x, ({beta:.12}) y)"),
        NumMap::new(lin(c(alpha), 1, 0), lin(beta, 0, 1)),
        NumMap::new(lin(c(1.0 / alpha), 1, 0), lin(beta.inv(), 0, 1)),
    );
    let mut gens = vec![g0];
    for k in 0..3u32 {
        let a = c(Float::powi(alpha, k as i32));
        let b = beta.powu(k);
        gens.push(CaseGenerator::numeric(
            &format!("g{}", k + 1),
            format!("(x, y) -> (x + {:.12}, y + ({b:.12}))", a.re),
            NumMap::new(shift(1, 0, a), shift(0, 1, b)),
            NumMap::new(shift(1, 0, -a), shift(0, 1, -b)),
        ));
    }
    let labels = ["g0", "g1", "g2", "g3"];
    let mut rels = Vec::new();
    for (i, row) in INOUE_MATRIX.iter().enumerate() {
        let rhs: Vec<(usize, i64)> =
            row.iter().enumerate().filter(|(_, &e)| e != 0).map(|(j, &e)| (j + 1, e)).collect();
        let text: Vec<String> = rhs.iter().map(|(j, e)| format!("g{j}^{e}")).collect();
        rels.push(Relation {
            label: format!("g0 g{} g0^-1 = {}", i + 1, text.join(" ")),
            lhs: vec![(0, 1), (i + 1, 1), (0, -1)],
            rhs,
        });
    }
    for i in 1..4 {
        for j in i + 1..4 {
            rels.push(Relation::commute(&labels, i, j));
        }
    }
    (gens, rels)
}
