//! Gallery parameters from `name=value` text and JSON config files.

use std::collections::BTreeMap;
use std::path::Path;

use cremona_core::algebra::{RationalFunction, Scalar, VarSet};
use cremona_core::gallery::{BaseDomain, CaseParams, ExactCircle, VerifyConfig};
use num_complex::Complex64;
use serde::Deserialize;

use crate::parse::{parse_expr, parse_scalar, parse_scalar_list};
use crate::CliError;

/// `name -> value` overrides for one row.
pub type Overrides = BTreeMap<String, String>;

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// Row id to parameter overrides.
    #[serde(default)]
    pub gallery: BTreeMap<String, BTreeMap<String, serde_json::Value>>,
    #[serde(default)]
    pub verify: Option<VerifySection>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub sample_count: Option<usize>,
    pub word_length: Option<usize>,
    pub epsilon: Option<f64>,
    pub rng_seed: Option<u64>,
}

impl VerifySection {
    pub fn apply(&self, cfg: &mut VerifyConfig) {
        if let Some(v) = self.sample_count {
            cfg.sample_count = v;
        }
        if let Some(v) = self.word_length {
            cfg.word_length = v;
        }
        if let Some(v) = self.epsilon {
            cfg.epsilon = v;
        }
        if let Some(v) = self.rng_seed {
            cfg.rng_seed = v;
        }
    }
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    pub fn overrides(&self, row: u8) -> Overrides {
        self.gallery
            .get(&row.to_string())
            .map(|m| {
                m.iter()
                    .map(|(k, v)| {
                        let text = match v {
                            serde_json::Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        (k.clone(), text)
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Splits `name=value`.
pub fn parse_assignment(text: &str) -> Result<(String, String), CliError> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected name=value, found '{text}'")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn bad(name: &str, value: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("parameter {name}='{value}': {why}"))
}

fn scalar(name: &str, v: &str) -> Result<Scalar, CliError> {
    parse_scalar(v).map_err(|e| bad(name, v, e))
}

fn pairs(name: &str, v: &str) -> Result<Vec<[Scalar; 2]>, CliError> {
    v.split(';')
        .map(|p| match parse_scalar_list(p).map_err(|e| bad(name, v, e))?.as_slice() {
            [a, b] => Ok([a.clone(), b.clone()]),
            _ => Err(bad(name, v, "each entry needs two numbers a,b")),
        })
        .collect()
}

fn fiber_factor(name: &str, v: &str) -> Result<RationalFunction, CliError> {
    parse_expr(v, VarSet::Affine, &["x"]).map_err(|e| bad(name, v, e))
}

fn index(name: &str, v: &str) -> Result<u32, CliError> {
    v.parse().map_err(|e| bad(name, v, e))
}

/// Circle pairs written `c,r;c,r|c,r;c,r`.
pub fn parse_circles(v: &str) -> Result<Vec<[ExactCircle; 2]>, CliError> {
    let circle = |t: &str| -> Result<ExactCircle, CliError> {
        match parse_scalar_list(t).map_err(|e| bad("circles", v, e))?.as_slice() {
            [c, r] => Ok(ExactCircle { center: c.clone(), radius: r.clone() }),
            _ => Err(bad("circles", v, "a circle is center,radius")),
        }
    };
    v.split('|')
        .map(|pair| match pair.split(';').collect::<Vec<_>>().as_slice() {
            [a, b] => Ok([circle(a)?, circle(b)?]),
            _ => Err(bad("circles", v, "a pair is two circles separated by ';'")),
        })
        .collect()
}

/// Floating-point circle pairs for the Kleinian commands.
pub fn numeric_circles(v: &str) -> Result<Vec<[(Complex64, f64); 2]>, CliError> {
    Ok(parse_circles(v)?
        .into_iter()
        .map(|p| p.map(|c| (c.center.to_complex(), c.radius.to_complex().re)))
        .collect())
}

/// Applies overrides to the default parameters of a row.
pub fn apply_overrides(row: u8, overrides: &Overrides) -> Result<Option<CaseParams>, CliError> {
    if overrides.is_empty() {
        return Ok(None);
    }
    let mut params = CaseParams::default_for(row)
        .ok_or_else(|| CliError::Usage(format!("row {row} takes no parameters")))?;
    for (name, v) in overrides {
        let n = name.as_str();
        let unknown = || CliError::Usage(format!("row {row} has no parameter '{name}'"));
        match &mut params {
            CaseParams::Lattice { vectors } => match n {
                "vectors" => *vectors = pairs(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::CylinderLattice { gens } | CaseParams::TorusLattice { gens } => match n {
                "gens" => *gens = pairs(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::Kodaira { a, b, c } => match n {
                "a" => *a = scalar(n, v)?,
                "b" => *b = scalar(n, v)?,
                "c" => *c = scalar(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::Hopf { matrix } => match n {
                "matrix" => {
                    let m = parse_scalar_list(v).map_err(|e| bad(n, v, e))?;
                    *matrix = m.try_into().map_err(|_| bad(n, v, "expected four entries"))?;
                }
                _ => return Err(unknown()),
            },
            CaseParams::Inoue => return Err(unknown()),
            CaseParams::HirzebruchScaling { n: k, a, b } => match n {
                "n" => *k = index(n, v)?,
                "a" => *a = scalar(n, v)?,
                "b" => *b = scalar(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::HirzebruchTranslation { n: k, b, c } => match n {
                "n" => *k = index(n, v)?,
                "b" => *b = scalar(n, v)?,
                "c" => *c = scalar(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::SchottkyProduct { pairs, multiplier } => match n {
                "circles" => *pairs = parse_circles(v)?,
                "multiplier" => *multiplier = scalar(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::FiberScaling { base, q, r, a } => match n {
                "base" => {
                    *base = match v.as_str() {
                        "H" => BaseDomain::UpperHalfPlane,
                        "C*" => BaseDomain::Punctured,
                        _ => return Err(bad(n, v, "expected H or C*")),
                    }
                }
                "q" => *q = scalar(n, v)?,
                "R" => *r = fiber_factor(n, v)?,
                "a" => *a = scalar(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::FiberTranslation { q, r, t1, t2 } => match n {
                "q" => *q = scalar(n, v)?,
                "R" => *r = fiber_factor(n, v)?,
                "t1" => *t1 = scalar(n, v)?,
                "t2" => *t2 = scalar(n, v)?,
                _ => return Err(unknown()),
            },
            CaseParams::RuledBundle { q, r } => match n {
                "q" => *q = scalar(n, v)?,
                "R" => *r = fiber_factor(n, v)?,
                _ => return Err(unknown()),
            },
        }
    }
    Ok(Some(params))
}

fn pair_text(v: &[[Scalar; 2]]) -> String {
    v.iter().map(|[a, b]| format!("{a},{b}")).collect::<Vec<_>>().join(";")
}

/// The parameters in the `name=value` syntax accepted by [`apply_overrides`].
pub fn override_form(params: &CaseParams) -> Overrides {
    let mut out = Overrides::new();
    let mut put = |k: &str, v: String| {
        out.insert(k.to_string(), v);
    };
    match params {
        CaseParams::Lattice { vectors } => put("vectors", pair_text(vectors)),
        CaseParams::CylinderLattice { gens } | CaseParams::TorusLattice { gens } => put("gens", pair_text(gens)),
        CaseParams::Hopf { matrix } => {
            put("matrix", matrix.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
        }
        CaseParams::Inoue => {}
        CaseParams::Kodaira { .. } => {
            for (k, v) in params.named() {
                // d is derived from the others.
                if k != "d" {
                    put(&k, v);
                }
            }
        }
        _ => {
            for (k, v) in params.named() {
                put(&k, v);
            }
        }
    }
    out
}
