//! JSON forms of maps, verdicts and gallery reports.

use cremona_core::algebra::Poly;
use cremona_core::gallery::{
    registry, CaseParams, CheckOutcome, GalleryCase, LatticeCheck, VerificationReport, Witness,
};
use cremona_core::kleinian::sphere::is_infinite;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::params::override_form;
use crate::parse::MapForm;
use crate::SCHEMA_VERSION;

/// Wraps a payload with the schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut obj = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    Value::Object(obj)
}

/// `[re, im]`, or `null` for the point at infinity.
pub fn complex(z: Complex64) -> Value {
    if is_infinite(z) { Value::Null } else { json!([z.re, z.im]) }
}

pub fn points(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

/// `{model, components[], degree, formula}`.
pub fn map(model: &str, components: &[Poly], degree: u32, form: &MapForm) -> Value {
    json!({
        "model": model,
        "components": components.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "degree": degree,
        "formula": form.to_string(),
    })
}

fn witness(w: &Witness) -> Value {
    json!({
        "word": w.word,
        "point": [complex(w.point[0]), complex(w.point[1])],
        "detail": w.detail,
    })
}

fn check(c: &CheckOutcome) -> Value {
    json!({
        "passed": c.passed,
        "witnesses": c.witnesses.iter().map(witness).collect::<Vec<_>>(),
    })
}

fn named(params: &CaseParams) -> Value {
    Value::Object(params.named().into_iter().map(|(k, v)| (k, json!(v))).collect())
}

pub fn report(case: &GalleryCase, r: &VerificationReport) -> Value {
    let lattice = match r.lattice_rank {
        LatticeCheck::NotApplicable => Value::Null,
        LatticeCheck::Checked { passed, determinant, rank } => {
            json!({ "passed": passed, "determinant": determinant, "rank": rank })
        }
    };
    json!({
        "row_id": r.row_id,
        "passed": r.passed(),
        "expected_group": case.expected_group,
        "expected_quotient": case.expected_quotient,
        "domain": {
            "ambient": case.domain.ambient.to_string(),
            "kind": case.domain.kind.name(),
            "description": case.domain.description,
        },
        "generators": case.generators.iter().map(|g| json!({
            "label": g.label,
            "formula": g.formula,
            "exact": g.exact.is_some(),
        })).collect::<Vec<_>>(),
        "params": named(&case.params),
        "config": {
            "sample_count": r.config.sample_count,
            "word_length": r.config.word_length,
            "epsilon": r.config.epsilon,
            "rng_seed": r.config.rng_seed,
        },
        "regularity": check(&r.regularity),
        "invariance": check(&r.invariance),
        "freeness": check(&r.freeness),
        "discontinuity": {
            "passed": r.discontinuity.passed,
            "counts": r.discontinuity.counts,
            "threshold": r.discontinuity.threshold,
            "witnesses": r.discontinuity.witnesses.iter().map(witness).collect::<Vec<_>>(),
        },
        "lattice_rank": lattice,
        "relations": r.relations.iter().map(|o| json!({
            "label": o.label,
            "passed": o.passed,
            "exact": o.exact,
            "residual": o.residual,
        })).collect::<Vec<_>>(),
        "element_count": r.element_count,
        "notes": r.notes,
    })
}

/// The case catalog with defaults in `--param` syntax.
pub fn catalog() -> Value {
    let rows: Vec<Value> = registry()
        .into_iter()
        .map(|e| {
            let schema: Map<String, Value> =
                e.params_schema.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let defaults = CaseParams::default_for(e.row_id)
                .map(|p| json!(override_form(&p)))
                .unwrap_or(Value::Null);
            json!({
                "row_id": e.row_id,
                "status": e.status.label(),
                "expected_quotient": e.expected_quotient,
                "params_schema": schema,
                "defaults": defaults,
            })
        })
        .collect();
    json!({ "rows": rows })
}
