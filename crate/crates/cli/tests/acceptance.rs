//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::Instant;

use cremona_cli::parse_map;
use cremona_core::algebra::{RationalFunction, Scalar, VarSet};
use cremona_core::birational::{check_inverse, JonquieresElement};
use cremona_core::centralizers::{centralizer_membership, commutes, NormalFormElliptic};
use cremona_core::dynamics::{classify_growth, dynamical_degree, DegreeGrowth, GrowthClass};
use cremona_core::gallery::{build_case, verify_case, CaseParams, VerifyConfig};
use cremona_core::kleinian::{directed_hausdorff, KleinianGroup, MoebiusElement};
use cremona_core::rng::Lcg;
use cremona_core::toric::{
    logform_pullback_scalar, monomial_type, valuation_orbit, IntMatrix, MonomialMap, ValuationVector,
};
use num_complex::Complex64;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn cremona(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cremona")).args(args).env_remove("CREMONA_TERM_CAP").output().unwrap()
}

fn stdout_json(o: &std::process::Output) -> Result<Value, String> {
    serde_json::from_slice(&o.stdout).map_err(|e| format!("bad JSON: {e}"))
}

fn standard_involution() -> Check {
    let start = Instant::now();
    let sigma = parse_map("[x0:x1:x2] -> [x1*x2 : x0*x2 : x0*x1]").map_err(|e| e.to_string())?;
    let sigma = sigma.to_cremona().map_err(|e| e.to_string())?;
    let inverse = check_inverse(&sigma, &sigma);
    let elapsed = start.elapsed().as_secs_f64();
    ensure(sigma.degree() == 2, || format!("degree {}", sigma.degree()))?;
    ensure(inverse, || "sigma o sigma is not the identity".into())?;
    ensure(elapsed < 1.0, || format!("took {elapsed:.3} s"))?;
    Ok(format!("degree 2, involution, {:.1} ms", elapsed * 1e3))
}

fn henon_dynamical_degree() -> Check {
    let o = cremona(&["classify", "--map", "(x,y)->(y, y^2 - x)", "--iters", "10"]);
    let v = stdout_json(&o)?;
    let expected: Vec<u64> = (1..=10).map(|k| 1 << k).collect();
    let degrees: Vec<u64> = serde_json::from_value(v["degrees"].clone()).map_err(|e| e.to_string())?;
    ensure(degrees == expected, || format!("degrees {degrees:?}"))?;
    let lambda = v["lambda"].as_f64().unwrap_or(f64::NAN);
    let ell = v["translation_length"].as_f64().unwrap_or(f64::NAN);
    ensure((lambda - 2.0).abs() <= 1e-6, || format!("lambda {lambda}"))?;
    ensure((ell - std::f64::consts::LN_2).abs() <= 1e-6, || format!("translation length {ell}"))?;
    ensure(v["class"] == "Loxodromic", || format!("class {}", v["class"]))?;
    Ok(format!("degrees 2..1024, lambda {lambda}, translation length {ell:.9}"))
}

fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn monomial_spectral_radius() -> Check {
    let a = IntMatrix::new(2, 1, 1, 1);
    let f = MonomialMap::from_matrix(a).map_err(|e| e.to_string())?;
    let seq = f.degree_sequence(15);
    let lambda = dynamical_degree(&seq).ratio_estimate;
    let target = (3.0 + 5f64.sqrt()) / 2.0;
    ensure((lambda - target).abs() < 1e-3, || format!("lambda estimate {lambda}"))?;
    ensure(matches!(monomial_type(&f), GrowthClass::Loxodromic { .. }), || "matrix type not loxodromic".into())?;
    ensure(matches!(classify_growth(&seq), GrowthClass::Loxodromic { .. }), || "degrees not exponential".into())?;
    let orbit = valuation_orbit(&a, ValuationVector([1, 0]), 15).map_err(|e| e.to_string())?;
    for (k, v) in orbit.iter().enumerate() {
        let n = k + 1;
        ensure(v.max_norm() >= fibonacci(2 * n), || format!("step {n}: {:?} below Fib({})", v.0, 2 * n))?;
    }
    Ok(format!("lambda estimate {lambda:.9} vs {target:.9}; valuation orbit dominates Fib(2n) for n <= 15"))
}

fn jonquieres_twist() -> Check {
    let o = cremona(&["classify", "--map", "(x,y) -> (2*x, x*y)", "--iters", "12"]);
    let v = stdout_json(&o)?;
    let fiber: Vec<u64> = serde_json::from_value(v["fiber_degrees"].clone()).map_err(|e| e.to_string())?;
    ensure(fiber == (1..=12).collect::<Vec<u64>>(), || format!("fiber degrees {fiber:?}"))?;
    ensure(v["growth"] == "linear" && v["class"] == "JonquieresTwist", || format!("class {}", v["class"]))?;
    Ok("linear growth, fiber degree n at step n for n <= 12".into())
}

fn small(rng: &mut Lcg) -> Scalar {
    Scalar::gaussian(rng.below(9) as i64 - 4, rng.below(9) as i64 - 4)
}

fn nonzero(rng: &mut Lcg) -> Scalar {
    loop {
        let s = small(rng);
        if s != Scalar::from_i64(0) {
            return s;
        }
    }
}

fn centralizer_dichotomy() -> Check {
    let v = VarSet::Affine;
    let (x, y) = (RationalFunction::var(v, 0), RationalFunction::var(v, 1));
    let c = |s: Scalar| RationalFunction::constant(v, s);
    let aff = |r1: RationalFunction, r2: RationalFunction| {
        JonquieresElement::from_affine(&r1, &r2).map_err(|e| e.to_string())
    };
    let f = NormalFormElliptic::diagonal(Scalar::from_i64(2), Scalar::from_i64(3)).map_err(|e| e.to_string())?;
    let fj = f.to_jonquieres();
    let mut rng = Lcg::new(2024);
    let mut nonconstant = 0;
    while nonconstant < 100 {
        let deg = 1 + rng.below(3) as i32;
        let mut r = &c(nonzero(&mut rng)) * &x.powi(deg).unwrap();
        for k in 0..deg {
            r = &r + &(&c(small(&mut rng)) * &x.powi(k).unwrap());
        }
        if rng.below(2) == 0 {
            r = r.checked_div(&(&x + &c(nonzero(&mut rng)))).unwrap();
        }
        if r.as_constant().is_some() {
            continue;
        }
        nonconstant += 1;
        let g = aff(&c(nonzero(&mut rng)) * &x, &r * &y)?;
        let verdict = centralizer_membership(&f, &g).map_err(|e| e.to_string())?;
        ensure(!verdict.member && !commutes(&fj, &g), || format!("{g} reported as a member"))?;
    }
    for _ in 0..100 {
        let g = aff(&c(nonzero(&mut rng)) * &x, &c(nonzero(&mut rng)) * &y)?;
        let verdict = centralizer_membership(&f, &g).map_err(|e| e.to_string())?;
        ensure(verdict.member && commutes(&fj, &g), || format!("{g} reported as a non-member"))?;
    }
    Ok("100 nonconstant R: NotMember; 100 diagonal: Member; all by exact commutation".into())
}

fn random_unimodular(rng: &mut Lcg) -> IntMatrix {
    let mut m = IntMatrix::IDENTITY;
    for _ in 0..1 + rng.below(6) {
        let k = rng.below(5) as i64 - 2;
        let e = match rng.below(3) {
            0 => IntMatrix::new(1, k, 0, 1),
            1 => IntMatrix::new(1, 0, k, 1),
            _ => IntMatrix::new(0, 1, 1, 0),
        };
        m = m.checked_mul(&e).expect("small entries");
    }
    m
}

fn log_form_pullback() -> Check {
    let mut rng = Lcg::new(99);
    let maps: Vec<MonomialMap> = (0..50)
        .map(|_| MonomialMap::new(nonzero(&mut rng), nonzero(&mut rng), random_unimodular(&mut rng)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut dets = [0; 2];
    for (k, f) in maps.iter().enumerate() {
        let s = logform_pullback_scalar(f).map_err(|e| e.to_string())?;
        ensure(s == f.matrix().det(), || format!("{f}: scalar {s}, det {}", f.matrix().det()))?;
        dets[(s == 1) as usize] += 1;
        let g = &maps[(k + 1) % maps.len()];
        let fg = f.compose(g).map_err(|e| e.to_string())?;
        let sfg = logform_pullback_scalar(&fg).map_err(|e| e.to_string())?;
        let sg = logform_pullback_scalar(g).map_err(|e| e.to_string())?;
        ensure(sfg == s * sg, || format!("not multiplicative on {f} and {g}"))?;
    }
    Ok(format!("50 maps ({} with det -1, {} with det 1), scalar = det, multiplicative", dets[0], dets[1]))
}

const SCHOTTKY: &str = "3,1;-3,1|3i,1;-3i,1";

fn kleinian_suite() -> Check {
    let o = cremona(&["limitset", "--schottky", SCHOTTKY, "--budget", "20000", "--seed", "1"]);
    let v = stdout_json(&o)?;
    ensure(v["inside_disks"] == true, || "cloud leaves the disks".into())?;
    ensure(v["discreteness_proxy"]["passed"] == true, || format!("proxy witness {}", v["discreteness_proxy"]["witness"]))?;
    ensure(v["discreteness_proxy"]["epsilon"] == 1e-6 && v["discreteness_proxy"]["max_length"] == 8, || {
        "proxy run at the wrong parameters".into()
    })?;
    let cloud: Vec<Complex64> = v["points"]
        .as_array()
        .ok_or("no points")?
        .iter()
        .map(|p| Complex64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    let circles = cremona_cli::params::numeric_circles(SCHOTTKY).map_err(|e| e.to_string())?;
    let pairs: Vec<_> = circles
        .iter()
        .map(|[(c0, r0), (c1, r1)]| cremona_core::kleinian::CirclePair {
            source: cremona_core::kleinian::Circle { center: *c0, radius: *r0 },
            target: cremona_core::kleinian::Circle { center: *c1, radius: *r1 },
        })
        .collect();
    let group = cremona_core::kleinian::schottky_build(&pairs).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for l in 0..group.letter_count() {
        let g = group.letter(l);
        let image: Vec<Complex64> = cloud.iter().map(|&z| g.apply(z)).collect();
        worst = worst.max(directed_hausdorff(&image, &cloud));
    }
    ensure(worst < 1e-2, || format!("generator images at Hausdorff distance {worst}"))?;
    let rotation = MoebiusElement::dilation(Complex64::from_polar(1.0, 2f64.sqrt())).map_err(|e| e.to_string())?;
    let rot = KleinianGroup::from_generators(vec![rotation]);
    let witness = rot.discreteness_witness(1e-2, 40).ok_or("irrational rotation passes the proxy at L = 40")?;
    Ok(format!(
        "{} points inside the disks, image Hausdorff {worst:.2e}, proxy passes at (1e-6, 8); rotation by sqrt(2) caught by a word of length {}",
        cloud.len(),
        witness.len()
    ))
}

fn gallery_suite() -> Check {
    let o = cremona(&["gallery", "verify", "--samples", "200", "--length", "6", "--epsilon", "1e-6", "--seed", "1"]);
    let v = stdout_json(&o)?;
    let reports = v["reports"].as_array().ok_or("no reports")?;
    let failed: Vec<String> =
        reports.iter().filter(|r| r["passed"] != true).map(|r| r["row_id"].to_string()).collect();
    ensure(reports.len() == 12 && failed.is_empty() && o.status.code() == Some(0), || {
        format!("{} reports, failing rows {failed:?}", reports.len())
    })?;
    let z = Scalar::from_i64(0);
    let degenerate = CaseParams::Lattice {
        vectors: vec![
            [Scalar::from_i64(1), z.clone()],
            [Scalar::from_i64(2), z.clone()],
            [z.clone(), Scalar::from_i64(1)],
            [z, Scalar::i()],
        ],
    };
    let case = build_case(7, Some(degenerate)).map_err(|e| e.to_string())?;
    let report = verify_case(&case, &VerifyConfig::default());
    ensure(!report.lattice_rank.passed(), || "degenerate lattice passes lattice_rank".into())?;
    let bad = CaseParams::HirzebruchScaling { n: 1, a: Scalar::ratio(1, 2), b: Scalar::ratio(3, 4) };
    ensure(build_case(15, Some(bad)).is_err(), || "|b| >= |a|^n accepted".into())?;
    let o = cremona(&["gallery", "verify", "--row", "15", "--param", "a=1/2", "--param", "b=3/4"]);
    ensure(o.status.code() == Some(2), || format!("CLI exit {:?} on |b| >= |a|^n", o.status.code()))?;
    Ok("12 default rows pass; degenerate lattice fails lattice_rank; |b| >= |a|^n rejected".into())
}

fn inoue_relations() -> Check {
    let case = build_case(12, None).map_err(|e| e.to_string())?;
    let report = verify_case(&case, &VerifyConfig::default());
    ensure(!report.relations.is_empty(), || "no relations checked".into())?;
    let worst = report.relations.iter().map(|r| r.residual).fold(0.0, f64::max);
    ensure(report.relations.iter().all(|r| r.passed && r.residual <= 1e-8), || format!("worst residual {worst:e}"))?;
    Ok(format!("{} relations, worst residual {worst:.1e}", report.relations.len()))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
        let p = |name: &str| dir.path().join(format!("{tag}-{name}"));
        let (ppm, cloud, gallery) = (p("cloud.ppm"), p("cloud.json"), p("gallery.json"));
        let o = cremona(&[
            "limitset",
            "--schottky",
            SCHOTTKY,
            "--budget",
            "20000",
            "--seed",
            "1",
            "--render",
            ppm.to_str().unwrap(),
            "--out",
            cloud.to_str().unwrap(),
        ]);
        ensure(o.status.success(), || "limitset failed".into())?;
        let o = cremona(&["gallery", "verify", "--seed", "1", "--out", gallery.to_str().unwrap()]);
        ensure(o.status.success(), || "gallery verify failed".into())?;
        [ppm, cloud, gallery].iter().map(|f| std::fs::read(f).map_err(|e| e.to_string())).collect()
    };
    let (a, b) = (run("a")?, run("b")?);
    let names = ["PPM", "limit-set JSON", "gallery JSON"];
    for ((x, y), name) in a.iter().zip(&b).zip(names) {
        ensure(x == y, || format!("{name} differs between runs"))?;
    }
    Ok(format!("PPM ({} bytes) and both JSON reports byte-identical across two runs", a[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("standard quadratic involution", standard_involution),
        ("loxodromic dynamical degree", henon_dynamical_degree),
        ("monomial spectral radius", monomial_spectral_radius),
        ("Jonquieres twist growth", jonquieres_twist),
        ("centralizer dichotomy", centralizer_dichotomy),
        ("log-form pullback", log_form_pullback),
        ("Kleinian suite", kleinian_suite),
        ("gallery", gallery_suite),
        ("Inoue relations", inoue_relations),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2} s): {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2} s): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
