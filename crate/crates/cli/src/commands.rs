//! Subcommands and the dispatcher.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cremona_core::algebra::Scalar;
use cremona_core::birational::{check_inverse, detect_affine, FiberDetection};
use cremona_core::centralizers::{centralizer_membership, NormalFormElliptic};
use cremona_core::dynamics::{dynamical_degree, Budget, DegreeGrowth, DegreeSequence};
use cremona_core::gallery::{build_case, registry, verify_case, CaseStatus, VerifyConfig};
use cremona_core::kleinian::{schottky_build, Circle, CirclePair, KleinianGroup, MoebiusElement};
use cremona_core::toric::{
    logform_pullback_scalar, monomial_type, valuation_orbit, IntMatrix, MonomialMap, ValuationVector,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::params::{apply_overrides, numeric_circles, parse_assignment, ConfigFile, Overrides};
use crate::parse::{parse_map, parse_scalar, parse_scalar_list, MapExpression, MapForm, ModelTag};
use crate::render::{csv_table, View};
use crate::{json as js, CliError, ExitStatus, Outcome, TERM_CAP_ENV};

#[derive(Parser, Debug)]
#[command(name = "cremona", version, about = "Birational maps of rational surfaces and birational Kleinian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree sequence, growth class and dynamical degree of a map.
    Classify(ClassifyArgs),
    /// The composite f o g.
    Compose(PairArgs),
    /// Whether g is the inverse of f.
    InvertCheck(PairArgs),
    /// Whether g commutes with an elliptic normal form f.
    Centralizer(PairArgs),
    /// A monomial map from its exponent matrix.
    Toric(ToricArgs),
    /// Orbit of a point under a Mobius group.
    Orbit(OrbitArgs),
    /// Limit-set cloud of a Mobius group.
    Limitset(LimitArgs),
    /// The catalog of constructions.
    #[command(subcommand)]
    Gallery(GalleryCommand),
}

#[derive(Subcommand, Debug)]
enum GalleryCommand {
    /// All rows with status, parameter names and defaults.
    List(OutArgs),
    /// Builds rows and checks the group action on the invariant set.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModelChoice {
    /// Jonquieres maps on P1 x P1, everything else on P2.
    Auto,
    P2,
    P1xp1,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    map: String,
    #[arg(long, default_value_t = 10)]
    iters: usize,
    #[arg(long, value_enum, default_value_t = ModelChoice::Auto)]
    model: ModelChoice,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ToricArgs {
    /// Exponent matrix `a,b,c,d` of `(alpha x^a y^b, beta x^c y^d)`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value_t = 15)]
    iters: usize,
    /// Valuation vector `(v(x), v(y))` to push forward.
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    valuation: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Circle pairs `c,r;c,r|c,r;c,r`; each pair gives one Schottky generator.
    #[arg(long, conflicts_with = "moebius", allow_hyphen_values = true)]
    schottky: Option<String>,
    /// A generator `a,b,c,d` acting by `(a z + b) / (c z + d)`; repeat for more.
    #[arg(long, allow_hyphen_values = true)]
    moebius: Vec<String>,
}

#[derive(Args, Debug)]
struct ArtifactArgs {
    /// Write a binary PPM of the points.
    #[arg(long)]
    render: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    size: usize,
    /// Half the side of the rendered square.
    #[arg(long, default_value_t = 5.0)]
    extent: f64,
    /// Write `re, im, chordal_weight` rows.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    point: String,
    /// Longest reduced word.
    #[arg(long, default_value_t = 6)]
    length: usize,
    /// Maximum number of images.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
    #[command(flatten)]
    artifacts: ArtifactArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    proxy_epsilon: f64,
    #[arg(long, default_value_t = 8)]
    proxy_length: usize,
    #[command(flatten)]
    artifacts: ArtifactArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Rows to verify; all constructible rows when omitted.
    #[arg(long)]
    row: Vec<u8>,
    #[arg(long)]
    samples: Option<usize>,
    /// Longest word.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file with `gallery` parameter overrides and a `verify` section.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Parameter override `name=value`; needs a single --row.
    #[arg(long, allow_hyphen_values = true)]
    param: Vec<String>,
    /// Conjugate every case by `(x, y) -> (y, x)` first.
    #[arg(long)]
    swap: bool,
    #[command(flatten)]
    out: OutArgs,
}

/// What a subcommand hands back.
struct Report {
    json: Value,
    status: ExitStatus,
    out: Option<PathBuf>,
}

impl Report {
    fn new(command: &str, body: Value, out: &OutArgs) -> Self {
        Report { json: js::envelope(command, body), status: ExitStatus::Success, out: out.out.clone() }
    }

    fn with_status(mut self, status: ExitStatus) -> Self {
        self.status = status;
        self
    }
}

/// Parses `args` (program name first), runs the command and collects its output. Files named
/// by `--out`, `--render` and `--csv` are written before returning.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: ExitStatus::Usage, stdout: Vec::new(), stderr: text }
            } else {
                Outcome { status: ExitStatus::Success, stdout: text.into_bytes(), stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command).and_then(emit) {
        Ok(o) => o,
        Err(e) => Outcome { status: e.status(), stdout: Vec::new(), stderr: format!("error: {e}\n") },
    }
}

fn emit(r: Report) -> Result<Outcome, CliError> {
    let mut text = serde_json::to_string_pretty(&r.json).expect("JSON values serialize");
    text.push('\n');
    let stdout = match &r.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            Vec::new()
        }
        None => text.into_bytes(),
    };
    Ok(Outcome { status: r.status, stdout, stderr: String::new() })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn dispatch(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Classify(a) => classify(a),
        Command::Compose(a) => compose(a),
        Command::InvertCheck(a) => invert_check(a),
        Command::Centralizer(a) => centralizer(a),
        Command::Toric(a) => toric(a),
        Command::Orbit(a) => orbit(a),
        Command::Limitset(a) => limitset(a),
        Command::Gallery(GalleryCommand::List(out)) => Ok(Report::new("gallery list", js::catalog(), &out)),
        Command::Gallery(GalleryCommand::Verify(a)) => gallery_verify(a),
    }
}

fn budget() -> Result<Budget, CliError> {
    match std::env::var(TERM_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|term_cap| Budget { term_cap })
            .map_err(|_| CliError::Usage(format!("{TERM_CAP_ENV}='{v}' is not a nonnegative integer"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() { json!(x) } else { Value::Null }
}

fn classify(a: ClassifyArgs) -> Result<Report, CliError> {
    let m = parse_map(&a.map)?;
    let budget = budget()?;
    let jonquieres = || -> Result<Option<_>, CliError> {
        let (r1, r2) = m.affine()?;
        Ok(match detect_affine(&r1, &r2) {
            Ok(FiberDetection::Jonquieres(j)) => Some(j),
            _ => None,
        })
    };
    let seq: DegreeSequence = match (a.model, m.model()) {
        (ModelChoice::P2, _) => m.to_cremona()?.degree_sequence_with(a.iters, budget),
        (ModelChoice::P1xp1, ModelTag::Biproj) | (ModelChoice::Auto, ModelTag::Biproj) => {
            m.to_p1xp1()?.degree_sequence_with(a.iters, budget)
        }
        (ModelChoice::P1xp1, _) => match jonquieres()? {
            Some(j) => j.degree_sequence_with(a.iters, budget),
            None => m.to_p1xp1()?.degree_sequence_with(a.iters, budget),
        },
        (ModelChoice::Auto, _) => match jonquieres()? {
            Some(j) => j.degree_sequence_with(a.iters, budget),
            None => m.to_cremona()?.degree_sequence_with(a.iters, budget),
        },
    };
    let dd = dynamical_degree(&seq);
    let body = json!({
        "map": m.printed(),
        "model": seq.model.to_string(),
        "iterations": a.iters,
        "degrees": seq.degrees,
        "fiber_degrees": seq.fiber_degrees,
        "class": dd.class.name(),
        "growth": dd.class.growth(),
        "lambda": finite_or_null(dd.lambda),
        "translation_length": finite_or_null(dd.translation_length),
        "ratio_estimate": finite_or_null(dd.ratio_estimate),
        "root_estimate": finite_or_null(dd.root_estimate),
        "term_cap": budget.term_cap,
        "truncated": seq.truncated,
    });
    let status = if seq.truncated { ExitStatus::Truncated } else { ExitStatus::Success };
    Ok(Report::new("classify", body, &a.out).with_status(status))
}

/// Both maps on P1 x P1 when either is written there, otherwise on P2.
fn common_model(f: &MapExpression, g: &MapExpression) -> ModelTag {
    if f.model() == ModelTag::Biproj || g.model() == ModelTag::Biproj { ModelTag::Biproj } else { ModelTag::Proj2 }
}

fn compose(a: PairArgs) -> Result<Report, CliError> {
    let (f, g) = (parse_map(&a.f)?, parse_map(&a.g)?);
    let result = if common_model(&f, &g) == ModelTag::Biproj {
        let h = f.to_p1xp1()?.compose(&g.to_p1xp1()?);
        js::map("p1xp1", h.components(), h.degree(), &MapForm::Biproj(h.components().clone()))
    } else {
        let h = f.to_cremona()?.compose(&g.to_cremona()?);
        js::map("p2", h.components(), h.degree(), &MapForm::Proj2(h.components().clone()))
    };
    let body = json!({ "f": f.printed(), "g": g.printed(), "result": result });
    Ok(Report::new("compose", body, &a.out))
}

fn invert_check(a: PairArgs) -> Result<Report, CliError> {
    let (f, g) = (parse_map(&a.f)?, parse_map(&a.g)?);
    let (inverse, composite) = if common_model(&f, &g) == ModelTag::Biproj {
        let (f, g) = (f.to_p1xp1()?, g.to_p1xp1()?);
        let fg = f.compose(&g);
        (fg.is_identity() && g.compose(&f).is_identity(), MapForm::Biproj(fg.components().clone()))
    } else {
        let (f, g) = (f.to_cremona()?, g.to_cremona()?);
        (check_inverse(&f, &g), MapForm::Proj2(f.compose(&g).components().clone()))
    };
    let body = json!({
        "f": f.printed(),
        "g": g.printed(),
        "inverse": inverse,
        "f_after_g": composite.to_string(),
    });
    let status = if inverse { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    Ok(Report::new("invert-check", body, &a.out).with_status(status))
}

fn centralizer(a: PairArgs) -> Result<Report, CliError> {
    let (f, g) = (parse_map(&a.f)?, parse_map(&a.g)?);
    let nf = NormalFormElliptic::recognize(&f.to_jonquieres()?)?;
    let verdict = centralizer_membership(&nf, &g.to_jonquieres()?)?;
    let normal_form = match &nf {
        NormalFormElliptic::Diagonal { alpha, beta, k } => {
            json!({ "variant": "Diagonal", "alpha": alpha.to_string(), "beta": beta.to_string(), "k": k })
        }
        NormalFormElliptic::Translation { alpha } => {
            json!({ "variant": "Translation", "alpha": alpha.to_string(), "k": nf.k() })
        }
    };
    let body = json!({
        "f": f.printed(),
        "g": g.printed(),
        "normal_form": normal_form,
        "member": verdict.member,
        "predicted_form": verdict.predicted_form,
        "witness": verdict.witness,
    });
    Ok(Report::new("centralizer", body, &a.out))
}

fn integers<const N: usize>(flag: &str, text: &str) -> Result<[i64; N], CliError> {
    let v: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("--{flag} '{text}': {e}")))?;
    v.try_into().map_err(|_| CliError::Usage(format!("--{flag} '{text}': expected {N} integers")))
}

fn toric(a: ToricArgs) -> Result<Report, CliError> {
    let [p, q, r, s] = integers::<4>("matrix", &a.matrix)?;
    let [v0, v1] = integers::<2>("valuation", &a.valuation)?;
    let matrix = IntMatrix::new(p, q, r, s);
    let f = MonomialMap::new(parse_scalar(&a.alpha)?, parse_scalar(&a.beta)?, matrix)?;
    let seq = f.degree_sequence_with(a.iters, budget()?);
    let dd = dynamical_degree(&seq);
    let class = monomial_type(&f);
    let rho = matrix.spectral_radius();
    let orbit = valuation_orbit(&matrix, ValuationVector([v0, v1]), a.iters)?;
    let body = json!({
        "map": f.to_string(),
        "matrix": [[p, q], [r, s]],
        "det": matrix.det(),
        "trace": matrix.trace(),
        "class": class.name(),
        "growth": class.growth(),
        "spectral_radius": { "exact": rho.to_string(), "value": rho.value() },
        "degrees": seq.degrees,
        "lambda_estimate": finite_or_null(dd.ratio_estimate),
        "logform_scalar": logform_pullback_scalar(&f)?,
        "valuation_orbit": orbit.iter().map(|v| v.0).collect::<Vec<_>>(),
        "valuation_max_norms": orbit.iter().map(|v| v.max_norm()).collect::<Vec<_>>(),
        "truncated": seq.truncated,
    });
    let status = if seq.truncated { ExitStatus::Truncated } else { ExitStatus::Success };
    Ok(Report::new("toric", body, &a.out).with_status(status))
}

/// The group and, for Schottky groups, its disks.
fn build_group(g: &GroupArgs) -> Result<(KleinianGroup, Value), CliError> {
    if let Some(text) = &g.schottky {
        let pairs: Vec<CirclePair> = numeric_circles(text)?
            .into_iter()
            .map(|[(c0, r0), (c1, r1)]| CirclePair {
                source: Circle { center: c0, radius: r0 },
                target: Circle { center: c1, radius: r1 },
            })
            .collect();
        let group = schottky_build(&pairs)?;
        let disks: Vec<Value> = pairs
            .iter()
            .flat_map(|p| [p.source, p.target])
            .map(|c| json!({ "center": js::complex(c.center), "radius": c.radius }))
            .collect();
        return Ok((group, json!({ "schottky": text, "disks": disks })));
    }
    if g.moebius.is_empty() {
        return Err(CliError::Usage("give --schottky or at least one --moebius".into()));
    }
    let gens = g
        .moebius
        .iter()
        .map(|t| -> Result<MoebiusElement, CliError> {
            let e = parse_scalar_list(t)?;
            let [a, b, c, d]: [Scalar; 4] =
                e.try_into().map_err(|_| CliError::Usage(format!("--moebius '{t}': expected a,b,c,d")))?;
            Ok(MoebiusElement::new(a.to_complex(), b.to_complex(), c.to_complex(), d.to_complex())?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((KleinianGroup::from_generators(gens), json!({ "moebius": g.moebius })))
}

fn write_artifacts(a: &ArtifactArgs, pts: &[Complex64]) -> Result<(), CliError> {
    if let Some(path) = &a.render {
        if a.size == 0 || !(a.extent > 0.0) {
            return Err(CliError::Usage("--size and --extent must be positive".into()));
        }
        write_file(path, &View { size: a.size, extent: a.extent }.render(pts))?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &csv_table(pts))?;
    }
    Ok(())
}

fn generator_summary(g: &KleinianGroup) -> Value {
    Value::Array(
        g.generators()
            .iter()
            .zip(g.labels())
            .map(|(m, l)| json!({ "label": l, "matrix": m.to_string(), "type": m.classify().to_string() }))
            .collect(),
    )
}

fn orbit(a: OrbitArgs) -> Result<Report, CliError> {
    let (group, desc) = build_group(&a.group)?;
    let z = parse_scalar(&a.point)?.to_complex();
    let o = group.orbit(z, a.length, a.cap);
    write_artifacts(&a.artifacts, &o.points)?;
    let body = json!({
        "group": desc,
        "generators": generator_summary(&group),
        "point": js::complex(z),
        "length": a.length,
        "cap": a.cap,
        "count": o.points.len(),
        "truncated": o.truncated,
        "points": js::points(&o.points),
    });
    let status = if o.truncated { ExitStatus::Truncated } else { ExitStatus::Success };
    Ok(Report::new("orbit", body, &a.out).with_status(status))
}

fn limitset(a: LimitArgs) -> Result<Report, CliError> {
    let (group, desc) = build_group(&a.group)?;
    let cloud = group.limit_set_approx(a.budget, a.seed);
    write_artifacts(&a.artifacts, &cloud.points)?;
    let witness = group.discreteness_witness(a.proxy_epsilon, a.proxy_length);
    let in_disks = group.circle_pairs().map(|pairs| {
        cloud.points.iter().all(|&z| pairs.iter().any(|p| p.source.contains(z) || p.target.contains(z)))
    });
    let body = json!({
        "group": desc,
        "generators": generator_summary(&group),
        "budget": a.budget,
        "seed": a.seed,
        "count": cloud.points.len(),
        "diagnostic": cloud.diagnostic,
        "inside_disks": in_disks,
        "discreteness_proxy": {
            "epsilon": a.proxy_epsilon,
            "max_length": a.proxy_length,
            "passed": witness.is_none(),
            "witness": witness.map(|w| group.word_label(&w)),
        },
        "points": js::points(&cloud.points),
    });
    Ok(Report::new("limitset", body, &a.out))
}

fn gallery_verify(a: VerifyArgs) -> Result<Report, CliError> {
    let config = a.config.as_deref().map(ConfigFile::load).transpose()?.unwrap_or_default();
    let mut cfg = VerifyConfig::default();
    if let Some(v) = &config.verify {
        v.apply(&mut cfg);
    }
    cfg.sample_count = a.samples.unwrap_or(cfg.sample_count);
    cfg.word_length = a.length.unwrap_or(cfg.word_length);
    cfg.epsilon = a.epsilon.unwrap_or(cfg.epsilon);
    cfg.rng_seed = a.seed.unwrap_or(cfg.rng_seed);

    let rows: Vec<u8> = if a.row.is_empty() {
        registry().into_iter().filter(|e| e.status == CaseStatus::Constructible).map(|e| e.row_id).collect()
    } else {
        a.row.clone()
    };
    if !a.param.is_empty() && rows.len() != 1 {
        return Err(CliError::Usage("--param needs exactly one --row".into()));
    }
    let mut reports = Vec::with_capacity(rows.len());
    let mut all_passed = true;
    for &row in &rows {
        let mut overrides: Overrides = config.overrides(row);
        for p in &a.param {
            let (k, v) = parse_assignment(p)?;
            overrides.insert(k, v);
        }
        let params = apply_overrides(row, &overrides)?;
        let mut case = build_case(row, params)?;
        if a.swap {
            case = case.conjugated_by_swap();
        }
        let report = verify_case(&case, &cfg);
        all_passed &= report.passed();
        let mut j = js::report(&case, &report);
        j["swapped"] = json!(a.swap);
        reports.push(j);
    }
    let body = json!({ "passed": all_passed, "reports": reports });
    let status = if all_passed { ExitStatus::Success } else { ExitStatus::VerificationFailed };
    Ok(Report::new("gallery verify", body, &a.out).with_status(status))
}
