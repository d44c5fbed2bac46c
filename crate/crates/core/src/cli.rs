//! Command-line front end.
//!
//! Exit codes: 0 when everything checked holds, 1 when a verification fails
//! or a numerical engine gives up, 2 for usage and configuration errors.
//! With `--format json` every error is printed to stdout as
//! `{"error": <kind>, "detail": <message>}`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus;
use crate::domain::{Exponent, Family, FamilySpec, Inertia, Points};
use crate::error::{Error, Result};
use crate::exact_engine::{inertia_exact, PivotEvent};
use crate::float_engine::{inertia_float, spectrum, RoutePolicy, SpectrumReport};
use crate::generators::{build, cross_kwong};
use crate::matrix::{DenseMatrix, ScalarMode};
use crate::oracle::{kwong_expected_nullity, predict_kwong_inertia};
use crate::scalar::{format_f64, Rational, Scalar, ScalarToken};
use crate::signs::{
    build_g_coeffs, companion_sign_changes, count_positive_zeros_f, descartes_zero_bound, ssr_check, OrderVerdict,
    DEFAULT_SCAN_SAMPLES,
};
use crate::structure::verify_vandermonde_factorization;
use crate::sweep::{detect_transitions, emit_trajectory, sweep_inertia, transition_locations};

/// Largest order the `auto` engine hands to exact arithmetic.
pub const AUTO_EXACT_MAX_ORDER: usize = 10;
/// Environment variable holding the default `--jobs`.
pub const JOBS_ENV: &str = "KWONG_JOBS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kwong", version, about = "Inertia of Kwong matrices and their relatives")]
pub struct RunConfig {
    /// Output format; `text` means CSV for `gen` and `sweep`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Exact,
    Float,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Direct,
    CoshCongruence,
    Auto,
}

impl From<RouteArg> for RoutePolicy {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Direct => RoutePolicy::Direct,
            RouteArg::CoshCongruence => RoutePolicy::CoshCongruence,
            RouteArg::Auto => RoutePolicy::Auto,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a matrix of one of the families.
    Gen(GenArgs),
    /// Closed-form inertia of K_r of order n.
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Compute the inertia of a matrix.
    #[command(alias = "compute")]
    Inertia(InertiaArgs),
    /// Compare computed Kwong inertia with the closed form over exponents.
    Verify(VerifyArgs),
    /// Eigenvalue trajectory of K_r over an exponent range.
    Sweep(SweepArgs),
    /// Sign-regularity of all minors up to a given order.
    Ssr(SsrArgs),
    /// Check K_r = Wᵀ V W for odd integer r.
    Factor {
        #[arg(long)]
        points: String,
        #[arg(long)]
        r: i64,
    },
    /// Sign changes and positive zeros of the auxiliary function f.
    Descartes {
        #[arg(long)]
        points: String,
        /// Comma-separated weights c_i.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = DEFAULT_SCAN_SAMPLES)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, default_value = "kwong")]
    pub family: String,
    #[arg(long)]
    pub points: String,
    /// Second node set, cross-Kwong only.
    #[arg(long)]
    pub q: Option<String>,
    /// Exponent; unused by the Cauchy family.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Defaults to exact whenever the entries are rational.
    #[arg(long, value_enum)]
    pub mode: Option<Engine>,
}

#[derive(Debug, Args)]
pub struct InertiaArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    pub engine: Engine,
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    pub route: RouteArg,
    /// Include the pivot log (exact) or the spectrum (float).
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub points: Option<String>,
    /// Order; without `--points` the nodes are `1..n`, or random with `--seed`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "r_grid")]
    pub r: Option<String>,
    /// `start:stop:step`, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub r_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    pub engine: Engine,
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    pub route: RouteArg,
    #[arg(long, env = JOBS_ENV)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub points: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub r_max: f64,
    #[arg(long)]
    pub steps: usize,
    /// Write the trajectory here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    pub route: RouteArg,
    /// Width to which inertia transitions are bisected.
    #[arg(long, default_value_t = 1e-6)]
    pub refine_tol: f64,
}

#[derive(Debug, Args)]
pub struct SsrArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Stop at the first order that is not sign-uniform.
    #[arg(long)]
    pub fail_fast: bool,
}

/// What a command prints and the exit code it earns.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn pass(text: String, json: Value) -> Self {
        Self { text, json, code: EXIT_PASS }
    }
}

/// Exit code for a library error: bad input is a usage error, a numerical
/// engine that gives up is a failed verification.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoConvergence { .. } | Error::AmbiguousNullity { .. } | Error::RankDeficient { .. } => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

pub fn error_json(kind: &str, detail: &str) -> Value {
    json!({ "error": kind, "detail": detail })
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let config = match RunConfig::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(out, "{e}");
                return EXIT_PASS;
            }
            if wants_json(&args) {
                let _ = writeln!(out, "{}", error_json("Usage", e.to_string().trim()));
            } else {
                let _ = write!(err, "{e}");
            }
            return EXIT_USAGE;
        }
    };
    let json = config.format == Format::Json;
    match dispatch(&config) {
        Ok(o) => {
            let body = if json { o.json.to_string() } else { o.text };
            let _ = writeln!(out, "{}", body.trim_end());
            o.code
        }
        Err(e) => {
            if json {
                let _ = writeln!(out, "{}", error_json(e.kind(), &e.to_string()));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            exit_code(&e)
        }
    }
}

/// Clap failed, so look for `--format json` by hand.
fn wants_json(args: &[OsString]) -> bool {
    let args: Vec<&str> = args.iter().filter_map(|a| a.to_str()).collect();
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "json") || args.contains(&"--format=json")
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    match &config.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Predict { n, r } => cmd_predict(*n, r),
        Command::Inertia(a) => cmd_inertia(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a, config.format),
        Command::Ssr(a) => cmd_ssr(a),
        Command::Factor { points, r } => cmd_factor(points, *r),
        Command::Descartes {
            points,
            weights,
            r,
            samples,
        } => cmd_descartes(points, weights, r, *samples),
    }
}

impl MatrixArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let family = Family::parse(&self.family)?;
        let points = Points::parse(&self.points)?;
        let second = self.q.as_deref().map(Points::parse).transpose()?;
        let r = match (&self.r, family) {
            (Some(r), _) => Exponent::parse(r)?,
            (None, Family::Cauchy) => Exponent::int(0),
            (None, _) => return Err(Error::BadExponent(format!("--r is required for {}", self.family))),
        };
        FamilySpec::new(family, points, second, r)
    }
}

/// Exact when the entries are rational and the order is affordable.
fn exact_possible(spec: &FamilySpec) -> bool {
    let rational_r = spec.r.is_integer() || spec.family == Family::Cauchy;
    let rational_points = spec.points.mode() == ScalarMode::Exact
        && spec.second_points.as_ref().is_none_or(|q| q.mode() == ScalarMode::Exact);
    rational_r && rational_points && spec.family != Family::CoshKwong
}

fn resolve_engine(engine: Engine, spec: &FamilySpec) -> Result<ScalarMode> {
    match engine {
        Engine::Exact if exact_possible(spec) => Ok(ScalarMode::Exact),
        Engine::Exact => Err(Error::ExactModeUnsupported(
            "the exact engine needs rational points, an integer exponent and a rational family".into(),
        )),
        Engine::Float => Ok(ScalarMode::Float),
        Engine::Auto if exact_possible(spec) && spec.points.len() <= AUTO_EXACT_MAX_ORDER => Ok(ScalarMode::Exact),
        Engine::Auto => Ok(ScalarMode::Float),
    }
}

fn mode_name(mode: ScalarMode) -> &'static str {
    match mode {
        ScalarMode::Exact => "exact",
        ScalarMode::Float => "float",
    }
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome> {
    let spec = a.matrix.spec()?;
    let mode = resolve_engine(a.mode.unwrap_or(Engine::Auto), &spec)?;
    if spec.family == Family::CrossKwong {
        let (text, entries) = match mode {
            ScalarMode::Exact => dense_out(&cross_kwong::<Rational>(&spec.points, spec.second_points.as_ref().unwrap(), &spec.r)?),
            ScalarMode::Float => dense_out(&cross_kwong::<f64>(&spec.points, spec.second_points.as_ref().unwrap(), &spec.r)?),
        };
        let json = json!({
            "rows": spec.points.len(),
            "mode": mode_name(mode),
            "entries": entries,
            "provenance": spec.to_json(),
        });
        return Ok(Outcome::pass(text, json));
    }
    let m = build(&spec, mode)?;
    Ok(Outcome::pass(m.to_csv(), m.to_json()))
}

fn dense_out<T: Scalar>(m: &DenseMatrix<T>) -> (String, Value) {
    (m.to_csv(), m.to_json_entries())
}

fn cmd_predict(n: usize, r: &str) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::EmptyPoints);
    }
    let r = Exponent::parse(r)?;
    let p = predict_kwong_inertia(n, r.value());
    let text = format!("{} {}", p.inertia, p.case_tag);
    let json = json!({ "n": n, "r": r, "caseTag": p.case_tag, "inertia": p.inertia });
    Ok(Outcome::pass(text, json))
}

/// Inertia by the chosen engine, with the explanation payload.
enum Computed {
    Exact(Inertia, crate::exact_engine::PivotLog),
    Float(SpectrumReport),
}

impl Computed {
    fn inertia(&self) -> Inertia {
        match self {
            Computed::Exact(i, _) => *i,
            Computed::Float(s) => s.inertia,
        }
    }

    fn engine(&self) -> &'static str {
        match self {
            Computed::Exact(..) => "exact",
            Computed::Float(_) => "float",
        }
    }
}

fn compute(spec: &FamilySpec, mode: ScalarMode, route: RoutePolicy) -> Result<Computed> {
    match mode {
        ScalarMode::Exact => {
            let (i, log) = inertia_exact(&build(spec, ScalarMode::Exact)?)?;
            Ok(Computed::Exact(i, log))
        }
        ScalarMode::Float if spec.family == Family::Kwong => {
            let nullity = kwong_expected_nullity(spec.points.len(), spec.r.value());
            Ok(Computed::Float(inertia_float(spec, route, nullity)?))
        }
        ScalarMode::Float => Ok(Computed::Float(spectrum(&build(spec, ScalarMode::Float)?, None)?)),
    }
}

fn cmd_inertia(a: &InertiaArgs) -> Result<Outcome> {
    let spec = a.matrix.spec()?;
    let mode = resolve_engine(a.engine, &spec)?;
    let computed = compute(&spec, mode, a.route.into())?;
    let inertia = computed.inertia();
    let mut json = json!({ "inertia": inertia, "engine": computed.engine() });
    let mut text = inertia.to_string();
    if a.explain {
        match &computed {
            Computed::Exact(_, log) => {
                // Rows are reported 1-based, like the minor witnesses of `ssr`.
                let mut events = Vec::new();
                for e in &log.events {
                    let (line, event) = match e {
                        PivotEvent::Diag { index, pivot } => (
                            format!("pivot row {}: {pivot}", index + 1),
                            json!({ "kind": "Diag", "row": index + 1, "pivot": pivot.to_text() }),
                        ),
                        PivotEvent::Block2x2 { indices: (i, j), det } => (
                            format!("block rows {},{}: det {det}", i + 1, j + 1),
                            json!({ "kind": "Block2x2", "rows": [i + 1, j + 1], "det": det.to_text() }),
                        ),
                    };
                    text.push('\n');
                    text.push_str(&line);
                    events.push(event);
                }
                if log.zero_block > 0 {
                    text.push_str(&format!("\nzero block of order {}", log.zero_block));
                }
                json["pivotLog"] = json!({ "events": events, "zeroBlock": log.zero_block });
            }
            Computed::Float(s) => {
                json["spectrum"] = serde_json::to_value(s).expect("serializable");
                let eigs: Vec<String> = s.eigenvalues.iter().map(|x| format_f64(*x)).collect();
                text.push_str(&format!(
                    "\neigenvalues: {}\nthreshold: {}\nroute: {}",
                    eigs.join(","),
                    format_f64(s.zero_threshold),
                    serde_json::to_value(s.conditioning_route).expect("serializable").as_str().unwrap_or_default()
                ));
            }
        }
    }
    Ok(Outcome::pass(text, json))
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse(format!("expected start:stop:step, got {text:?}"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    // Snap to 12 decimals so that e.g. 0.1-steps print as typed.
    Ok((0..=count)
        .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

fn verify_points(a: &VerifyArgs) -> Result<Points> {
    match (&a.points, a.n, a.seed) {
        (Some(p), n, _) => {
            let points = Points::parse(p)?;
            match n {
                Some(n) if n != points.len() => Err(Error::LengthMismatch {
                    left: n,
                    right: points.len(),
                }),
                _ => Ok(points),
            }
        }
        (None, Some(0), _) => Err(Error::EmptyPoints),
        (None, Some(n), Some(seed)) => Ok(corpus::random_rational_points(n, &mut corpus::rng(seed))),
        (None, Some(n), None) => Ok(Points::range(n)),
        (None, None, _) => Err(Error::Parse("verify needs --points or --n".into())),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let points = verify_points(a)?;
    let exponents: Vec<Exponent> = match (&a.r, &a.r_grid) {
        (Some(r), _) => vec![Exponent::parse(r)?],
        (None, Some(g)) => parse_grid(g)?.into_iter().map(Exponent::real).collect(),
        (None, None) => return Err(Error::Parse("verify needs --r or --r-grid".into())),
    };
    let specs: Vec<FamilySpec> = exponents.iter().map(|&r| FamilySpec::kwong(points.clone(), r)).collect();
    let modes: Vec<ScalarMode> = specs.iter().map(|s| resolve_engine(a.engine, s)).collect::<Result<_>>()?;
    let route: RoutePolicy = a.route.into();
    let n = points.len();

    let run_case = |(spec, mode): (&FamilySpec, &ScalarMode)| {
        let want = predict_kwong_inertia(n, spec.r.value());
        let got = compute(spec, *mode, route).map(|c| c.inertia());
        (spec.r, *mode, want, got)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| specs.par_iter().zip(modes.par_iter()).map(run_case).collect());

    let mut lines = Vec::new();
    let mut cases = Vec::new();
    let mut passed = 0;
    for (r, mode, want, got) in &results {
        let ok = matches!(got, Ok(i) if *i == want.inertia);
        passed += ok as usize;
        let (got_text, got_json, error) = match got {
            Ok(i) => (i.to_string(), json!(i), Value::Null),
            Err(e) => (format!("error {}", e.kind()), Value::Null, error_json(e.kind(), &e.to_string())),
        };
        lines.push(format!(
            "{} r={} engine={} inertia={} expected={} case={}",
            if ok { "PASS" } else { "FAIL" },
            format_f64(r.value()),
            mode_name(*mode),
            got_text,
            want.inertia,
            want.case_tag,
        ));
        let mut case = json!({
            "r": r,
            "engine": mode_name(*mode),
            "inertia": got_json,
            "expected": want.inertia,
            "caseTag": want.case_tag,
            "pass": ok,
        });
        if !error.is_null() {
            case["error"] = error;
        }
        cases.push(case);
    }
    let total = results.len();
    lines.push(format!("{passed}/{total} passed for points {points}"));
    let json = json!({ "points": points, "cases": cases, "passed": passed, "total": total });
    Ok(Outcome {
        text: lines.join("\n"),
        json,
        code: if passed == total { EXIT_PASS } else { EXIT_FAIL },
    })
}

fn cmd_sweep(a: &SweepArgs, format: Format) -> Result<Outcome> {
    let points = Points::parse(&a.points)?;
    let sweep = sweep_inertia(&points, a.r_min, a.r_max, a.steps, a.route.into())?;
    let transitions = detect_transitions(&sweep, a.refine_tol)?;
    let locations = transition_locations(&transitions, 1e3 * a.refine_tol);
    let json = json!({
        "points": points,
        "records": sweep.records,
        "transitions": transitions,
        "locations": locations,
    });
    let mut csv = Vec::new();
    emit_trajectory(&sweep.records, &mut csv).map_err(io_error)?;
    let csv = String::from_utf8(csv).expect("utf-8 csv");

    let Some(path) = &a.out else {
        return Ok(Outcome::pass(csv, json));
    };
    let mut file = BufWriter::new(File::create(path).map_err(io_error)?);
    match format {
        Format::Json => writeln!(file, "{json}"),
        Format::Text | Format::Csv => file.write_all(csv.as_bytes()),
    }
    .and_then(|_| file.flush())
    .map_err(io_error)?;
    let summary: Vec<String> = transitions
        .iter()
        .map(|t| {
            format!(
                "transition at r={} (width {}): {} -> {}",
                format_f64(t.refined_location),
                format_f64(t.width),
                t.inertia_before,
                t.inertia_after
            )
        })
        .collect();
    let summary = if summary.is_empty() {
        "no transitions".to_string()
    } else {
        let at: Vec<String> = locations.iter().map(|x| format!("{x:.6}")).collect();
        format!("{}\ninertia changes at r = {}", summary.join("\n"), at.join(", "))
    };
    let status = json!({ "out": path.display().to_string(), "records": sweep.records.len(), "transitions": transitions });
    Ok(Outcome::pass(summary, status))
}

fn io_error(e: io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn cmd_ssr(a: &SsrArgs) -> Result<Outcome> {
    let spec = a.matrix.spec()?;
    if !exact_possible(&spec) {
        return Err(Error::ExactModeUnsupported("minor enumeration runs in exact arithmetic".into()));
    }
    let m = match spec.family {
        Family::CrossKwong => cross_kwong::<Rational>(&spec.points, spec.second_points.as_ref().unwrap(), &spec.r)?,
        _ => build(&spec, ScalarMode::Exact)?.to_dense_exact()?,
    };
    let report = ssr_check(&m, a.max_order.unwrap_or(m.rows()), a.fail_fast)?;
    let mut lines = Vec::new();
    let mut orders = Vec::new();
    for v in &report.orders {
        match v {
            OrderVerdict::SignUniform { k, sign } => {
                lines.push(format!("order {k}: uniform {sign:?}"));
                orders.push(json!({ "verdict": "SignUniform", "k": k, "sign": sign }));
            }
            OrderVerdict::Violation { k, witnesses } => {
                let shown: Vec<Value> = witnesses
                    .iter()
                    .map(|w| {
                        let rows: Vec<usize> = w.rows.iter().map(|i| i + 1).collect();
                        let cols: Vec<usize> = w.cols.iter().map(|j| j + 1).collect();
                        lines.push(format!("order {k}: minor rows {rows:?} cols {cols:?} = {}", w.value));
                        json!({ "rows": rows, "cols": cols, "value": w.value.to_text() })
                    })
                    .collect();
                lines.push(format!("order {k}: violation"));
                orders.push(json!({ "verdict": "Violation", "k": k, "witnesses": shown }));
            }
        }
    }
    lines.push(format!("SSR_{}: {}", report.max_order, if report.ssr { "yes" } else { "no" }));
    let json = json!({ "maxOrder": report.max_order, "orders": orders, "ssr": report.ssr });
    Ok(Outcome::pass(lines.join("\n"), json))
}

fn cmd_factor(points: &str, r: i64) -> Result<Outcome> {
    let points = Points::parse(points)?;
    let check = verify_vandermonde_factorization(&points, r)?;
    let text = format!(
        "W =\n{}\nV =\n{}\nresidual {}",
        check.pair.w.to_csv(),
        check.pair.v.to_csv(),
        check.residual
    );
    let json = json!({
        "w": check.pair.w.to_json_entries(),
        "v": check.pair.v.to_json_entries(),
        "residual": check.residual.to_text(),
        "holds": check.holds,
    });
    Ok(Outcome {
        text,
        json,
        code: if check.holds { EXIT_PASS } else { EXIT_FAIL },
    })
}

fn cmd_descartes(points: &str, weights: &str, r: &str, samples: usize) -> Result<Outcome> {
    let points = Points::parse(points)?;
    let r = Exponent::parse(r)?;
    let tokens: Vec<ScalarToken> = weights.split(',').map(ScalarToken::parse).collect::<Result<_>>()?;
    let c_float: Vec<f64> = tokens.iter().map(ScalarToken::to_f64).collect();
    let exact_weights: Option<Vec<Rational>> = tokens
        .iter()
        .map(|t| match t {
            ScalarToken::Exact(q) => Some(q.clone()),
            ScalarToken::Float(_) => None,
        })
        .collect();
    let (alpha, beta, s, s0) = match exact_weights {
        Some(c) if points.mode() == ScalarMode::Exact && r.is_integer() => descartes_parts(&points, &c, &r)?,
        _ => descartes_parts(&points, &c_float, &r)?,
    };
    let scan = count_positive_zeros_f(&points, &c_float, r.value(), samples)?;
    let roots: Vec<String> = scan.roots.iter().map(|x| format_f64(*x)).collect();
    let text = format!(
        "alpha: {}\nbeta: {}\nsign changes s = {s}, companion s0 = {s0}\npositive zeros found: {} [{}]",
        join_values(&alpha),
        join_values(&beta),
        scan.count,
        roots.join(",")
    );
    let json = json!({
        "alpha": alpha,
        "beta": beta,
        "s": s,
        "s0": s0,
        "zeroCount": scan.count,
        "roots": scan.roots,
    });
    Ok(Outcome::pass(text, json))
}

fn descartes_parts<T: Scalar>(points: &Points, c: &[T], r: &Exponent) -> Result<(Vec<Value>, Vec<Value>, usize, usize)> {
    let s = descartes_zero_bound(points, c, r)?;
    let s0 = companion_sign_changes(points, c, r)?;
    let g = build_g_coeffs(points, c, r)?;
    let values = |v: &[T]| -> Vec<Value> { v.iter().map(scalar_json).collect() };
    Ok((values(&g.alpha), values(&g.beta), s, s0))
}

/// Exact scalars as `"a/b"` strings, binary64 as JSON numbers.
fn scalar_json<T: Scalar>(x: &T) -> Value {
    if T::EXACT {
        Value::String(x.to_text())
    } else {
        json!(x.to_f64())
    }
}

fn join_values(v: &[Value]) -> String {
    v.iter()
        .map(|x| match x {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Entry point used by the binary.
pub fn main_exit_code() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
