//! Command-line front end.
//!
//! Exit codes: `0` success, `1` numeric or check failure, `2` usage or parse
//! failure.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{ParseError, ScalarField};
use crate::linalg::{determinant, DEFAULT_CLUSTER_TOL};
use crate::sl::{self, SLCurvatureSummary, SlError};
use crate::surface::{CurvatureReport, ImplicitHypersurface, SurfaceError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Random trace-zero directions tested by `verify-sl`.
pub const VERIFY_TANGENTS: usize = 50;
/// Random `SL(n)` points tested by `verify-sl`.
pub const VERIFY_POINTS: usize = 20;
/// Random `SO(n)` points tested by `verify-sl`.
pub const VERIFY_ROTATIONS: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "hypercurv",
    version,
    about = "Curvature of implicit hypersurfaces"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the numeric pipeline against the closed-form geometry of SL(n) at the identity.
    VerifySl(VerifyArgs),
    /// Curvature report of a hypersurface at a point.
    Analyze(AnalyzeArgs),
    /// Sample Gauss-map images of random SL(n) points and check their determinants.
    SampleImage(SampleArgs),
    /// Print the exact curvature data of SL(n) at the identity.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Built-in surface name (`sl`).
    #[arg(long, conflicts_with = "expr", requires = "n")]
    pub builtin: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Field expression in x1..xN; N is the number of point coordinates.
    #[arg(long, requires = "level")]
    pub expr: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<f64>,
    /// Comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Surface(#[from] SurfaceError),
    #[error("{0}")]
    Sl(#[from] SlError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => EXIT_USAGE,
            CliError::Surface(SurfaceError::DimensionMismatch { .. }) => EXIT_USAGE,
            CliError::Surface(_) | CliError::Sl(_) | CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

/// One principal curvature with its multiplicity, as emitted in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureJson {
    pub value: f64,
    pub multiplicity: usize,
}

/// JSON rendering of a [`CurvatureReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub point: Vec<f64>,
    pub normal: Vec<f64>,
    pub curvatures: Vec<CurvatureJson>,
    pub gauss_kronecker: f64,
    pub mean: f64,
    pub weingarten: Vec<Vec<f64>>,
}

impl From<&CurvatureReport> for ReportJson {
    fn from(r: &CurvatureReport) -> Self {
        Self {
            point: r.point.clone(),
            normal: r.normal.clone(),
            curvatures: r
                .curvatures
                .iter()
                .map(|c| CurvatureJson {
                    value: c.value,
                    multiplicity: c.multiplicity,
                })
                .collect(),
            gauss_kronecker: r.gauss_kronecker,
            mean: r.mean,
            weingarten: (0..r.weingarten.dim())
                .map(|i| r.weingarten.row(i).to_vec())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub n: usize,
    pub kappa_plus: f64,
    pub mult_plus: usize,
    pub kappa_minus: f64,
    pub mult_minus: usize,
    pub gauss_kronecker: f64,
    pub mean: f64,
}

impl From<&SLCurvatureSummary> for SummaryJson {
    fn from(s: &SLCurvatureSummary) -> Self {
        Self {
            n: s.n,
            kappa_plus: s.kappa_plus,
            mult_plus: s.mult_plus,
            kappa_minus: s.kappa_minus,
            mult_minus: s.mult_minus,
            gauss_kronecker: s.gauss_kronecker,
            mean: s.mean,
        }
    }
}

/// Outcome of one `verify-sl` check. `residual` is `None` when the check
/// failed structurally (e.g. wrong multiplicities) and no distance applies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub summary: SummaryJson,
    pub report: ReportJson,
}

/// Parses `args` (including the program name) and runs the selected command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    match &config.command {
        Command::VerifySl(a) => run_verify_sl(a, out),
        Command::Analyze(a) => run_analyze(a, out),
        Command::SampleImage(a) => run_sample_image(a, out),
        Command::Report(a) => run_report(a, out),
    }
}

fn check(name: &str, residual: f64, tol: f64) -> CheckResult {
    let finite = residual.is_finite();
    CheckResult {
        name: name.to_string(),
        residual: finite.then_some(residual),
        passed: finite && residual <= tol,
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn relative_error(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Runs every `SL(n)` cross-check. Deterministic in `(n, seed)`.
pub fn verify_sl(n: usize, tol: f64, seed: u64) -> Result<VerifyReport, CliError> {
    if !(2..=5).contains(&n) {
        return Err(CliError::Usage(format!(
            "verify-sl needs 2 <= n <= 5, got {n}"
        )));
    }
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sub_seed = move || rng.gen::<u64>();

    let surface = ImplicitHypersurface::special_linear(n).map_err(SurfaceError::from)?;
    let identity = sl::SLPoint::identity(n).to_vec();
    let summary = sl::curvature_summary(n)?;
    let exact_spectrum = sl::principal_curvatures_identity(n)?;
    let scale = 1.0 / (n as f64).sqrt();
    let mut checks = Vec::new();

    // Shape operator at I against H ↦ Hᵀ/√n, and both fundamental forms.
    let (mut op_err, mut first_err, mut second_err) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..VERIFY_TANGENTS {
        let h = sl::random_trace_zero(n, sub_seed());
        let v = h.entries();
        let numeric = surface.weingarten_apply(&identity, v)?;
        let exact = sl::weingarten_identity(&h, n)?;
        op_err = op_err.max(max_abs_diff(&numeric, exact.entries()));
        let (first, second) = sl::fundamental_forms(&h, n)?;
        let numeric_second = surface.second_fundamental_form(&identity, v, v)?;
        let numeric_first: f64 = v.iter().map(|x| x * x).sum();
        second_err = second_err.max((numeric_second - second).abs());
        first_err = first_err.max((numeric_first - first).abs());
        // exact form agrees with the operator: ⟨Hᵀ/√n, H⟩ = tr(H²)/√n
        second_err = second_err.max((crate::linalg::dot(exact.entries(), v) - second).abs());
    }
    checks.push(check("weingarten_operator_identity", op_err, tol));

    let report = surface.curvature_report(&identity, DEFAULT_CLUSTER_TOL)?;
    let spectrum_err = if report.curvatures.len() == exact_spectrum.len()
        && report
            .curvatures
            .iter()
            .zip(&exact_spectrum)
            .all(|(a, b)| a.multiplicity == b.multiplicity)
    {
        report
            .principal
            .iter()
            .map(|k| {
                let target = if *k > 0.0 { scale } else { -scale };
                (k - target).abs()
            })
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    checks.push(check("principal_curvatures_identity", spectrum_err, tol));
    checks.push(check(
        "gauss_kronecker_identity",
        relative_error(report.gauss_kronecker, summary.gauss_kronecker),
        tol,
    ));
    checks.push(check(
        "mean_curvature_identity",
        relative_error(report.mean, summary.mean),
        tol,
    ));
    checks.push(check("first_fundamental_form", first_err, tol));
    checks.push(check("second_fundamental_form", second_err, tol));

    // Gauss map: AD normal vs closed form, preimage round trip, image determinant sign.
    let (mut normal_err, mut round_trip_err, mut non_positive) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..VERIFY_POINTS {
        let a = sl::random_sl(n, sub_seed())?;
        let u = sl::gauss_map(&a)?;
        let numeric = surface.unit_normal(&a.to_vec())?;
        normal_err = normal_err.max(max_abs_diff(&numeric, u.entries()));
        if !sl::spherical_image_contains(&u)? {
            non_positive += 1;
        }
        let b = sl::gauss_map_preimage(&u)?;
        round_trip_err = round_trip_err.max((&sl::gauss_map(&b)? - &u).max_abs());
    }
    checks.push(check("gauss_map_normal", normal_err, tol));
    checks.push(check("gauss_map_round_trip", round_trip_err, tol));
    checks.push(check(
        "spherical_image_positive_det",
        non_positive as f64,
        tol,
    ));

    let mut invariance_err = 0.0f64;
    for _ in 0..VERIFY_ROTATIONS {
        let q = sl::random_special_orthogonal(n, sub_seed())?;
        let at_q = surface.curvature_report(&q.to_vec(), DEFAULT_CLUSTER_TOL)?;
        invariance_err = invariance_err.max(max_abs_diff(&at_q.principal, &report.principal));
    }
    checks.push(check("special_orthogonal_invariance", invariance_err, tol));

    Ok(VerifyReport {
        n,
        seed,
        tolerance: tol,
        passed: checks.iter().all(|c| c.passed),
        checks,
        summary: SummaryJson::from(&summary),
        report: ReportJson::from(&report),
    })
}

fn run_verify_sl(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let v = verify_sl(args.n, args.tol, args.seed)?;
    if args.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        )?;
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "verify-sl  n = {}  seed = {}  tolerance = {:e}",
            v.n, v.seed, v.tolerance
        );
        for c in &v.checks {
            let residual = c
                .residual
                .map_or("mismatch".to_string(), |r| format!("{r:.3e}"));
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "  [{tag}] {:<32} residual {residual}", c.name);
        }
        let spectrum: Vec<String> = v
            .report
            .curvatures
            .iter()
            .map(|c| format!("{:+.10} x{}", c.value, c.multiplicity))
            .collect();
        let _ = writeln!(s, "spectrum at identity: {}", spectrum.join(", "));
        let _ = writeln!(
            s,
            "gauss-kronecker: {:.10e} (exact {:.10e})",
            v.report.gauss_kronecker, v.summary.gauss_kronecker
        );
        let _ = writeln!(
            s,
            "mean: {:.10} (exact {:.10})",
            v.report.mean, v.summary.mean
        );
        let _ = writeln!(s, "result: {}", if v.passed { "PASS" } else { "FAIL" });
        out.write_all(s.as_bytes())?;
    }
    Ok(if v.passed { EXIT_OK } else { EXIT_FAILURE })
}

/// Parses `"a,b,c"` (optionally wrapped in parentheses) into coordinates.
pub fn parse_point(text: &str) -> Result<Vec<f64>, CliError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(trimmed);
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse coordinate '{}'", s.trim())))
        })
        .collect()
}

fn analyze_surface(args: &AnalyzeArgs, dim: usize) -> Result<ImplicitHypersurface, CliError> {
    match (&args.builtin, &args.expr) {
        (Some(name), None) if name == "sl" => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--builtin sl needs --n".into()))?;
            if !(2..=crate::field::MAX_DET_ORDER).contains(&n) {
                return Err(CliError::Usage(format!(
                    "--builtin sl needs 2 <= n <= {}, got {n}",
                    crate::field::MAX_DET_ORDER
                )));
            }
            Ok(ImplicitHypersurface::special_linear(n).map_err(SurfaceError::from)?)
        }
        (Some(name), None) => Err(CliError::Usage(format!(
            "unknown built-in surface '{name}'"
        ))),
        (None, Some(text)) => {
            if dim < 2 {
                return Err(CliError::Usage(
                    "a hypersurface needs an ambient dimension of at least 2".into(),
                ));
            }
            let level = args
                .level
                .ok_or_else(|| CliError::Usage("--expr needs --level".into()))?;
            Ok(ImplicitHypersurface::new(
                ScalarField::parse(text, dim)?,
                level,
            ))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --builtin or --expr".into(),
        )),
    }
}

fn run_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let point = parse_point(&args.point)?;
    let surface = analyze_surface(args, point.len())?;
    let report = surface.curvature_report(&point, DEFAULT_CLUSTER_TOL)?;
    let json = ReportJson::from(&report);
    if args.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json).expect("serializable")
        )?;
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "point:  {:?}", json.point);
        let _ = writeln!(s, "normal: {:?}", json.normal);
        let _ = writeln!(s, "principal curvatures:");
        for c in &json.curvatures {
            let _ = writeln!(s, "  {:+.10}  multiplicity {}", c.value, c.multiplicity);
        }
        let _ = writeln!(s, "gauss-kronecker: {:.10e}", json.gauss_kronecker);
        let _ = writeln!(s, "mean:            {:.10}", json.mean);
        out.write_all(s.as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn run_sample_image(args: &SampleArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if args.n < 2 {
        return Err(CliError::Usage(format!(
            "sample-image needs n >= 2, got {}",
            args.n
        )));
    }
    if args.count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut min_det, mut max_det) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..args.count {
        let a = sl::random_sl(args.n, rng.gen())?;
        let det = determinant(&sl::gauss_map(&a)?);
        min_det = min_det.min(det);
        max_det = max_det.max(det);
    }
    let all_positive = min_det > 0.0;
    writeln!(
        out,
        "sampled {} Gauss-map images of SL({})",
        args.count, args.n
    )?;
    writeln!(out, "min det: {min_det:.6e}")?;
    writeln!(out, "max det: {max_det:.6e}")?;
    writeln!(
        out,
        "all det > 0: {}",
        if all_positive { "yes" } else { "no" }
    )?;
    Ok(if all_positive { EXIT_OK } else { EXIT_FAILURE })
}

fn run_report(args: &ReportArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let s = sl::curvature_summary(args.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let n = s.n;
    writeln!(
        out,
        "SL({n}) at the identity, as a hypersurface of R^{}",
        n * n
    )?;
    writeln!(out, "  tangent dimension   {}", n * n - 1)?;
    writeln!(
        out,
        "  kappa_plus          {:+.12}  multiplicity {}",
        s.kappa_plus, s.mult_plus
    )?;
    writeln!(
        out,
        "  kappa_minus         {:+.12}  multiplicity {}",
        s.kappa_minus, s.mult_minus
    )?;
    writeln!(out, "  gauss-kronecker     {:+.12e}", s.gauss_kronecker)?;
    writeln!(out, "  mean                {:+.12}", s.mean)?;
    Ok(EXIT_OK)
}
