//! `hyp`: command-line front end for hyperbolic-plane analysis.
//!
//! Every subcommand emits JSON by default (`--text` for a short human
//! form). Usage errors exit with code 2; computation errors exit with
//! code 1 and a JSON error object carrying a stable `error.kind`.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperbolic::clifford::{Multivector, Signature};
use hyperbolic::contour::{self, CombinedTerm, IntegralResult};
use hyperbolic::curve::Curve;
use hyperbolic::diff::{self, GridSpec};
use hyperbolic::expr::{self, CurveSpec, CurveSpecError, EvalErrorKind};
use hyperbolic::number::{HNumber, NumberError};
use hyperbolic::roots::{self, RootsError};
use hyperbolic::specfun::SeriesConfig;
use hyperbolic::suite;
use hyperbolic::wave::{self, Axis, AxisData, VelocityFactor};

mod render;

use render::Rendered;

#[derive(Parser)]
#[command(name = "hyp", version, about = "Analysis over the hyperbolic (split-complex) plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit a short human-readable summary instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression in z at a point.
    Eval(EvalArgs),
    /// Two-path numeric derivative of an expression at a point.
    Diff(DiffArgs),
    /// Cauchy-Riemann residuals of an expression over a grid.
    CrCheck(CrCheckArgs),
    /// Contour integral of an expression along a curve file.
    Integrate(IntegrateArgs),
    /// Square roots and second-degree equations.
    Roots(RootsArgs),
    /// Geometric algebra operations on multivector literals.
    Clifford(CliffordArgs),
    /// d'Alembert reconstruction from axis data.
    Wave(WaveArgs),
    /// Run the bundled verification suite and print one line per check.
    PaperSuite,
}

#[derive(Args)]
struct EvalArgs {
    /// Expression in the variable z.
    #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
    expr: String,
    /// Evaluation point in `a+bi` form.
    #[arg(short = 'z', long = "at", default_value = "0", allow_hyphen_values = true)]
    at: String,
    /// Series tail tolerance for exp/cosh/sinh.
    #[arg(long, default_value_t = 1e-15)]
    tol: f64,
}

#[derive(Args)]
struct DiffArgs {
    #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
    expr: String,
    #[arg(short = 'z', long = "at", allow_hyphen_values = true)]
    at: String,
    /// Tolerance on the two-path agreement.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct CrCheckArgs {
    #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
    expr: String,
    /// Grid as `x0,x1,y0,y1,nx,ny`.
    #[arg(long, default_value = "-1,1,-1,1,5,5", allow_hyphen_values = true)]
    grid: String,
    /// Residual tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Plain,
    Pv,
    Improper,
    Combined,
}

#[derive(Args)]
struct IntegrateArgs {
    #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
    expr: String,
    /// Curve description file (JSON); repeatable for combined mode.
    #[arg(long = "curve", required = true)]
    curves: Vec<String>,
    #[arg(long, value_enum, default_value_t = Mode::Plain)]
    mode: Mode,
    /// Signs for combined terms, e.g. `+,-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    signs: String,
    /// Quadrature tolerance (plain), stabilization tolerance otherwise.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Truncation ladder for improper/combined modes, e.g. `1,2,3,4,5,6,7`.
    #[arg(long)]
    ladder: Option<String>,
}

#[derive(Args)]
struct RootsArgs {
    /// All square roots of a value in `a+bi` form.
    #[arg(long, conflicts_with_all = ["quadratic", "no_go"], allow_hyphen_values = true)]
    sqrt: Option<String>,
    /// Select one branch sheet (1..4) together with --sqrt.
    #[arg(long, requires = "sqrt")]
    branch: Option<u8>,
    /// Solve `a z^2 + b z + c = 0` from coefficients `a,b,c`.
    #[arg(long, conflicts_with = "no_go", allow_hyphen_values = true)]
    quadratic: Option<String>,
    /// Print the stored factorization counterexamples.
    #[arg(long)]
    no_go: bool,
}

#[derive(Args)]
struct CliffordArgs {
    /// Algebra signature: `p,q` or `g2hyp`.
    #[arg(long, default_value = "g2hyp")]
    signature: String,
    #[command(subcommand)]
    op: CliffordOp,
}

#[derive(Subcommand)]
enum CliffordOp {
    /// Geometric product of two multivector literals.
    Product { a: String, b: String },
    /// Grade-r part of a multivector literal.
    Grade { a: String, r: u32 },
    /// Reversion of a multivector literal.
    Reversion { a: String },
    /// Outer product of two multivector literals.
    Outer { a: String, b: String },
    /// Full blade-by-blade product table of the algebra.
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

#[derive(Args)]
struct WaveArgs {
    /// Component value on the axis, as an expression in s.
    #[arg(long = "g", allow_hyphen_values = true)]
    g: String,
    /// Normal rate of change on the axis, as an expression in s.
    #[arg(long = "h", default_value = "0", allow_hyphen_values = true)]
    h: String,
    #[arg(long, value_enum, default_value_t = AxisArg::Y)]
    axis: AxisArg,
    /// Evaluation point `x,y`.
    #[arg(long = "at", allow_hyphen_values = true)]
    at: String,
    /// Drop the 1/2 factor on the velocity integral.
    #[arg(long)]
    paper_literal: bool,
}

/// Computation failure with a stable machine-readable kind.
struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }
}

impl From<expr::SyntaxError> for CliError {
    fn from(e: expr::SyntaxError) -> Self {
        CliError::new("SyntaxError", e.to_string())
    }
}

impl From<expr::EvalError> for CliError {
    fn from(e: expr::EvalError) -> Self {
        let kind = match &e.kind {
            EvalErrorKind::Number(NumberError::NotInvertible(_)) => "NotInvertible",
            EvalErrorKind::Number(NumberError::OnDiagonal(_)) => "OnDiagonal",
            EvalErrorKind::Series(_) => "MaxTermsExceeded",
            EvalErrorKind::Roots(RootsError::BranchUnavailable { .. }) => "BranchUnavailable",
            EvalErrorKind::Roots(RootsError::NotInvertible(_)) => "NotInvertible",
            EvalErrorKind::RealOnly | EvalErrorKind::NotReal => "RealDomain",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<NumberError> for CliError {
    fn from(e: NumberError) -> Self {
        match e {
            NumberError::NotInvertible(_) => CliError::new("NotInvertible", e.to_string()),
            NumberError::OnDiagonal(_) => CliError::new("OnDiagonal", e.to_string()),
        }
    }
}

impl From<diff::DiffError> for CliError {
    fn from(e: diff::DiffError) -> Self {
        let kind = match e {
            diff::DiffError::EvaluationDomain(..) => "EvaluationDomain",
            diff::DiffError::NullTangent(_) => "NullTangent",
            diff::DiffError::CurvesDoNotIntersect { .. } => "CurvesDoNotIntersect",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<contour::ContourError> for CliError {
    fn from(e: contour::ContourError) -> Self {
        let kind = match e {
            contour::ContourError::QuadratureFailure { .. } => "QuadratureFailure",
            contour::ContourError::EvaluationDomain { .. } => "EvaluationDomain",
            contour::ContourError::PvNonconvergent { .. } => "PvNonconvergent",
            contour::ContourError::Inconclusive => "Inconclusive",
            contour::ContourError::UnsupportedCurve(_) => "UnsupportedCurve",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<RootsError> for CliError {
    fn from(e: RootsError) -> Self {
        let kind = match e {
            RootsError::BranchUnavailable { .. } => "BranchUnavailable",
            RootsError::NotInvertible(_) => "NotInvertible",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<hyperbolic::clifford::CliffordError> for CliError {
    fn from(e: hyperbolic::clifford::CliffordError) -> Self {
        use hyperbolic::clifford::CliffordError as C;
        let kind = match e {
            C::SignatureMismatch => "SignatureMismatch",
            C::NotGradeOne => "NotGradeOne",
            C::GridTooSmall => "GridTooSmall",
            C::ZeroArgument => "ZeroArgument",
            C::DimensionTooLarge => "DimensionTooLarge",
            C::Parse(_) => "ParseError",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<wave::WaveError> for CliError {
    fn from(e: wave::WaveError) -> Self {
        CliError::new("EvaluationDomain", e.to_string())
    }
}

impl From<CurveSpecError> for CliError {
    fn from(e: CurveSpecError) -> Self {
        let kind = match e {
            CurveSpecError::Json(_) | CurveSpecError::BadBound(_) => "CurveJson",
            CurveSpecError::Component { .. } => "SyntaxError",
            CurveSpecError::Curve(_) => "CurveInvalid",
        };
        CliError::new(kind, e.to_string())
    }
}

fn parse_point(s: &str) -> Result<HNumber, CliError> {
    HNumber::from_str(s)
        .map_err(|e| CliError::new("ParseError", e.to_string()))
}

fn parse_reals(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::new("ParseError", format!("cannot parse {what} from {s:?}")))
}

fn parse_signature(s: &str) -> Result<Signature, CliError> {
    if s.eq_ignore_ascii_case("g2hyp") {
        return Ok(Signature::g2_hyp());
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() == 2 {
        if let (Ok(p), Ok(q)) = (parts[0].parse::<u32>(), parts[1].parse::<u32>()) {
            return Ok(Signature::new(p, q)?);
        }
    }
    Err(CliError::new("ParseError", format!("cannot parse signature from {s:?} (p,q or g2hyp)")))
}

fn load_curve(path: &str) -> Result<Curve, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new("Io", format!("cannot read {path}: {e}")))?;
    Ok(CurveSpec::from_json(&text)?.build()?)
}

fn integral_json(r: &IntegralResult) -> Value {
    serde_json::to_value(r).expect("integral results serialize")
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Eval(args) => {
            let ast = expr::parse(&args.expr, "z")?;
            let cfg = SeriesConfig::new(args.tol, 256);
            let z = parse_point(&args.at)?;
            let value = expr::eval_hyperbolic(&ast, z, &cfg)?;
            Ok(Rendered::new(
                json!({"command": "eval", "result": value, "text": value.to_string()}),
                value.to_string(),
            ))
        }
        Command::Diff(args) => {
            let ast = expr::parse(&args.expr, "z")?;
            let field = expr::field_from_expr(&ast, SeriesConfig::default());
            let z = parse_point(&args.at)?;
            let d = diff::derivative_with_tol(&field, z, args.tol)?;
            Ok(Rendered::new(
                json!({
                    "command": "diff",
                    "result": {
                        "value": d.value,
                        "alt": d.alt,
                        "agrees": d.agrees,
                    }
                }),
                format!(
                    "f'({}) = {} (paths {})",
                    z,
                    d.value,
                    if d.agrees { "agree" } else { "DISAGREE" }
                ),
            ))
        }
        Command::CrCheck(args) => {
            let ast = expr::parse(&args.expr, "z")?;
            let field = expr::field_from_expr(&ast, SeriesConfig::default());
            let v = parse_reals(&args.grid, "grid")?;
            if v.len() != 6 || v[4] < 1.0 || v[5] < 1.0 {
                return Err(CliError::new(
                    "ParseError",
                    "grid must be x0,x1,y0,y1,nx,ny with nx, ny >= 1",
                ));
            }
            let grid = GridSpec {
                x_min: v[0],
                x_max: v[1],
                y_min: v[2],
                y_max: v[3],
                nx: v[4] as usize,
                ny: v[5] as usize,
            };
            let summary = diff::cr_check(&field, &grid, args.tol);
            Ok(Rendered::new(
                json!({
                    "command": "cr-check",
                    "result": {
                        "reports": summary.reports,
                        "skipped": summary.skipped,
                        "all_ok": summary.all_ok,
                    }
                }),
                format!(
                    "{} of {} nodes satisfy the conditions ({} skipped)",
                    summary.reports.iter().filter(|r| r.ok).count(),
                    summary.reports.len() + summary.skipped.len(),
                    summary.skipped.len()
                ),
            ))
        }
        Command::Integrate(args) => {
            let ast = expr::parse(&args.expr, "z")?;
            let field = expr::field_from_expr(&ast, SeriesConfig::default());
            let curves: Vec<Curve> =
                args.curves.iter().map(|p| load_curve(p)).collect::<Result<_, _>>()?;
            let ladder: Vec<f64> = match &args.ladder {
                Some(s) => parse_reals(s, "ladder")?,
                None => contour::DEFAULT_LADDER.to_vec(),
            };
            let result = match args.mode {
                Mode::Plain => contour::integrate(&field, &curves[0], args.tol)?,
                Mode::Pv => contour::integrate_pv(&field, &curves[0], args.tol.max(1e-12))?,
                Mode::Improper => {
                    contour::integrate_improper(&field, &curves[0], &ladder, args.tol.max(1e-12))?
                }
                Mode::Combined => {
                    let signs: Vec<f64> = args
                        .signs
                        .split(',')
                        .map(|s| match s.trim() {
                            "+" | "+1" | "1" => Ok(1.0),
                            "-" | "-1" => Ok(-1.0),
                            other => Err(CliError::new(
                                "ParseError",
                                format!("bad sign {other:?} (use + or -)"),
                            )),
                        })
                        .collect::<Result<_, _>>()?;
                    if signs.len() != curves.len() {
                        return Err(CliError::new(
                            "ParseError",
                            format!("{} signs for {} curves", signs.len(), curves.len()),
                        ));
                    }
                    let terms: Vec<CombinedTerm> = curves
                        .iter()
                        .zip(&signs)
                        .map(|(curve, &sign)| CombinedTerm { field: &field, curve, sign })
                        .collect();
                    contour::integrate_combined(&terms, &ladder, args.tol.max(1e-12))?
                }
            };
            let text = match result.value {
                Some(v) => format!("{:?}: {v} (err <= {:.2e})", result.status, result.err_estimate),
                None => format!("{:?}", result.status),
            };
            Ok(Rendered::new(
                json!({"command": "integrate", "result": integral_json(&result)}),
                text,
            ))
        }
        Command::Roots(args) => {
            if args.no_go {
                let (excess, empty) = roots::no_go_witness();
                let pack = |w: &roots::WitnessPoly| {
                    json!({
                        "coefficients": {"a": w.a, "b": w.b, "c": w.c},
                        "roots": w.roots,
                    })
                };
                return Ok(Rendered::new(
                    json!({
                        "command": "roots",
                        "result": {"excess": pack(&excess), "empty": pack(&empty)}
                    }),
                    format!(
                        "degree 2 with {} roots; degree 2 with {} roots",
                        excess.roots.len(),
                        empty.roots.len()
                    ),
                ));
            }
            if let Some(sqrt) = &args.sqrt {
                let z = parse_point(sqrt)?;
                if let Some(sheet) = args.branch {
                    let root = roots::sqrt_branch(z, sheet)?;
                    return Ok(Rendered::new(
                        json!({"command": "roots", "result": root, "text": root.to_string()}),
                        root.to_string(),
                    ));
                }
                let set = roots::sqrt_all(z);
                let text = format!(
                    "{} roots: {}",
                    set.len(),
                    set.roots().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
                );
                return Ok(Rendered::new(json!({"command": "roots", "result": set}), text));
            }
            if let Some(q) = &args.quadratic {
                let parts: Vec<&str> = q.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(CliError::new(
                        "ParseError",
                        "quadratic coefficients must be a,b,c",
                    ));
                }
                let a = parse_point(parts[0])?;
                let b = parse_point(parts[1])?;
                let c = parse_point(parts[2])?;
                let set = roots::quadratic_solve(a, b, c)?;
                let text = format!(
                    "{} solutions: {}",
                    set.len(),
                    set.roots().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
                );
                return Ok(Rendered::new(json!({"command": "roots", "result": set}), text));
            }
            Err(CliError::new("ParseError", "choose one of --sqrt, --quadratic, --no-go"))
        }
        Command::Clifford(args) => {
            let sig = parse_signature(&args.signature)?;
            let render_mv = |m: &Multivector| -> Value {
                let coeffs: serde_json::Map<String, Value> = m
                    .terms()
                    .map(|(mask, c)| (sig.blade_name(mask), json!(c)))
                    .collect();
                json!({"text": m.to_string(), "coeffs": coeffs})
            };
            match &args.op {
                CliffordOp::Product { a, b } => {
                    let a = Multivector::parse(&sig, a)?;
                    let b = Multivector::parse(&sig, b)?;
                    let m = a.geometric_product(&b)?;
                    Ok(Rendered::new(
                        json!({"command": "clifford", "result": render_mv(&m)}),
                        m.to_string(),
                    ))
                }
                CliffordOp::Grade { a, r } => {
                    let m = Multivector::parse(&sig, a)?.grade(*r);
                    Ok(Rendered::new(
                        json!({"command": "clifford", "result": render_mv(&m)}),
                        m.to_string(),
                    ))
                }
                CliffordOp::Reversion { a } => {
                    let m = Multivector::parse(&sig, a)?.reversion();
                    Ok(Rendered::new(
                        json!({"command": "clifford", "result": render_mv(&m)}),
                        m.to_string(),
                    ))
                }
                CliffordOp::Outer { a, b } => {
                    let a = Multivector::parse(&sig, a)?;
                    let b = Multivector::parse(&sig, b)?;
                    let m = a.outer(&b)?;
                    Ok(Rendered::new(
                        json!({"command": "clifford", "result": render_mv(&m)}),
                        m.to_string(),
                    ))
                }
                CliffordOp::Table => {
                    let n = sig.blade_count() as u8;
                    let name = |mask: u8| sig.blade_name(mask);
                    let mut rows = Vec::new();
                    let mut lines = Vec::new();
                    for a in 0..n {
                        let mut row = Vec::new();
                        for b in 0..n {
                            let (sign, mask) = hyperbolic::clifford::blade_product(&sig, a, b);
                            let cell = if sign == 0.0 {
                                "0".to_string()
                            } else if sign < 0.0 {
                                format!("-{}", name(mask))
                            } else {
                                name(mask)
                            };
                            row.push(cell);
                        }
                        lines.push(format!("{}: {}", name(a), row.join(" | ")));
                        rows.push(row);
                    }
                    Ok(Rendered::new(
                        json!({"command": "clifford", "result": {"blades": (0..n).map(name).collect::<Vec<_>>(), "table": rows}}),
                        lines.join("\n"),
                    ))
                }
            }
        }
        Command::Wave(args) => {
            let g_ast = expr::parse(&args.g, "s")?;
            let h_ast = expr::parse(&args.h, "s")?;
            let at = parse_reals(&args.at, "point")?;
            if at.len() != 2 {
                return Err(CliError::new("ParseError", "--at expects x,y"));
            }
            let axis = match args.axis {
                AxisArg::X => Axis::X,
                AxisArg::Y => Axis::Y,
            };
            let data = AxisData::new(
                axis,
                move |s| expr::eval_real(&g_ast, s).unwrap_or(f64::NAN),
                move |s| expr::eval_real(&h_ast, s).unwrap_or(f64::NAN),
            );
            let factor = if args.paper_literal {
                VelocityFactor::Literal
            } else {
                VelocityFactor::Halved
            };
            let value = wave::dalembert_eval(&data, (at[0], at[1]), factor)?;
            Ok(Rendered::new(
                json!({"command": "wave", "result": {"value": value}}),
                format!("f({}, {}) = {value}", at[0], at[1]),
            ))
        }
        Command::PaperSuite => {
            let start = Instant::now();
            let checks = suite::run_all();
            let passed = checks.iter().filter(|c| c.passed).count();
            let failed = checks.len() - passed;
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "criterion": c.criterion,
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })
                })
                .collect();
            let lines: Vec<String> = checks
                .iter()
                .map(|c| {
                    format!(
                        "{} [{:02}] {:<34} {}",
                        if c.passed { "ok  " } else { "FAIL" },
                        c.criterion,
                        c.name,
                        c.detail
                    )
                })
                .collect();
            let secs = start.elapsed().as_secs_f64();
            let rendered = Rendered::new(
                json!({
                    "command": "paper-suite",
                    "result": {
                        "checks": rows,
                        "passed": passed,
                        "failed": failed,
                        "seconds": secs,
                    }
                }),
                format!("{}\n{passed} passed, {failed} failed in {secs:.2}s", lines.join("\n")),
            );
            if failed > 0 {
                return Err(CliError::new(
                    "SuiteFailed",
                    format!("{failed} of {} checks failed", checks.len()),
                ));
            }
            Ok(rendered)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            if cli.text {
                println!("{}", rendered.text);
            } else {
                println!("{}", rendered.json);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let body = json!({"error": {"kind": e.kind, "message": e.message}});
            if cli.text {
                eprintln!("error[{}]: {}", e.kind, e.message);
                println!("{body}");
            } else {
                println!("{body}");
            }
            ExitCode::FAILURE
        }
    }
}
