//! Batch front end: parse a domain specification, run the requested
//! analysis, emit a deterministic JSON report plus a short human summary on
//! standard error.
//!
//! Exit codes: 0 success, 1 invalid input, 2 weight at or below the
//! admissibility threshold, 3 numeric verification exceeded tolerance.

mod report;
mod spec_input;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hartogs_core::domains::{alpha_threshold, CartanKind, DomainSpec};
use hartogs_core::engine::{
    balanced_check, berezin_report, epsilon_coeffs, epsilon_series, polynomiality_check,
    AlphaMode, EngineError, PhiForm, PolynomialityStatus, PolynomialityVerdict,
    DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL,
};
use hartogs_core::numeric::{
    beta_threshold, boundedness_sample, diastasis_check, epsilon_invariance_check,
    monge_ampere_check, sample_point, substream, FullPoint, SAMPLE_MARGIN,
};
use hartogs_core::poly::Var;
use hartogs_core::rational::{rat, to_f64, Rat};

use report::{coeff_values, float_value, rat_value, write_report, Failure};
use spec_input::{parse_rational, parse_spec, spec_echo};

/// Relative disagreement allowed between the series and the closed form.
const AGREEMENT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "hartogs",
    version,
    about = "Epsilon function analysis on generalized Cartan-Hartogs domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: verdict, coefficients, balanced and admissibility flags
    Report(ReportArgs),
    /// Balanced identity check with the exact residual
    Balanced(BalancedArgs),
    /// Polynomiality of phi, symbolic in alpha or at fixed weights
    Polynomiality(PolynomialityArgs),
    /// Epsilon value at a weight alpha and normalized fiber radius s
    EvalEpsilon(EvalArgs),
    /// Sampled numeric verification battery
    VerifyNumeric(VerifyArgs),
    /// Supported factor kinds and their invariants
    Catalog(CatalogArgs),
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational: {s:?}"))
}

#[derive(Args)]
struct ReportArgs {
    /// Specification file (JSON)
    spec: PathBuf,
    /// Weight for the coefficient fields; defaults to the smallest integer
    /// above the threshold
    #[arg(long, value_parser = parse_rat_arg)]
    alpha: Option<Rat>,
    /// Number of numeric verification samples; 0 skips the numeric checks
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Seed for the numeric checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for the Hessian determinant cross-check
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Report path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BalancedArgs {
    /// Specification file (JSON)
    spec: PathBuf,
    /// Report path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PolynomialityArgs {
    /// Specification file (JSON)
    spec: PathBuf,
    /// Decide symbolically for all alpha at once (default)
    #[arg(long, conflicts_with = "fixed")]
    symbolic: bool,
    /// Decide separately at each --alpha
    #[arg(long, requires = "alpha")]
    fixed: bool,
    /// Weight to check in fixed mode; repeatable
    #[arg(long, value_parser = parse_rat_arg)]
    alpha: Vec<Rat>,
    /// Report path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Specification file (JSON)
    spec: PathBuf,
    /// Weight alpha (must exceed the threshold)
    #[arg(long, value_parser = parse_rat_arg)]
    alpha: Rat,
    /// Normalized squared fiber radius in [0, 1)
    #[arg(long, value_parser = parse_rat_arg)]
    s: Rat,
    /// Series truncation tolerance
    #[arg(long, default_value_t = DEFAULT_SERIES_TOL)]
    tol: f64,
    /// Report path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Specification file (JSON)
    spec: PathBuf,
    /// Weight for the epsilon invariance check; defaults to the smallest
    /// integer above the threshold
    #[arg(long, value_parser = parse_rat_arg)]
    alpha: Option<Rat>,
    /// Sample count for the diastasis and boundedness stages
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Seed for all sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for the Hessian determinant cross-check
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Report path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Report path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Report(args) => cmd_report(args),
        Command::Balanced(args) => cmd_balanced(args),
        Command::Polynomiality(args) => cmd_polynomiality(args),
        Command::EvalEpsilon(args) => cmd_eval_epsilon(args),
        Command::VerifyNumeric(args) => cmd_verify_numeric(args),
        Command::Catalog(args) => cmd_catalog(args),
    }
}

fn load_spec(path: &Path) -> Result<DomainSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(Failure::invalid)
}

/// Smallest integer strictly above the admissibility threshold.
fn default_alpha(spec: &DomainSpec) -> Rat {
    alpha_threshold(spec).floor() + rat(1)
}

fn status_name(status: &PolynomialityStatus) -> &'static str {
    match status {
        PolynomialityStatus::PolynomialAllAlpha => "polynomial_all_alpha",
        PolynomialityStatus::PolynomialAtAlpha(_) => "polynomial_at_alpha",
        PolynomialityStatus::NotPolynomial => "not_polynomial",
    }
}

/// Renders a phi or witness form: fixed forms as a coefficient list,
/// symbolic forms as one coefficient list per power of x (each a
/// polynomial in alpha, lowest degree first).
fn form_value(form: &PhiForm) -> Value {
    match form {
        PhiForm::Fixed(p) => json!({"form": "fixed", "coefficients": coeff_values(p)}),
        PhiForm::Symbolic(b) => {
            let rows: Vec<Value> = b.rows(Var::Y).iter().map(coeff_values).collect();
            json!({"form": "symbolic", "x_coefficients_in_alpha": rows})
        }
    }
}

fn verdict_value(verdict: &PolynomialityVerdict) -> Value {
    let mut doc = json!({
        "status": status_name(&verdict.status),
        "phi": verdict.phi.as_ref().map(form_value),
        "witness": verdict.witness.as_ref().map(form_value),
    });
    let map = doc.as_object_mut().expect("object");
    if let PolynomialityStatus::PolynomialAtAlpha(alphas) = &verdict.status {
        map.insert(
            "alphas".into(),
            Value::Array(alphas.iter().map(rat_value).collect()),
        );
    }
    if !verdict.details.is_empty() {
        let details: Vec<Value> = verdict
            .details
            .iter()
            .map(|case| {
                json!({
                    "alpha": rat_value(&case.alpha),
                    "polynomial": case.phi.is_some(),
                    "phi_coefficients": case.phi.as_ref().map(coeff_values),
                    "witness_coefficients": case.witness.as_ref().map(coeff_values),
                })
            })
            .collect();
        map.insert("details".into(), Value::Array(details));
    }
    doc
}

fn cmd_report(args: ReportArgs) -> Result<i32, Failure> {
    let spec = load_spec(&args.spec)?;
    let alpha = args.alpha.unwrap_or_else(|| default_alpha(&spec));
    let report = berezin_report(&spec)?;
    let phi = hartogs_core::engine::phi_build(&spec, &alpha)?;
    let phi_coefficients = phi.as_polynomial().map(coeff_values).unwrap_or(Value::Null);
    let epsilon_coefficients = match epsilon_coeffs(&spec, &alpha) {
        Ok(closed) => Value::Array(closed.coeffs.iter().map(rat_value).collect()),
        Err(EngineError::NotPolynomial) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let (numeric_checks, numeric_pass) = if args.samples > 0 {
        let (value, pass) = numeric_battery(&spec, &alpha, args.samples, args.seed, args.tol)?;
        (value, pass)
    } else {
        (Value::Null, true)
    };
    let doc = json!({
        "spec_echo": spec_echo(&spec),
        "alpha_threshold": rat_value(&report.alpha_threshold),
        "alpha": rat_value(&alpha),
        "verdict": verdict_value(&report.verdict),
        "phi_coefficients": phi_coefficients,
        "epsilon_coefficients": epsilon_coefficients,
        "balanced": report.balanced,
        "wallach": report.wallach_ok,
        "berezin_admissible": report.berezin_admissible,
        "numeric_checks": numeric_checks,
    });
    write_report(args.out.as_deref(), &doc)?;
    eprintln!(
        "verdict: {}; balanced: {}; wallach: {}; admissible: {}; threshold: {}",
        status_name(&report.verdict.status),
        report.balanced,
        report.wallach_ok,
        report.berezin_admissible,
        report.alpha_threshold,
    );
    Ok(if numeric_pass { 0 } else { 3 })
}

fn cmd_balanced(args: BalancedArgs) -> Result<i32, Failure> {
    let spec = load_spec(&args.spec)?;
    let check = balanced_check(&spec)?;
    let doc = json!({
        "spec_echo": spec_echo(&spec),
        "balanced": check.balanced,
        "reindex_consistent": check.reindex_consistent,
        "residual": check.residual.to_string(),
    });
    write_report(args.out.as_deref(), &doc)?;
    eprintln!(
        "balanced: {}; residual: {}",
        check.balanced, check.residual
    );
    Ok(0)
}

fn cmd_polynomiality(args: PolynomialityArgs) -> Result<i32, Failure> {
    let spec = load_spec(&args.spec)?;
    let (mode, mode_name) = if args.fixed {
        (AlphaMode::Fixed(args.alpha.clone()), "fixed")
    } else {
        (AlphaMode::Symbolic, "symbolic")
    };
    let verdict = polynomiality_check(&spec, mode)?;
    let doc = json!({
        "spec_echo": spec_echo(&spec),
        "mode": mode_name,
        "verdict": verdict_value(&verdict),
    });
    write_report(args.out.as_deref(), &doc)?;
    eprintln!("status: {}", status_name(&verdict.status));
    Ok(0)
}

fn cmd_eval_epsilon(args: EvalArgs) -> Result<i32, Failure> {
    let spec = load_spec(&args.spec)?;
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::invalid(format!("tolerance {} must be positive", args.tol)));
    }
    let series = epsilon_series(&spec, &args.alpha, &args.s, DEFAULT_MAX_TERMS, args.tol)?;
    let series_float = series.value.to_f64();
    let closed = match epsilon_coeffs(&spec, &args.alpha) {
        Ok(c) => Some(c),
        Err(EngineError::NotPolynomial) => None,
        Err(e) => return Err(e.into()),
    };
    let (closed_value, agreement) = match &closed {
        Some(c) => {
            let exact = c.eval(&args.s);
            let f = to_f64(&exact);
            let agree = (f - series_float).abs() <= AGREEMENT_TOL * f.abs().max(1.0);
            (
                json!({
                    "coefficients": Value::Array(c.coeffs.iter().map(rat_value).collect()),
                    "value": rat_value(&exact),
                    "value_float": float_value(f),
                }),
                Value::Bool(agree),
            )
        }
        None => (Value::Null, Value::Null),
    };
    let value_float = match &closed {
        Some(c) => to_f64(&c.eval(&args.s)),
        None => series_float,
    };
    let doc = json!({
        "spec_echo": spec_echo(&spec),
        "alpha": rat_value(&args.alpha),
        "s": rat_value(&args.s),
        "closed_form": closed_value,
        "series": {
            "value_float": float_value(series_float),
            "terms_used": series.terms_used,
            "converged": series.converged,
        },
        "agreement": agreement,
        "value_float": float_value(value_float),
    });
    write_report(args.out.as_deref(), &doc)?;
    eprintln!(
        "epsilon({}, s = {}) = {value_float:.12} ({} series terms)",
        args.alpha, args.s, series.terms_used
    );
    Ok(0)
}

fn cmd_verify_numeric(args: VerifyArgs) -> Result<i32, Failure> {
    let spec = load_spec(&args.spec)?;
    if args.samples == 0 {
        return Err(Failure::invalid("samples must be positive"));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::invalid(format!("tolerance {} must be positive", args.tol)));
    }
    let alpha = args.alpha.unwrap_or_else(|| default_alpha(&spec));
    let (numeric_checks, pass) =
        numeric_battery(&spec, &alpha, args.samples, args.seed, args.tol)?;
    let doc = json!({
        "spec_echo": spec_echo(&spec),
        "alpha": rat_value(&alpha),
        "samples": args.samples,
        "seed": args.seed,
        "numeric_checks": numeric_checks,
    });
    write_report(args.out.as_deref(), &doc)?;
    eprintln!(
        "numeric verification: {}",
        if pass { "all checks passed" } else { "TOLERANCE EXCEEDED" }
    );
    Ok(if pass { 0 } else { 3 })
}

fn point_distance(p1: &FullPoint, p2: &FullPoint) -> f64 {
    let mut worst = 0.0f64;
    for (a, b) in p1.factors.iter().zip(&p2.factors) {
        for (x, y) in a.coords.iter().zip(&b.coords) {
            worst = worst.max((x - y).norm());
        }
    }
    for (x, y) in p1.fiber.iter().zip(&p2.fiber) {
        worst = worst.max((x - y).norm());
    }
    worst
}

/// Runs the four sampled checks and reports one section per check with its
/// pinned tolerance.  The boolean is the overall pass/fail.
fn numeric_battery(
    spec: &DomainSpec,
    alpha: &Rat,
    samples: usize,
    seed: u64,
    ma_tol: f64,
) -> Result<(Value, bool), Failure> {
    const H: f64 = 1e-3;
    // Hessian stencils need room; see the step guard in the core crate.
    const MA_MARGIN: f64 = 0.5;
    const INVARIANCE_TOL: f64 = 1e-10;
    const DIAG_TOL: f64 = 1e-12;
    let hessian_points = samples.min(20);

    let mut ma_worst = 0.0f64;
    for idx in 0..hessian_points as u64 {
        let p = sample_point(spec, &mut substream(seed, idx), MA_MARGIN)?;
        let check = monge_ampere_check(spec, &p, H)?;
        ma_worst = ma_worst.max(check.rel_error);
    }
    let ma_pass = ma_worst < ma_tol;

    let invariance = match epsilon_coeffs(spec, alpha) {
        Err(EngineError::NotPolynomial) => None,
        Err(e) => return Err(e.into()),
        Ok(_) => {
            let mut worst = 0.0f64;
            for idx in 0..hessian_points as u64 {
                let p = sample_point(spec, &mut substream(seed, 1_000_000 + idx), SAMPLE_MARGIN)?;
                worst = worst.max(epsilon_invariance_check(spec, alpha, &p)?);
            }
            Some(worst)
        }
    };
    let invariance_pass = invariance.is_none_or(|w| w < INVARIANCE_TOL);

    let beta = beta_threshold(spec).floor() + rat(1);
    let mut diag_worst = 0.0f64;
    let mut min_value = f64::INFINITY;
    let mut max_value = f64::NEG_INFINITY;
    let mut off_diagonal_ok = true;
    for idx in 0..samples as u64 {
        let p1 = sample_point(spec, &mut substream(seed, 2_000_000 + 2 * idx), SAMPLE_MARGIN)?;
        let p2 = sample_point(spec, &mut substream(seed, 2_000_001 + 2 * idx), SAMPLE_MARGIN)?;
        let diag = diastasis_check(spec, &beta, &p1, &p1)?;
        diag_worst = diag_worst.max((diag - 1.0).abs());
        let v = diastasis_check(spec, &beta, &p1, &p2)?;
        min_value = min_value.min(v);
        max_value = max_value.max(v);
        if point_distance(&p1, &p2) > 1e-6 && v >= 1.0 {
            off_diagonal_ok = false;
        }
    }
    let diastasis_pass =
        diag_worst <= DIAG_TOL && min_value > 0.0 && max_value <= 1.0 + DIAG_TOL && off_diagonal_ok;

    let bound = boundedness_sample(spec, samples, seed.wrapping_add(1))?;
    let bound_pass = bound.cross_strictly_bounded && bound.max_x < 2.0;

    let pass = ma_pass && invariance_pass && diastasis_pass && bound_pass;
    let value = json!({
        "monge_ampere": {
            "points": hessian_points,
            "step": float_value(H),
            "max_rel_error": float_value(ma_worst),
            "tolerance": float_value(ma_tol),
            "pass": ma_pass,
        },
        "epsilon_invariance": invariance.map(|worst| json!({
            "points": hessian_points,
            "max_rel_error": float_value(worst),
            "tolerance": float_value(INVARIANCE_TOL),
            "pass": invariance_pass,
        })),
        "diastasis": {
            "pairs": samples,
            "beta": rat_value(&beta),
            "max_diagonal_error": float_value(diag_worst),
            "min_value": float_value(min_value),
            "max_value": float_value(max_value),
            "tolerance": float_value(DIAG_TOL),
            "pass": diastasis_pass,
        },
        "boundedness": {
            "pairs": bound.samples,
            "max_cross": float_value(bound.max_cross),
            "max_x": float_value(bound.max_x),
            "linear_term_bound": bound.linear_term_bound.map(float_value),
            "pass": bound_pass,
        },
    });
    Ok((value, pass))
}

fn cmd_catalog(args: CatalogArgs) -> Result<i32, Failure> {
    let mut kinds = vec![
        CartanKind::disc(),
        CartanKind::ball(2),
        CartanKind::ball(3),
        CartanKind::ball(4),
        CartanKind::TypeI { m: 2, n: 2 },
        CartanKind::TypeI { m: 2, n: 3 },
        CartanKind::TypeI { m: 3, n: 3 },
    ];
    for n in 2..=4 {
        kinds.push(CartanKind::TypeII { n });
    }
    for n in 2..=5 {
        kinds.push(CartanKind::TypeIII { n });
    }
    for n in 3..=6 {
        kinds.push(CartanKind::TypeIV { n });
    }
    kinds.push(CartanKind::TypeV);
    kinds.push(CartanKind::TypeVI);
    let rows: Vec<Value> = kinds
        .iter()
        .map(|kind| {
            let p = kind.params().expect("catalog kinds are valid");
            let mut row = spec_input::kind_echo(*kind);
            let map = row.as_object_mut().expect("kind echo is an object");
            map.insert("rank".into(), p.rank().into());
            map.insert("a".into(), p.mult_a().into());
            map.insert("b".into(), p.mult_b().into());
            map.insert("dim".into(), p.dim().into());
            map.insert("genus".into(), p.genus().into());
            row
        })
        .collect();
    let doc = json!({"kinds": rows});
    write_report(args.out.as_deref(), &doc)?;
    eprintln!("{} factor kinds listed", doc["kinds"].as_array().expect("array").len());
    Ok(0)
}
