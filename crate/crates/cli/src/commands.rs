use std::fs;
use std::path::{Path, PathBuf};

use ordunit::dual::{subsequence_limit, CompactnessConfig};
use ordunit::functional::{
    check_normed, check_order_preserving, check_positive, check_weak_additivity, lipschitz_defect,
};
use ordunit::operator::{
    check_bounded, check_order_preserving_op, check_weakly_additive_op, graph_check,
    openness_check, operator_lipschitz_defect, operator_modulus, unit_image_interior, OpennessConfig,
};
use ordunit::{
    extend_one, extension_interval, Capacity, Error, ExtensionRule, FunctionalDescriptor,
    OperatorDescriptor, OrderedSpace, PartialDescriptor, PartialFunctional, Sampler,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::Cli;
use crate::error::CliError;
use crate::report::{Check, Report};

const CHECK_TOL: f64 = 1e-9;
const OPENNESS_TOL: f64 = 1e-7;
const COMPACT_TOL: f64 = 1e-6;
const GRAPH_SHIFTS: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

pub fn load_space(cli: &Cli) -> Result<OrderedSpace, CliError> {
    match &cli.space {
        Some(p) => load_json(p),
        None => Ok(OrderedSpace::orthant(2)?),
    }
}

/// Parses `"3,-4"` into a vector of the given dimension.
pub fn parse_point(text: &str, dim: usize) -> Result<Vec<f64>, CliError> {
    let v = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(format!("bad point {text:?}: {e}")))?;
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() }.into());
    }
    Ok(v)
}

pub fn parse_rule(text: &str) -> Result<ExtensionRule, CliError> {
    match text {
        "lower" => Ok(ExtensionRule::Lower),
        "upper" => Ok(ExtensionRule::Upper),
        "midpoint" => Ok(ExtensionRule::Midpoint),
        _ => text
            .strip_prefix("given:")
            .and_then(|p| p.parse().ok())
            .map(ExtensionRule::Given)
            .ok_or_else(|| CliError::Input(format!("unknown rule {text:?}; use lower, upper, midpoint or given:P"))),
    }
}

fn require<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, CliError> {
    path.as_deref().ok_or_else(|| CliError::Input(format!("{flag} FILE is required")))
}

pub fn run_check(cli: &Cli, pairs_file: Option<&Path>, normed: bool) -> Result<Report, CliError> {
    let space = load_space(cli)?;
    let tol = cli.tol.unwrap_or(CHECK_TOL);
    let dim = space.dim();
    let mut explicit: Vec<(Vec<f64>, Vec<f64>)> = match pairs_file {
        Some(p) => load_json(p)?,
        None => Vec::new(),
    };
    for (x, y) in &explicit {
        if !space.leq(x, y)? {
            return Err(CliError::Input(format!("pair {x:?}, {y:?} is not ordered x ⩽ y")));
        }
    }
    let mut report = Report::new("check", cli.seed, cli.samples);
    let mut sampler = Sampler::new(cli.seed);
    let shifts = sampler.shift_samples(dim, cli.samples);
    explicit.extend(sampler.comparable_pairs(&space, cli.samples));
    let pairs = explicit;
    let free_pairs = sampler.pairs(dim, cli.samples);

    match (&cli.functional, &cli.operator) {
        (Some(path), None) => {
            let f = load_json::<FunctionalDescriptor>(path)?.build(&space)?;
            let wa = check_weak_additivity(&f, &shifts, tol);
            let op = check_order_preserving(&f, &pairs, tol);
            let cone = sampler.cone_points(&space, cli.samples);
            let pos = check_positive(&f, &cone, tol);
            let both = wa.passed && op.passed;
            report.push(Check::from_property(&wa));
            report.push(Check::from_property(&op));
            report.push(Check::from_property(&pos));
            if normed {
                report.push(Check::from_property(&check_normed(&f, tol)));
            }
            if both {
                let d = lipschitz_defect(&f, &free_pairs);
                report.push(Check::new(
                    "continuity_modulus",
                    d <= tol,
                    format!("|f(x) − f(y)| − f(1)·‖x − y‖ at most {d:.3e}"),
                ));
            }
            report.set_payload(json!({ "functional": f.name(), "unit_value": f.unit_value() }));
        }
        (None, Some(path)) => {
            let t = load_json::<OperatorDescriptor>(path)?.build(&space)?;
            let wa = check_weakly_additive_op(&t, &shifts, tol);
            let op = check_order_preserving_op(&t, &pairs, tol);
            let points: Vec<Vec<f64>> = shifts.iter().take(1024).map(|(x, _)| x.clone()).collect();
            let graph = graph_check(&t, &points, &GRAPH_SHIFTS, tol);
            let both = wa.passed && op.passed;
            report.push(Check::from_property(&wa));
            report.push(Check::from_property(&op));
            report.push(Check::from_property(&graph));
            if both {
                let d = operator_lipschitz_defect(&t, &free_pairs);
                report.push(Check::new(
                    "continuity_modulus",
                    d <= tol,
                    format!("‖T(x) − T(y)‖ − ‖T(1)‖·‖x − y‖ at most {d:.3e}"),
                ));
                for r in [1.0, 2.0, 5.0] {
                    report.push(Check::from_property(&check_bounded(&t, r, 1024, &mut sampler, tol)));
                }
            }
            report.set_payload(json!({
                "operator": t.name(),
                "unit_image": t.unit_image(),
                "modulus": operator_modulus(&t),
                "unit_image_interior": unit_image_interior(&t),
            }));
        }
        _ => return Err(CliError::Input("check needs exactly one of --functional or --operator".into())),
    }
    Ok(report)
}

pub fn run_norm(cli: &Cli, points: &[String]) -> Result<Report, CliError> {
    let space = load_space(cli)?;
    let mut report = Report::new("norm", cli.seed, cli.samples);
    let validation = space.validate_with(&mut Sampler::new(cli.seed), cli.samples.min(4096));
    report.push(
        Check::new("space_valid", validation.is_valid(), format!("{} issue(s)", validation.issues.len()))
            .with_details(&validation.issues),
    );
    let mut rows = Vec::new();
    for p in points {
        let x = parse_point(p, space.dim())?;
        let n = space.order_norm(&x)?;
        rows.push(json!({ "point": x, "norm": n }));
    }
    report.set_payload(json!({ "norms": rows }));
    Ok(report)
}

#[derive(Serialize)]
struct ExtendStep {
    target: Vec<f64>,
    p_minus: f64,
    p_plus: f64,
    value: Option<f64>,
    already_in_span: bool,
}

pub fn run_extend(
    cli: &Cli,
    partial: Option<&Path>,
    unit_value: f64,
    targets: &[String],
    rule: &str,
) -> Result<Report, CliError> {
    let space = load_space(cli)?;
    let rule = parse_rule(rule)?;
    let tol = cli.tol.unwrap_or(CHECK_TOL);
    let mut pf = match partial {
        Some(p) => load_json::<PartialDescriptor>(p)?.build(&space)?,
        None => PartialFunctional::new(&space, &[], &[], unit_value)?,
    };
    let ys = targets.iter().map(|t| parse_point(t, space.dim())).collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new("extend", cli.seed, cli.samples);
    let consistency = ordunit::check_partial_consistency(&pf, tol);
    report.push(Check::from_property(&consistency));
    let mut steps = Vec::new();
    if consistency.passed {
        for y in ys {
            let iv = extension_interval(&pf, &y)?;
            if pf.subspace().span_contains(&y)? {
                let value = pf.value_at(&y)?;
                steps.push(ExtendStep { target: y, p_minus: iv.p_minus, p_plus: iv.p_plus, value, already_in_span: true });
                continue;
            }
            match extend_one(&pf, &y, rule) {
                Ok(next) => {
                    let value = next.value_at(&y)?;
                    steps.push(ExtendStep { target: y, p_minus: iv.p_minus, p_plus: iv.p_plus, value, already_in_span: false });
                    pf = next;
                }
                Err(Error::OutsideInterval { value, lower, upper }) => {
                    report.push(Check::new(
                        "admissible_value",
                        false,
                        format!("{value} lies outside [{lower}, {upper}] at {y:?}"),
                    ));
                    steps.push(ExtendStep { target: y, p_minus: iv.p_minus, p_plus: iv.p_plus, value: None, already_in_span: false });
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        report.push(Check::from_property(&ordunit::check_partial_consistency(&pf, tol)));
        report.checks.last_mut().expect("pushed").name = "extended_consistency".into();
    }
    report.set_payload(json!({ "unit_value": pf.unit_value(), "steps": steps }));
    Ok(report)
}

pub fn run_openness(
    cli: &Cli,
    at: Option<&str>,
    epsilon: f64,
    delta: f64,
    budget: usize,
    targets: usize,
) -> Result<Report, CliError> {
    let space = load_space(cli)?;
    let t = load_json::<OperatorDescriptor>(require(&cli.operator, "--operator")?)?.build(&space)?;
    let x0 = match at {
        Some(s) => parse_point(s, space.dim())?,
        None => vec![0.0; space.dim()],
    };
    let mut cfg = OpennessConfig::new(epsilon, delta);
    cfg.budget = budget;
    cfg.targets = targets;
    cfg.seed = cli.seed;
    cfg.tol = cli.tol.unwrap_or(OPENNESS_TOL);
    let verdict = openness_check(&t, &x0, &cfg)?;
    let mut report = Report::new("openness", cli.seed, cli.samples);
    report.push(Check::new(
        "relative_openness",
        verdict.passed,
        format!("{} target(s), {} evaluations", verdict.targets_tested, verdict.evaluations),
    ));
    report.set_payload(&verdict);
    Ok(report)
}

#[derive(Deserialize)]
struct CapacitySequence {
    n: usize,
    sequence: Vec<Capacity>,
}

pub fn run_compact(cli: &Cli, path: &Path, min_length: usize, truncation: usize) -> Result<Report, CliError> {
    let file: CapacitySequence = load_json(path)?;
    if file.sequence.iter().any(|v| v.n() != file.n) {
        return Err(CliError::Input(format!("every capacity must have n = {}", file.n)));
    }
    let space = match &cli.space {
        Some(p) => load_json(p)?,
        None => OrderedSpace::orthant(file.n)?,
    };
    let cfg = CompactnessConfig {
        min_length,
        tol: cli.tol.unwrap_or(COMPACT_TOL),
        truncation,
        samples: cli.samples.min(4096),
        seed: cli.seed,
        ..CompactnessConfig::default()
    };
    let out = subsequence_limit(&file.sequence, &space, &cfg)?;
    let mut report = Report::new("compact", cli.seed, cli.samples);
    report.push(Check::from_property(&out.report));
    report.set_payload(json!({
        "indices": out.indices,
        "limit": out.limit_capacity,
        "distances": out.distances,
        "tail_start": out.tail_start,
    }));
    Ok(report)
}
