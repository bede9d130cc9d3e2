//! Built-in fixtures with known verdicts. Each gallery entry passes when the
//! observed verdict matches the expected one, including expected failures.

use ordunit::functional::{check_order_preserving, check_weak_additivity};
use ordunit::operator::{check_order_preserving_op, check_weakly_additive_op, graph_check, openness_check, OpennessConfig};
use ordunit::{extension_interval, Functional, Operator, OrderedSpace, PartialFunctional, Sampler};
use rand::Rng;
use serde_json::json;

use crate::args::Cli;
use crate::error::CliError;
use crate::report::{Check, Report};

const TOL: f64 = 1e-9;

pub fn run_gallery(cli: &Cli) -> Result<Report, CliError> {
    let mut report = Report::new("gallery", cli.seed, cli.samples);
    let r2 = OrderedSpace::orthant(2)?;
    let mut sampler = Sampler::new(cli.seed);
    sqrt_gap(&mut report, &r2, &mut sampler, cli.samples)?;
    clamp(&mut report, &r2, &mut sampler, cli.samples, cli.seed)?;
    subspaces(&mut report, &mut sampler);
    extension(&mut report, &r2)?;
    Ok(report)
}

fn sqrt_gap(report: &mut Report, r2: &OrderedSpace, sampler: &mut Sampler, samples: usize) -> Result<(), CliError> {
    let f = Functional::sqrt_gap(r2)?;
    let a = f.evaluate(&[0.5, 0.5])?;
    let b = f.evaluate(&[0.25, 0.5])?;
    report.push(
        Check::new("sqrt_gap_values", a == 0.5 && b == 0.625, format!("f(½,½) = {a}, f(¼,½) = {b}"))
            .with_details(json!({ "at_half_half": a, "at_quarter_half": b })),
    );
    let wa = check_weak_additivity(&f, &sampler.shift_samples(2, samples), TOL);
    report.push(Check::new(
        "sqrt_gap_weakly_additive",
        wa.passed,
        format!("{} samples, worst defect {:.3e}", wa.samples, wa.worst_defect),
    ));
    let mut pairs = vec![(vec![0.25, 0.5], vec![0.5, 0.5])];
    pairs.extend(sampler.comparable_pairs(r2, samples));
    let op = check_order_preserving(&f, &pairs, TOL);
    let witness = op.witness.clone();
    let expected = witness.as_ref().is_some_and(|w| w.inputs == vec![vec![0.25, 0.5], vec![0.5, 0.5]]);
    report.push(
        Check::new(
            "sqrt_gap_not_order_preserving",
            !op.passed && expected,
            "violation found at (¼,½) ⩽ (½,½)",
        )
        .with_details(witness),
    );
    Ok(())
}

fn clamp(report: &mut Report, r2: &OrderedSpace, sampler: &mut Sampler, samples: usize, seed: u64) -> Result<(), CliError> {
    let t = Operator::clamp();
    let wa = check_weakly_additive_op(&t, &sampler.shift_samples(2, samples), TOL);
    let op = check_order_preserving_op(&t, &sampler.comparable_pairs(r2, samples), TOL);
    let pts = sampler.points(2, 512);
    let graph = graph_check(&t, &pts, &[-2.0, -1.0, 0.0, 1.0, 2.0], TOL);
    for rep in [&wa, &op, &graph] {
        report.push(Check::new(
            format!("clamp_{}", rep.property),
            rep.passed,
            format!("{} samples, worst defect {:.3e}", rep.samples, rep.worst_defect),
        ));
    }

    let mut at_zero = OpennessConfig::new(0.25, 0.25);
    at_zero.seed = seed;
    let v = openness_check(&t, &[0.0, 0.0], &at_zero)?;
    report.push(
        Check::new("clamp_open_at_zero", v.passed, format!("{} targets with preimages", v.targets_tested))
            .with_details(json!({ "passed": v.passed, "targets_tested": v.targets_tested })),
    );

    let mut at_24 = OpennessConfig::new(1.0, 0.1);
    at_24.seed = seed;
    let v = openness_check(&t, &[2.0, 4.0], &at_24)?;
    let good_witness = v.witness.as_ref().is_some_and(|w| {
        let y = &w.target;
        (y[0] - 2.0).abs() < 0.1 && (y[1] - 3.0).abs() < 0.1 && (y[1] - y[0] - 1.0).abs() > TOL
    });
    report.push(
        Check::new(
            "clamp_not_open_at_2_4",
            !v.passed && good_witness,
            "target near (2, 3) off the line x₂ = x₁ + 1 has no preimage in U((2, 4), 1)",
        )
        .with_details(&v.witness),
    );
    Ok(())
}

/// Offset `a = x₂ − x₁` of a point of ℝ²; membership in the bands and in the
/// rational-offset set depends on it alone.
fn offset(p: &[f64]) -> f64 {
    p[1] - p[0]
}

fn subspaces(report: &mut Report, sampler: &mut Sampler) {
    let r2 = OrderedSpace::orthant(2).expect("ℝ²");
    let in_b = |p: &[f64]| offset(p).abs() < 1.0;
    let in_d = |p: &[f64]| offset(p).abs() <= 1.0;

    // B is open: each sampled point has an order ball of radius (1 − |a|)/3 inside B.
    let mut open_ok = true;
    for _ in 0..256 {
        let a = sampler.rng().gen_range(-0.999..0.999);
        let x1 = sampler.scalar();
        let b = vec![x1, x1 + a];
        let r = (1.0 - f64::abs(a)) / 3.0;
        open_ok &= (0..16).all(|_| in_b(&sampler.ball_point(&r2, &b, r)));
    }
    report.push(Check::new("band_b_open", open_ok, "order balls of radius (1 − |a|)/3 stay inside B"));

    // C is dense: distance from a sampled point to offsets p/q with q = 10^k
    // decreases below the tolerance.
    let mut dense_ok = true;
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let z = sampler.point(2);
        let a = offset(&z);
        let mut best = f64::INFINITY;
        let mut last = f64::INFINITY;
        for k in 0..=10 {
            let q = 10f64.powi(k);
            let d = (a - (a * q).round() / q).abs();
            best = best.min(d);
            dense_ok &= best <= last;
            last = best;
        }
        worst = worst.max(best);
    }
    dense_ok &= worst < TOL;
    report.push(
        Check::new("rational_offsets_c_dense", dense_ok, format!("approximation distance falls to {worst:.1e}"))
            .with_details(json!({ "final_distance": worst })),
    );

    // D is closed: sequences in D approaching the boundary keep their limit in
    // D, while the same sequences leave B in the limit.
    let mut d_closed = true;
    let mut b_closed = true;
    for _ in 0..64 {
        let x1 = sampler.scalar();
        let sign = if sampler.rng().gen_bool(0.5) { 1.0 } else { -1.0 };
        let seq: Vec<Vec<f64>> = (1..=40).map(|k| vec![x1, x1 + sign * (1.0 - 0.5f64.powi(k))]).collect();
        let limit = vec![x1, x1 + sign];
        d_closed &= seq.iter().all(|p| in_d(p)) && in_d(&limit);
        b_closed &= !(seq.iter().all(|p| in_b(p)) && !in_b(&limit));
    }
    report.push(Check::new("band_d_closed", d_closed, "boundary limits of sequences in D lie in D"));
    report.push(Check::new("band_b_not_closed", !b_closed, "boundary limits of sequences in B leave B"));
}

fn extension(report: &mut Report, r2: &OrderedSpace) -> Result<(), CliError> {
    let pf = PartialFunctional::new(r2, &[], &[], 1.0)?;
    let iv = extension_interval(&pf, &[1.0, 0.0])?;
    report.push(
        Check::new(
            "extension_interval",
            iv.p_minus == 0.0 && iv.p_plus == 1.0 && iv.midpoint() == 0.5,
            format!("[{}, {}] at (1, 0), midpoint {}", iv.p_minus, iv.p_plus, iv.midpoint()),
        )
        .with_details(iv),
    );
    Ok(())
}
