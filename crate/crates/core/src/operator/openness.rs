use std::cell::Cell;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::Operator;
use crate::error::{Error, Result};
use crate::linalg::{axpy, max_abs_diff, sub};
use crate::report::{PropertyReport, Witness};
use crate::sampling::Sampler;

pub type ImageHook = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// Decides membership in the image `T(E)`.
#[derive(Clone, Default)]
pub enum ImageOracle {
    /// Closed form where known, otherwise forward images of domain samples.
    #[default]
    Exact,
    /// `T` is declared onto: every codomain point is a target.
    Onto,
    Custom(ImageHook),
}

impl fmt::Debug for ImageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => f.write_str("Exact"),
            Self::Onto => f.write_str("Onto"),
            Self::Custom(_) => f.write_str("Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OpennessConfig {
    pub epsilon: f64,
    pub delta: f64,
    /// Objective evaluations allowed per target.
    pub budget: usize,
    pub targets: usize,
    pub seed: u64,
    /// Accepted codomain-norm residual `‖T(x) − y‖`.
    pub tol: f64,
    pub oracle: ImageOracle,
}

impl OpennessConfig {
    pub fn new(epsilon: f64, delta: f64) -> Self {
        Self { epsilon, delta, budget: 1000, targets: 64, seed: 0, tol: 1e-7, oracle: ImageOracle::Exact }
    }
}

/// A target `y ∈ V(T(x0), δ) ∩ T(E)` for which no preimage in `U(x0, ε)`
/// was found within the budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpennessWitness {
    pub target: Vec<f64>,
    pub center_image: Vec<f64>,
    pub delta: f64,
    pub x0: Vec<f64>,
    pub epsilon: f64,
    pub budget: usize,
    pub best_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpennessVerdict {
    pub passed: bool,
    pub witness: Option<OpennessWitness>,
    pub targets_tested: usize,
    pub evaluations: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub found: Option<Vec<f64>>,
    pub best: Vec<f64>,
    pub best_residual: f64,
    pub evaluations: usize,
}

/// Seeded multi-start pattern search for `x ∈ U(x0, ε)` with
/// `‖T(x) − y‖ ⩽ tol`. Starts at `x0`, then at `y` (same dimension only),
/// then at random points of the ball. Moves along `±e_i` and `±1_E`.
pub fn search_preimage(
    t: &Operator,
    y: &[f64],
    x0: &[f64],
    eps: f64,
    budget: usize,
    tol: f64,
    sampler: &mut Sampler,
) -> SearchOutcome {
    let dom = t.domain();
    let cod = t.codomain();
    let n = dom.dim();
    let feasible = |x: &[f64]| dom.dist(x0, x) < eps;
    let mut dirs: Vec<Vec<f64>> = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        dirs.push(e.iter().map(|v| -v).collect());
        dirs.push(e);
    }
    let u = dom.unit();
    let un = dom.norm(u);
    dirs.push(u.iter().map(|v| v / un).collect());
    dirs.push(u.iter().map(|v| -v / un).collect());

    let evals = Cell::new(0usize);
    let objective = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let d = sub(&t.map(x), y);
        (d.iter().map(|v| v * v).sum::<f64>(), cod.norm(&d))
    };
    let mut best = x0.to_vec();
    let mut best_res = f64::INFINITY;
    let mut start = 0;
    loop {
        let x_start = match start {
            0 => Some(x0.to_vec()),
            1 if y.len() == n && feasible(y) => Some(y.to_vec()),
            1 => None,
            _ => Some(sampler.ball_point(dom, x0, eps)),
        };
        start += 1;
        let Some(mut x) = x_start else { continue };
        if evals.get() >= budget {
            break;
        }
        let (mut fx, mut res) = objective(&x);
        let mut step = eps / 2.0;
        while res > tol && step > 1e-13 && evals.get() < budget {
            let mut moved = false;
            for d in &dirs {
                if evals.get() >= budget {
                    break;
                }
                let cand = axpy(&x, step, d);
                if !feasible(&cand) {
                    continue;
                }
                let (fc, rc) = objective(&cand);
                if fc < fx {
                    x = cand;
                    fx = fc;
                    res = rc;
                    moved = true;
                    break;
                }
            }
            if !moved {
                step /= 2.0;
            }
        }
        if res < best_res {
            best_res = res;
            best = x.clone();
        }
        if res <= tol {
            return SearchOutcome { found: Some(x), best, best_residual: best_res, evaluations: evals.get() };
        }
        if evals.get() >= budget {
            break;
        }
    }
    SearchOutcome { found: None, best, best_residual: best_res, evaluations: evals.get() }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(r))
    }
}

/// Relative openness at `x0`: every sampled `y ∈ V(T(x0), δ) ∩ T(E)` must
/// have a preimage in `U(x0, ε)`. A failure means the search was exhausted
/// for that target, which is evidence rather than proof.
pub fn openness_check(t: &Operator, x0: &[f64], cfg: &OpennessConfig) -> Result<OpennessVerdict> {
    check_radius(cfg.epsilon)?;
    check_radius(cfg.delta)?;
    let dom = t.domain();
    let cod = t.codomain();
    dom.check(x0)?;
    let center = t.map(x0);
    let mut sampler = Sampler::new(cfg.seed);
    let targets = sample_targets(t, x0, &center, cfg, &mut sampler);
    let mut evaluations = 0;
    for (k, y) in targets.iter().enumerate() {
        let out = search_preimage(t, y, x0, cfg.epsilon, cfg.budget, cfg.tol, &mut sampler);
        evaluations += out.evaluations;
        if out.found.is_none() {
            return Ok(OpennessVerdict {
                passed: false,
                witness: Some(OpennessWitness {
                    target: y.clone(),
                    center_image: center.clone(),
                    delta: cfg.delta,
                    x0: x0.to_vec(),
                    epsilon: cfg.epsilon,
                    budget: cfg.budget,
                    best_residual: out.best_residual,
                }),
                targets_tested: k + 1,
                evaluations,
                note: format!(
                    "no preimage within order distance {} of x0 found in {} evaluations; \
                     search exhaustion is evidence, not proof, of non-openness",
                    cfg.epsilon, cfg.budget
                ),
            });
        }
    }
    debug_assert!(targets.iter().all(|y| cod.dist(&center, y) < cfg.delta));
    Ok(OpennessVerdict {
        passed: true,
        witness: None,
        targets_tested: targets.len(),
        evaluations,
        note: format!("every sampled target of the relative ball had a preimage within tolerance {}", cfg.tol),
    })
}

fn sample_targets(
    t: &Operator,
    x0: &[f64],
    center: &[f64],
    cfg: &OpennessConfig,
    sampler: &mut Sampler,
) -> Vec<Vec<f64>> {
    let cod = t.codomain();
    let mut out = Vec::with_capacity(cfg.targets);
    let closed_form = match &cfg.oracle {
        ImageOracle::Exact => t.image_contains(center).map(|_| ()),
        _ => Some(()),
    };
    if closed_form.is_some() {
        let accept = |y: &[f64]| match &cfg.oracle {
            ImageOracle::Exact => t.image_contains(y).unwrap_or(false),
            ImageOracle::Onto => true,
            ImageOracle::Custom(f) => f(y),
        };
        let mut attempts = 0;
        while out.len() < cfg.targets && attempts < 64 * cfg.targets {
            attempts += 1;
            let y = sampler.ball_point(cod, center, cfg.delta);
            if cod.dist(center, &y) < cfg.delta && accept(&y) {
                out.push(y);
            }
        }
    } else {
        // Forward images of a wider domain ball stand in for the image.
        let dom = t.domain();
        let mut attempts = 0;
        while out.len() < cfg.targets && attempts < 64 * cfg.targets {
            attempts += 1;
            let x = sampler.ball_point(dom, x0, 4.0 * cfg.epsilon.max(cfg.delta));
            let y = t.map(&x);
            if cod.dist(center, &y) < cfg.delta {
                out.push(y);
            }
        }
    }
    out
}

/// Checks `T(U(0_E, ε)) = U(0_F, ε)` on samples for an operator declared
/// onto with `T(1_E)` serving as the codomain unit. The forward inclusion
/// uses `samples` points of `U(0_E, ε)`; the preimage half searches for
/// every sampled `y ∈ U(0_F, ε)`.
pub fn open_ball_image_check(
    t: &Operator,
    eps: f64,
    samples: usize,
    budget: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyReport> {
    check_radius(eps)?;
    let dom = t.domain();
    let cod = t.codomain();
    if !super::unit_image_interior(t) {
        return Err(Error::InvalidOperator("T(1_E) is not interior to the codomain cone".into()));
    }
    if max_abs_diff(t.unit_image(), cod.unit()) > 1e-9 {
        return Err(Error::InvalidOperator("codomain unit must equal T(1_E)".into()));
    }
    let mut sampler = Sampler::new(seed);
    let zero_e = vec![0.0; dom.dim()];
    let zero_f = vec![0.0; cod.dim()];
    let mut forward = PropertyReport::new("image_of_ball_inside_ball");
    for _ in 0..samples {
        let x = sampler.ball_point(dom, &zero_e, eps);
        let n = cod.norm(&t.map(&x));
        forward.record(n - eps, tol, || Witness::new(vec![x.clone()], vec![n, eps]));
    }
    let mut backward = PropertyReport::new("ball_inside_image_of_ball");
    for _ in 0..samples {
        let y = sampler.ball_point(cod, &zero_f, eps);
        let out = search_preimage(t, &y, &zero_e, eps, budget, tol, &mut sampler);
        let res = out.best_residual;
        backward.record(res, tol, || {
            Witness::new(vec![y.clone(), out.best.clone()], vec![res])
                .with_note("no preimage found in the domain ball")
        });
    }
    Ok(PropertyReport::combine("open_ball_image", &[forward.finish(), backward.finish()]))
}
