use super::Functional;
use crate::linalg::axpy;
use crate::report::{PropertyReport, Witness};

/// `|f(x + λ·unit) − f(x) − λ·f(unit)| ⩽ tol` on every sample.
pub fn check_weak_additivity(f: &Functional, samples: &[(Vec<f64>, f64)], tol: f64) -> PropertyReport {
    let unit = f.space().unit();
    let c = f.unit_value();
    let mut rep = PropertyReport::new("weak_additivity");
    for (x, lam) in samples {
        let fx = f.eval(x);
        let shifted = f.eval(&axpy(x, *lam, unit));
        let defect = (shifted - fx - lam * c).abs();
        rep.record(defect, tol, || Witness::new(vec![x.clone(), vec![*lam]], vec![fx, shifted]));
    }
    rep.finish()
}

/// `f(x) ⩽ f(y) + tol` on pairs with `x ⩽ y`. The witness is the first
/// violating pair, with values `[f(x), f(y)]`.
pub fn check_order_preserving(f: &Functional, pairs: &[(Vec<f64>, Vec<f64>)], tol: f64) -> PropertyReport {
    let mut rep = PropertyReport::new("order_preserving");
    for (x, y) in pairs {
        let fx = f.eval(x);
        let fy = f.eval(y);
        rep.record(fx - fy, tol, || Witness::new(vec![x.clone(), y.clone()], vec![fx, fy]));
    }
    rep.finish()
}

pub fn check_normed(f: &Functional, tol: f64) -> PropertyReport {
    let mut rep = PropertyReport::new("normed");
    let c = f.unit_value();
    rep.record((c - 1.0).abs(), tol, || {
        Witness::new(vec![f.space().unit().to_vec()], vec![c])
    });
    rep.finish()
}

/// `f(x) ⩾ −tol` on samples drawn from the cone.
pub fn check_positive(f: &Functional, cone_samples: &[Vec<f64>], tol: f64) -> PropertyReport {
    let mut rep = PropertyReport::new("positive");
    for x in cone_samples {
        let fx = f.eval(x);
        rep.record(-fx, tol, || Witness::new(vec![x.clone()], vec![fx]));
    }
    rep.finish()
}

/// `sup{|f(x)| : ‖x‖ < 1}`, which equals `f(unit)` for weakly additive,
/// order-preserving `f`.
pub fn bound(f: &Functional) -> f64 {
    f.unit_value()
}

/// `max over pairs of |f(z) − f(y)| − f(unit)·‖z − y‖`; nonpositive (up to
/// rounding) for weakly additive, order-preserving `f`.
pub fn lipschitz_defect(f: &Functional, pairs: &[(Vec<f64>, Vec<f64>)]) -> f64 {
    let c = f.unit_value();
    pairs
        .iter()
        .map(|(z, y)| (f.eval(z) - f.eval(y)).abs() - c * f.space().dist(y, z))
        .fold(f64::NEG_INFINITY, f64::max)
}
