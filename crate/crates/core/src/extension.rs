//! Finitely generated A-subspaces and constructive extension of weakly
//! additive, order-preserving functionals.
//!
//! An A-subspace `A(X)` is the union of the unit line `Λ = {λ·unit}` and the
//! shifted lines `x_i + Λ`. A partial functional fixes `g_i = f(x_i)` and
//! `c = f(unit)`; on each line it is affine with slope `c`. Extending to a new
//! point `y` is possible for any value in `[p⁻(y), p⁺(y)]`, where
//!
//! ```text
//! p⁺(y) = min_i g_i + c·inf{t : x_i + t·unit ⩾ y}
//! p⁻(y) = max_i g_i + c·sup{t : x_i + t·unit ⩽ y}
//! ```
//!
//! with line 0 being `Λ` itself (`x_0 = 0`, `g_0 = 0`). Both endpoint maps
//! are weakly additive and monotone on the whole space, so either one (or
//! their midpoint) is a total extension in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::Functional;
use crate::linalg::{max_abs, max_abs_diff};
use crate::report::{PropertyReport, Witness};
use crate::space::OrderedSpace;
use crate::TOL;

/// Weakly additive span of finitely many base points. Base points are
/// stored reduced modulo `Λ` (the pivot coordinate of the unit is zeroed),
/// one per distinct line.
#[derive(Debug, Clone, PartialEq)]
pub struct ASubspace {
    space: OrderedSpace,
    base: Vec<Vec<f64>>,
}

fn reduce(space: &OrderedSpace, x: &[f64]) -> (Vec<f64>, f64) {
    space.split_unit(x)
}

fn same_line(a: &[f64], b: &[f64]) -> bool {
    max_abs_diff(a, b) <= TOL * max_abs(a).max(max_abs(b)).max(1.0)
}

fn on_unit_line(r: &[f64]) -> bool {
    max_abs(r) <= TOL
}

impl ASubspace {
    pub fn new(space: &OrderedSpace, points: &[Vec<f64>]) -> Result<Self> {
        let mut sub = Self { space: space.clone(), base: Vec::new() };
        for p in points {
            space.check(p)?;
            let (r, _) = reduce(space, p);
            if sub.find_line(&r).is_none() {
                sub.base.push(r);
            }
        }
        Ok(sub)
    }

    /// The trivial A-subspace `Λ`.
    pub fn trivial(space: &OrderedSpace) -> Self {
        Self { space: space.clone(), base: Vec::new() }
    }

    pub fn space(&self) -> &OrderedSpace {
        &self.space
    }

    /// Reduced base points, one per line other than `Λ`.
    pub fn base_points(&self) -> &[Vec<f64>] {
        &self.base
    }

    /// `Some(None)` for `Λ`, `Some(Some(i))` for line `i`, `None` if the
    /// reduced point is on no line of the span.
    fn find_line(&self, r: &[f64]) -> Option<Option<usize>> {
        if on_unit_line(r) {
            return Some(None);
        }
        self.base.iter().position(|b| same_line(b, r)).map(Some)
    }

    pub fn span_contains(&self, v: &[f64]) -> Result<bool> {
        self.space.check(v)?;
        let (r, _) = reduce(&self.space, v);
        Ok(self.find_line(&r).is_some())
    }
}

/// Values of a weakly additive functional on a finitely generated A-subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFunctional {
    subspace: ASubspace,
    // value at each reduced base point
    values: Vec<f64>,
    unit_value: f64,
    consistent: bool,
}

/// Admissible values `[p⁻, p⁺]` for an extension at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionInterval {
    pub p_minus: f64,
    pub p_plus: f64,
}

impl ExtensionInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.p_minus + self.p_plus)
    }

    pub fn width(&self) -> f64 {
        self.p_plus - self.p_minus
    }
}

/// How to pick the new value in [`extend_one`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ExtensionRule {
    Lower,
    Upper,
    #[default]
    Midpoint,
    Given(f64),
}

/// Which endpoint map realizes [`canonical_extension`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionMode {
    Lower,
    #[default]
    Midpoint,
}

impl PartialFunctional {
    /// Builds a partial functional from base points `x_i` with values `g_i`
    /// and unit value `c ⩾ 0`. Points on a common line are merged; their
    /// values must agree modulo the slope `c`.
    pub fn new(space: &OrderedSpace, points: &[Vec<f64>], values: &[f64], unit_value: f64) -> Result<Self> {
        if !unit_value.is_finite() {
            return Err(Error::InvalidFunctional("unit value must be finite".into()));
        }
        if unit_value < 0.0 {
            return Err(Error::NegativeUnitValue(unit_value));
        }
        if points.len() != values.len() {
            return Err(Error::InvalidFunctional(format!(
                "{} base points but {} values",
                points.len(),
                values.len()
            )));
        }
        let mut pf = Self {
            subspace: ASubspace::trivial(space),
            values: Vec::new(),
            unit_value,
            consistent: true,
        };
        for (p, &g) in points.iter().zip(values) {
            space.check(p)?;
            if !g.is_finite() {
                return Err(Error::InvalidFunctional("non-finite value".into()));
            }
            pf.insert(p, g)?;
        }
        pf.consistent = check_partial_consistency(&pf, TOL).passed;
        Ok(pf)
    }

    fn insert(&mut self, p: &[f64], g: f64) -> Result<()> {
        let (r, shift) = reduce(&self.subspace.space, p);
        let g = g - shift * self.unit_value;
        let tol = TOL * g.abs().max(1.0);
        match self.subspace.find_line(&r) {
            Some(None) if g.abs() > tol => Err(Error::ConflictingValues(g, 0.0)),
            Some(Some(i)) if (self.values[i] - g).abs() > tol => {
                Err(Error::ConflictingValues(g, self.values[i]))
            }
            Some(_) => Ok(()),
            None => {
                self.subspace.base.push(r);
                self.values.push(g);
                Ok(())
            }
        }
    }

    pub fn subspace(&self) -> &ASubspace {
        &self.subspace
    }

    pub fn space(&self) -> &OrderedSpace {
        &self.subspace.space
    }

    /// Values at the reduced base points of [`ASubspace::base_points`].
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn unit_value(&self) -> f64 {
        self.unit_value
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// All lines including `Λ` (first, as `(0, 0)`).
    fn lines(&self) -> impl Iterator<Item = (std::borrow::Cow<'_, [f64]>, f64)> {
        let zero = vec![0.0; self.space().dim()];
        std::iter::once((std::borrow::Cow::Owned(zero), 0.0)).chain(
            self.subspace
                .base
                .iter()
                .zip(&self.values)
                .map(|(x, g)| (std::borrow::Cow::Borrowed(x.as_slice()), *g)),
        )
    }

    /// Value on the span, if `v` lies in it.
    pub fn value_at(&self, v: &[f64]) -> Result<Option<f64>> {
        self.space().check(v)?;
        let (r, shift) = reduce(self.space(), v);
        Ok(self.subspace.find_line(&r).map(|line| {
            let g = line.map_or(0.0, |i| self.values[i]);
            g + shift * self.unit_value
        }))
    }

    fn require_consistent(&self) -> Result<()> {
        if self.consistent {
            Ok(())
        } else {
            let rep = check_partial_consistency(self, TOL);
            Err(Error::Inconsistent(format!("worst defect {:e}", rep.worst_defect)))
        }
    }

    pub(crate) fn interval(&self, y: &[f64]) -> ExtensionInterval {
        let space = self.space();
        let c = self.unit_value;
        let mut p_plus = f64::INFINITY;
        let mut p_minus = f64::NEG_INFINITY;
        for (x, g) in self.lines() {
            let t = space.thresholds(&x, y);
            if t.lambda_plus < f64::INFINITY {
                p_plus = p_plus.min(g + c * t.lambda_plus);
            }
            if t.lambda_minus > f64::NEG_INFINITY {
                p_minus = p_minus.max(g + c * t.lambda_minus);
            }
        }
        // Consistency is only checked up to TOL, so rounding can cross the
        // endpoints by a hair; collapse them rather than report p⁻ > p⁺.
        if p_minus > p_plus {
            let mid = 0.5 * (p_minus + p_plus);
            return ExtensionInterval { p_minus: mid, p_plus: mid };
        }
        ExtensionInterval { p_minus, p_plus }
    }

    pub(crate) fn extension_value(&self, x: &[f64], mode: ExtensionMode) -> f64 {
        let iv = self.interval(x);
        match mode {
            ExtensionMode::Lower => iv.p_minus,
            ExtensionMode::Midpoint => iv.midpoint(),
        }
    }
}

/// Pairwise order consistency over all lines (including `Λ`): whenever
/// `x_i ⩽ x_j + t·unit` for `t ⩾ t_ij`, require `g_i ⩽ g_j + t_ij·c`.
pub fn check_partial_consistency(pf: &PartialFunctional, tol: f64) -> PropertyReport {
    let space = pf.space();
    let c = pf.unit_value;
    let lines: Vec<_> = pf.lines().collect();
    let mut rep = PropertyReport::new("partial_consistency");
    for (i, (xi, gi)) in lines.iter().enumerate() {
        for (j, (xj, gj)) in lines.iter().enumerate() {
            if i == j {
                continue;
            }
            let t = space.thresholds(xj, xi).lambda_plus;
            if !t.is_finite() {
                continue;
            }
            let defect = gi - (gj + t * c);
            rep.record(defect, tol, || {
                Witness::new(vec![xi.to_vec(), xj.to_vec()], vec![*gi, *gj, t])
                    .with_note("values g_i, g_j and threshold t_ij")
            });
        }
    }
    rep.finish()
}

pub fn extension_interval(pf: &PartialFunctional, y: &[f64]) -> Result<ExtensionInterval> {
    pf.space().check(y)?;
    pf.require_consistent()?;
    Ok(pf.interval(y))
}

/// Adds the line through `y` with a value chosen by `rule`.
pub fn extend_one(pf: &PartialFunctional, y: &[f64], rule: ExtensionRule) -> Result<PartialFunctional> {
    pf.space().check(y)?;
    pf.require_consistent()?;
    if pf.subspace.span_contains(y)? {
        return Err(Error::AlreadyInSpan);
    }
    let iv = pf.interval(y);
    let p = match rule {
        ExtensionRule::Lower => iv.p_minus,
        ExtensionRule::Upper => iv.p_plus,
        ExtensionRule::Midpoint => iv.midpoint(),
        ExtensionRule::Given(p) => {
            if !(p >= iv.p_minus - TOL && p <= iv.p_plus + TOL) {
                return Err(Error::OutsideInterval { value: p, lower: iv.p_minus, upper: iv.p_plus });
            }
            p
        }
    };
    let mut out = pf.clone();
    out.insert(y, p)?;
    out.consistent = check_partial_consistency(&out, TOL).passed;
    Ok(out)
}

/// Folds [`extend_one`] over `ys`, skipping points already in the span.
pub fn extend_all(pf: &PartialFunctional, ys: &[Vec<f64>], rule: ExtensionRule) -> Result<PartialFunctional> {
    pf.require_consistent()?;
    let mut cur = pf.clone();
    for y in ys {
        if cur.subspace.span_contains(y)? {
            continue;
        }
        cur = extend_one(&cur, y, rule)?;
    }
    Ok(cur)
}

/// Total extension `x ↦ p⁻(x)` (lower) or `x ↦ (p⁻(x) + p⁺(x))/2` (midpoint).
pub fn canonical_extension(pf: &PartialFunctional, mode: ExtensionMode) -> Result<Functional> {
    pf.require_consistent()?;
    Ok(Functional::extended(pf.clone(), mode))
}

/// JSON shape: `{"base_points": [[...], ...], "values": [...], "unit_value": c}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialDescriptor {
    #[serde(default)]
    pub base_points: Vec<Vec<f64>>,
    #[serde(default)]
    pub values: Vec<f64>,
    pub unit_value: f64,
}

impl PartialDescriptor {
    pub fn build(&self, space: &OrderedSpace) -> Result<PartialFunctional> {
        PartialFunctional::new(space, &self.base_points, &self.values, self.unit_value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{check_order_preserving, check_weak_additivity};
    use crate::sampling::Sampler;

    fn r2() -> OrderedSpace {
        OrderedSpace::orthant(2).unwrap()
    }

    fn empty(space: &OrderedSpace, c: f64) -> PartialFunctional {
        PartialFunctional::new(space, &[], &[], c).unwrap()
    }

    #[test]
    fn span_membership() {
        let b = ASubspace::new(&r2(), &[vec![1.0, 0.0]]).unwrap();
        assert!(b.span_contains(&[3.0, 2.0]).unwrap());
        assert!(b.span_contains(&[5.0, 5.0]).unwrap());
        assert!(!b.span_contains(&[1.0, 2.0]).unwrap());
        assert!(b.span_contains(&[1.0]).is_err());
    }

    #[test]
    fn base_points_are_merged_per_line() {
        let b = ASubspace::new(&r2(), &[vec![1.0, 0.0], vec![3.0, 2.0], vec![4.0, 4.0]]).unwrap();
        assert_eq!(b.base_points(), &[vec![0.0, -1.0]]);
        let s = r2();
        let ok = PartialFunctional::new(&s, &[vec![1.0, 0.0], vec![3.0, 2.0]], &[0.5, 2.5], 1.0);
        assert_eq!(ok.unwrap().values().len(), 1);
        let clash = PartialFunctional::new(&s, &[vec![1.0, 0.0], vec![3.0, 2.0]], &[0.5, 2.0], 1.0);
        assert!(matches!(clash, Err(Error::ConflictingValues(..))));
        let on_unit = PartialFunctional::new(&s, &[vec![2.0, 2.0]], &[1.0], 1.0);
        assert!(matches!(on_unit, Err(Error::ConflictingValues(..))));
        assert_eq!(
            PartialFunctional::new(&s, &[], &[], -1.0),
            Err(Error::NegativeUnitValue(-1.0))
        );
    }

    #[test]
    fn consistency_examples() {
        let s = r2();
        let good = PartialFunctional::new(&s, &[vec![1.0, 0.0]], &[0.5], 1.0).unwrap();
        assert!(check_partial_consistency(&good, TOL).passed);
        let bad = PartialFunctional::new(&s, &[vec![1.0, 0.0]], &[2.0], 1.0).unwrap();
        let rep = check_partial_consistency(&bad, TOL);
        assert!(!rep.passed);
        assert!(rep.witness.is_some());
        assert!(!bad.is_consistent());
        assert!(matches!(extension_interval(&bad, &[0.0, 1.0]), Err(Error::Inconsistent(_))));
        for c in [0.0, 1.0, 3.5] {
            assert!(check_partial_consistency(&empty(&s, c), TOL).passed);
        }
    }

    #[test]
    fn interval_examples() {
        let s = r2();
        let e = empty(&s, 1.0);
        let iv = extension_interval(&e, &[1.0, 0.0]).unwrap();
        assert_eq!((iv.p_minus, iv.p_plus), (0.0, 1.0));
        let iv = extension_interval(&e, &[2.0, 2.0]).unwrap();
        assert_eq!((iv.p_minus, iv.p_plus), (2.0, 2.0));
        let pf = PartialFunctional::new(&s, &[vec![1.0, 0.0]], &[0.5], 1.0).unwrap();
        let iv = extension_interval(&pf, &[0.0, 1.0]).unwrap();
        assert_eq!((iv.p_minus, iv.p_plus), (0.0, 1.0));
    }

    #[test]
    fn extend_one_rules() {
        let s = r2();
        let e = empty(&s, 1.0);
        let mid = extend_one(&e, &[1.0, 0.0], ExtensionRule::Midpoint).unwrap();
        assert_eq!(mid.value_at(&[1.0, 0.0]).unwrap(), Some(0.5));
        let lo = extend_one(&e, &[1.0, 0.0], ExtensionRule::Given(0.0)).unwrap();
        assert!(lo.is_consistent());
        let hi = extend_one(&e, &[1.0, 0.0], ExtensionRule::Upper).unwrap();
        assert_eq!(hi.value_at(&[3.0, 2.0]).unwrap(), Some(3.0));
        assert_eq!(extend_one(&e, &[3.0, 3.0], ExtensionRule::Midpoint), Err(Error::AlreadyInSpan));
        assert!(matches!(
            extend_one(&e, &[1.0, 0.0], ExtensionRule::Given(1.5)),
            Err(Error::OutsideInterval { .. })
        ));
    }

    #[test]
    fn extend_all_keeps_restriction() {
        let s = r2();
        let pf = PartialFunctional::new(&s, &[vec![1.0, 0.0]], &[0.5], 1.0).unwrap();
        assert_eq!(extend_all(&pf, &[], ExtensionRule::Midpoint).unwrap(), pf);
        let ys: Vec<Vec<f64>> = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| vec![a as f64 * 0.5, b as f64 * 0.5]))
            .collect();
        for rule in [ExtensionRule::Lower, ExtensionRule::Upper, ExtensionRule::Midpoint] {
            let out = extend_all(&pf, &ys, rule).unwrap();
            assert!(check_partial_consistency(&out, TOL).passed);
            assert_eq!(out.value_at(&[1.0, 0.0]).unwrap(), Some(0.5));
        }
    }

    #[test]
    fn extension_order_matters() {
        // values frozen from an independent hand computation of the midpoint fold
        let s = OrderedSpace::orthant(3).unwrap();
        let e = empty(&s, 1.0);
        let a = vec![0.0, 0.0, 1.0];
        let b = vec![0.0, 1.0, 1.0];
        let ab = extend_all(&e, &[a.clone(), b.clone()], ExtensionRule::Midpoint).unwrap();
        let ba = extend_all(&e, &[b.clone(), a.clone()], ExtensionRule::Midpoint).unwrap();
        assert_eq!(ab.value_at(&a).unwrap(), Some(0.5));
        assert_eq!(ab.value_at(&b).unwrap(), Some(0.75));
        assert_eq!(ba.value_at(&b).unwrap(), Some(0.5));
        assert_eq!(ba.value_at(&a).unwrap(), Some(0.25));
        assert!(ab.is_consistent() && ba.is_consistent());
    }

    #[test]
    fn canonical_extension_examples() {
        let s = r2();
        let e = empty(&s, 1.0);
        let lower = canonical_extension(&e, ExtensionMode::Lower).unwrap();
        assert_eq!(lower.evaluate(&[1.0, 0.0]).unwrap(), 0.0);
        let mid = canonical_extension(&e, ExtensionMode::Midpoint).unwrap();
        assert_eq!(mid.evaluate(&[1.0, 0.0]).unwrap(), 0.5);
        for lam in [-3.0, -0.5, 0.0, 2.0, 7.25] {
            assert_eq!(lower.evaluate(&[lam, lam]).unwrap(), lam);
            assert_eq!(mid.evaluate(&[lam, lam]).unwrap(), lam);
        }
        let mut smp = Sampler::new(11);
        let shifts = smp.shift_samples(2, 500);
        let pairs = smp.comparable_pairs(&s, 500);
        assert!(check_weak_additivity(&mid, &shifts, TOL).passed);
        assert!(check_order_preserving(&mid, &pairs, TOL).passed);
    }

    #[test]
    fn degenerate_unit_value() {
        let s = r2();
        let pf = PartialFunctional::new(&s, &[vec![1.0, 0.0]], &[0.0], 0.0).unwrap();
        assert!(pf.is_consistent());
        let iv = extension_interval(&pf, &[0.0, 1.0]).unwrap();
        assert_eq!((iv.p_minus, iv.p_plus), (0.0, 0.0));
    }

    #[test]
    fn descriptor_build() {
        let d: PartialDescriptor =
            serde_json::from_str(r#"{"base_points": [[1, 0]], "values": [0.5], "unit_value": 1}"#).unwrap();
        let pf = d.build(&r2()).unwrap();
        assert!(pf.is_consistent());
        let d: PartialDescriptor = serde_json::from_str(r#"{"unit_value": 1}"#).unwrap();
        assert!(d.build(&r2()).unwrap().subspace().base_points().is_empty());
    }
}
