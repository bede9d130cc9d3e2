//! Finite-dimensional ordered vector spaces with an order unit.
//!
//! The positive cone is always held in half-space form `{x : a_k·x ≥ 0}`.
//! Every order-geometric quantity (order norm, neighbourhoods, ray
//! thresholds) reduces to the ratios `a_k·v / a_k·unit`, which is what makes
//! the closed forms below exact.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, null_vector, rank, scale, sub};
use crate::sampling::Sampler;
use crate::TOL;

/// How the positive cone is specified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeSpec {
    /// The nonnegative orthant.
    Orthant,
    /// `{x : a_k·x ≥ 0 for every row a_k}`.
    Halfspaces(Vec<Vec<f64>>),
}

/// JSON shape of a space: `{"dim": n, "cone": "orthant" | {"halfspaces": [...]}, "unit": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub dim: usize,
    pub cone: ConeSpec,
    pub unit: Vec<f64>,
}

/// A partially ordered vector space `ℝ^dim` with a polyhedral cone and an order unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceDescriptor", into = "SpaceDescriptor")]
pub struct OrderedSpace {
    dim: usize,
    cone: ConeSpec,
    unit: Vec<f64>,
    rows: Vec<Vec<f64>>,
    // a_k · unit for each row
    pairing: Vec<f64>,
}

/// Thresholds of the ray `x + t·unit` against a target `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayThresholds {
    /// `sup{t : y − x − t·unit ∈ cone}`
    pub lambda_minus: f64,
    /// `inf{t : x + t·unit − y ∈ cone}`
    pub lambda_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum SpaceIssue {
    TooFewRows { rows: usize, dim: usize },
    UnitNotInterior { row: usize, pairing: f64 },
    NotPointed { direction: Vec<f64> },
    NormBoundViolated { x: Vec<f64>, norm: f64 },
}

/// Outcome of [`OrderedSpace::validate`]. Validation never fails hard; a
/// space with issues is still usable but flagged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceReport {
    pub issues: Vec<SpaceIssue>,
    pub samples: usize,
}

impl SpaceReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl OrderedSpace {
    pub fn new(dim: usize, cone: ConeSpec, unit: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        check_dim(dim, unit.len())?;
        if unit.iter().any(|u| !u.is_finite()) {
            return Err(Error::InvalidSpace("unit has non-finite entries".into()));
        }
        let rows = match &cone {
            ConeSpec::Orthant => (0..dim)
                .map(|k| {
                    let mut e = vec![0.0; dim];
                    e[k] = 1.0;
                    e
                })
                .collect::<Vec<_>>(),
            ConeSpec::Halfspaces(rows) => {
                if rows.is_empty() {
                    return Err(Error::InvalidSpace("no half-space rows".into()));
                }
                for r in rows {
                    check_dim(dim, r.len())?;
                    if r.iter().any(|v| !v.is_finite()) {
                        return Err(Error::InvalidSpace("row has non-finite entries".into()));
                    }
                }
                rows.clone()
            }
        };
        let pairing = rows.iter().map(|a| dot(a, &unit)).collect();
        Ok(Self { dim, cone, unit, rows, pairing })
    }

    /// `ℝ^dim` with the nonnegative orthant and unit `(1, …, 1)`.
    pub fn orthant(dim: usize) -> Result<Self> {
        Self::new(dim, ConeSpec::Orthant, vec![1.0; dim])
    }

    pub fn orthant_with_unit(unit: Vec<f64>) -> Result<Self> {
        Self::new(unit.len(), ConeSpec::Orthant, unit)
    }

    pub fn halfspaces(rows: Vec<Vec<f64>>, unit: Vec<f64>) -> Result<Self> {
        Self::new(unit.len(), ConeSpec::Halfspaces(rows), unit)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }

    pub fn cone(&self) -> &ConeSpec {
        &self.cone
    }

    /// Half-space rows of the cone (the standard basis for the orthant).
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn check(&self, x: &[f64]) -> Result<()> {
        check_dim(self.dim, x.len())
    }

    pub fn cone_contains(&self, x: &[f64]) -> Result<bool> {
        self.cone_contains_tol(x, TOL)
    }

    /// Membership with an explicit slack: `a_k·x ≥ −tol` for all rows.
    pub fn cone_contains_tol(&self, x: &[f64], tol: f64) -> Result<bool> {
        self.check(x)?;
        Ok(self.in_cone(x, tol))
    }

    pub(crate) fn in_cone(&self, x: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|a| dot(a, x) >= -tol)
    }

    pub fn interior_contains(&self, x: &[f64]) -> Result<bool> {
        self.check(x)?;
        Ok(self.in_interior(x))
    }

    pub(crate) fn in_interior(&self, x: &[f64]) -> bool {
        self.rows.iter().all(|a| dot(a, x) > TOL)
    }

    /// `x ⩽ y`, i.e. `y − x` in the cone.
    pub fn leq(&self, x: &[f64], y: &[f64]) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.le(x, y))
    }

    pub(crate) fn le(&self, x: &[f64], y: &[f64]) -> bool {
        self.rows
            .iter()
            .all(|a| dot(a, y) - dot(a, x) >= -TOL)
    }

    /// Order norm `inf{λ > 0 : −λ·unit ⩽ x ⩽ λ·unit}`, computed as
    /// `max_k |a_k·x| / (a_k·unit)`.
    pub fn order_norm(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.norm(x))
    }

    pub(crate) fn norm(&self, x: &[f64]) -> f64 {
        let mut n: f64 = 0.0;
        for (a, &p) in self.rows.iter().zip(&self.pairing) {
            let ax = dot(a, x).abs();
            if p > 0.0 {
                n = n.max(ax / p);
            } else if ax > TOL {
                return f64::INFINITY;
            }
        }
        n
    }

    /// Order distance `‖y − x‖`.
    pub(crate) fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        self.norm(&sub(y, x))
    }

    /// Membership in the neighbourhood `⟨z; δ⟩ = {x : δ·unit ± (x − z) interior}`.
    pub fn nbhd_contains(&self, z: &[f64], delta: f64, x: &[f64]) -> Result<bool> {
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::NonPositiveRadius(delta));
        }
        self.check(z)?;
        self.check(x)?;
        let d = sub(x, z);
        let plus: Vec<f64> = self.unit.iter().zip(&d).map(|(u, v)| delta * u + v).collect();
        let minus: Vec<f64> = self.unit.iter().zip(&d).map(|(u, v)| delta * u - v).collect();
        Ok(self.in_interior(&plus) && self.in_interior(&minus))
    }

    pub fn ray_thresholds(&self, x: &[f64], y: &[f64]) -> Result<RayThresholds> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.thresholds(x, y))
    }

    pub(crate) fn thresholds(&self, x: &[f64], y: &[f64]) -> RayThresholds {
        let d = sub(y, x);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, &p) in self.rows.iter().zip(&self.pairing) {
            let ad = dot(a, &d);
            if p > 0.0 {
                let r = ad / p;
                lo = lo.min(r);
                hi = hi.max(r);
            } else {
                // degenerate unit: the row cannot be moved by shifting along the unit
                if ad > TOL {
                    hi = f64::INFINITY;
                }
                if ad < -TOL {
                    lo = f64::NEG_INFINITY;
                }
            }
        }
        RayThresholds { lambda_minus: lo, lambda_plus: hi }
    }

    /// `E × F` with the coordinatewise cone and unit `(1_E, 1_F)`.
    pub fn product(e: &OrderedSpace, f: &OrderedSpace) -> OrderedSpace {
        let dim = e.dim + f.dim;
        let mut unit = e.unit.clone();
        unit.extend_from_slice(&f.unit);
        let cone = match (&e.cone, &f.cone) {
            (ConeSpec::Orthant, ConeSpec::Orthant) => ConeSpec::Orthant,
            _ => {
                let mut rows = Vec::with_capacity(e.rows.len() + f.rows.len());
                for a in &e.rows {
                    let mut r = a.clone();
                    r.resize(dim, 0.0);
                    rows.push(r);
                }
                for a in &f.rows {
                    let mut r = vec![0.0; e.dim];
                    r.extend_from_slice(a);
                    rows.push(r);
                }
                ConeSpec::Halfspaces(rows)
            }
        };
        OrderedSpace::new(dim, cone, unit).expect("product of valid shapes is valid")
    }

    /// Checks the order-unit axioms numerically with 256 seeded samples.
    pub fn validate(&self) -> SpaceReport {
        self.validate_with(&mut Sampler::new(0), 256)
    }

    pub fn validate_with(&self, sampler: &mut Sampler, samples: usize) -> SpaceReport {
        let mut issues = Vec::new();
        if self.rows.len() < self.dim {
            issues.push(SpaceIssue::TooFewRows { rows: self.rows.len(), dim: self.dim });
        }
        for (row, &p) in self.pairing.iter().enumerate() {
            if p <= TOL {
                issues.push(SpaceIssue::UnitNotInterior { row, pairing: p });
            }
        }
        // ±v both in the cone iff every row annihilates v
        if rank(&self.rows, self.dim, 1e-12) < self.dim {
            if let Some(direction) = null_vector(&self.rows, self.dim, 1e-12) {
                issues.push(SpaceIssue::NotPointed { direction });
            }
        }
        let mut checked = 0;
        if self.pairing.iter().all(|&p| p > TOL) {
            for _ in 0..samples {
                let x = sampler.point(self.dim);
                let norm = self.norm(&x);
                let lam = norm + TOL;
                let upper = scale(lam, &self.unit);
                let lower = scale(-lam, &self.unit);
                checked += 1;
                if !(self.le(&lower, &x) && self.le(&x, &upper)) {
                    issues.push(SpaceIssue::NormBoundViolated { x, norm });
                    break;
                }
            }
        }
        SpaceReport { issues, samples: checked }
    }

    /// Splits `x = residual + shift·unit` with the residual vanishing at the
    /// largest unit coordinate. Points on one unit line share a residual.
    pub fn split_unit(&self, x: &[f64]) -> (Vec<f64>, f64) {
        let mut j = 0;
        for (i, u) in self.unit.iter().enumerate() {
            if u.abs() > self.unit[j].abs() {
                j = i;
            }
        }
        let shift = x[j] / self.unit[j];
        let mut r: Vec<f64> = x.iter().zip(&self.unit).map(|(a, u)| a - shift * u).collect();
        r[j] = 0.0;
        (r, shift)
    }
}

impl TryFrom<SpaceDescriptor> for OrderedSpace {
    type Error = Error;

    fn try_from(d: SpaceDescriptor) -> Result<Self> {
        OrderedSpace::new(d.dim, d.cone, d.unit)
    }
}

impl From<OrderedSpace> for SpaceDescriptor {
    fn from(s: OrderedSpace) -> Self {
        SpaceDescriptor { dim: s.dim, cone: s.cone, unit: s.unit }
    }
}
