//! Weakly additive, order-preserving operators between order-unit spaces.

mod family;
mod openness;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use family::{
    certify_equicontinuity, equicontinuity_modulus, pointwise_limit, EquicontinuityModulus,
    OperatorFamily, DEFAULT_ORBIT_CAP,
};
pub use openness::{
    open_ball_image_check, openness_check, search_preimage, ImageHook, ImageOracle, OpennessConfig,
    OpennessVerdict, OpennessWitness, SearchOutcome,
};

use crate::error::{check_dim, Error, Result};
use crate::functional::{Functional, FunctionalDescriptor};
use crate::linalg::{axpy, dot, in_column_space, max_abs, sub};
use crate::report::{PropertyReport, Witness};
use crate::sampling::Sampler;
use crate::space::{ConeSpec, OrderedSpace};
use crate::TOL;

pub type MapHook = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Values of a limit operator recorded on probe points, stored modulo the
/// unit line: `T(r + s·unit) = base(r) + s·T(unit)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulation {
    residuals: Vec<Vec<f64>>,
    bases: Vec<Vec<f64>>,
    unit_image: Vec<f64>,
}

#[derive(Clone)]
pub enum OperatorKind {
    /// `x ↦ M x` with `M` mapping the domain cone into the codomain cone.
    LinearPositive(Vec<Vec<f64>>),
    /// `ℝ² → ℝ²`, `(x₁, x₂) ↦ (x₁, x₁ + clamp(x₂ − x₁, −1, 1))`.
    Clamp,
    /// One functional per codomain coordinate.
    Stack(Vec<Functional>),
    /// Tabulated pointwise limit, see [`pointwise_limit`].
    Tabulated(Tabulation),
    Custom { name: String, map: MapHook },
}

impl fmt::Debug for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LinearPositive(m) => f.debug_tuple("LinearPositive").field(m).finish(),
            Self::Clamp => f.write_str("Clamp"),
            Self::Stack(fs) => f.debug_tuple("Stack").field(fs).finish(),
            Self::Tabulated(t) => f.debug_tuple("Tabulated").field(&t.residuals.len()).finish(),
            Self::Custom { name, .. } => f.debug_struct("Custom").field("name", name).finish(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Operator {
    domain: OrderedSpace,
    codomain: OrderedSpace,
    kind: OperatorKind,
    unit_image: Vec<f64>,
}

impl Operator {
    fn build(domain: &OrderedSpace, codomain: &OrderedSpace, kind: OperatorKind) -> Self {
        let mut op = Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            kind,
            unit_image: Vec::new(),
        };
        op.unit_image = op.map(domain.unit());
        op
    }

    fn check_matrix(domain: &OrderedSpace, codomain: &OrderedSpace, matrix: &[Vec<f64>]) -> Result<()> {
        check_dim(codomain.dim(), matrix.len())?;
        for row in matrix {
            check_dim(domain.dim(), row.len())?;
        }
        Ok(())
    }

    /// Linear operator that must map the domain cone into the codomain cone.
    /// For an orthant domain the generators are checked exactly; otherwise
    /// 512 seeded cone points are checked.
    pub fn linear_positive(domain: &OrderedSpace, codomain: &OrderedSpace, matrix: Vec<Vec<f64>>) -> Result<Self> {
        Self::check_matrix(domain, codomain, &matrix)?;
        let image = |x: &[f64]| matrix.iter().map(|r| dot(r, x)).collect::<Vec<_>>();
        let probes: Vec<Vec<f64>> = match domain.cone() {
            ConeSpec::Orthant => (0..domain.dim())
                .map(|k| {
                    let mut e = vec![0.0; domain.dim()];
                    e[k] = 1.0;
                    e
                })
                .collect(),
            ConeSpec::Halfspaces(_) => Sampler::new(0).cone_points(domain, 512),
        };
        if let Some(p) = probes.iter().find(|p| !codomain.in_cone(&image(p), TOL)) {
            return Err(Error::InvalidOperator(format!(
                "matrix maps cone point {p:?} outside the codomain cone"
            )));
        }
        Ok(Self::build(domain, codomain, OperatorKind::LinearPositive(matrix)))
    }

    /// Linear operator without the cone-mapping check, for counterexamples.
    pub fn linear_unchecked(domain: &OrderedSpace, codomain: &OrderedSpace, matrix: Vec<Vec<f64>>) -> Result<Self> {
        Self::check_matrix(domain, codomain, &matrix)?;
        Ok(Self::build(domain, codomain, OperatorKind::LinearPositive(matrix)))
    }

    pub fn scaled_identity(space: &OrderedSpace, s: f64) -> Result<Self> {
        let n = space.dim();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { s } else { 0.0 }).collect())
            .collect();
        Self::linear_positive(space, space, m)
    }

    pub fn identity(space: &OrderedSpace) -> Self {
        Self::scaled_identity(space, 1.0).expect("identity maps the cone into itself")
    }

    /// The band clamp on `ℝ²` (orthant, unit `(1, 1)`), identity on
    /// `|x₂ − x₁| < 1`.
    pub fn clamp() -> Self {
        let r2 = OrderedSpace::orthant(2).expect("ℝ²");
        Self::build(&r2, &r2, OperatorKind::Clamp)
    }

    /// Stacks functionals on `domain` into an operator with the given codomain.
    pub fn stack(domain: &OrderedSpace, codomain: &OrderedSpace, functionals: Vec<Functional>) -> Result<Self> {
        if functionals.is_empty() {
            return Err(Error::Empty("functional stack"));
        }
        check_dim(codomain.dim(), functionals.len())?;
        for f in &functionals {
            if f.space() != domain {
                return Err(Error::InvalidOperator("stacked functional lives on another space".into()));
            }
        }
        Ok(Self::build(domain, codomain, OperatorKind::Stack(functionals)))
    }

    pub fn custom(
        domain: &OrderedSpace,
        codomain: &OrderedSpace,
        name: impl Into<String>,
        map: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Self::build(domain, codomain, OperatorKind::Custom { name: name.into(), map: Arc::new(map) })
    }

    pub(crate) fn tabulated(domain: &OrderedSpace, codomain: &OrderedSpace, tab: Tabulation) -> Self {
        Self::build(domain, codomain, OperatorKind::Tabulated(tab))
    }

    pub fn domain(&self) -> &OrderedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &OrderedSpace {
        &self.codomain
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    /// Cached `T(1_E)`.
    pub fn unit_image(&self) -> &[f64] {
        &self.unit_image
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            OperatorKind::LinearPositive(_) => "linear_positive",
            OperatorKind::Clamp => "clamp",
            OperatorKind::Stack(_) => "stack",
            OperatorKind::Tabulated(_) => "tabulated_limit",
            OperatorKind::Custom { name, .. } => name,
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.domain.check(x)?;
        Ok(self.map(x))
    }

    pub(crate) fn map(&self, x: &[f64]) -> Vec<f64> {
        match &self.kind {
            OperatorKind::LinearPositive(m) => m.iter().map(|r| dot(r, x)).collect(),
            OperatorKind::Clamp => clamp_map(x),
            OperatorKind::Stack(fs) => fs.iter().map(|f| f.eval(x)).collect(),
            OperatorKind::Tabulated(t) => t.eval(&self.domain, x),
            OperatorKind::Custom { map, .. } => map(x),
        }
    }

    /// Exact membership in the image `T(E)` where it is known in closed form.
    pub fn image_contains(&self, y: &[f64]) -> Option<bool> {
        match &self.kind {
            OperatorKind::Clamp => Some((y[1] - y[0]).abs() <= 1.0 + TOL),
            OperatorKind::LinearPositive(m) => Some(in_column_space(m, y, 1e-10)),
            _ => None,
        }
    }
}

fn clamp_map(x: &[f64]) -> Vec<f64> {
    let (x1, x2) = (x[0], x[1]);
    if x2 <= x1 - 1.0 {
        vec![x1, x1 - 1.0]
    } else if x2 < x1 + 1.0 {
        vec![x1, x2]
    } else {
        vec![x1, x1 + 1.0]
    }
}

impl Tabulation {
    fn eval(&self, domain: &OrderedSpace, x: &[f64]) -> Vec<f64> {
        let (r, s) = domain.split_unit(x);
        let nearest = self
            .residuals
            .iter()
            .enumerate()
            .map(|(i, p)| (i, domain.dist(p, &r)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
            .0;
        axpy(&self.bases[nearest], s, &self.unit_image)
    }
}

/// Componentwise `T(x + λ·1_E) = T(x) + λ·T(1_E)` within `tol`.
pub fn check_weakly_additive_op(t: &Operator, samples: &[(Vec<f64>, f64)], tol: f64) -> PropertyReport {
    let u = t.domain.unit();
    let mut rep = PropertyReport::new("weak_additivity");
    for (x, lam) in samples {
        let tx = t.map(x);
        let shifted = t.map(&axpy(x, *lam, u));
        let expected = axpy(&tx, *lam, &t.unit_image);
        let defect = max_abs(&sub(&shifted, &expected));
        rep.record(defect, tol, || {
            Witness::new(vec![x.clone(), vec![*lam], tx.clone(), shifted.clone()], vec![defect])
        });
    }
    rep.finish()
}

/// `T(x) ⩽ T(y)` in the codomain on pairs with `x ⩽ y`. The defect is the
/// largest amount by which `T(y) − T(x)` violates a half-space row.
pub fn check_order_preserving_op(t: &Operator, pairs: &[(Vec<f64>, Vec<f64>)], tol: f64) -> PropertyReport {
    let mut rep = PropertyReport::new("order_preserving");
    for (x, y) in pairs {
        let tx = t.map(x);
        let ty = t.map(y);
        let d = sub(&ty, &tx);
        let defect = t
            .codomain
            .rows()
            .iter()
            .map(|a| -dot(a, &d))
            .fold(f64::NEG_INFINITY, f64::max);
        rep.record(defect, tol, || Witness::new(vec![x.clone(), y.clone(), tx.clone(), ty.clone()], vec![defect]));
    }
    rep.finish()
}

/// Whether `T(1_E)` is interior to the codomain cone, i.e. usable as a
/// codomain order unit.
pub fn unit_image_interior(t: &Operator) -> bool {
    t.codomain.in_interior(&t.unit_image)
}

/// `‖T(1_E)‖`, the Lipschitz constant of a weakly additive, order-preserving `T`.
pub fn operator_modulus(t: &Operator) -> f64 {
    t.codomain.norm(&t.unit_image)
}

/// `max over pairs of ‖T(x) − T(y)‖ − ‖T(1_E)‖·‖x − y‖`.
pub fn operator_lipschitz_defect(t: &Operator, pairs: &[(Vec<f64>, Vec<f64>)]) -> f64 {
    let m = operator_modulus(t);
    pairs
        .iter()
        .map(|(x, y)| t.codomain.dist(&t.map(x), &t.map(y)) - m * t.domain.dist(x, y))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `‖T(x)‖ ⩽ R·‖T(1_E)‖` on sampled `x` with `‖x‖ ⩽ R`.
pub fn check_bounded(t: &Operator, radius: f64, samples: usize, sampler: &mut Sampler, tol: f64) -> PropertyReport {
    let m = operator_modulus(t);
    let zero = vec![0.0; t.domain.dim()];
    let mut rep = PropertyReport::new(format!("bounded_r{radius}"));
    for _ in 0..samples {
        let x = sampler.ball_point(&t.domain, &zero, radius);
        let n = t.codomain.norm(&t.map(&x));
        rep.record(n - radius * m, tol, || Witness::new(vec![x.clone()], vec![n, radius * m]));
    }
    rep.finish()
}

/// The graph `{(x, T(x))}` is closed under adding multiples of the product
/// unit `(1_E, T(1_E))`.
pub fn graph_check(t: &Operator, samples: &[Vec<f64>], lambdas: &[f64], tol: f64) -> PropertyReport {
    let mut unit = t.domain.unit().to_vec();
    unit.extend_from_slice(&t.unit_image);
    let mut rep = PropertyReport::new("graph_closed_under_unit");
    for x in samples {
        let mut g = x.clone();
        g.extend(t.map(x));
        for &lam in lambdas {
            let moved = axpy(&g, lam, &unit);
            let xs = axpy(x, lam, t.domain.unit());
            let mut on_graph = xs.clone();
            on_graph.extend(t.map(&xs));
            let defect = max_abs(&sub(&moved, &on_graph));
            rep.record(defect, tol, || Witness::new(vec![x.clone(), vec![lam]], vec![defect]));
        }
    }
    rep.finish()
}

/// JSON shape: `{"kind": "linear_positive"|"clamp"|"stack", "matrix": [[...]],
/// "functionals": [...], "codomain": {space}}`. The codomain defaults to the
/// domain for clamp and square matrices, and to the orthant with unit ones
/// otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Vec<FunctionalDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<OrderedSpace>,
}

impl OperatorDescriptor {
    pub fn build(&self, domain: &OrderedSpace) -> Result<Operator> {
        let codomain_for = |k: usize| -> Result<OrderedSpace> {
            match &self.codomain {
                Some(c) => Ok(c.clone()),
                None if k == domain.dim() => Ok(domain.clone()),
                None => OrderedSpace::orthant(k),
            }
        };
        match self.kind.as_str() {
            "clamp" => {
                let c = Operator::clamp();
                if domain != c.domain() {
                    return Err(Error::InvalidOperator("clamp is defined on the ℝ² orthant with unit (1, 1)".into()));
                }
                Ok(c)
            }
            "linear_positive" => {
                let m = self
                    .matrix
                    .clone()
                    .ok_or_else(|| Error::InvalidOperator("linear_positive needs \"matrix\"".into()))?;
                let codomain = codomain_for(m.len())?;
                Operator::linear_positive(domain, &codomain, m)
            }
            "stack" => {
                let ds = self
                    .functionals
                    .as_ref()
                    .ok_or_else(|| Error::InvalidOperator("stack needs \"functionals\"".into()))?;
                let fs = ds.iter().map(|d| d.build(domain)).collect::<Result<Vec<_>>>()?;
                let codomain = match &self.codomain {
                    Some(c) => c.clone(),
                    None => OrderedSpace::orthant(fs.len())?,
                };
                Operator::stack(domain, &codomain, fs)
            }
            other => Err(Error::InvalidOperator(format!("unknown kind {other:?}"))),
        }
    }
}
