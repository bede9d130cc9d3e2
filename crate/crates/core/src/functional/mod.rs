//! Concrete weakly additive functionals and their property checkers.

mod capacity;
mod checks;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use capacity::{choquet, Capacity, CapacityDescriptor};
pub use checks::{
    bound, check_normed, check_order_preserving, check_positive, check_weak_additivity,
    lipschitz_defect,
};

use crate::error::{check_dim, Error, Result};
use crate::extension::{ExtensionMode, PartialFunctional};
use crate::linalg::dot;
use crate::space::OrderedSpace;

pub type EvalHook = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum FunctionalKind {
    Linear(Vec<f64>),
    SqrtGap,
    Choquet(Capacity),
    MaxPlus(Vec<f64>),
    Extended { partial: PartialFunctional, mode: ExtensionMode },
    Custom { name: String, eval: EvalHook },
}

impl fmt::Debug for FunctionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear(w) => f.debug_tuple("Linear").field(w).finish(),
            Self::SqrtGap => f.write_str("SqrtGap"),
            Self::Choquet(v) => f.debug_tuple("Choquet").field(v).finish(),
            Self::MaxPlus(w) => f.debug_tuple("MaxPlus").field(w).finish(),
            Self::Extended { partial, mode } => f
                .debug_struct("Extended")
                .field("partial", partial)
                .field("mode", mode)
                .finish(),
            Self::Custom { name, .. } => f.debug_struct("Custom").field("name", name).finish(),
        }
    }
}

/// A real-valued map on an ordered space, tagged with what it is.
///
/// Choquet and max-plus functionals read coordinates in units of the order
/// unit (`x_i / unit_i`), so they are weakly additive for any unit with
/// positive coordinates and reduce to the textbook formulas when the unit is
/// `(1, …, 1)`.
#[derive(Clone, Debug)]
pub struct Functional {
    space: OrderedSpace,
    kind: FunctionalKind,
    unit_value: f64,
}

impl Functional {
    fn build(space: &OrderedSpace, kind: FunctionalKind) -> Self {
        let mut f = Self { space: space.clone(), kind, unit_value: 0.0 };
        f.unit_value = f.eval(space.unit());
        f
    }

    pub fn linear(space: &OrderedSpace, weights: Vec<f64>) -> Result<Self> {
        check_dim(space.dim(), weights.len())?;
        Ok(Self::build(space, FunctionalKind::Linear(weights)))
    }

    /// `½(x₁ + x₂ + √|x₂ − x₁|)` on a two-dimensional space.
    pub fn sqrt_gap(space: &OrderedSpace) -> Result<Self> {
        check_dim(2, space.dim())?;
        Ok(Self::build(space, FunctionalKind::SqrtGap))
    }

    pub fn choquet(space: &OrderedSpace, capacity: Capacity) -> Result<Self> {
        check_dim(space.dim(), capacity.n())?;
        require_positive_unit(space)?;
        Ok(Self::build(space, FunctionalKind::Choquet(capacity)))
    }

    /// `max_i (w_i + x_i)`. Weights are expected to have maximum 0 so the
    /// functional is normed; other weights are accepted and show up in
    /// [`check_normed`].
    pub fn maxplus(space: &OrderedSpace, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("max-plus weights"));
        }
        check_dim(space.dim(), weights.len())?;
        require_positive_unit(space)?;
        Ok(Self::build(space, FunctionalKind::MaxPlus(weights)))
    }

    pub fn custom(
        space: &OrderedSpace,
        name: impl Into<String>,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::build(space, FunctionalKind::Custom { name: name.into(), eval: Arc::new(eval) })
    }

    pub(crate) fn extended(partial: PartialFunctional, mode: ExtensionMode) -> Self {
        let space = partial.subspace().space().clone();
        Self::build(&space, FunctionalKind::Extended { partial, mode })
    }

    pub fn space(&self) -> &OrderedSpace {
        &self.space
    }

    pub fn kind(&self) -> &FunctionalKind {
        &self.kind
    }

    /// Cached `f(unit)`.
    pub fn unit_value(&self) -> f64 {
        self.unit_value
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            FunctionalKind::Linear(_) => "linear",
            FunctionalKind::SqrtGap => "sqrt_gap",
            FunctionalKind::Choquet(_) => "choquet",
            FunctionalKind::MaxPlus(_) => "maxplus",
            FunctionalKind::Extended { .. } => "extended",
            FunctionalKind::Custom { name, .. } => name,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.space.check(x)?;
        Ok(self.eval(x))
    }

    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            FunctionalKind::Linear(w) => dot(w, x),
            FunctionalKind::SqrtGap => sqrt_gap_unchecked(x),
            FunctionalKind::Choquet(v) => {
                let scaled = self.in_unit_coords(x);
                capacity::choquet_sorted(v, &scaled)
            }
            FunctionalKind::MaxPlus(w) => {
                let scaled = self.in_unit_coords(x);
                maxplus_unchecked(w, &scaled)
            }
            FunctionalKind::Extended { partial, mode } => partial.extension_value(x, *mode),
            FunctionalKind::Custom { eval, .. } => eval(x),
        }
    }

    fn in_unit_coords(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(self.space.unit()).map(|(a, u)| a / u).collect()
    }
}

fn require_positive_unit(space: &OrderedSpace) -> Result<()> {
    if space.unit().iter().all(|&u| u > 0.0) {
        Ok(())
    } else {
        Err(Error::InvalidFunctional(
            "coordinatewise aggregation needs a unit with positive coordinates".into(),
        ))
    }
}

/// `½(x₁ + x₂ + √|x₂ − x₁|)`
pub fn sqrt_gap(x: &[f64]) -> Result<f64> {
    check_dim(2, x.len())?;
    Ok(sqrt_gap_unchecked(x))
}

fn sqrt_gap_unchecked(x: &[f64]) -> f64 {
    0.5 * (x[0] + x[1] + (x[1] - x[0]).abs().sqrt())
}

/// `max_i (w_i + x_i)`
pub fn maxplus(weights: &[f64], x: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::Empty("max-plus weights"));
    }
    check_dim(weights.len(), x.len())?;
    Ok(maxplus_unchecked(weights, x))
}

fn maxplus_unchecked(w: &[f64], x: &[f64]) -> f64 {
    w.iter().zip(x).map(|(a, b)| a + b).fold(f64::NEG_INFINITY, f64::max)
}

/// JSON shape of a functional:
/// `{"kind": "linear"|"sqrt_gap"|"choquet"|"maxplus", "weights": [...], "capacity": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<Capacity>,
}

impl FunctionalDescriptor {
    pub fn build(&self, space: &OrderedSpace) -> Result<Functional> {
        let weights = || {
            self.weights
                .clone()
                .ok_or_else(|| Error::InvalidFunctional(format!("{} needs \"weights\"", self.kind)))
        };
        match self.kind.as_str() {
            "linear" => Functional::linear(space, weights()?),
            "sqrt_gap" => Functional::sqrt_gap(space),
            "maxplus" => Functional::maxplus(space, weights()?),
            "choquet" => {
                let v = self
                    .capacity
                    .clone()
                    .ok_or_else(|| Error::InvalidFunctional("choquet needs \"capacity\"".into()))?;
                Functional::choquet(space, v)
            }
            other => Err(Error::InvalidFunctional(format!("unknown kind {other:?}"))),
        }
    }
}
