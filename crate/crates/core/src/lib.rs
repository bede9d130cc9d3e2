//! Computational toolkit for finite-dimensional ordered vector spaces with an
//! order unit.
//!
//! * [`space`]: polyhedral cones, the order relation, the order norm and its
//!   neighbourhoods, product spaces.
//! * [`functional`]: weakly additive functionals (linear, Choquet, max-plus,
//!   the square-root-gap counterexample) and sampling-based property checks.
//! * [`extension`]: A-subspaces and constructive extension of order-preserving
//!   functionals via the `[p⁻, p⁺]` interval.
//! * [`operator`]: weakly additive, order-preserving operators, continuity
//!   moduli, equicontinuity of families, pointwise limits and openness checks.
//! * [`dual`]: the normed dual cone, pointwise-convergence neighbourhoods, a
//!   metric for pointwise convergence and subsequence extraction over
//!   capacity sequences.

// `!(a <= b)` is used on purpose so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dual;
pub mod error;
pub mod extension;
pub mod functional;
pub mod linalg;
pub mod operator;
pub mod report;
pub mod sampling;
pub mod space;

/// Slack used by every cone and order predicate. Boundary points count as
/// in the cone but not in its interior.
pub const TOL: f64 = 1e-9;

pub use dual::{DenseSequence, DualPoint, WeakNeighborhood};
pub use error::{Error, Result};
pub use extension::{
    canonical_extension, check_partial_consistency, extend_all, extend_one, extension_interval,
    ASubspace, ExtensionInterval, ExtensionMode, ExtensionRule, PartialDescriptor,
    PartialFunctional,
};
pub use functional::{Capacity, Functional, FunctionalDescriptor, FunctionalKind};
pub use operator::{Operator, OperatorDescriptor, OperatorFamily, OperatorKind};
pub use report::{PropertyReport, Witness};
pub use sampling::Sampler;
pub use space::{ConeSpec, OrderedSpace, RayThresholds, SpaceDescriptor, SpaceReport};
