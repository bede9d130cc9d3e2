use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::TOL;

const MAX_GROUND: usize = 20;

/// A set function on `{0, …, n−1}` with subsets addressed by bitmask
/// (bit `i` set ⇔ element `i` is in the subset).
///
/// [`Capacity::new`] enforces the capacity axioms (`v(∅) = 0`, nonnegative,
/// monotone). [`Capacity::set_function`] skips the monotonicity and sign
/// requirements so non-monotone counterexamples can be built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CapacityDescriptor", into = "CapacityDescriptor")]
pub struct Capacity {
    n: usize,
    values: Vec<f64>,
}

/// JSON shape: `{"n": k, "values": {"<bitmask>": value, ...}}`. The empty
/// set may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityDescriptor {
    pub n: usize,
    pub values: BTreeMap<String, f64>,
}

impl Capacity {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        let cap = Self::set_function(n, values)?;
        if let Some(&v) = cap.values.iter().find(|v| **v < 0.0) {
            return Err(Error::InvalidCapacity(format!("negative value {v}")));
        }
        if let Some((s, t)) = cap.monotonicity_violation(TOL) {
            return Err(Error::InvalidCapacity(format!(
                "not monotone: v({s:#b}) = {} > v({t:#b}) = {}",
                cap.values[s], cap.values[t]
            )));
        }
        Ok(cap)
    }

    pub fn set_function(n: usize, mut values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidCapacity(format!("ground size {n} out of range 1..={MAX_GROUND}")));
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidCapacity(format!(
                "expected {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCapacity("non-finite value".into()));
        }
        if values[0].abs() > TOL {
            return Err(Error::InvalidCapacity(format!("v(∅) = {} ≠ 0", values[0])));
        }
        values[0] = 0.0;
        Ok(Self { n, values })
    }

    /// The additive capacity `v(S) = Σ_{i∈S} w_i`.
    pub fn additive(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidCapacity(format!("ground size {n} out of range 1..={MAX_GROUND}")));
        }
        let values = (0..1usize << n)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).map(|i| weights[i]).sum())
            .collect();
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn value(&self, mask: usize) -> f64 {
        self.values[mask]
    }

    /// `v(Ω)`
    pub fn total(&self) -> f64 {
        self.values[self.full_mask()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// First pair `S ⊂ T = S ∪ {i}` with `v(S) > v(T) + tol`.
    pub fn monotonicity_violation(&self, tol: f64) -> Option<(usize, usize)> {
        for s in 0..self.values.len() {
            for i in 0..self.n {
                let t = s | (1 << i);
                if t != s && self.values[s] > self.values[t] + tol {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self, tol: f64) -> bool {
        self.monotonicity_violation(tol).is_none()
    }
}

impl TryFrom<CapacityDescriptor> for Capacity {
    type Error = Error;

    fn try_from(d: CapacityDescriptor) -> Result<Self> {
        if d.n == 0 || d.n > MAX_GROUND {
            return Err(Error::InvalidCapacity(format!("ground size {} out of range", d.n)));
        }
        let size = 1usize << d.n;
        let mut values = vec![f64::NAN; size];
        values[0] = 0.0;
        for (key, v) in &d.values {
            let mask: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::InvalidCapacity(format!("subset key {key:?} is not a bitmask")))?;
            if mask >= size {
                return Err(Error::InvalidCapacity(format!("subset {mask} outside ground set")));
            }
            values[mask] = *v;
        }
        if let Some(missing) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::InvalidCapacity(format!("missing value for subset {missing}")));
        }
        Capacity::new(d.n, values)
    }
}

impl From<Capacity> for CapacityDescriptor {
    fn from(c: Capacity) -> Self {
        let values = c
            .values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, v)| (m.to_string(), *v))
            .collect();
        CapacityDescriptor { n: c.n, values }
    }
}

/// Discrete Choquet integral: coordinates sorted ascending
/// `x_(1) ⩽ … ⩽ x_(n)`, level sets `A_(i)` holding the indices of the
/// `n − i + 1` largest, value `x_(1)·v(Ω) + Σ_{i≥2} (x_(i) − x_(i−1))·v(A_(i))`.
/// Ties are ordered by index; the value does not depend on it.
pub fn choquet(v: &Capacity, x: &[f64]) -> Result<f64> {
    crate::error::check_dim(v.n, x.len())?;
    Ok(choquet_sorted(v, x))
}

pub(crate) fn choquet_sorted(v: &Capacity, x: &[f64]) -> f64 {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    let mut mask = v.full_mask();
    let mut acc = x[order[0]] * v.value(mask);
    for w in order.windows(2) {
        mask &= !(1 << w[0]);
        acc += (x[w[1]] - x[w[0]]) * v.value(mask);
    }
    acc
}
