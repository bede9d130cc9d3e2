//! The state space `E^O` of normed weakly additive, order-preserving
//! functionals, its pointwise-convergence topology, and sequential
//! compactness over Choquet functionals.

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::functional::{check_normed, check_order_preserving, check_weak_additivity, Capacity, Functional};
use crate::report::{PropertyReport, Witness};
use crate::sampling::Sampler;
use crate::space::OrderedSpace;

/// A functional viewed as a point of the dual `E^W`.
#[derive(Debug, Clone)]
pub struct DualPoint(Functional);

impl DualPoint {
    pub fn new(f: Functional) -> Self {
        Self(f)
    }

    pub fn functional(&self) -> &Functional {
        &self.0
    }

    pub fn space(&self) -> &OrderedSpace {
        self.0.space()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0.eval(x)
    }
}

impl From<Functional> for DualPoint {
    fn from(f: Functional) -> Self {
        Self(f)
    }
}

/// Basic neighborhood `⟨f; x₁,…,x_n; ε⟩` of the pointwise-convergence topology.
#[derive(Debug, Clone)]
pub struct WeakNeighborhood {
    center: DualPoint,
    probes: Vec<Vec<f64>>,
    eps: f64,
}

impl WeakNeighborhood {
    pub fn new(center: DualPoint, probes: Vec<Vec<f64>>, eps: f64) -> Result<Self> {
        if probes.is_empty() {
            return Err(Error::Empty("probe list"));
        }
        if !(eps > 0.0) {
            return Err(Error::NonPositiveRadius(eps));
        }
        for p in &probes {
            center.space().check(p)?;
        }
        Ok(Self { center, probes, eps })
    }

    pub fn center(&self) -> &DualPoint {
        &self.center
    }

    pub fn probes(&self) -> &[Vec<f64>] {
        &self.probes
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `|f(x_i) − g(x_i)| < ε` for every probe.
    pub fn contains(&self, g: &DualPoint) -> Result<bool> {
        if g.space() != self.center.space() {
            return Err(Error::InvalidFunctional("functionals live on different spaces".into()));
        }
        Ok(self.probes.iter().all(|x| (self.center.eval(x) - g.eval(x)).abs() < self.eps))
    }
}

/// Least `γ` with `x ∈ γ·U(0, ε)` up to closure, namely `‖x‖ / ε`.
pub fn absorbing_gamma(space: &OrderedSpace, x: &[f64], eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveRadius(eps));
    }
    Ok(space.order_norm(x)? / eps)
}

pub const DEFAULT_DYADIC_LEVEL: u32 = 6;
pub const DEFAULT_TRUNCATION: usize = 64;

/// Ordered probe points used by the weak metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseSequence {
    points: Vec<Vec<f64>>,
}

impl DenseSequence {
    /// The first `len` vectors with coordinates `k / 2^j`, `|k| ⩽ 2^{j+1}`,
    /// listed by increasing level `j ⩽ max_level` (each vector at the first
    /// level where it appears) and lexicographically within a level.
    pub fn dyadic(dim: usize, max_level: u32, len: usize) -> Result<Self> {
        if dim == 0 || len == 0 {
            return Err(Error::Empty("dense sequence"));
        }
        let mut points = Vec::with_capacity(len);
        'levels: for j in 0..=max_level {
            let half = 1i64 << (j + 1);
            let scale = f64::from(1u32 << j);
            let mut ks = vec![-half; dim];
            loop {
                if j == 0 || ks.iter().any(|k| k % 2 != 0) {
                    points.push(ks.iter().map(|&k| k as f64 / scale).collect());
                    if points.len() == len {
                        break 'levels;
                    }
                }
                // Odometer step; the last coordinate varies fastest.
                let mut i = dim;
                loop {
                    if i == 0 {
                        continue 'levels;
                    }
                    i -= 1;
                    if ks[i] < half {
                        ks[i] += 1;
                        break;
                    }
                    ks[i] = -half;
                }
            }
        }
        Ok(Self { points })
    }

    pub fn from_points(space: &OrderedSpace, points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("dense sequence"));
        }
        for p in &points {
            space.check(p)?;
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `Σ_{k=1..m} 2^{−k}·min(1, |f(x_k) − g(x_k)|)`, with `m` capped at the
/// sequence length.
pub fn weak_metric(f: &DualPoint, g: &DualPoint, seq: &DenseSequence, m: usize) -> f64 {
    let mut w = 1.0;
    let mut d = 0.0;
    for x in seq.points.iter().take(m) {
        w *= 0.5;
        d += w * (f.eval(x) - g.eval(x)).abs().min(1.0);
    }
    d
}

/// Membership in `E^O`: weakly additive, order-preserving, `f(1_E) = 1`.
pub fn verify_in_eo(f: &DualPoint, samples: usize, seed: u64, tol: f64) -> PropertyReport {
    let space = f.space();
    let mut s = Sampler::new(seed);
    let shifts = s.shift_samples(space.dim(), samples);
    let pairs = s.comparable_pairs(space, samples);
    PropertyReport::combine(
        "in_state_space",
        &[
            check_weak_additivity(f.functional(), &shifts, tol),
            check_order_preserving(f.functional(), &pairs, tol),
            check_normed(f.functional(), tol),
        ],
    )
}

/// `|f(x)| ⩽ ‖x‖·f(1_E)` on samples.
pub fn check_uniform_bound(f: &DualPoint, points: &[Vec<f64>], tol: f64) -> PropertyReport {
    let c = f.functional().unit_value();
    let mut rep = PropertyReport::new("uniform_bound");
    for x in points {
        let fx = f.eval(x);
        let bound = f.space().norm(x) * c;
        rep.record(fx.abs() - bound, tol, || Witness::new(vec![x.clone()], vec![fx, bound]));
    }
    rep.finish()
}

#[derive(Debug, Clone)]
pub struct CompactnessConfig {
    pub min_length: usize,
    /// Target coordinate spread of the innermost extraction box.
    pub tol: f64,
    pub truncation: usize,
    /// Bound on the weak-metric distance at the end of the tail.
    pub metric_tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CompactnessConfig {
    fn default() -> Self {
        Self { min_length: 2, tol: 1e-6, truncation: DEFAULT_TRUNCATION, metric_tol: 1e-4, samples: 4096, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct CompactnessOutcome {
    /// Strictly increasing indices into the input sequence.
    pub indices: Vec<usize>,
    pub limit_capacity: Capacity,
    pub limit: DualPoint,
    /// Weak-metric distance from each subsequence term to the limit.
    pub distances: Vec<f64>,
    /// Start (position in `indices`) of the maximal non-increasing tail of `distances`.
    pub tail_start: usize,
    pub report: PropertyReport,
}

/// Extracts a convergent subsequence from capacities with `v(Ω) = 1` by
/// nested halving over the free coordinates (all subsets except `∅`, `Ω`).
///
/// Each round splits the current member set at the midpoint of its widest
/// coordinate (ties to the lowest subset mask) and keeps the larger half,
/// preferring the half with the smallest index on ties; values equal to the
/// midpoint go to the upper half. Rounds stop once every coordinate spread
/// is within `cfg.tol`. The subsequence takes the innermost set and then,
/// walking outward, prepends the largest earlier index of each enclosing set,
/// so term `k` lies in the `k`-th nested box.
pub fn subsequence_limit(caps: &[Capacity], space: &OrderedSpace, cfg: &CompactnessConfig) -> Result<CompactnessOutcome> {
    if caps.len() < cfg.min_length.max(1) {
        return Err(Error::SequenceTooShort { len: caps.len(), min: cfg.min_length.max(1) });
    }
    let n = caps[0].n();
    check_dim(n, space.dim())?;
    for v in caps {
        if v.n() != n {
            return Err(Error::InvalidCapacity("capacities must share one ground set".into()));
        }
        if (v.total() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidCapacity(format!("v(Ω) = {} but 1 is required", v.total())));
        }
    }
    let full = (1usize << n) - 1;
    let free: Vec<usize> = (1..full).collect();
    let spread = |set: &[usize], m: usize| {
        let (lo, hi) = set
            .iter()
            .map(|&i| caps[i].value(m))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        (lo, hi)
    };

    let mut levels: Vec<Vec<usize>> = vec![(0..caps.len()).collect()];
    loop {
        let cur = levels.last().expect("nonempty");
        let widest = free
            .iter()
            .map(|&m| (m, spread(cur, m)))
            .fold(None::<(usize, f64, f64)>, |best, (m, (lo, hi))| match best {
                Some(b) if b.2 - b.1 >= hi - lo => Some(b),
                _ => Some((m, lo, hi)),
            });
        let Some((m, lo, hi)) = widest else { break };
        if hi - lo <= cfg.tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (upper, lower): (Vec<usize>, Vec<usize>) = cur.iter().partition(|&&i| caps[i].value(m) >= mid);
        let keep = match upper.len().cmp(&lower.len()) {
            std::cmp::Ordering::Greater => upper,
            std::cmp::Ordering::Less => lower,
            std::cmp::Ordering::Equal if upper[0] < lower[0] => upper,
            std::cmp::Ordering::Equal => lower,
        };
        levels.push(keep);
    }

    let inner = levels.last().expect("nonempty");
    let mut indices = inner.clone();
    for set in levels.iter().rev().skip(1) {
        if let Some(&j) = set.iter().filter(|&&j| j < indices[0]).max() {
            indices.insert(0, j);
        }
    }

    let mut values = vec![0.0; full + 1];
    values[full] = 1.0;
    for &m in &free {
        let (lo, hi) = spread(inner, m);
        values[m] = 0.5 * (lo + hi);
    }
    let limit_capacity = Capacity::set_function(n, values)?;
    let limit = DualPoint::new(Functional::choquet(space, limit_capacity.clone())?);

    let seq = DenseSequence::dyadic(n, DEFAULT_DYADIC_LEVEL, cfg.truncation.max(1))?;
    let mut distances = Vec::with_capacity(indices.len());
    for &i in &indices {
        let fi = DualPoint::new(Functional::choquet(space, caps[i].clone())?);
        distances.push(weak_metric(&fi, &limit, &seq, cfg.truncation));
    }
    let mut tail_start = distances.len() - 1;
    while tail_start > 0 && distances[tail_start - 1] >= distances[tail_start] {
        tail_start -= 1;
    }

    let mut cap_rep = PropertyReport::new("limit_capacity");
    let violation = limit_capacity.monotonicity_violation(cfg.tol);
    cap_rep.record(if violation.is_some() { 1.0 } else { 0.0 }, 0.0, || {
        let (s, t) = violation.unwrap_or((0, 0));
        Witness::new(vec![vec![s as f64, t as f64]], vec![limit_capacity.value(s), limit_capacity.value(t)])
            .with_note("limit capacity is not monotone")
    });
    let total_gap = (limit_capacity.total() - 1.0).abs();
    cap_rep.record(total_gap, cfg.tol, || Witness::new(vec![], vec![limit_capacity.total()]));

    let mut coord_rep = PropertyReport::new("coordinatewise_convergence");
    let last = *indices.last().expect("nonempty");
    let gap = free
        .iter()
        .map(|&m| (caps[last].value(m) - limit_capacity.value(m)).abs())
        .fold(0.0, f64::max);
    coord_rep.record(gap, cfg.tol, || Witness::new(vec![caps[last].values().to_vec()], vec![gap]));

    let mut metric_rep = PropertyReport::new("weak_metric_convergence");
    let end = distances[distances.len() - 1];
    metric_rep.record(end - cfg.metric_tol, 0.0, || {
        Witness::new(vec![distances[tail_start..].to_vec()], vec![end])
    });

    let report = PropertyReport::combine(
        "subsequence_limit",
        &[
            cap_rep.finish(),
            coord_rep.finish(),
            verify_in_eo(&limit, cfg.samples, cfg.seed, 1e-9),
            metric_rep.finish(),
        ],
    );
    Ok(CompactnessOutcome { indices, limit_capacity, limit, distances, tail_start, report })
}
