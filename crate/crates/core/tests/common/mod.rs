//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use ordunit::{Capacity, OrderedSpace};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn member(space: &OrderedSpace, x: &[f64]) -> bool {
    space.cone_contains_tol(x, 0.0).unwrap()
}

fn shifted(x: &[f64], t: f64, u: &[f64]) -> Vec<f64> {
    x.iter().zip(u).map(|(a, b)| a + t * b).collect()
}

/// Least `t ⩾ 0` with `t·u ± x` both in the cone, by bisection on exact
/// membership.
pub fn norm_by_bisection(space: &OrderedSpace, x: &[f64]) -> f64 {
    let u = space.unit();
    let ok = |t: f64| {
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        member(space, &shifted(&neg, t, u)) && member(space, &shifted(x, t, u))
    };
    if ok(0.0) {
        return 0.0;
    }
    let mut hi = 1.0;
    while !ok(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi.max(1.0) {
            break;
        }
    }
    hi
}

/// Least `t` with `x + t·u ⩾ y`.
pub fn min_dominating_shift(space: &OrderedSpace, x: &[f64], y: &[f64]) -> f64 {
    let u = space.unit();
    let ok = |t: f64| {
        let d: Vec<f64> = shifted(x, t, u).iter().zip(y).map(|(a, b)| a - b).collect();
        member(space, &d)
    };
    bracket_bisect(ok, true)
}

/// Largest `t` with `x + t·u ⩽ y`.
pub fn max_dominated_shift(space: &OrderedSpace, x: &[f64], y: &[f64]) -> f64 {
    let u = space.unit();
    let ok = |t: f64| {
        let d: Vec<f64> = y.iter().zip(shifted(x, t, u)).map(|(a, b)| a - b).collect();
        member(space, &d)
    };
    bracket_bisect(ok, false)
}

/// Boundary of a monotone predicate on ℝ. With `upward`, the predicate holds
/// for large `t`; otherwise for small `t`.
fn bracket_bisect(ok: impl Fn(f64) -> bool, upward: bool) -> f64 {
    let good = |t: f64| if upward { ok(t) } else { ok(-t) };
    let mut hi = 1.0;
    while !good(hi) {
        hi *= 2.0;
    }
    let mut lo = -1.0;
    while good(lo) {
        lo *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if good(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if upward {
        hi
    } else {
        -hi
    }
}

/// Per-line oracle for `[p⁻(y), p⁺(y)]` over base points, their values, the
/// unit value `c` and the unit line itself.
pub fn interval_oracle(space: &OrderedSpace, points: &[Vec<f64>], values: &[f64], c: f64, y: &[f64]) -> (f64, f64) {
    let zero = vec![0.0; space.dim()];
    let mut lines: Vec<(&[f64], f64)> = vec![(&zero, 0.0)];
    lines.extend(points.iter().map(Vec::as_slice).zip(values.iter().copied()));
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (x, g) in lines {
        hi = hi.min(g + c * min_dominating_shift(space, x, y));
        lo = lo.max(g + c * max_dominated_shift(space, x, y));
    }
    (lo, hi)
}

/// Choquet integral as a layer-cake sum over distinct level values, with the
/// negative part absorbed by the `min·v(Ω)` term.
pub fn choquet_layer_cake(v: &Capacity, x: &[f64]) -> f64 {
    let mut levels: Vec<f64> = x.to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut total = levels[0] * v.total();
    for w in levels.windows(2) {
        let mask = x
            .iter()
            .enumerate()
            .filter(|(_, &xi)| xi >= w[1])
            .fold(0usize, |m, (i, _)| m | (1 << i));
        total += (w[1] - w[0]) * v.value(mask);
    }
    total
}

/// Random monotone capacity with `v(Ω) = 1`: the running maximum of random
/// subset scores, normalized.
pub fn random_capacity(rng: &mut ChaCha8Rng, n: usize) -> Capacity {
    let size = 1usize << n;
    let mut raw: Vec<f64> = (0..size).map(|_| rng.gen_range(0.0..1.0)).collect();
    raw[0] = 0.0;
    for s in 1..size {
        for i in 0..n {
            if s & (1 << i) != 0 {
                raw[s] = raw[s].max(raw[s & !(1 << i)]);
            }
        }
    }
    let top = raw[size - 1].max(1e-3);
    raw[size - 1] = top;
    Capacity::new(n, raw.iter().map(|v| v / top).collect()).unwrap()
}

/// Cone families used throughout: the orthant, `{e_1, e_1 + e_k}` rows and
/// the cyclic rows `e_k − ½e_{k+1}` plus the all-ones row.
pub fn test_spaces(dim: usize) -> Vec<OrderedSpace> {
    let mut out = vec![OrderedSpace::orthant(dim).unwrap()];
    let mut h1 = Vec::new();
    let mut e1 = vec![0.0; dim];
    e1[0] = 1.0;
    h1.push(e1);
    for k in 1..dim {
        let mut r = vec![0.0; dim];
        r[0] = 1.0;
        r[k] = 1.0;
        h1.push(r);
    }
    let mut u1 = vec![0.0; dim];
    u1[0] = 1.0;
    for v in u1.iter_mut().skip(1) {
        *v = 0.5;
    }
    out.push(OrderedSpace::halfspaces(h1, u1).unwrap());
    let mut h2 = Vec::new();
    for k in 0..dim {
        let mut r = vec![0.0; dim];
        r[k] += 1.0;
        r[(k + 1) % dim] -= 0.5;
        h2.push(r);
    }
    h2.push(vec![1.0; dim]);
    out.push(OrderedSpace::halfspaces(h2, vec![1.0; dim]).unwrap());
    out
}

/// Dual-cone weight vector normalized to `w·u = 1`.
pub fn dual_weights(rng: &mut ChaCha8Rng, space: &OrderedSpace) -> Vec<f64> {
    let mut w = vec![0.0; space.dim()];
    for row in space.rows() {
        let a: f64 = rng.gen_range(0.0..1.0);
        for (wi, ri) in w.iter_mut().zip(row) {
            *wi += a * ri;
        }
    }
    let s: f64 = w.iter().zip(space.unit()).map(|(a, b)| a * b).sum();
    w.iter().map(|v| v / s).collect()
}
