//! Fixtures shared by the criterion benches.

use ordunit::{Capacity, OrderedSpace, PartialFunctional, Sampler};

/// `{x : x_k − ½·x_{k+1} ⩾ 0 (cyclic), Σ x ⩾ 0}` with unit `(1, …, 1)`.
pub fn cyclic_space(dim: usize) -> OrderedSpace {
    let mut rows: Vec<Vec<f64>> = (0..dim)
        .map(|k| {
            let mut r = vec![0.0; dim];
            r[k] = 1.0;
            r[(k + 1) % dim] -= 0.5;
            r
        })
        .collect();
    rows.push(vec![1.0; dim]);
    OrderedSpace::halfspaces(rows, vec![1.0; dim]).expect("valid fixture")
}

/// Symmetric capacity `v(S) = (|S| / n)^2`.
pub fn square_capacity(n: usize) -> Capacity {
    let values = (0..1usize << n)
        .map(|s| (s.count_ones() as f64 / n as f64).powi(2))
        .collect();
    Capacity::new(n, values).expect("monotone fixture")
}

/// Restriction of the coordinate average to `m` random points.
pub fn partial_fixture(space: &OrderedSpace, m: usize, seed: u64) -> PartialFunctional {
    let mut smp = Sampler::new(seed);
    let pts = smp.points(space.dim(), m);
    let vals: Vec<f64> = pts
        .iter()
        .map(|p| p.iter().sum::<f64>() / space.dim() as f64)
        .collect();
    PartialFunctional::new(space, &pts, &vals, 1.0).expect("consistent fixture")
}
