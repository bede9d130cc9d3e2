//! Seeded sample generation for the property checkers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::axpy;
use crate::space::OrderedSpace;

/// Default number of samples per property check (2^14).
pub const DEFAULT_SAMPLES: usize = 1 << 14;

/// Deterministic source of test points. Coordinates are drawn from
/// `[-radius, radius]` (default 5).
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    radius: f64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_radius(seed, 5.0)
    }

    pub fn with_radius(seed: u64, radius: f64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), radius }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Uniform in `[-radius, radius]`.
    pub fn scalar(&mut self) -> f64 {
        self.rng.gen_range(-self.radius..=self.radius)
    }

    /// Uniform in `[0, 1)`.
    pub fn fraction(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn point(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.scalar()).collect()
    }

    pub fn points(&mut self, dim: usize, n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|_| self.point(dim)).collect()
    }

    /// A random element of the cone: a free point pushed along the unit until
    /// it enters the cone, plus a random extra push. One draw in eight stays
    /// on the boundary.
    pub fn cone_point(&mut self, space: &OrderedSpace) -> Vec<f64> {
        let d = self.point(space.dim());
        let zero = vec![0.0; space.dim()];
        let t = space.thresholds(&d, &zero).lambda_plus.max(0.0);
        let extra = if self.rng.gen_range(0..8) == 0 {
            0.0
        } else {
            self.fraction() * self.radius
        };
        let mut c = axpy(&d, t + extra, space.unit());
        // absorb rounding so boundary draws stay inside the cone
        if !space.in_cone(&c, 0.0) {
            let fix = space.thresholds(&c, &zero).lambda_plus.max(0.0);
            c = axpy(&c, fix, space.unit());
        }
        c
    }

    pub fn cone_points(&mut self, space: &OrderedSpace, n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|_| self.cone_point(space)).collect()
    }

    /// `(x, y)` with `x ⩽ y`. The increment `y − x` is scaled by 1, 1/10 or
    /// 1/100 so that local violations are reachable.
    pub fn comparable_pair(&mut self, space: &OrderedSpace) -> (Vec<f64>, Vec<f64>) {
        let x = self.point(space.dim());
        let c = self.cone_point(space);
        let s = [1.0, 0.1, 0.01][self.rng.gen_range(0..3)];
        let y = x.iter().zip(&c).map(|(a, b)| a + s * b).collect();
        (x, y)
    }

    pub fn comparable_pairs(&mut self, space: &OrderedSpace, n: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
        (0..n).map(|_| self.comparable_pair(space)).collect()
    }

    /// Unrelated pairs of points.
    pub fn pairs(&mut self, dim: usize, n: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
        (0..n).map(|_| (self.point(dim), self.point(dim))).collect()
    }

    /// `(x, λ)` samples for weak-additivity checks.
    pub fn shift_samples(&mut self, dim: usize, n: usize) -> Vec<(Vec<f64>, f64)> {
        (0..n).map(|_| (self.point(dim), self.scalar())).collect()
    }

    /// A point of the open order ball `U(center, radius)`.
    pub fn ball_point(&mut self, space: &OrderedSpace, center: &[f64], radius: f64) -> Vec<f64> {
        let d: Vec<f64> = (0..space.dim()).map(|_| self.rng.gen_range(-1.0..=1.0)).collect();
        let n = space.norm(&d);
        if n == 0.0 || !n.is_finite() {
            return center.to_vec();
        }
        let s = radius * self.fraction() / n;
        axpy(center, s, &d)
    }

    /// Pairs `(x, y)` with `‖x − y‖ < radius`.
    pub fn close_pairs(
        &mut self,
        space: &OrderedSpace,
        radius: f64,
        n: usize,
    ) -> Vec<(Vec<f64>, Vec<f64>)> {
        (0..n)
            .map(|_| {
                let x = self.point(space.dim());
                let y = self.ball_point(space, &x, radius);
                (x, y)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        assert_eq!(a.points(3, 10), b.points(3, 10));
    }

    #[test]
    fn cone_points_lie_in_cone() {
        let s = OrderedSpace::halfspaces(
            vec![vec![1.0, -0.5, 0.0], vec![0.0, 1.0, -0.5], vec![-0.5, 0.0, 1.0]],
            vec![1.0, 1.0, 1.0],
        )
        .unwrap();
        let mut smp = Sampler::new(1);
        for c in smp.cone_points(&s, 2000) {
            assert!(s.cone_contains_tol(&c, 0.0).unwrap(), "{c:?}");
        }
    }

    #[test]
    fn ball_points_stay_in_ball() {
        let s = OrderedSpace::orthant(3).unwrap();
        let mut smp = Sampler::new(2);
        let center = [1.0, 2.0, 3.0];
        for _ in 0..1000 {
            let p = smp.ball_point(&s, &center, 0.3);
            assert!(s.dist(&center, &p) < 0.3);
        }
    }
}
