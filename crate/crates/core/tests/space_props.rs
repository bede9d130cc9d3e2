mod common;

use common::{member, norm_by_bisection, test_spaces};
use ordunit::OrderedSpace;
use proptest::prelude::*;

fn vec_in(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, dim)
}

fn space_and_points(k: usize) -> impl Strategy<Value = (OrderedSpace, Vec<Vec<f64>>)> {
    (2usize..=4, 0usize..3).prop_flat_map(move |(dim, family)| {
        let space = test_spaces(dim).swap_remove(family);
        (Just(space), prop::collection::vec(vec_in(dim), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_matches_bisection((space, pts) in space_and_points(1)) {
        let x = &pts[0];
        let closed = space.order_norm(x).unwrap();
        let oracle = norm_by_bisection(&space, x);
        prop_assert!((closed - oracle).abs() <= 1e-9 * oracle.max(1.0), "{closed} vs {oracle}");
    }

    #[test]
    fn norm_axioms((space, pts) in space_and_points(2), s in -5.0f64..5.0) {
        let (x, y) = (&pts[0], &pts[1]);
        let n = |v: &[f64]| space.order_norm(v).unwrap();
        let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        prop_assert!(n(&sum) <= n(x) + n(y) + 1e-9);
        let sx: Vec<f64> = x.iter().map(|v| s * v).collect();
        prop_assert!((n(&sx) - s.abs() * n(x)).abs() <= 1e-9 * n(x).max(1.0));
        prop_assert_eq!(n(&vec![0.0; x.len()]), 0.0);
        if x.iter().any(|v| v.abs() > 1e-6) {
            prop_assert!(n(x) > 0.0);
        }
    }

    #[test]
    fn neighbourhood_matches_norm((space, pts) in space_and_points(2), delta in 0.01f64..20.0) {
        let (z, x) = (&pts[0], &pts[1]);
        let d: Vec<f64> = x.iter().zip(z).map(|(a, b)| a - b).collect();
        let n = space.order_norm(&d).unwrap();
        // Skip the tolerance band around the boundary.
        prop_assume!((n - delta).abs() > 1e-7);
        prop_assert_eq!(space.nbhd_contains(z, delta, x).unwrap(), n < delta);
    }

    #[test]
    fn thresholds_bracket_membership((space, pts) in space_and_points(2), eps in 1e-6f64..1.0) {
        let (x, y) = (&pts[0], &pts[1]);
        let th = space.ray_thresholds(x, y).unwrap();
        prop_assert!(th.lambda_minus <= th.lambda_plus);
        let u = space.unit();
        let above = |t: f64| -> Vec<f64> { x.iter().zip(u).zip(y).map(|((a, b), c)| a + t * b - c).collect() };
        prop_assert!(space.cone_contains(&above(th.lambda_plus)).unwrap());
        prop_assert!(member(&space, &above(th.lambda_plus + eps)));
        prop_assert!(!space.cone_contains(&above(th.lambda_plus - eps)).unwrap());
        let below = |t: f64| -> Vec<f64> { y.iter().zip(x).zip(u).map(|((c, a), b)| c - a - t * b).collect() };
        prop_assert!(space.cone_contains(&below(th.lambda_minus)).unwrap());
        prop_assert!(!space.cone_contains(&below(th.lambda_minus + eps)).unwrap());
    }

    #[test]
    fn product_norm_is_max(
        (e, p) in space_and_points(1),
        (f, q) in space_and_points(1),
    ) {
        let prod = OrderedSpace::product(&e, &f);
        let mut z = p[0].clone();
        z.extend_from_slice(&q[0]);
        let expect = e.order_norm(&p[0]).unwrap().max(f.order_norm(&q[0]).unwrap());
        prop_assert!((prod.order_norm(&z).unwrap() - expect).abs() <= 1e-12 * expect.max(1.0));
    }
}

#[test]
fn fixed_families_validate() {
    for dim in 2..=4 {
        for s in test_spaces(dim) {
            let rep = s.validate();
            assert!(rep.is_valid(), "{rep:?}");
        }
    }
}
