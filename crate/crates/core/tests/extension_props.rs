mod common;

use common::{dual_weights, interval_oracle, random_capacity, test_spaces};
use ordunit::functional::{check_order_preserving, check_weak_additivity};
use ordunit::{
    canonical_extension, check_partial_consistency, extend_one, extension_interval, ExtensionMode,
    ExtensionRule, Functional, OrderedSpace, PartialFunctional, Sampler,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Instance {
    space: OrderedSpace,
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
    pf: PartialFunctional,
}

/// Restriction of a known weakly additive, order-preserving functional to a
/// few random points, so the partial functional is consistent by construction.
fn instance(rng: &mut ChaCha8Rng) -> Instance {
    let dim = rng.gen_range(2..=4);
    let family = rng.gen_range(0..3);
    let space = test_spaces(dim).swap_remove(family);
    let f = if family == 0 && rng.gen_bool(0.5) {
        Functional::choquet(&space, random_capacity(rng, dim)).unwrap()
    } else {
        let ws: Vec<Vec<f64>> = (0..rng.gen_range(1..=3)).map(|_| dual_weights(rng, &space)).collect();
        Functional::custom(&space, "max_of_duals", move |x| {
            ws.iter().map(|w| w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max)
        })
    };
    let m = rng.gen_range(1..=6);
    let points: Vec<Vec<f64>> = (0..m).map(|_| (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect()).collect();
    let values: Vec<f64> = points.iter().map(|x| f.evaluate(x).unwrap()).collect();
    let pf = PartialFunctional::new(&space, &points, &values, f.unit_value()).unwrap();
    Instance { space, points, values, pf }
}

#[test]
fn endpoints_match_line_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..300 {
        let inst = instance(&mut rng);
        assert!(inst.pf.is_consistent());
        for _ in 0..3 {
            let y: Vec<f64> = (0..inst.space.dim()).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let iv = extension_interval(&inst.pf, &y).unwrap();
            let (lo, hi) = interval_oracle(&inst.space, &inst.points, &inst.values, inst.pf.unit_value(), &y);
            assert!(iv.p_minus <= iv.p_plus + 1e-12);
            assert!((iv.p_minus - lo).abs() <= 1e-7, "{} vs {lo}", iv.p_minus);
            assert!((iv.p_plus - hi).abs() <= 1e-7, "{} vs {hi}", iv.p_plus);
        }
    }
}

#[test]
fn canonical_extensions_are_admissible() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for k in 0..60 {
        let inst = instance(&mut rng);
        let dim = inst.space.dim();
        let mut smp = Sampler::new(k);
        let shifts = smp.shift_samples(dim, 300);
        let pairs = smp.comparable_pairs(&inst.space, 300);
        for mode in [ExtensionMode::Lower, ExtensionMode::Midpoint] {
            let f = canonical_extension(&inst.pf, mode).unwrap();
            assert!(check_weak_additivity(&f, &shifts, 1e-9).passed);
            assert!(check_order_preserving(&f, &pairs, 1e-9).passed);
            for (x, g) in inst.points.iter().zip(&inst.values) {
                assert!((f.evaluate(x).unwrap() - g).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn endpoints_are_monotone_and_shift_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for k in 0..60 {
        let inst = instance(&mut rng);
        let c = inst.pf.unit_value();
        let u = inst.space.unit().to_vec();
        for (x, y) in Sampler::new(100 + k).comparable_pairs(&inst.space, 40) {
            let a = extension_interval(&inst.pf, &x).unwrap();
            let b = extension_interval(&inst.pf, &y).unwrap();
            assert!(a.p_minus <= b.p_minus + 1e-9 && a.p_plus <= b.p_plus + 1e-9);
            let lam = rng.gen_range(-3.0..3.0);
            let xs: Vec<f64> = x.iter().zip(&u).map(|(p, q)| p + lam * q).collect();
            let s = extension_interval(&inst.pf, &xs).unwrap();
            assert!((s.p_minus - a.p_minus - lam * c).abs() <= 1e-9);
            assert!((s.p_plus - a.p_plus - lam * c).abs() <= 1e-9);
        }
    }
}

#[test]
fn endpoint_extensions_stay_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..100 {
        let inst = instance(&mut rng);
        let y: Vec<f64> = (0..inst.space.dim()).map(|_| rng.gen_range(-4.0..4.0)).collect();
        for rule in [ExtensionRule::Lower, ExtensionRule::Upper, ExtensionRule::Midpoint] {
            match extend_one(&inst.pf, &y, rule) {
                Ok(next) => assert!(check_partial_consistency(&next, 1e-9).passed),
                Err(ordunit::Error::AlreadyInSpan) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
