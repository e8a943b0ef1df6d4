mod common;

use proptest::prelude::*;
use skewrank::linalg::{rank, Matrix};
use skewrank::scroll::{
    curve_with_3torsion, embed10, hilbert_probe, hilbert_rank, scroll_contact_experiment, scroll_plane, CurvePoint,
    EllipticCurve, ScrollOptions,
};
use skewrank::FieldContext;

fn ctx(seed: u64) -> FieldContext {
    FieldContext::default().with_seed(seed)
}

fn curve(c: &FieldContext) -> (EllipticCurve, CurvePoint) {
    curve_with_3torsion(c.field, &mut c.rng(&[1]))
}

#[test]
fn group_law_over_f11() {
    common::f11_group_law().unwrap();
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn group_axioms_on_random_points(seed in any::<u64>()) {
        let c = ctx(seed);
        let (e, _) = curve(&c);
        let mut rng = c.rng(&[2]);
        let [a, b, d] = [(); 3].map(|_| e.random_point(&mut rng));
        for p in [&a, &b, &d] {
            prop_assert!(e.contains(p));
            prop_assert_eq!(e.add(p, &CurvePoint::Infinity), *p);
            prop_assert!(e.add(p, &e.neg(p)).is_infinity());
        }
        prop_assert_eq!(e.add(&a, &b), e.add(&b, &a));
        prop_assert_eq!(e.add(&e.add(&a, &b), &d), e.add(&a, &e.add(&b, &d)));
        prop_assert_eq!(e.add(&a, &a), e.mul(2, &a));
        prop_assert_eq!(e.mul(5, &a), e.add(&e.mul(2, &a), &e.mul(3, &a)));
    }

    #[test]
    fn torsion_point_has_order_three(seed in any::<u64>()) {
        let c = ctx(seed);
        let (e, p) = curve(&c);
        prop_assert_eq!(p, e.torsion_point());
        prop_assert!(!p.is_infinity());
        prop_assert_eq!(e.mul(2, &p), e.neg(&p));
        prop_assert!(e.mul(3, &p).is_infinity());
    }

    #[test]
    fn scroll_plane_is_periodic(seed in any::<u64>()) {
        let c = ctx(seed);
        let f = c.field;
        let (e, p) = curve(&c);
        let mut rng = c.rng(&[3]);
        let q = e.random_point(&mut rng);
        let r = e.random_point(&mut rng);
        let here = scroll_plane(&e, &p, &q).unwrap();
        for shift in [e.add(&q, &p), e.add(&q, &e.mul(2, &p))] {
            let there = scroll_plane(&e, &p, &shift).unwrap();
            prop_assert!(here.plucker_point.projectively_equal(&f, &there.plucker_point));
        }
        // translating by a point outside the torsion subgroup moves the plane
        prop_assume!(!e.mul(3, &r).is_infinity());
        let moved = scroll_plane(&e, &p, &e.add(&q, &r)).unwrap();
        prop_assert!(!here.plucker_point.projectively_equal(&f, &moved.plucker_point));
    }

    #[test]
    fn embedding_spans_the_ambient_space(seed in any::<u64>()) {
        let c = ctx(seed);
        let f = c.field;
        let (e, _) = curve(&c);
        let mut rng = c.rng(&[4]);
        let rows: Vec<Vec<u64>> = (0..12).map(|_| embed10(&e, &e.random_point(&mut rng)).unwrap().to_vec()).collect();
        prop_assert_eq!(rank(&f, &Matrix::from_rows(10, rows).unwrap()), 10);
    }
}

proptest! {
    #![proptest_config(common::config(3))]

    #[test]
    fn embedded_curve_lies_on_quadrics(seed in any::<u64>()) {
        // a degree 10 elliptic normal curve imposes 2 * 10 conditions on
        // quadrics, while general points impose all 55
        let c = ctx(seed);
        let f = c.field;
        let (e, _) = curve(&c);
        let mut rng = c.rng(&[5]);
        let on_curve: Vec<Vec<u64>> = (0..70).map(|_| embed10(&e, &e.random_point(&mut rng)).unwrap().to_vec()).collect();
        let general: Vec<Vec<u64>> = (0..70).map(|_| (0..10).map(|_| f.random(&mut rng)).collect()).collect();
        prop_assert_eq!(hilbert_rank(&f, &on_curve, 2).unwrap(), 20);
        prop_assert_eq!(hilbert_rank(&f, &general, 2).unwrap(), 55);
    }

    #[test]
    fn scroll_curve_hilbert_function(seed in any::<u64>()) {
        let c = ctx(seed);
        let (e, p) = curve(&c);
        for (d, samples, expected) in [(1, 45, 10), (2, 90, 20), (3, 250, 30)] {
            prop_assert_eq!(hilbert_probe(&c, &e, &p, d, samples).unwrap().rank, expected);
        }
    }

    #[test]
    fn experiment_passes_on_other_seeds(seed in any::<u64>()) {
        let report = scroll_contact_experiment(&ctx(seed), ScrollOptions { checks: 8, negative_checks: 4 }).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        prop_assert_eq!(report.membership_pass, 8);
        prop_assert_eq!(report.negative_fail, 4);
    }
}
