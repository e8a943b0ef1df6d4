mod common;

use proptest::prelude::*;
use skewrank::exterior::Grassmannian;
use skewrank::secant::{
    common_kernel_dim, hessian_kernel_dim, modal_value, tcl_ideal, terracini_dim, GrassmannCase, PointStream,
    SecantDegree, Verdict,
};
use skewrank::FieldContext;

fn ctx(seed: u64) -> FieldContext {
    FieldContext::default().with_seed(seed)
}

/// Small `(k, n, r)` with `0 < k < n - 1`, `n <= 7`, `r >= 1`.
fn small_case() -> impl Strategy<Value = (usize, usize, usize)> {
    (3usize..=7).prop_flat_map(|n| (1usize..n - 1, Just(n), 1usize..5))
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![
        Just(Verdict::Identifiable),
        Just(Verdict::WeaklyDefectiveIdentifiable),
        Just(Verdict::NeedsTclAnalysis),
        Just(Verdict::Unresolved),
        Just(Verdict::NotIdentifiable(SecantDegree::Infinite)),
        any::<u64>().prop_map(|d| Verdict::NotIdentifiable(SecantDegree::Finite(d))),
    ]
}

proptest! {
    #![proptest_config(common::config(24))]

    #[test]
    fn terracini_agrees_with_dual_case((k, n, r) in small_case(), seed in any::<u64>()) {
        let c = ctx(seed);
        let case = GrassmannCase::new(k, n, r).unwrap();
        let here = terracini_dim(&c, case, 1).unwrap().value;
        let there = terracini_dim(&c, case.dual(), 1).unwrap().value;
        prop_assert_eq!(here, there);
        prop_assert!(here <= common::expected_dim(k, n, r));
    }

    #[test]
    fn terracini_is_monotone_in_r((k, n, r) in small_case(), seed in any::<u64>()) {
        let c = ctx(seed);
        let lower = terracini_dim(&c, GrassmannCase::new(k, n, r).unwrap(), 1).unwrap().value;
        let upper = terracini_dim(&c, GrassmannCase::new(k, n, r + 1).unwrap(), 1).unwrap().value;
        prop_assert!(lower <= upper);
        prop_assert!(upper - lower <= (k + 1) * (n - k) + 1);
    }

    #[test]
    fn lines_match_skew_matrix_ranks(n in 3usize..10, r in 1usize..6, seed in any::<u64>()) {
        let c = ctx(seed);
        let value = terracini_dim(&c, GrassmannCase::new(1, n, r).unwrap(), 1).unwrap().value;
        prop_assert_eq!(value, common::gr1_secant_dim(n, r));
    }

    #[test]
    fn verdict_text_round_trip(v in verdict()) {
        prop_assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
    }

    #[test]
    fn modal_value_is_a_strict_mode(values in prop::collection::vec(0usize..5, 0..12)) {
        let count = |x: usize| values.iter().filter(|&&v| v == x).count();
        match modal_value(&values) {
            Some(m) => {
                prop_assert!(count(m) > 0);
                for x in 0..5 {
                    prop_assert!(x == m || count(x) < count(m));
                }
            }
            None => {
                let best = (0..5).map(count).max().unwrap();
                prop_assert!(values.is_empty() || (0..5).filter(|&x| count(x) == best).count() > 1);
            }
        }
    }

    #[test]
    fn constant_trials_have_that_mode(v in 0usize..100, len in 1usize..8) {
        prop_assert_eq!(modal_value(&vec![v; len]), Some(v));
    }

    #[test]
    fn one_hyperplane_common_kernel((k, n, _r) in small_case(), seed in any::<u64>()) {
        let c = ctx(seed);
        let f = c.field;
        let grass = Grassmannian::new(k, n);
        let p = PointStream::new(&c, k, n, 0, 0).next_point(&c);
        let jet = grass.jet(&f, &p);
        let mut rng = c.rng(&[1]);
        let h: Vec<u64> = (0..grass.ambient()).map(|_| f.random(&mut rng)).collect();
        prop_assert_eq!(common_kernel_dim(&f, &jet, std::slice::from_ref(&h)), hessian_kernel_dim(&f, &jet, &h));
    }
}

proptest! {
    #![proptest_config(common::config(4))]

    #[test]
    fn contact_ideal_linearizes_to_the_hessian(seed in any::<u64>()) {
        // the Jacobian of the derivative generators at a base point is the
        // Hessian of the pairing with the same hyperplane
        let c = ctx(seed);
        let f = c.field;
        let points = PointStream::new(&c, 2, 7, 0, 0).take(&c, 2);
        let ideal = tcl_ideal(&f, &points).unwrap();
        let jet = Grassmannian::new(2, 7).jet(&f, &points[0]);
        let at = points[0].flat_params();
        prop_assert_eq!(ideal.hyperplanes.len(), 56 - 2 * 16);
        for (b, h) in ideal.hyperplanes.iter().enumerate() {
            prop_assert_eq!(ideal.derivative_jacobian(&f, b, &at), jet.pairing_hessian(&f, h).matrix);
        }
        // every generator vanishes at the base points
        for g in ideal.generators() {
            for p in &points {
                prop_assert_eq!(g.eval(&f, &p.flat_params()), 0);
            }
        }
    }
}
