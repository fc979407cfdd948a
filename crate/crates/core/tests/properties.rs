mod common;

use std::sync::Arc;

use bcast_core::constructions::{segment_order_policy, segment_pattern};
use bcast_core::formulas::segment_cost;
use bcast_core::{
    broadcast_independence, closed_form_diameter_1_2, predict_alpha, predict_beta, Broadcast,
    CirculantGraph, DistanceOracle, SolverConfig, Witness,
};
use common::random_independent;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_params(n_max: usize) -> impl Strategy<Value = (usize, usize)> {
    (4..=n_max).prop_flat_map(|n| (Just(n), 2..=n / 2))
}

fn broadcast_in(n_max: usize) -> impl Strategy<Value = Broadcast> {
    (graph_params(n_max), any::<u64>()).prop_map(|((n, a), seed)| {
        let o = Arc::new(DistanceOracle::new(
            CirculantGraph::two_generator(n, a).unwrap(),
        ));
        random_independent(&o, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distances_form_a_metric((n, a) in graph_params(40), i in 0usize..40, j in 0usize..40, k in 0usize..40) {
        let o = DistanceOracle::new(CirculantGraph::two_generator(n, a).unwrap());
        let (i, j, k) = (i % n, j % n, k % n);
        prop_assert_eq!(o.dist(i, j), o.dist(j, i));
        prop_assert_eq!(o.dist(i, j) == 0, i == j);
        prop_assert!(o.dist(i, k) <= o.dist(i, j) + o.dist(j, k));
        prop_assert!(o.dist(i, j) <= o.diameter().unwrap());
    }

    #[test]
    fn unit_step_diameter(n in 4usize..200) {
        let o = DistanceOracle::new(CirculantGraph::two_generator(n, 2).unwrap());
        prop_assert_eq!(o.diameter().unwrap(), closed_form_diameter_1_2(n).unwrap());
    }

    #[test]
    fn dominated_set_is_ball(b in broadcast_in(40)) {
        for i in b.broadcast_vertices() {
            prop_assert_eq!(b.dominated_set(i).unwrap(), b.oracle().ball(i, b.value(i)));
        }
    }

    #[test]
    fn lowering_keeps_independence(b in broadcast_in(40), pick in any::<usize>(), drop in any::<u32>()) {
        prop_assert_eq!(b.is_independent(), Ok(true));
        let support = b.broadcast_vertices();
        if !support.is_empty() {
            let i = support[pick % support.len()];
            let lowered = b.with_value(i, drop % b.value(i)).unwrap();
            prop_assert_eq!(lowered.is_independent(), Ok(true));
            prop_assert!(lowered.cost() < b.cost());
        }
    }

    #[test]
    fn ell_bounded_is_monotone(b in broadcast_in(40), ell in 1u32..8) {
        if b.is_ell_bounded(ell) {
            prop_assert!(b.is_ell_bounded(ell + 1));
        }
        prop_assert_eq!(b.is_ell_bounded(ell), b.max_value() <= ell);
    }

    #[test]
    fn independent_sets_give_independent_broadcasts(b in broadcast_in(40)) {
        let support = b.broadcast_vertices();
        let o = b.oracle().clone();
        // The support of an independent broadcast is an independent set.
        let s = Broadcast::from_independent_set(o, &support).unwrap();
        prop_assert_eq!(s.is_independent(), Ok(true));
        prop_assert_eq!(s.cost(), support.len() as u64);
    }

    #[test]
    fn witness_json_round_trips(b in broadcast_in(40)) {
        let json = b.to_witness_json();
        let w = Witness::from_json(&json).unwrap();
        prop_assert_eq!(w.cost, b.cost());
        prop_assert_eq!(w.to_json(), json);
        let back = w.into_broadcast().unwrap();
        prop_assert_eq!(back.values(), b.values());
    }

    #[test]
    fn predictions_are_ordered((n, a) in graph_params(500)) {
        let beta = predict_beta(n, a).unwrap();
        let alpha = predict_alpha(n, a).unwrap();
        if beta.is_exact() && alpha.is_exact() {
            prop_assert!(beta.value >= alpha.value);
        }
    }

    #[test]
    fn segment_layouts_cost_formula(half in 3usize..12, k1 in 0usize..5, k2 in 0usize..5) {
        let a = 2 * half;
        let n = k1 * (a + 1) + k2 * (a - 1);
        prop_assume!(n >= 2 * a);
        let b = segment_pattern(n, a, k1, k2).unwrap();
        prop_assert_eq!(b.cost(), segment_cost(a, k1, k2));
        prop_assert_eq!(b.is_independent(), Ok(true));
        let starts = segment_order_policy().starts(a, k1, k2);
        for &s in starts.iter().skip(1) {
            // "...00 | 10..." at every boundary
            prop_assert_eq!(b.values()[s - 2..s + 2].to_vec(), vec![0, 0, 1, 0]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parallel_search_matches_sequential((n, a) in graph_params(18), bound in prop_oneof![Just(None), Just(Some(1)), Just(Some(2))]) {
        let g = CirculantGraph::two_generator(n, a).unwrap();
        let seq = broadcast_independence(&g, bound, &SolverConfig::default().with_workers(1)).unwrap();
        let par = broadcast_independence(&g, bound, &SolverConfig::default().with_workers(4)).unwrap();
        prop_assert_eq!(seq.value, par.value);
        prop_assert_eq!(seq.witness.values(), par.witness.values());
        prop_assert_eq!(seq.witness.cost(), seq.value);
        prop_assert_eq!(seq.witness.is_independent(), Ok(true));
    }
}
