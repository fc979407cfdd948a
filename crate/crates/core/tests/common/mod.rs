#![allow(dead_code)]

use std::sync::Arc;

use bcast_core::{Broadcast, CirculantGraph, DistanceOracle};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SEED: u64 = 0x5eed_b0ad_ca57;

pub fn oracle(n: usize, a: usize) -> Arc<DistanceOracle> {
    Arc::new(DistanceOracle::new(
        CirculantGraph::two_generator(n, a).unwrap(),
    ))
}

/// All pairs `(n, a)` with `n_min <= n <= n_max`, `2 <= a <= n/2`.
pub fn pairs(n_min: usize, n_max: usize) -> Vec<(usize, usize)> {
    (n_min.max(4)..=n_max)
        .flat_map(|n| (2..=n / 2).map(move |a| (n, a)))
        .collect()
}

/// Visits every independent broadcast with values in `0..=cap` (capped
/// at the diameter) by plain backtracking over vertex indices.
pub fn for_each_independent(o: &DistanceOracle, cap: u32, mut visit: impl FnMut(&[u32])) {
    let n = o.n();
    let cap = cap.min(o.diameter().unwrap());
    let mut values = vec![0u32; n];
    fn rec(
        o: &DistanceOracle,
        cap: u32,
        i: usize,
        values: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if i == values.len() {
            visit(values);
            return;
        }
        for v in 0..=cap {
            if v > 0 && (0..i).any(|u| values[u] > 0 && o.dist(u, i) <= values[u].max(v)) {
                continue;
            }
            values[i] = v;
            rec(o, cap, i + 1, values, visit);
        }
        values[i] = 0;
    }
    rec(o, cap, 0, &mut values, &mut visit);
}

/// `beta_b`, or its `cap`-bounded variant, by full enumeration.
pub fn brute_beta(n: usize, a: usize, cap: u32) -> u64 {
    let o = oracle(n, a);
    let mut best = 0;
    for_each_independent(&o, cap, |f| {
        best = best.max(f.iter().map(|&v| u64::from(v)).sum())
    });
    best
}

/// `alpha` by subset enumeration.
pub fn brute_alpha(n: usize, a: usize) -> u64 {
    let o = oracle(n, a);
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| o.dist(i, j) == 1)
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s & (1 << i) == 0 || s & adj[i] == 0))
        .map(|s| u64::from(s.count_ones()))
        .max()
        .unwrap()
}

/// A random independent broadcast, biased towards large values.
pub fn random_independent(o: &Arc<DistanceOracle>, rng: &mut impl Rng) -> Broadcast {
    let n = o.n();
    let diam = o.diameter().unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut values = vec![0u32; n];
    for &i in &order {
        for _ in 0..3 {
            let v = rng.gen_range(1..=diam);
            if (0..n).all(|u| values[u] == 0 || o.dist(u, i) > values[u].max(v)) {
                values[i] = v;
                break;
            }
        }
    }
    Broadcast::new(Arc::clone(o), values).unwrap()
}
