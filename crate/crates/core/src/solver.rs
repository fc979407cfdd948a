//! Exact maximum independent broadcasts and independent sets.
//!
//! Broadcasts are found by a Russian-doll search. Vertices are assigned in
//! index order with values tried in ascending order, so leaves are met in
//! lexicographic order and the first optimum found is the lexicographically
//! smallest one. Because circulants are vertex-transitive, some optimum
//! has `f(v_0) > 0`; the search is anchored there.
//!
//! The upper bound at a node splits the undecided suffix into maximal runs
//! of vertices that may still broadcast. Each run is bounded by the best
//! broadcast supported on a window of the same length (computed beforehand,
//! shortest windows first) and, when 1 is a generator, by a path relaxation.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::broadcast::Broadcast;
use crate::clique;
use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, DistanceOracle};

/// Environment variable overriding the exact-search size limits. Either a
/// single integer applied to every search, or `unbounded,bounded,mis`.
pub const LIMIT_ENV: &str = "BCAST_EXACT_LIMIT";

/// Largest `n` the bitset independent-set search can represent.
pub const MIS_HARD_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest `n` for broadcasts with no bound or a bound above 2.
    pub unbounded_limit: usize,
    /// Largest `n` for broadcasts bounded by 1 or 2.
    pub bounded_limit: usize,
    /// Largest `n` for independent sets.
    pub mis_limit: usize,
    /// Worker threads; 1 runs the search on the calling thread.
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            unbounded_limit: 24,
            bounded_limit: 40,
            mis_limit: 64,
            workers: 1,
        }
    }
}

impl SolverConfig {
    /// Defaults overridden by [`LIMIT_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMIT_ENV) {
            Ok(text) => Self::default().with_limits(&text),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Applies a limit specification in the [`LIMIT_ENV`] format.
    pub fn with_limits(mut self, spec: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<usize> {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parameter(format!("bad exact limit {s:?} in {LIMIT_ENV}")))
        };
        let parts: Vec<&str> = spec.split(',').collect();
        match parts.as_slice() {
            [all] => {
                let v = parse(all)?;
                self.unbounded_limit = v;
                self.bounded_limit = v;
                self.mis_limit = v.min(MIS_HARD_LIMIT);
            }
            [u, b, m] => {
                self.unbounded_limit = parse(u)?;
                self.bounded_limit = parse(b)?;
                self.mis_limit = parse(m)?.min(MIS_HARD_LIMIT);
            }
            _ => {
                return Err(Error::Parameter(format!(
                    "{LIMIT_ENV} must be one integer or three comma-separated integers"
                )))
            }
        }
        Ok(self)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn broadcast_limit(&self, bound: Option<u32>) -> usize {
        match bound {
            Some(b) if b <= 2 => self.bounded_limit,
            _ => self.unbounded_limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u64,
    /// Lexicographically smallest optimum among those with `f(v_0) > 0`.
    pub witness: Broadcast,
    pub nodes_explored: u64,
    pub bounded_by: Option<u32>,
}

/// `alpha(G)` with a witness set, by maximum clique on the complement.
pub fn max_independent_set(g: &CirculantGraph, config: &SolverConfig) -> Result<SolveResult> {
    let n = g.n();
    let limit = config.mis_limit.min(MIS_HARD_LIMIT);
    if n > limit {
        return Err(Error::ExceedsExactLimit {
            what: "independent set search",
            n,
            limit,
        });
    }
    let oracle = Arc::new(DistanceOracle::new(g.clone()));
    oracle.diameter()?;
    let comp = clique::complement(&g.adjacency_bits());
    let full = clique::full_mask(n);
    let (best, mut nodes) = clique::max_clique(&comp, full);
    let size = best.count_ones();

    // Fix v_0, then exclude each later vertex whenever a completion of the
    // right size survives without it.
    let mut chosen = 1u64;
    let mut allowed = comp[0];
    for i in 1..n {
        let bit = 1u64 << i;
        if allowed & bit == 0 {
            continue;
        }
        let need = size - chosen.count_ones();
        let later = allowed & !low_mask(i + 1);
        nodes += 1;
        if clique::has_clique_of_size(&comp, later, need) {
            allowed = later;
        } else {
            chosen |= bit;
            allowed = later & comp[i];
        }
    }
    debug_assert_eq!(chosen.count_ones(), size);
    let set: Vec<usize> = clique::bits(chosen).collect();
    let witness = Broadcast::from_independent_set(oracle, &set)?;
    Ok(SolveResult {
        value: u64::from(size),
        witness,
        nodes_explored: nodes,
        bounded_by: Some(1),
    })
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// `beta_b(G)`, or the best `bound`-bounded independent broadcast.
pub fn broadcast_independence(
    g: &CirculantGraph,
    bound: Option<u32>,
    config: &SolverConfig,
) -> Result<SolveResult> {
    let n = g.n();
    let limit = config.broadcast_limit(bound);
    if n > limit {
        return Err(Error::ExceedsExactLimit {
            what: "broadcast search",
            n,
            limit,
        });
    }
    if bound == Some(0) {
        return Err(Error::Parameter(
            "broadcast bound must be at least 1".into(),
        ));
    }
    let oracle = Arc::new(DistanceOracle::new(g.clone()));
    let diam = oracle.diameter()?;
    let vmax = bound.map_or(diam, |b| b.min(diam));
    let problem = Problem {
        row: oracle.row(),
        vmax,
        unit: g.has_unit_generator(),
    };

    let pool = if config.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?,
        )
    } else {
        None
    };

    let mut windows = vec![0u32; n];
    let mut nodes = 0;
    for len in 1..n {
        let out = problem.solve_anchored(len, &windows, windows[len - 1], false, pool.as_ref());
        windows[len] = out.value;
        nodes += out.nodes;
    }
    let out = problem.solve_anchored(n, &windows, windows[n - 1], true, pool.as_ref());
    nodes += out.nodes;
    let values = out.witness.expect("anchored search always finds a witness");
    let witness = Broadcast::new(Arc::clone(&oracle), values)?;
    debug_assert!(witness.check_independent().is_ok());
    Ok(SolveResult {
        value: witness.cost(),
        witness,
        nodes_explored: nodes,
        bounded_by: bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCheck {
    pub beta: u64,
    pub mu: usize,
    pub diameter: u32,
    /// `beta >= mu (diam - 1)`.
    pub mu_form_holds: bool,
    /// `beta >= 2 (diam - 1)`.
    pub weak_form_holds: bool,
}

impl LowerBoundCheck {
    pub fn holds(&self) -> bool {
        self.mu_form_holds && self.weak_form_holds
    }
}

/// Checks `beta_b >= mu (diam - 1) >= 2 (diam - 1)` on one graph.
pub fn verify_lower_bound_mu(g: &CirculantGraph, config: &SolverConfig) -> Result<LowerBoundCheck> {
    let oracle = DistanceOracle::new(g.clone());
    let diameter = oracle.diameter()?;
    let mu = oracle.antipodal_number()?;
    let beta = broadcast_independence(g, None, config)?.value;
    let spread = u64::from(diameter.saturating_sub(1));
    Ok(LowerBoundCheck {
        beta,
        mu,
        diameter,
        mu_form_holds: beta >= mu as u64 * spread,
        weak_form_holds: beta >= 2 * spread,
    })
}

struct Problem<'a> {
    row: &'a [u32],
    vmax: u32,
    unit: bool,
}

struct Outcome {
    value: u32,
    witness: Option<Vec<u32>>,
    nodes: u64,
}

/// A partial assignment of the first `depth` vertices.
#[derive(Clone)]
struct Prefix {
    depth: usize,
    values: Vec<u32>,
    caps: Vec<u32>,
    cost: u32,
}

impl Problem<'_> {
    /// Best broadcast supported on `[0, len)` with `f(v_0) > 0`, or
    /// `incumbent` if nothing beats it. With `want_witness`, a broadcast of
    /// value at least `incumbent` is always produced.
    fn solve_anchored(
        &self,
        len: usize,
        windows: &[u32],
        incumbent: u32,
        want_witness: bool,
        pool: Option<&rayon::ThreadPool>,
    ) -> Outcome {
        let root = Prefix {
            depth: 0,
            values: vec![0; len],
            caps: vec![self.vmax; len],
            cost: 0,
        };
        let Some(pool) = pool else {
            let mut dfs = Dfs::new(self, len, windows, incumbent, !want_witness, None);
            dfs.run(root);
            return dfs.finish();
        };

        let global = AtomicU32::new(incumbent);
        let prefixes = self.split(root, len, 8 * pool.current_num_threads());
        let outcomes: Vec<Outcome> = pool.install(|| {
            prefixes
                .into_par_iter()
                .map(|p| {
                    let mut dfs =
                        Dfs::new(self, len, windows, incumbent, !want_witness, Some(&global));
                    dfs.run(p);
                    dfs.finish()
                })
                .collect()
        });

        let nodes = outcomes.iter().map(|o| o.nodes).sum();
        let value = outcomes
            .iter()
            .map(|o| o.value)
            .max()
            .unwrap_or(incumbent)
            .max(incumbent);
        let witness = outcomes
            .into_iter()
            .find(|o| o.value == value && o.witness.is_some())
            .and_then(|o| o.witness);
        Outcome {
            value,
            witness,
            nodes,
        }
    }

    /// Expands the root breadth-first, keeping lexicographic order, until
    /// there are at least `target` subproblems.
    fn split(&self, root: Prefix, len: usize, target: usize) -> Vec<Prefix> {
        let mut level = vec![root];
        while level.len() < target && level.iter().all(|p| p.depth + 1 < len) {
            let mut next = Vec::new();
            for p in level {
                let j = p.depth;
                let lo = u32::from(j == 0);
                for v in lo..=p.caps[j] {
                    let mut child = p.clone();
                    child.depth = j + 1;
                    child.values[j] = v;
                    child.cost += v;
                    if v > 0 {
                        self.tighten(&mut child.caps, j, v, len);
                    }
                    next.push(child);
                }
            }
            level = next;
        }
        level
    }

    /// Updates the value caps of vertices after `j` once `v_j` holds `v`.
    #[inline]
    fn tighten(&self, caps: &mut [u32], j: usize, v: u32, len: usize) {
        for (k, cap) in caps.iter_mut().enumerate().take(len).skip(j + 1) {
            let d = self.row[k - j];
            *cap = if d <= v { 0 } else { (*cap).min(d - 1) };
        }
    }

    /// Upper bound on what vertices `j..len` can still add.
    fn remaining_bound(
        &self,
        caps: &[u32],
        j: usize,
        len: usize,
        windows: &[u32],
        dp: &mut [u32],
    ) -> u32 {
        let mut total = 0;
        let mut k = j;
        while k < len {
            if caps[k] == 0 {
                k += 1;
                continue;
            }
            let start = k;
            while k < len && caps[k] > 0 {
                k += 1;
            }
            let mut run = windows[k - start];
            if self.unit {
                run = run.min(self.path_bound(&caps[start..k], dp));
            }
            total += run;
        }
        total
    }

    /// Best total on a path where chosen positions `x < y` need
    /// `y - x > f(x)`, each value within its cap. Valid because 1-steps give
    /// `d(v_x, v_y) <= y - x`.
    fn path_bound(&self, caps: &[u32], dp: &mut [u32]) -> u32 {
        let m = caps.len();
        dp[m] = 0;
        for x in (0..m).rev() {
            let mut best = dp[x + 1];
            for v in 1..=caps[x] {
                let next = (x + v as usize + 1).min(m);
                best = best.max(v + dp[next]);
            }
            dp[x] = best;
        }
        dp[0]
    }
}

struct Dfs<'a, 'p> {
    problem: &'a Problem<'p>,
    len: usize,
    windows: &'a [u32],
    values: Vec<u32>,
    best: u32,
    have: bool,
    witness: Option<Vec<u32>>,
    global: Option<&'a AtomicU32>,
    dp: Vec<u32>,
    nodes: u64,
}

impl<'a, 'p> Dfs<'a, 'p> {
    fn new(
        problem: &'a Problem<'p>,
        len: usize,
        windows: &'a [u32],
        incumbent: u32,
        have: bool,
        global: Option<&'a AtomicU32>,
    ) -> Self {
        Dfs {
            problem,
            len,
            windows,
            values: vec![0; len],
            best: incumbent,
            have,
            witness: None,
            global,
            dp: vec![0; len + 1],
            nodes: 0,
        }
    }

    fn run(&mut self, start: Prefix) {
        self.values[..start.depth].copy_from_slice(&start.values[..start.depth]);
        self.descend(start.depth, &start.caps, start.cost);
    }

    fn finish(self) -> Outcome {
        Outcome {
            value: self.best,
            witness: self.witness,
            nodes: self.nodes,
        }
    }

    fn pruned(&self, bound: u32) -> bool {
        if let Some(g) = self.global {
            if bound < g.load(Ordering::Relaxed) {
                return true;
            }
        }
        bound < self.best || (bound == self.best && self.have)
    }

    fn descend(&mut self, j: usize, caps: &[u32], cost: u32) {
        self.nodes += 1;
        if j == self.len {
            self.leaf(cost);
            return;
        }
        if j > 0 {
            let rest = self
                .problem
                .remaining_bound(caps, j, self.len, self.windows, &mut self.dp);
            if self.pruned(cost + rest) {
                return;
            }
        }
        let lo = u32::from(j == 0);
        let mut child = caps.to_vec();
        for v in lo..=caps[j] {
            self.values[j] = v;
            if v == 0 {
                self.descend(j + 1, caps, cost);
            } else {
                child.copy_from_slice(caps);
                self.problem.tighten(&mut child, j, v, self.len);
                self.descend(j + 1, &child, cost + v);
            }
        }
        self.values[j] = 0;
    }

    fn leaf(&mut self, cost: u32) {
        let better = cost > self.best || (cost == self.best && !self.have);
        if !better {
            return;
        }
        if let Some(g) = self.global {
            if cost < g.load(Ordering::Relaxed) {
                return;
            }
            g.fetch_max(cost, Ordering::Relaxed);
        }
        self.best = cost;
        self.have = true;
        self.witness = Some(self.values.clone());
    }
}
