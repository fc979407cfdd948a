//! Broadcasts on circulant graphs and the predicates and analysis sets
//! built on top of them.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{gens_label, Error, Result};
use crate::graph::{CirculantGraph, DistanceOracle};

/// An assignment `f: V -> {0, ..., diam}` stored densely by vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Broadcast {
    oracle: Arc<DistanceOracle>,
    values: Vec<u32>,
}

impl Broadcast {
    pub fn new(oracle: Arc<DistanceOracle>, values: Vec<u32>) -> Result<Self> {
        if values.len() != oracle.n() {
            return Err(Error::LengthMismatch {
                expected: oracle.n(),
                got: values.len(),
            });
        }
        Ok(Broadcast { oracle, values })
    }

    pub fn zero(oracle: Arc<DistanceOracle>) -> Self {
        let n = oracle.n();
        Broadcast {
            oracle,
            values: vec![0; n],
        }
    }

    /// Broadcast with `value` on each listed vertex and 0 elsewhere.
    pub fn from_support(
        oracle: Arc<DistanceOracle>,
        support: impl IntoIterator<Item = (usize, u32)>,
    ) -> Result<Self> {
        let n = oracle.n();
        let mut values = vec![0; n];
        for (i, v) in support {
            if i >= n {
                return Err(Error::VertexOutOfRange { index: i, n });
            }
            values[i] = v;
        }
        Ok(Broadcast { oracle, values })
    }

    /// The characteristic broadcast of an independent vertex set.
    pub fn from_independent_set(oracle: Arc<DistanceOracle>, set: &[usize]) -> Result<Self> {
        let n = oracle.n();
        for (k, &u) in set.iter().enumerate() {
            if u >= n {
                return Err(Error::VertexOutOfRange { index: u, n });
            }
            for &v in &set[..k] {
                if u == v || oracle.dist(u, v) <= 1 {
                    return Err(Error::NotIndependentSet(v.min(u), v.max(u)));
                }
            }
        }
        Self::from_support(oracle, set.iter().map(|&i| (i, 1)))
    }

    pub fn oracle(&self) -> &Arc<DistanceOracle> {
        &self.oracle
    }

    pub fn graph(&self) -> &CirculantGraph {
        self.oracle.graph()
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, i: usize) -> u32 {
        self.values[i]
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn cost(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn max_value(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// `V_f^+`, ascending.
    pub fn broadcast_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.values[i] > 0).collect()
    }

    /// Vertices carrying exactly `value`, ascending.
    pub fn vertices_with_value(&self, value: u32) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.values[i] == value).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.check_valid().is_ok()
    }

    pub fn check_valid(&self) -> Result<()> {
        let ecc = self.oracle.diameter()?;
        match self.values.iter().position(|&v| v > ecc) {
            Some(i) => Err(Error::ValueAboveEccentricity {
                vertex: i,
                value: self.values[i],
                eccentricity: ecc,
            }),
            None => Ok(()),
        }
    }

    /// Independence of a valid broadcast; invalid broadcasts are an error.
    pub fn is_independent(&self) -> Result<bool> {
        self.check_valid()?;
        Ok(self.first_conflict().is_none())
    }

    /// Validity and independence, with the offending pair on failure.
    pub fn check_independent(&self) -> Result<()> {
        self.check_valid()?;
        match self.first_conflict() {
            Some((u, v, distance)) => Err(Error::NotIndependent { u, v, distance }),
            None => Ok(()),
        }
    }

    fn first_conflict(&self) -> Option<(usize, usize, u32)> {
        let support = self.broadcast_vertices();
        for (k, &u) in support.iter().enumerate() {
            for &v in &support[k + 1..] {
                let d = self.oracle.dist(u, v);
                if d <= self.values[u].max(self.values[v]) {
                    return Some((u, v, d));
                }
            }
        }
        None
    }

    pub fn is_ell_bounded(&self, ell: u32) -> bool {
        self.values.iter().all(|&v| v <= ell)
    }

    /// `D_f(v_i)`, the vertices `f`-dominated by `v_i`, ascending.
    ///
    /// Computed from the union-of-intervals description and checked against
    /// the metric ball in debug builds.
    pub fn dominated_set(&self, i: usize) -> Result<Vec<usize>> {
        let n = self.n();
        if i >= n {
            return Err(Error::VertexOutOfRange { index: i, n });
        }
        let f = self.values[i];
        if f == 0 {
            return Err(Error::NotBroadcastVertex(i));
        }
        let a = self.second_generator()?;
        let set = dominated_set_intervals(n, a, i, f);
        debug_assert_eq!(set, self.oracle.ball(i, f));
        Ok(set)
    }

    fn second_generator(&self) -> Result<usize> {
        self.graph()
            .second_generator()
            .ok_or_else(|| Error::NotTwoGenerator {
                n: self.n(),
                generators: gens_label(self.graph().generators()),
            })
    }

    /// Returns the broadcast with `values[i]` replaced.
    pub fn with_value(&self, i: usize, value: u32) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::VertexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        let mut values = self.values.clone();
        values[i] = value;
        Ok(Broadcast {
            oracle: Arc::clone(&self.oracle),
            values,
        })
    }

    /// Builds the `A`/`B` analysis sets of a 2-bounded independent broadcast
    /// on `C(n;1,a)`, walking along 1-edges or along `a`-edges.
    pub fn analysis_sets(&self, axis: Axis) -> Result<AnalysisReport> {
        let a = self.second_generator()?;
        self.check_independent()?;
        if !self.is_ell_bounded(2) {
            return Err(Error::NotBounded(2));
        }
        let n = self.n();
        let step = match axis {
            Axis::Unit => 1,
            Axis::Second => a,
        };
        let at = |i: usize, k: usize| (i + k * step) % n;
        let back = |i: usize, k: usize| (i + n - (k * step) % n) % n;
        let f = &self.values;

        let mut a_sets = Vec::new();
        let mut covered = vec![false; n];
        for i in 0..n {
            if f[i] != 1 || f[back(i, 1)] != 0 || f[back(i, 2)] != 0 {
                continue;
            }
            let mut vertices = Vec::new();
            let mut ones = 0u32;
            let mut k = 0;
            loop {
                let head = at(i, 2 * k);
                if f[head] != 1 || (k > 0 && head == i) || vertices.len() >= n {
                    break;
                }
                covered[head] = true;
                ones += 1;
                vertices.push(head);
                vertices.push(at(i, 2 * k + 1));
                k += 1;
            }
            vertices.push(at(i, 2 * k));
            a_sets.push(AnalysisSet {
                kind: SetKind::A,
                origin: i,
                vertices,
                weight: ones,
            });
        }
        if let Some(v) = (0..n).find(|&i| f[i] == 1 && !covered[i]) {
            return Err(Error::NoAnchor {
                vertex: v,
                value: 1,
            });
        }

        let b_sets: Vec<AnalysisSet> = (0..n)
            .filter(|&j| f[j] == 2)
            .map(|j| {
                let offsets: [isize; 5] = match axis {
                    Axis::Unit => [-(a as isize) + 1, 0, 1, 2, a as isize + 1],
                    Axis::Second => [
                        0,
                        a as isize - 1,
                        a as isize,
                        a as isize + 1,
                        2 * a as isize,
                    ],
                };
                let vertices = offsets.iter().map(|&o| offset(n, j, o)).collect();
                AnalysisSet {
                    kind: SetKind::B,
                    origin: j,
                    vertices,
                    weight: 2,
                }
            })
            .collect();

        Ok(AnalysisReport::new(n, axis, a_sets, b_sets))
    }

    pub fn to_witness(&self) -> Witness {
        Witness {
            n: self.n(),
            generators: self.graph().generators().to_vec(),
            values: self.values.clone(),
            cost: self.cost(),
        }
    }

    /// Compact witness JSON terminated by a newline.
    pub fn to_witness_json(&self) -> String {
        self.to_witness().to_json()
    }
}

/// `(i + o) mod n` for a signed offset.
pub(crate) fn offset(n: usize, i: usize, o: isize) -> usize {
    (i as isize + o).rem_euclid(n as isize) as usize
}

/// `D_f(v_i)` on `C(n;1,a)` for `f(v_i) = radius`: the union over
/// `k = 0..=radius` of the index intervals `i ± (radius - k) a + [-k, k]`.
pub fn dominated_set_intervals(n: usize, a: usize, i: usize, radius: u32) -> Vec<usize> {
    let r = radius as isize;
    let mut set = BTreeSet::new();
    for k in 0..=r {
        for sign in [-1isize, 1] {
            let centre = i as isize + sign * (r - k) * a as isize;
            for t in -k..=k {
                set.insert((centre + t).rem_euclid(n as isize) as usize);
            }
        }
    }
    set.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Walk along 1-edges.
    Unit,
    /// Walk along `a`-edges.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetKind {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisSet {
    pub kind: SetKind,
    /// The anchoring 1-vertex of an `A` set or the 2-vertex of a `B` set.
    pub origin: usize,
    /// Members in walk order; may repeat on very small cycles.
    pub vertices: Vec<usize>,
    /// Sum of broadcast values inside the set.
    pub weight: u32,
}

impl AnalysisSet {
    pub fn distinct(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    pub fn size(&self) -> usize {
        self.distinct().len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub axis: Axis,
    pub a_sets: Vec<AnalysisSet>,
    pub b_sets: Vec<AnalysisSet>,
    pub pairwise_disjoint: bool,
    pub total_size: usize,
}

impl AnalysisReport {
    fn new(n: usize, axis: Axis, a_sets: Vec<AnalysisSet>, b_sets: Vec<AnalysisSet>) -> Self {
        let mut seen = vec![false; n];
        let mut pairwise_disjoint = true;
        let mut total_size = 0;
        for set in a_sets.iter().chain(&b_sets) {
            let members = set.distinct();
            total_size += members.len();
            for v in members {
                if std::mem::replace(&mut seen[v], true) {
                    pairwise_disjoint = false;
                }
            }
        }
        AnalysisReport {
            n,
            axis,
            a_sets,
            b_sets,
            pairwise_disjoint,
            total_size,
        }
    }

    /// Whether the set sizes sum to at most `n`.
    pub fn fits(&self) -> bool {
        self.total_size <= self.n
    }
}

/// Serialised broadcast, field order fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub generators: Vec<usize>,
    pub values: Vec<u32>,
    pub cost: u64,
}

impl Witness {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("witness serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Witness(e.to_string()))
    }

    /// Rebuilds the broadcast, checking the recorded cost.
    pub fn into_broadcast(self) -> Result<Broadcast> {
        let graph = CirculantGraph::new(self.n, &self.generators)?;
        let b = Broadcast::new(Arc::new(DistanceOracle::new(graph)), self.values)?;
        if b.cost() != self.cost {
            return Err(Error::Witness(format!(
                "recorded cost {} differs from value sum {}",
                self.cost,
                b.cost()
            )));
        }
        Ok(b)
    }
}
