//! Circulant graphs `C(n; a_1, ..., a_k)` and their distance structure.
//!
//! Circulants are vertex-transitive, so a single breadth-first search from
//! `v_0` determines every distance: `d(v_i, v_j) = row[(j - i) mod n]`.

use std::collections::VecDeque;
use std::fmt;

use crate::clique;
use crate::error::{gens_label, Error, Result};

/// Marker stored in a distance row for vertices not reachable from `v_0`.
pub const UNREACHABLE: u32 = u32::MAX;

/// Largest instance accepted by the exact antipodal-set search.
pub const ANTIPODAL_EXACT_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantGraph {
    n: usize,
    generators: Vec<usize>,
}

impl CirculantGraph {
    /// Builds `C(n; generators)`. Generators may be given in any order but
    /// must be distinct and lie in `[1, n/2]`.
    pub fn new(n: usize, generators: &[usize]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let max = n / 2;
        let mut sorted = generators.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateGenerator(w[0]));
            }
        }
        if let Some(&g) = sorted.iter().find(|&&g| g == 0 || g > max) {
            return Err(Error::GeneratorOutOfRange {
                n,
                generator: g,
                max,
            });
        }
        Ok(CirculantGraph {
            n,
            generators: sorted,
        })
    }

    /// `C(n; 1, a)`.
    pub fn two_generator(n: usize, a: usize) -> Result<Self> {
        if a <= 1 {
            return Err(Error::Parameter(format!(
                "second generator must exceed 1, got {a}"
            )));
        }
        Self::new(n, &[1, a])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The `a` of `C(n;1,a)`, if the graph has exactly that shape.
    pub fn second_generator(&self) -> Option<usize> {
        match self.generators.as_slice() {
            [1, a] => Some(*a),
            _ => None,
        }
    }

    pub fn has_unit_generator(&self) -> bool {
        self.generators.first() == Some(&1)
    }

    /// Index steps that lead from a vertex to its neighbours, without
    /// repeats: a generator equal to `n/2` contributes one step, not two.
    pub fn steps(&self) -> Vec<usize> {
        let mut steps = Vec::with_capacity(2 * self.generators.len());
        for &g in &self.generators {
            steps.push(g);
            if 2 * g != self.n {
                steps.push(self.n - g);
            }
        }
        steps
    }

    pub fn degree(&self) -> usize {
        self.steps().len()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.steps().into_iter().map(move |s| (i + s) % n)
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        let diff = (j + self.n - i % self.n) % self.n;
        let back = (self.n - diff) % self.n;
        self.generators.iter().any(|&g| g == diff || g == back)
    }

    /// Adjacency rows as bitsets; only meaningful for `n <= 64`.
    pub(crate) fn adjacency_bits(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        (0..self.n)
            .map(|i| self.neighbors(i).fold(0u64, |acc, j| acc | (1 << j)))
            .collect()
    }
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({};{})", self.n, gens_label(&self.generators))
    }
}

/// Distances from `v_0`; all other distances follow by rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOracle {
    graph: CirculantGraph,
    row: Vec<u32>,
    diameter: Option<u32>,
}

impl DistanceOracle {
    pub fn new(graph: CirculantGraph) -> Self {
        let n = graph.n();
        let steps = graph.steps();
        let mut row = vec![UNREACHABLE; n];
        row[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in &steps {
                let y = (x + s) % n;
                if row[y] == UNREACHABLE {
                    row[y] = row[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let diameter = if row.contains(&UNREACHABLE) {
            None
        } else {
            row.iter().copied().max()
        };
        DistanceOracle {
            graph,
            row,
            diameter,
        }
    }

    pub fn graph(&self) -> &CirculantGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `row()[j] = d(v_0, v_j)`; unreachable entries hold [`UNREACHABLE`].
    pub fn row(&self) -> &[u32] {
        &self.row
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> u32 {
        let n = self.row.len();
        self.row[(j + n - i % n) % n]
    }

    pub fn is_connected(&self) -> bool {
        self.diameter.is_some()
    }

    pub fn diameter(&self) -> Result<u32> {
        self.diameter.ok_or_else(|| self.disconnected())
    }

    /// Every vertex has the same eccentricity in a circulant graph.
    pub fn eccentricity(&self, i: usize) -> Result<u32> {
        if i >= self.n() {
            return Err(Error::VertexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        self.diameter()
    }

    pub fn radius(&self) -> Result<u32> {
        self.diameter()
    }

    /// Vertices within distance `radius` of `v_center`, ascending.
    pub fn ball(&self, center: usize, radius: u32) -> Vec<usize> {
        let n = self.n();
        let mut out: Vec<usize> = (0..n)
            .filter(|&off| self.row[off] <= radius)
            .map(|off| (center + off) % n)
            .collect();
        out.sort_unstable();
        out
    }

    /// The antipodal number: size of a largest set of vertices that are
    /// pairwise at distance exactly `diam`.
    pub fn antipodal_number(&self) -> Result<usize> {
        let diam = self.diameter()?;
        let n = self.n();
        if n > ANTIPODAL_EXACT_LIMIT {
            return Err(Error::ExceedsExactLimit {
                what: "antipodal set search",
                n,
                limit: ANTIPODAL_EXACT_LIMIT,
            });
        }
        let adj: Vec<u64> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && self.dist(i, j) == diam)
                    .fold(0u64, |acc, j| acc | (1 << j))
            })
            .collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(clique::max_clique(&adj, full).0.count_ones() as usize)
    }

    fn disconnected(&self) -> Error {
        Error::Disconnected {
            n: self.n(),
            generators: gens_label(self.graph.generators()),
        }
    }
}

/// `diam(C(n;1,2)) = ceil((n - 1) / 4)` for `n >= 4`.
pub fn closed_form_diameter_1_2(n: usize) -> Result<u32> {
    if n < 4 {
        return Err(Error::Parameter(format!("C(n;1,2) needs n >= 4, got {n}")));
    }
    Ok(((n - 1).div_ceil(4)) as u32)
}

/// Finds a unit `u` mod `n` with `u * {±1, ±a} = {±1, ±b}`, a certificate
/// that `C(n;1,a)` and `C(n;1,b)` are isomorphic via `v_i -> v_{u i}`.
pub fn equivalence_multiplier(n: usize, a: usize, b: usize) -> Option<usize> {
    if n < 3 {
        return None;
    }
    let norm = |x: usize| -> usize {
        let x = x % n;
        x.min(n - x)
    };
    let mut target = [norm(1), norm(b)];
    target.sort_unstable();
    (1..n).filter(|&u| gcd(u, n) == 1).find(|&u| {
        let mut image = [norm(u), norm(u * a)];
        image.sort_unstable();
        image == target
    })
}

pub fn connection_set_equivalent(n: usize, a: usize, b: usize) -> bool {
    equivalence_multiplier(n, a, b).is_some()
}

pub(crate) fn gcd(mut x: usize, mut y: usize) -> usize {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: usize, gens: &[usize]) -> DistanceOracle {
        DistanceOracle::new(CirculantGraph::new(n, gens).unwrap())
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(CirculantGraph::new(2, &[1]), Err(Error::TooFewVertices(2)));
        assert_eq!(CirculantGraph::new(6, &[]), Err(Error::NoGenerators));
        assert!(matches!(
            CirculantGraph::new(10, &[1, 6]),
            Err(Error::GeneratorOutOfRange { generator: 6, .. })
        ));
        assert!(matches!(
            CirculantGraph::new(10, &[0, 3]),
            Err(Error::GeneratorOutOfRange { generator: 0, .. })
        ));
        assert_eq!(
            CirculantGraph::new(10, &[3, 3]),
            Err(Error::DuplicateGenerator(3))
        );
        assert!(CirculantGraph::new(10, &[10]).is_err());
    }

    #[test]
    fn k4_is_complete() {
        let g = CirculantGraph::new(4, &[1, 2]).unwrap();
        assert_eq!(g.degree(), 3);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.is_adjacent(i, j), i != j);
            }
        }
    }

    #[test]
    fn single_unit_generator_is_a_cycle() {
        let g = CirculantGraph::new(6, &[1]).unwrap();
        assert_eq!(g.degree(), 2);
        let o = DistanceOracle::new(g);
        assert_eq!(o.row(), &[0, 1, 2, 3, 2, 1]);
    }

    #[test]
    fn c10_1_3_edges() {
        let g = CirculantGraph::new(10, &[3, 1]).unwrap();
        assert_eq!(g.generators(), &[1, 3]);
        assert_eq!(g.degree(), 4);
        for i in 0..10 {
            let mut nb: Vec<usize> = g.neighbors(i).collect();
            nb.sort_unstable();
            let mut expected = vec![(i + 1) % 10, (i + 9) % 10, (i + 3) % 10, (i + 7) % 10];
            expected.sort_unstable();
            assert_eq!(nb, expected);
        }
    }

    #[test]
    fn half_generator_adds_one_edge() {
        let g = CirculantGraph::new(10, &[1, 5]).unwrap();
        assert_eq!(g.degree(), 3);
    }

    #[test]
    fn distance_examples() {
        let o = oracle(10, &[1, 3]);
        assert_eq!(o.row()[3], 1);
        assert_eq!(o.row()[5], 3);
        let o = oracle(21, &[1, 2]);
        assert_eq!(o.row()[7], 4);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(oracle(9, &[1, 2]).diameter().unwrap(), 2);
        assert_eq!(oracle(10, &[1, 5]).diameter().unwrap(), 3);
        let o = oracle(6, &[1, 3]);
        assert_eq!(o.eccentricity(4).unwrap(), o.diameter().unwrap());
        assert_eq!(o.radius().unwrap(), o.diameter().unwrap());
        assert!(o.eccentricity(6).is_err());
    }

    #[test]
    fn disconnected_graph_has_no_diameter() {
        let o = oracle(8, &[2, 4]);
        assert!(!o.is_connected());
        assert!(matches!(o.diameter(), Err(Error::Disconnected { .. })));
        assert!(o.antipodal_number().is_err());
    }

    #[test]
    fn closed_form_diameter_examples() {
        assert_eq!(closed_form_diameter_1_2(4).unwrap(), 1);
        assert_eq!(closed_form_diameter_1_2(21).unwrap(), 5);
        assert_eq!(closed_form_diameter_1_2(13).unwrap(), 3);
        assert!(closed_form_diameter_1_2(3).is_err());
    }

    #[test]
    fn antipodal_examples() {
        assert_eq!(oracle(4, &[1, 2]).antipodal_number().unwrap(), 4);
        assert_eq!(oracle(6, &[1]).antipodal_number().unwrap(), 2);
        assert!(oracle(10, &[1, 5]).antipodal_number().unwrap() >= 2);
        let big = oracle(65, &[1, 2]);
        assert!(matches!(
            big.antipodal_number(),
            Err(Error::ExceedsExactLimit { .. })
        ));
    }

    #[test]
    fn connection_set_examples() {
        assert!(connection_set_equivalent(21, 10, 2));
        assert!(connection_set_equivalent(9, 2, 4));
        for n in 5..20 {
            for a in 2..=n / 2 {
                assert!(connection_set_equivalent(n, a, a));
            }
        }
        // 2a+1 always maps to C(2a+1;1,2) through u = a
        assert_eq!(equivalence_multiplier(21, 2, 10), Some(10));
    }
}
