//! Explicit optimal broadcasts for the solved classes of `C(n;1,a)`, the
//! segment layouts used for lower bounds, and the transformation of an
//! independent broadcast into a 2-bounded one of no smaller cost.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::broadcast::{offset, Broadcast};
use crate::clique;
use crate::error::{Error, Result};
use crate::formulas::{self, Kind, TheoremId};
use crate::graph::{CirculantGraph, DistanceOracle};

/// The recipe behind a constructed witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecipe {
    pub theorem: TheoremId,
    pub n: usize,
    pub a: usize,
    /// Derived quantities, e.g. `q`, `r`, `k`, `l`, `k1`, `k2`.
    pub params: Vec<(&'static str, usize)>,
    pub pattern: &'static str,
}

fn oracle(n: usize, a: usize) -> Result<Arc<DistanceOracle>> {
    Ok(Arc::new(DistanceOracle::new(
        CirculantGraph::two_generator(n, a)?,
    )))
}

fn ones(o: Arc<DistanceOracle>, keep: impl Fn(usize) -> bool) -> Broadcast {
    let n = o.n();
    Broadcast::from_support(o, (0..n).filter(|&i| keep(i)).map(|i| (i, 1)))
        .expect("indices are in range")
}

/// A witness for the closed-form value of `beta_b(C(n;1,a))`.
pub fn construct_witness(n: usize, a: usize) -> Result<Broadcast> {
    construct_with_recipe(n, a).map(|(_, b)| b)
}

/// Like [`construct_witness`], also returning the recipe that was used.
pub fn construct_with_recipe(n: usize, a: usize) -> Result<(WitnessRecipe, Broadcast)> {
    let prediction = formulas::predict_beta(n, a)?;
    let target = match (prediction.kind, prediction.value) {
        (Kind::Exact | Kind::LowerBound, Some(v)) => v,
        _ => return Err(Error::NoConstruction { n, a }),
    };
    let o = oracle(n, a)?;
    let mut params = Vec::new();
    let (pattern, b): (&'static str, Broadcast) = match prediction.theorem {
        TheoremId::CompleteGraph => ("single vertex", ones(o, |i| i == 0)),
        TheoremId::Circulant12 => circulant_1_2(o, &mut params),
        TheoremId::TwoA => two_a(o, a, &mut params),
        TheoremId::TwoAPlusOne => {
            let base = circulant_1_2(oracle(n, 2)?, &mut params).1;
            let mut values = vec![0; n];
            for (i, &v) in base.values().iter().enumerate() {
                values[a * i % n] = v;
            }
            params.push(("multiplier", a));
            (
                "image of the C(n;1,2) witness under i -> a i",
                Broadcast::new(o, values)?,
            )
        }
        TheoremId::ThreeA => {
            if a % 2 == 1 {
                ("even i < 2a", ones(o, |i| i % 2 == 0 && i < 2 * a))
            } else {
                (
                    "(i mod a+1) odd and i <= 2a",
                    ones(o, |i| (i % (a + 1)) % 2 == 1 && i <= 2 * a),
                )
            }
        }
        TheoremId::Generator3 => {
            if n % 2 == 0 {
                ("even i", ones(o, |i| i % 2 == 0))
            } else {
                ("even i <= n-5", ones(o, |i| i % 2 == 0 && i + 5 <= n))
            }
        }
        TheoremId::Generator4 => generator_4(o, &mut params),
        TheoremId::EvenNOddA => ("even i", ones(o, |i| i % 2 == 0)),
        TheoremId::MultipleOfAPlusOne => {
            params.push(("k", n / (a + 1)));
            ("(i mod a+1) odd", ones(o, |i| (i % (a + 1)) % 2 == 1))
        }
        TheoremId::MultipleOfA => multiple_of_a(o, a, &mut params)?,
        TheoremId::QaPlusR => {
            let (q, r) = formulas::split_qr(n, a);
            let (k1, k2) = formulas::decompose_segments(n, a)?
                .ok_or_else(|| defect(n, a, "no segment decomposition"))?;
            params.extend([("q", q), ("r", r), ("k1", k1), ("k2", k2)]);
            ("segment layout", segment_pattern(n, a, k1, k2)?)
        }
        _ => return Err(Error::NoConstruction { n, a }),
    };
    b.check_independent()
        .map_err(|e| defect(n, a, &e.to_string()))?;
    if b.cost() != target {
        return Err(defect(
            n,
            a,
            &format!("cost {} differs from value {target}", b.cost()),
        ));
    }
    let recipe = WitnessRecipe {
        theorem: prediction.theorem,
        n,
        a,
        params,
        pattern,
    };
    Ok((recipe, b))
}

fn defect(n: usize, a: usize, reason: &str) -> Error {
    Error::ConstructionDefect {
        n,
        a,
        reason: reason.to_string(),
    }
}

fn circulant_1_2(
    o: Arc<DistanceOracle>,
    params: &mut Vec<(&'static str, usize)>,
) -> (&'static str, Broadcast) {
    let n = o.n();
    if n <= 5 {
        return ("single vertex", ones(o, |i| i == 0));
    }
    if n % 12 == 9 {
        let v = ((n - 3) / 6) as u32;
        params.push(("value", v as usize));
        let b = Broadcast::from_support(o, [(0, v), (n / 3, v), (2 * n / 3, v)]).expect("in range");
        return ("three vertices n/3 apart", b);
    }
    let diam = o.diameter().expect("connected");
    let j = o
        .row()
        .iter()
        .position(|&d| d == diam)
        .expect("diameter is attained");
    params.push(("antipode", j));
    let b = Broadcast::from_support(o, [(0, diam - 1), (j, diam - 1)]).expect("in range");
    ("antipodal pair at diam - 1", b)
}

fn two_a(
    o: Arc<DistanceOracle>,
    a: usize,
    params: &mut Vec<(&'static str, usize)>,
) -> (&'static str, Broadcast) {
    if a % 2 == 1 {
        return ("even i", ones(o, |i| i % 2 == 0));
    }
    if a.is_power_of_two() {
        let b = ones(o, |i| {
            (i % 2 == 0 && i + 2 <= a) || (i % 2 == 1 && i > a && i + 3 <= 2 * a)
        });
        return ("even i <= a-2 and odd i in [a+1, 2a-3]", b);
    }
    let k = a.trailing_zeros();
    let step = 1usize << (k + 1);
    params.extend([("k", k as usize), ("l", (a >> k) / 2)]);
    let n = o.n();
    let b =
        Broadcast::from_support(o, (0..n).step_by(step).map(|i| (i, 1u32 << k))).expect("in range");
    ("value 2^k at i = 0 (mod 2^(k+1))", b)
}

fn generator_4(
    o: Arc<DistanceOracle>,
    params: &mut Vec<(&'static str, usize)>,
) -> (&'static str, Broadcast) {
    let n = o.n();
    let r = n % 5;
    params.extend([("k", n / 5), ("r", r)]);
    let odd = |i: usize| (i % 5) % 2 == 1;
    match r {
        0 | 3 => ("(i mod 5) odd", ones(o, odd)),
        2 => (
            "(i mod 5) odd and i <= n-3",
            ones(o, |i| odd(i) && i + 3 <= n),
        ),
        _ => (
            "(i mod 5) odd and i <= n-7, plus n-2 and n-5",
            ones(o, |i| (odd(i) && i + 7 <= n) || i + 2 == n || i + 5 == n),
        ),
    }
}

fn multiple_of_a(
    o: Arc<DistanceOracle>,
    a: usize,
    params: &mut Vec<(&'static str, usize)>,
) -> Result<(&'static str, Broadcast)> {
    let n = o.n();
    let q = n / a;
    params.push(("q", q));
    if a % 2 == 1 {
        // q even gives n even, handled earlier in the dispatch order
        return Ok((
            "even i <= (q-1)a - 1",
            ones(o, |i| i % 2 == 0 && i < (q - 1) * a),
        ));
    }
    if q % 2 == 0 || q > a + 1 {
        let mut k = q / (a + 1);
        if k % 2 != q % 2 {
            k -= 1;
        }
        let l = (q - k * (a + 1)) / 2;
        params.extend([("k", k), ("l", l), ("k1", k * a + l), ("k2", l)]);
        return Ok(("segment layout", segment_pattern(n, a, k * a + l, l)?));
    }
    params.push(("l", (a - q - 1) / 2));
    let set = qa_families(n, a, FamilyParity::Corrected)?;
    Ok((
        "cycle families S_k",
        Broadcast::from_support(o, set.into_iter().map(|i| (i, 1)))?,
    ))
}

/// How the families on cycles `C_k` with `k > q` alternate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyParity {
    /// Even `k` takes the odd positions of its cycle, odd `k` the even ones.
    Corrected,
    /// Even `k` takes the even positions, odd `k` the odd ones.
    AsWritten,
}

/// The union of the families `S_k` on `C(qa;1,a)`, `a` even, `q` odd,
/// `q <= a - 1`. Cycle `C_k` holds `v_{k + m a}`, `m = 0..q`.
pub fn qa_families(n: usize, a: usize, parity: FamilyParity) -> Result<Vec<usize>> {
    if a % 2 == 1 || a < 6 || n % a != 0 {
        return Err(Error::Parameter(format!(
            "families need a even >= 6 dividing n, got n = {n}, a = {a}"
        )));
    }
    let q = n / a;
    if q % 2 == 0 || q < 3 || q > a - 1 {
        return Err(Error::Parameter(format!(
            "families need q odd in [3, a-1], got q = {q}"
        )));
    }
    let half = (q - 1) / 2;
    let mut set = BTreeSet::new();
    for k in 0..a {
        let positions: Vec<usize> = if k <= q {
            (0..half).map(|t| (k + 2 * t) % q).collect()
        } else {
            let odd_positions = match parity {
                FamilyParity::Corrected => k % 2 == 0,
                FamilyParity::AsWritten => k % 2 == 1,
            };
            (0..half)
                .map(|t| 2 * t + usize::from(odd_positions))
                .collect()
        };
        set.extend(positions.into_iter().map(|m| k + m * a));
    }
    Ok(set.into_iter().collect())
}

/// Fixed placement of segments in [`segment_pattern`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentOrder;

/// The segment placement rule used by [`segment_pattern`].
pub fn segment_order_policy() -> SegmentOrder {
    SegmentOrder
}

impl SegmentOrder {
    pub fn description(&self) -> &'static str {
        "all (a+1)-segments first, then all (a-1)-segments, the first starting at v_0"
    }

    /// Start index of each segment.
    pub fn starts(&self, a: usize, k1: usize, k2: usize) -> Vec<usize> {
        let lengths = std::iter::repeat(a + 1)
            .take(k1)
            .chain(std::iter::repeat(a - 1).take(k2));
        lengths
            .scan(0, |pos, len| {
                let start = *pos;
                *pos += len;
                Some(start)
            })
            .collect()
    }
}

impl fmt::Display for SegmentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// `k1` segments of length `a + 1` then `k2` of length `a - 1`, each
/// carrying the pattern `1010...100`.
pub fn segment_pattern(n: usize, a: usize, k1: usize, k2: usize) -> Result<Broadcast> {
    if a % 2 == 1 || a < 6 {
        return Err(Error::Parameter(format!(
            "segment layouts need a even and a >= 6, got {a}"
        )));
    }
    if k1 * (a + 1) + k2 * (a - 1) != n {
        return Err(Error::Parameter(format!(
            "{k1} (a+1) + {k2} (a-1) = {} differs from n = {n}",
            k1 * (a + 1) + k2 * (a - 1)
        )));
    }
    let o = oracle(n, a)?;
    let mut values = vec![0; n];
    let starts = segment_order_policy().starts(a, k1, k2);
    for (idx, &start) in starts.iter().enumerate() {
        let len = if idx < k1 { a + 1 } else { a - 1 };
        for t in (0..len - 2).step_by(2) {
            values[start + t] = 1;
        }
    }
    Broadcast::new(o, values)
}

/// Which replacement shape was applied to a vertex of value above 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionRule {
    /// `2a+2 <= n < 3a`, `f <= r`.
    NearSmall,
    /// `2a+2 <= n < 3a`, `r` even, `f > r`.
    NearEvenR,
    /// `2a+2 <= n < 3a`, `r` odd, `f > r`.
    NearOddR,
    /// `n = 3a`.
    ThreeA,
    /// `n > 3a`, `f <= a`.
    FarSmall,
    /// `n > 3a`, `a` odd, `f > a`.
    FarOddA,
    /// `n > 3a`, `a` even, `f > a`.
    FarEvenA,
    /// No fixed shape fits; found by search.
    Searched,
    /// Sources replaced together; see [`reduce_to_2bounded_with_steps`].
    Joint,
}

/// One vertex of value above 2 and the 1-vertices that replace it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replacement {
    pub source: usize,
    pub value: u32,
    pub rule: ReductionRule,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub broadcast: Broadcast,
    pub steps: Vec<Replacement>,
}

/// Rewrites an independent broadcast on `C(n;1,a)`, `3 <= a`, `n >= 2a+2`,
/// into a 2-bounded independent broadcast of no smaller cost.
pub fn reduce_to_2bounded(b: &Broadcast) -> Result<Broadcast> {
    reduce_to_2bounded_with_steps(b).map(|r| r.broadcast)
}

/// [`reduce_to_2bounded`] together with the per-vertex replacements.
///
/// Vertices are processed in increasing index order. Each vertex of value
/// `f > 2` is replaced by at least `f` pairwise non-adjacent 1-vertices
/// within distance `f - 2` of it that also avoid every vertex placed so
/// far. The fixed shapes of [`ReductionRule`] are tried first; when the
/// shape breaks one of these conditions a replacement is searched inside
/// the ball of radius `f - 2` instead (graphs of at most 64 vertices).
///
/// If some source cannot be replaced this way, all sources are replaced
/// together by a maximum independent set of the union of their balls;
/// every new vertex still lies within `f - 2` of a source, but single
/// sources may then receive fewer than `f` vertices.
pub fn reduce_to_2bounded_with_steps(b: &Broadcast) -> Result<Reduction> {
    let n = b.n();
    let a = b
        .graph()
        .second_generator()
        .ok_or_else(|| Error::NotTwoGenerator {
            n,
            generators: crate::error::gens_label(b.graph().generators()),
        })?;
    if a < 3 || n < 2 * a + 2 {
        return Err(Error::ReductionNotApplicable { n, a });
    }
    b.check_independent()?;
    let (values, steps) = match replace_each(b, a) {
        Ok(done) => done,
        Err(first) => replace_jointly(b).ok_or(first)?,
    };
    let o = b.oracle();
    let g = Broadcast::new(Arc::clone(o), values)?;
    if let Err(e) = g.check_independent() {
        let (vertex, value) = steps.first().map_or((0, 0), |s| (s.source, s.value));
        return Err(Error::ReductionDefect {
            n,
            a,
            vertex,
            value,
            reason: e.to_string(),
        });
    }
    debug_assert!(g.cost() >= b.cost());
    Ok(Reduction {
        broadcast: g,
        steps,
    })
}

type Replaced = (Vec<u32>, Vec<Replacement>);

/// One source at a time, in increasing index order.
fn replace_each(b: &Broadcast, a: usize) -> Result<Replaced> {
    let n = b.n();
    let o = b.oracle();
    let mut values = b.values().to_vec();
    let mut steps = Vec::new();
    for i in 0..n {
        let f = b.value(i);
        if f <= 2 {
            continue;
        }
        values[i] = 0;
        // Sources not yet processed disappear later; only their own
        // vertex must stay untouched.
        let pending: Vec<usize> = (i + 1..n).filter(|&u| b.value(u) > 2).collect();
        let fits = |j: usize| {
            o.dist(i, j) + 2 <= f
                && (0..n).all(|u| {
                    let g = if pending.contains(&u) { 1 } else { values[u] };
                    g == 0 || o.dist(u, j) > g.max(1)
                })
        };
        let (rule, offsets) = replacement_offsets(n, a, f);
        let shape: Vec<usize> = offsets
            .iter()
            .map(|&x| offset(n, i, x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let shape_ok = shape.len() >= f as usize
            && shape.iter().all(|&j| fits(j))
            && shape
                .iter()
                .enumerate()
                .all(|(x, &u)| shape[x + 1..].iter().all(|&v| o.dist(u, v) > 1));
        let (rule, vertices) = if shape_ok {
            (rule, shape)
        } else {
            let found =
                search_replacement(o, i, f, &fits).ok_or_else(|| Error::ReductionDefect {
                    n,
                    a,
                    vertex: i,
                    value: f,
                    reason: format!("no {f} independent vertices fit within distance {}", f - 2),
                })?;
            (ReductionRule::Searched, found)
        };
        for &j in &vertices {
            values[j] = 1;
        }
        steps.push(Replacement {
            source: i,
            value: f,
            rule,
            vertices,
        });
    }
    Ok((values, steps))
}

/// All sources at once: a maximum independent set among the vertices
/// within distance `f(v_i) - 2` of some source `v_i`, accepted when it is
/// at least as large as the sum of the source values. Each chosen vertex
/// is attributed to the first source in range.
fn replace_jointly(b: &Broadcast) -> Option<Replaced> {
    let n = b.n();
    let o = b.oracle();
    if n > 64 {
        return None;
    }
    let sources: Vec<usize> = (0..n).filter(|&i| b.value(i) > 2).collect();
    let kept: Vec<usize> = (0..n).filter(|&u| (1..=2).contains(&b.value(u))).collect();
    let reach = |j: usize| {
        sources
            .iter()
            .copied()
            .find(|&i| o.dist(i, j) + 2 <= b.value(i))
    };
    let candidates = (0..n)
        .filter(|&j| reach(j).is_some() && kept.iter().all(|&u| o.dist(u, j) > b.value(u)))
        .fold(0u64, |m, j| m | 1 << j);
    let free = clique::complement(&o.graph().adjacency_bits());
    let (chosen, _) = clique::max_clique(&free, candidates);
    let needed: u64 = sources.iter().map(|&i| u64::from(b.value(i))).sum();
    if u64::from(chosen.count_ones()) < needed {
        return None;
    }
    let mut values = b.values().to_vec();
    for &i in &sources {
        values[i] = 0;
    }
    let mut steps: Vec<Replacement> = sources
        .iter()
        .map(|&i| Replacement {
            source: i,
            value: b.value(i),
            rule: ReductionRule::Joint,
            vertices: Vec::new(),
        })
        .collect();
    for j in clique::bits(chosen) {
        values[j] = 1;
        let i = reach(j).expect("candidate is in range of a source");
        steps
            .iter_mut()
            .find(|s| s.source == i)
            .expect("source has a step")
            .vertices
            .push(j);
    }
    Some((values, steps))
}

/// The lexicographically first `f` pairwise non-adjacent vertices among
/// those accepted by `fits`.
fn search_replacement(
    o: &DistanceOracle,
    i: usize,
    f: u32,
    fits: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = o.n();
    if n > 64 {
        return None;
    }
    let candidates: u64 = o
        .ball(i, f - 2)
        .into_iter()
        .filter(|&j| fits(j))
        .fold(0, |m, j| m | 1 << j);
    let free = clique::complement(&o.graph().adjacency_bits());
    if !clique::has_clique_of_size(&free, candidates, f) {
        return None;
    }
    let mut chosen = Vec::with_capacity(f as usize);
    let mut pool = candidates;
    for j in clique::bits(candidates) {
        if pool & (1 << j) == 0 {
            continue;
        }
        let rest = pool & free[j] & !((1u64 << j << 1).wrapping_sub(1));
        if clique::has_clique_of_size(&free, rest, f - 1 - chosen.len() as u32) {
            chosen.push(j);
            pool = rest;
            if chosen.len() == f as usize {
                break;
            }
        }
    }
    Some(chosen)
}

/// `p = f - 3` for odd `f`, `f - 4` for even `f`.
fn p_of(f: u32) -> isize {
    if f % 2 == 1 {
        f as isize - 3
    } else {
        f as isize - 4
    }
}

fn stepped(from: isize, to: isize) -> impl Iterator<Item = isize> {
    (from..=to).step_by(2)
}

/// Offsets, relative to the source, of the 1-vertices replacing a vertex
/// of value `f > 2`.
fn replacement_offsets(n: usize, a: usize, f: u32) -> (ReductionRule, Vec<isize>) {
    let ai = a as isize;
    let fi = f as isize;
    let p = p_of(f);
    if n < 3 * a {
        let r = (n - 2 * a) as isize;
        if fi <= r {
            let mut out = vec![-ai];
            out.extend(stepped(-1, p + 1));
            out.extend(stepped(ai, ai + p));
            return (ReductionRule::NearSmall, out);
        }
        if r % 2 == 0 {
            // Also used at f = ceil(a/2) when r = 2, the one value of f the
            // even-r shape is not stated for.
            let mut out: Vec<isize> = stepped(-1, p + 1).collect();
            out.extend(stepped(ai, ai + r + p));
            return (ReductionRule::NearEvenR, out);
        }
        let d = fi - (r + 1);
        let m = r + 2;
        let hi = (d + 2) / 2 * r + d % 2;
        let mut out: Vec<isize> = (-2..=hi)
            .filter(|&x| (x + 2).rem_euclid(m) % 2 == 1)
            .collect();
        let hi2 = ai + (d + 3) / 2 * r + 1 - d % 2;
        out.extend((ai..=hi2).filter(|&x| (x - ai + 3).rem_euclid(m) % 2 == 1));
        return (ReductionRule::NearOddR, out);
    }
    if n == 3 * a {
        // i - a and i + a are adjacent here, so the shapes below collide;
        // use one alternating run around v_i and one around v_{i+a}.
        let mut out: Vec<isize> = (0..fi.div_euclid(2) + fi % 2)
            .map(|t| -(fi - 2) + 2 * t)
            .collect();
        out.extend((0..fi / 2).map(|t| ai - (fi - 3) + 2 * t));
        return (ReductionRule::ThreeA, out);
    }
    if fi <= ai {
        let mut out: Vec<isize> = stepped(-1, p + 1).collect();
        out.extend(stepped(-ai, -ai + p));
        out.extend(stepped(ai, ai + p));
        return (ReductionRule::FarSmall, out);
    }
    let d = fi - (ai + 1);
    if a % 2 == 1 {
        let out = (-ai..=(1 + d) * ai)
            .filter(|&x| (x + ai) % 2 == 0)
            .collect();
        return (ReductionRule::FarOddA, out);
    }
    let out = (-ai - 1..=(2 + d) * ai)
        .filter(|&x| (x + ai + 1).rem_euclid(ai + 1) % 2 == 1)
        .collect();
    (ReductionRule::FarEvenA, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_examples() {
        let b = construct_witness(14, 7).unwrap();
        assert_eq!(b.cost(), 7);
        assert!((0..14).all(|i| b.value(i) == u32::from(i % 2 == 0)));

        let b = construct_witness(12, 6).unwrap();
        assert_eq!(b.cost(), 6);
        assert_eq!(b.broadcast_vertices(), vec![0, 4, 8]);
        assert!(b.broadcast_vertices().iter().all(|&i| b.value(i) == 2));

        assert_eq!(construct_witness(13, 4).unwrap().cost(), 5);
        assert_eq!(construct_witness(21, 2).unwrap().cost(), 9);
        assert_eq!(
            construct_witness(8, 4).unwrap().broadcast_vertices(),
            vec![0, 2, 5]
        );
    }

    #[test]
    fn open_class_has_no_construction() {
        assert_eq!(
            construct_witness(23, 7),
            Err(Error::NoConstruction { n: 23, a: 7 })
        );
        assert!(matches!(construct_witness(10, 6), Err(Error::Parameter(_))));
    }

    #[test]
    fn every_covered_class_up_to_120() {
        for n in 4..=120 {
            for a in 2..=n / 2 {
                match construct_with_recipe(n, a) {
                    Ok((recipe, b)) => {
                        assert_eq!(Some(b.cost()), formulas::predict_beta(n, a).unwrap().value);
                        assert_eq!(
                            recipe.theorem,
                            formulas::predict_beta(n, a).unwrap().theorem
                        );
                    }
                    Err(Error::NoConstruction { .. }) => assert!(formulas::is_open_class(n, a)),
                    Err(e) => panic!("n={n} a={a}: {e}"),
                }
            }
        }
    }

    #[test]
    fn segment_examples() {
        assert_eq!(segment_pattern(14, 6, 2, 0).unwrap().cost(), 6);
        let b = segment_pattern(27, 6, 1, 4).unwrap();
        assert_eq!(b.cost(), 11);
        assert_eq!(b.is_independent(), Ok(true));
        assert!(segment_pattern(10, 6, 0, 2).is_err());
        assert!(segment_pattern(27, 6, 2, 2).is_err());
        assert!(segment_pattern(27, 5, 1, 4).is_err());
    }

    #[test]
    fn segment_starts() {
        let policy = segment_order_policy();
        assert_eq!(policy.starts(6, 2, 0), vec![0, 7]);
        assert_eq!(policy.starts(6, 1, 4), vec![0, 7, 12, 17, 22]);
    }

    #[test]
    fn families_as_written_collide() {
        let n = 50;
        let fixed = qa_families(n, 10, FamilyParity::Corrected).unwrap();
        assert_eq!(fixed.len(), 20);
        let o = oracle(n, 10).unwrap();
        assert!(Broadcast::from_independent_set(o.clone(), &fixed).is_ok());
        let verbatim = qa_families(n, 10, FamilyParity::AsWritten).unwrap();
        assert!(Broadcast::from_independent_set(o, &verbatim).is_err());
    }

    #[test]
    fn reduction_example() {
        let o = oracle(22, 7).unwrap();
        let b = Broadcast::from_support(o, [(0, 5)]).unwrap();
        let r = reduce_to_2bounded_with_steps(&b).unwrap();
        let mut got = r.broadcast.broadcast_vertices();
        got.sort_unstable();
        assert_eq!(got, vec![1, 3, 7, 9, 15, 17, 21]);
        assert_eq!(r.broadcast.cost(), 7);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].rule, ReductionRule::FarSmall);
    }

    #[test]
    fn reduction_keeps_bounded_input() {
        let b = construct_witness(20, 3).unwrap();
        assert_eq!(reduce_to_2bounded(&b).unwrap(), b);
    }

    #[test]
    fn reduction_not_applicable() {
        let b = Broadcast::zero(oracle(21, 10).unwrap());
        assert_eq!(
            reduce_to_2bounded(&b),
            Err(Error::ReductionNotApplicable { n: 21, a: 10 })
        );
        let b = Broadcast::zero(oracle(20, 10).unwrap());
        assert!(reduce_to_2bounded(&b).is_err());
        let b = Broadcast::zero(oracle(20, 2).unwrap());
        assert!(reduce_to_2bounded(&b).is_err());
    }

    #[test]
    fn single_vertex_every_value() {
        for n in 8..=60 {
            for a in 3..=n / 2 {
                if n < 2 * a + 2 {
                    continue;
                }
                let o = oracle(n, a).unwrap();
                for f in 3..=o.diameter().unwrap() {
                    let b = Broadcast::from_support(o.clone(), [(5 % n, f)]).unwrap();
                    let g = reduce_to_2bounded(&b).unwrap_or_else(|e| panic!("{e}"));
                    assert!(g.cost() >= u64::from(f));
                }
            }
        }
    }
}
