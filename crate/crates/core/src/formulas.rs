//! Closed-form values of `alpha` and `beta_b` for `C(n;1,a)`, the general
//! bounds, and the dispatcher deciding which result covers a given `(n, a)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, DistanceOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Exact,
    LowerBound,
    UpperBound,
    Unknown,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Exact => "exact",
            Kind::LowerBound => "lower_bound",
            Kind::UpperBound => "upper_bound",
            Kind::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The result a prediction rests on, named after the class it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `C(4;1,2)` and `C(5;1,2)` are complete.
    CompleteGraph,
    /// `a = 2`.
    #[serde(rename = "circulant_1_2")]
    Circulant12,
    /// `n = 2a`.
    TwoA,
    /// `n = 2a + 1`, through the isomorphism with `C(n;1,2)`.
    TwoAPlusOne,
    /// `n = 3a`.
    ThreeA,
    /// `a = 3`.
    #[serde(rename = "generator_3")]
    Generator3,
    /// `a = 4`.
    #[serde(rename = "generator_4")]
    Generator4,
    /// `n` even and `a` odd.
    EvenNOddA,
    /// `n = (a+1)k`.
    MultipleOfAPlusOne,
    /// `n = qa`.
    MultipleOfA,
    /// `n = qa + r` under the parity side conditions.
    QaPlusR,
    /// Not covered by any known result.
    Open,
    /// `beta_b >= mu (diam - 1) >= 2 (diam - 1)`.
    AntipodalLower,
    /// Segment layouts of lengths `a + 1` and `a - 1`.
    SegmentLower,
    /// `sigma <= (n - |V^2|) / 2` for 2-bounded broadcasts.
    RunUpper,
    /// The even-`a` counting bound for 2-bounded broadcasts.
    EvenAUpper,
}

impl TheoremId {
    pub const DISPATCH: [TheoremId; 12] = [
        TheoremId::CompleteGraph,
        TheoremId::Circulant12,
        TheoremId::TwoA,
        TheoremId::TwoAPlusOne,
        TheoremId::ThreeA,
        TheoremId::Generator3,
        TheoremId::Generator4,
        TheoremId::EvenNOddA,
        TheoremId::MultipleOfAPlusOne,
        TheoremId::MultipleOfA,
        TheoremId::QaPlusR,
        TheoremId::Open,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::CompleteGraph => "complete_graph",
            TheoremId::Circulant12 => "circulant_1_2",
            TheoremId::TwoA => "two_a",
            TheoremId::TwoAPlusOne => "two_a_plus_1",
            TheoremId::ThreeA => "three_a",
            TheoremId::Generator3 => "generator_3",
            TheoremId::Generator4 => "generator_4",
            TheoremId::EvenNOddA => "even_n_odd_a",
            TheoremId::MultipleOfAPlusOne => "multiple_of_a_plus_1",
            TheoremId::MultipleOfA => "multiple_of_a",
            TheoremId::QaPlusR => "qa_plus_r",
            TheoremId::Open => "open",
            TheoremId::AntipodalLower => "antipodal_lower",
            TheoremId::SegmentLower => "segment_lower",
            TheoremId::RunUpper => "run_upper",
            TheoremId::EvenAUpper => "even_a_upper",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: Option<u64>,
    pub kind: Kind,
    pub theorem: TheoremId,
    pub note: String,
}

impl Prediction {
    fn exact(value: u64, theorem: TheoremId, note: impl Into<String>) -> Self {
        Prediction {
            value: Some(value),
            kind: Kind::Exact,
            theorem,
            note: note.into(),
        }
    }

    fn unknown(note: impl Into<String>) -> Self {
        Prediction {
            value: None,
            kind: Kind::Unknown,
            theorem: TheoremId::Open,
            note: note.into(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == Kind::Exact
    }
}

fn check_range(n: usize, a: usize) -> Result<()> {
    if a < 2 || n < 4 || a > n / 2 {
        return Err(Error::Parameter(format!(
            "need 2 <= a <= n/2, got n = {n}, a = {a}"
        )));
    }
    Ok(())
}

/// `n = qa + r` with `0 <= r < a`.
pub fn split_qr(n: usize, a: usize) -> (usize, usize) {
    (n / a, n % a)
}

/// Whether `(n, a)` lies in one of the classes left unsolved.
///
/// `n = 2a + 1` is excluded: it satisfies the literal conditions for either
/// parity of `a`, but its value follows from the isomorphism with
/// `C(n;1,2)`.
pub fn is_open_class(n: usize, a: usize) -> bool {
    if a < 5 || n == 2 * a + 1 || a > n / 2 {
        return false;
    }
    if a % 2 == 1 {
        return n % 2 == 1 && n % a != 0;
    }
    if a < 6 || n % a == 0 || n % (a + 1) == 0 {
        return false;
    }
    let (q, r) = split_qr(n, a);
    q < r || (q > r && (q + r) % 2 == 1 && q + r < a - 1)
}

fn is_power_of_two(x: usize) -> bool {
    x.is_power_of_two()
}

/// `floor(q a^2 / (2 (a + 1)))`.
fn qa_square_term(q: usize, a: usize) -> u64 {
    (q * a * a / (2 * (a + 1))) as u64
}

/// `floor(a n / (2 (a + 1)))`.
fn an_term(n: usize, a: usize) -> u64 {
    (a * n / (2 * (a + 1))) as u64
}

fn qa_plus_r_applies(n: usize, a: usize) -> bool {
    if a % 2 == 1 || a < 6 {
        return false;
    }
    let (q, r) = split_qr(n, a);
    r > 0 && q >= 2.max(r) && ((q + r) % 2 == 0 || q + r >= a - 1)
}

/// Closed-form `beta_b(C(n;1,a))`, following a fixed preference order when
/// several results apply.
pub fn predict_beta(n: usize, a: usize) -> Result<Prediction> {
    check_range(n, a)?;
    let found = TheoremId::DISPATCH
        .iter()
        .find_map(|&th| theorem_prediction(th, n, a));
    Ok(found.unwrap_or_else(|| {
        if is_open_class(n, a) {
            Prediction::unknown("unsolved class")
        } else {
            Prediction::unknown("outside every covered class")
        }
    }))
}

/// Every closed form whose own hypotheses hold at `(n, a)`, in preference
/// order.
pub fn applicable_theorems(n: usize, a: usize) -> Result<Vec<Prediction>> {
    check_range(n, a)?;
    Ok(TheoremId::DISPATCH
        .iter()
        .filter_map(|&th| theorem_prediction(th, n, a))
        .collect())
}

/// The value given by one result, if its hypotheses hold at `(n, a)`.
pub fn theorem_prediction(th: TheoremId, n: usize, a: usize) -> Option<Prediction> {
    use TheoremId::*;
    if a < 2 || n < 4 || a > n / 2 {
        return None;
    }
    let p = match th {
        CompleteGraph => {
            if n > 5 {
                return None;
            }
            Prediction::exact(1, CompleteGraph, "complete graph")
        }
        Circulant12 => {
            if a != 2 {
                return None;
            }
            let diam = (n - 1).div_ceil(4) as u64;
            if n <= 5 {
                Prediction::exact(1, Circulant12, "n in {4, 5}")
            } else if n % 12 == 9 {
                Prediction::exact(((n - 3) / 2) as u64, Circulant12, "n = 9 (mod 12)")
            } else {
                Prediction::exact(2 * (diam - 1), Circulant12, "2 (diam - 1)")
            }
        }
        TwoA => {
            if n != 2 * a {
                return None;
            }
            if a % 2 == 1 {
                Prediction::exact(a as u64, TwoA, "a odd")
            } else if is_power_of_two(a) {
                Prediction::exact(a as u64 - 1, TwoA, "a a power of two")
            } else {
                Prediction::exact(a as u64, TwoA, "a even, not a power of two")
            }
        }
        TwoAPlusOne => {
            if n != 2 * a + 1 {
                return None;
            }
            if a == 2 || a % 6 == 4 {
                Prediction::exact(a as u64 - 1, TwoAPlusOne, "a = 4 (mod 6)")
            } else {
                Prediction::exact(
                    2 * (a.div_ceil(2) as u64 - 1),
                    TwoAPlusOne,
                    "2 (ceil(a/2) - 1)",
                )
            }
        }
        ThreeA => {
            if n != 3 * a || a < 3 {
                return None;
            }
            Prediction::exact(a as u64, ThreeA, "")
        }
        Generator3 => {
            if a != 3 || n < 6 {
                return None;
            }
            if n % 2 == 0 {
                Prediction::exact((n / 2) as u64, Generator3, "n even")
            } else {
                Prediction::exact(((n - 3) / 2) as u64, Generator3, "n odd")
            }
        }
        Generator4 => {
            if a != 4 || n < 8 {
                return None;
            }
            Prediction::exact((2 * n / 5) as u64, Generator4, "floor(2n/5)")
        }
        EvenNOddA => {
            if n % 2 == 1 || a % 2 == 0 || a < 3 || n < 6 {
                return None;
            }
            Prediction::exact((n / 2) as u64, EvenNOddA, "n/2")
        }
        MultipleOfAPlusOne => {
            if a < 5 || n % (a + 1) != 0 || n / (a + 1) < 2 {
                return None;
            }
            let k = n / (a + 1);
            if a % 2 == 0 {
                Prediction::exact((a * k / 2) as u64, MultipleOfAPlusOne, format!("k = {k}"))
            } else {
                Prediction::exact(
                    ((a + 1) * k / 2) as u64,
                    MultipleOfAPlusOne,
                    format!("k = {k}, a odd"),
                )
            }
        }
        MultipleOfA => {
            let q = n / a;
            if a < 5 || n % a != 0 || q < 4 {
                return None;
            }
            match (a % 2 == 0, q % 2 == 0) {
                (false, true) => {
                    Prediction::exact((q * a / 2) as u64, MultipleOfA, "a odd, q even")
                }
                (false, false) => {
                    Prediction::exact(((q - 1) * a / 2) as u64, MultipleOfA, "a and q odd")
                }
                (true, true) => {
                    Prediction::exact(qa_square_term(q, a), MultipleOfA, "a and q even")
                }
                (true, false) => {
                    let x = qa_square_term(q, a);
                    let y = ((q - 1) * a / 2) as u64;
                    let tight = match x.cmp(&y) {
                        std::cmp::Ordering::Less => "floor term tight",
                        std::cmp::Ordering::Greater => "(q-1)a/2 tight",
                        std::cmp::Ordering::Equal => "both terms equal",
                    };
                    Prediction::exact(x.min(y), MultipleOfA, format!("a even, q odd; {tight}"))
                }
            }
        }
        QaPlusR => {
            if !qa_plus_r_applies(n, a) {
                return None;
            }
            let (q, r) = split_qr(n, a);
            Prediction::exact(an_term(n, a), QaPlusR, format!("q = {q}, r = {r}"))
        }
        _ => return None,
    };
    Some(p)
}

/// Closed-form `alpha(C(n;1,a))` where a known result gives it.
pub fn predict_alpha(n: usize, a: usize) -> Result<Prediction> {
    check_range(n, a)?;
    use TheoremId::*;
    let p = if n <= 5 {
        Prediction::exact(1, CompleteGraph, "complete graph")
    } else if a == 2 {
        Prediction::exact((n / 3) as u64, Circulant12, "floor(n/3)")
    } else if n == 2 * a {
        if a % 2 == 1 {
            Prediction::exact(a as u64, TwoA, "a odd")
        } else {
            Prediction::exact(a as u64 - 1, TwoA, "a even")
        }
    } else if n == 2 * a + 1 {
        Prediction::exact((n / 3) as u64, TwoAPlusOne, "floor(n/3) via C(n;1,2)")
    } else {
        let beta = predict_beta(n, a)?;
        // Every remaining class with a closed form has beta_b = alpha.
        match beta.theorem {
            ThreeA | Generator3 | Generator4 | EvenNOddA | MultipleOfAPlusOne | MultipleOfA
            | QaPlusR => beta,
            _ => Prediction::unknown(beta.note),
        }
    };
    Ok(p)
}

/// Whether every `C(n;1,a)` optimum can be taken 2-bounded by the general
/// reduction argument.
pub fn two_bounded_theorem_applies(n: usize, a: usize) -> bool {
    a >= 3 && 2 * a <= n && n != 2 * a + 1 && !(n == 2 * a && a % 2 == 0)
}

/// Upper bound on the cost of a 2-bounded independent broadcast with `v2`
/// vertices of value 2: the smaller of the run bound (`a >= 3`, `3a <= n`)
/// and the even-`a` bound, whichever apply.
pub fn two_bounded_upper(n: usize, a: usize, v2: usize) -> Result<u64> {
    check_range(n, a)?;
    let run = (a >= 3 && 3 * a <= n).then(|| (n.saturating_sub(v2) / 2) as u64);
    let even = (a % 2 == 0).then(|| {
        let num = (a * n) as i64 - (a as i64 - 4) * v2 as i64;
        num.div_euclid(2 * (a as i64 + 1)).max(0) as u64
    });
    match (run, even) {
        (Some(x), Some(y)) => Ok(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Ok(x),
        (None, None) => Err(Error::Parameter(format!(
            "no 2-bounded upper bound applies to n = {n}, a = {a}"
        ))),
    }
}

/// `n = k1 (a + 1) + k2 (a - 1)` with `k1` as large as possible.
pub fn decompose_segments(n: usize, a: usize) -> Result<Option<(usize, usize)>> {
    if a % 2 == 1 || a < 6 {
        return Err(Error::Parameter(format!(
            "segment layouts need a even and a >= 6, got {a}"
        )));
    }
    Ok((0..=n / (a + 1))
        .rev()
        .find(|k1| (n - k1 * (a + 1)) % (a - 1) == 0)
        .map(|k1| (k1, (n - k1 * (a + 1)) / (a - 1))))
}

/// Cost of the segment layout for `(k1, k2)`.
pub fn segment_cost(a: usize, k1: usize, k2: usize) -> u64 {
    (k1 * (a / 2) + k2 * (a / 2 - 1)) as u64
}

/// `2 (diam - 1)`, a lower bound on `beta_b` for every graph.
pub fn lower_bound_mu(n: usize, a: usize) -> Result<u64> {
    let oracle = DistanceOracle::new(CirculantGraph::two_generator(n, a)?);
    Ok(2 * u64::from(oracle.diameter()?.saturating_sub(1)))
}

/// `mu (diam - 1)`, the stronger form, when the antipodal number is
/// computable.
pub fn lower_bound_mu_exact(n: usize, a: usize) -> Result<u64> {
    let oracle = DistanceOracle::new(CirculantGraph::two_generator(n, a)?);
    let spread = u64::from(oracle.diameter()?.saturating_sub(1));
    Ok(oracle.antipodal_number()? as u64 * spread)
}

/// Known lower and upper bounds on `beta_b(C(n;1,a))`, useful where no
/// closed form applies.
pub fn beta_bounds(n: usize, a: usize) -> Result<Vec<Prediction>> {
    check_range(n, a)?;
    let mut out = vec![Prediction {
        value: Some(lower_bound_mu(n, a)?),
        kind: Kind::LowerBound,
        theorem: TheoremId::AntipodalLower,
        note: "2 (diam - 1)".into(),
    }];
    if a % 2 == 0 && a >= 6 {
        if let Some((k1, k2)) = decompose_segments(n, a)? {
            out.push(Prediction {
                value: Some(segment_cost(a, k1, k2)),
                kind: Kind::LowerBound,
                theorem: TheoremId::SegmentLower,
                note: format!("k1 = {k1}, k2 = {k2}"),
            });
        }
    }
    // Both upper bounds are largest at |V^2| = 0 once a >= 4, and cover
    // every optimum when some optimum is 2-bounded.
    if two_bounded_theorem_applies(n, a) {
        if a >= 3 && 3 * a <= n {
            out.push(Prediction {
                value: Some((n / 2) as u64),
                kind: Kind::UpperBound,
                theorem: TheoremId::RunUpper,
                note: String::new(),
            });
        }
        if a % 2 == 0 && a >= 4 {
            out.push(Prediction {
                value: Some(an_term(n, a)),
                kind: Kind::UpperBound,
                theorem: TheoremId::EvenAUpper,
                note: String::new(),
            });
        }
    }
    Ok(out)
}

/// One row of the coverage matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub n_class: &'static str,
    pub a_class: &'static str,
    pub theorem: TheoremId,
    pub kind: Kind,
}

/// The classes handled by [`predict_beta`], in preference order.
pub fn coverage_matrix() -> Vec<CoverageRow> {
    use TheoremId::*;
    let row = |n_class, a_class, theorem, kind| CoverageRow {
        n_class,
        a_class,
        theorem,
        kind,
    };
    vec![
        row("n in {4,5}", "a = 2", CompleteGraph, Kind::Exact),
        row("n >= 6", "a = 2", Circulant12, Kind::Exact),
        row("n = 2a", "a >= 3", TwoA, Kind::Exact),
        row("n = 2a+1", "a >= 3", TwoAPlusOne, Kind::Exact),
        row("n = 3a", "a >= 3", ThreeA, Kind::Exact),
        row("n >= 8", "a = 3", Generator3, Kind::Exact),
        row("n >= 10", "a = 4", Generator4, Kind::Exact),
        row("n even", "a odd >= 5", EvenNOddA, Kind::Exact),
        row(
            "n = (a+1)k; k >= 2",
            "a even >= 6",
            MultipleOfAPlusOne,
            Kind::Exact,
        ),
        row("n = qa; q >= 4", "a >= 5", MultipleOfA, Kind::Exact),
        row(
            "n = qa+r; q >= max(2,r); q+r even or q+r >= a-1",
            "a even >= 6",
            QaPlusR,
            Kind::Exact,
        ),
        row(
            "n odd; a does not divide n",
            "a odd >= 5",
            Open,
            Kind::Unknown,
        ),
        row(
            "n = qa+r; q < r or (q > r; q+r odd; q+r < a-1)",
            "a even >= 6",
            Open,
            Kind::Unknown,
        ),
    ]
}

pub fn coverage_csv() -> String {
    let mut out = String::from("n_class,a_class,theorem,kind\n");
    for r in coverage_matrix() {
        out.push_str(&format!(
            "\"{}\",\"{}\",{},{}\n",
            r.n_class, r.a_class, r.theorem, r.kind
        ));
    }
    out
}

/// The closed forms appearing in the case analysis behind the `qa + r`
/// value, evaluated at `(n, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QaPlusRCases {
    pub q: usize,
    pub r: usize,
    /// `floor(a n / (2 (a + 1)))`.
    pub statement: u64,
    /// Case label: `same_parity`, `different_parity_small` or
    /// `different_parity_large`, with `_divisible` when `a + 1 | q - r`.
    pub case: &'static str,
    /// The value the case derives, e.g. `(q - k) a / 2 - l`.
    pub case_value: u64,
    /// The formula written as the conclusion of the case, where it
    /// differs from `case_value` in form: `floor(q a^2 / (2 (a + 1)))`.
    pub concluding_value: Option<u64>,
}

/// Evaluates the case analysis for an in-hypothesis `(n, a)`.
pub fn qa_plus_r_cases(n: usize, a: usize) -> Option<QaPlusRCases> {
    if !qa_plus_r_applies(n, a) {
        return None;
    }
    let (q, r) = split_qr(n, a);
    let diff = q - r;
    let statement = an_term(n, a);
    let same = diff % 2 == 0;
    let (case, case_value, concluding_value) = if diff % (a + 1) == 0 {
        let k = q - diff / (a + 1);
        let case = if same {
            "same_parity_divisible"
        } else {
            "different_parity_divisible"
        };
        (case, (a * k / 2) as u64, None)
    } else if !same && diff < a + 1 {
        (
            "different_parity_small",
            ((a * q) as u64 / 2) - diff.div_ceil(2) as u64,
            None,
        )
    } else {
        let mut k = diff / (a + 1);
        if k % 2 != diff % 2 {
            k -= 1;
        }
        let l = (diff - k * (a + 1)) / 2;
        let case = if same {
            "same_parity"
        } else {
            "different_parity_large"
        };
        (
            case,
            ((q - k) * a / 2 - l) as u64,
            Some(qa_square_term(q, a)),
        )
    };
    Some(QaPlusRCases {
        q,
        r,
        statement,
        case,
        case_value,
        concluding_value,
    })
}
