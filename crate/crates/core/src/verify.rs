//! Batch cross-checks of closed forms, exact search and constructions.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::broadcast::Broadcast;
use crate::constructions::{self, FamilyParity};
use crate::error::{Error, Result};
use crate::formulas::{self, Kind, Prediction};
use crate::graph::{CirculantGraph, DistanceOracle};
use crate::solver::{broadcast_independence, max_independent_set, SolverConfig};

pub const CSV_HEADER: &str =
    "n,a,alpha,beta,beta_2bounded,predicted,kind,theorem,witness_cost,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confirmed,
    Mismatch,
    OpenCase,
    SkippedSize,
}

impl Status {
    pub const ALL: [Status; 4] = [
        Status::Confirmed,
        Status::Mismatch,
        Status::OpenCase,
        Status::SkippedSize,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::Mismatch => "mismatch",
            Status::OpenCase => "open_case",
            Status::SkippedSize => "skipped_size",
        }
    }
}

/// One `(n, a)` row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub n: usize,
    pub a: usize,
    pub alpha_exact: Option<u64>,
    pub beta_exact: Option<u64>,
    pub beta_bounded2: Option<u64>,
    pub prediction: Prediction,
    pub alpha_prediction: Prediction,
    pub witness_cost: Option<u64>,
    pub status: Status,
}

impl VerificationRecord {
    /// The exact `beta_b` to compare against: the unbounded optimum, or
    /// the 2-bounded optimum where some optimum is known to be 2-bounded.
    pub fn reference_beta(&self) -> Option<u64> {
        self.beta_exact.or_else(|| {
            self.beta_bounded2
                .filter(|_| formulas::two_bounded_theorem_applies(self.n, self.a))
        })
    }

    pub fn csv_row(&self) -> String {
        fn cell(v: Option<u64>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.a,
            cell(self.alpha_exact),
            cell(self.beta_exact),
            cell(self.beta_bounded2),
            cell(self.prediction.value),
            self.prediction.kind,
            self.prediction.theorem,
            cell(self.witness_cost),
            self.status.as_str()
        )
    }
}

/// Which exact columns a sweep computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Columns {
    pub alpha: bool,
    pub beta: bool,
    pub bounded2: bool,
}

impl Columns {
    pub const ALL: Columns = Columns {
        alpha: true,
        beta: true,
        bounded2: true,
    };
    pub const BOUNDED2_ONLY: Columns = Columns {
        alpha: false,
        beta: false,
        bounded2: true,
    };
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub n_min: usize,
    pub n_max: usize,
    /// Restrict to one second generator; all `2 <= a <= n/2` otherwise.
    pub a: Option<usize>,
    pub columns: Columns,
    pub config: SolverConfig,
}

impl SweepOptions {
    pub fn new(n_max: usize) -> Self {
        SweepOptions {
            n_min: 4,
            n_max,
            a: None,
            columns: Columns::ALL,
            config: SolverConfig::default(),
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (self.n_min.max(4)..=self.n_max)
            .flat_map(|n| {
                (2..=n / 2)
                    .filter(move |&a| self.a.map_or(true, |only| only == a))
                    .map(move |a| (n, a))
            })
            .collect()
    }
}

fn within(n: usize, limit: usize) -> bool {
    n <= limit
}

/// Computes one record. Exact columns beyond the configured limits are
/// left empty.
pub fn verify_pair(n: usize, a: usize, opts: &SweepOptions) -> Result<VerificationRecord> {
    let g = CirculantGraph::two_generator(n, a)?;
    let prediction = formulas::predict_beta(n, a)?;
    let alpha_prediction = formulas::predict_alpha(n, a)?;
    let cfg = &opts.config;
    let alpha_exact = if opts.columns.alpha && within(n, cfg.mis_limit) {
        Some(max_independent_set(&g, cfg)?.value)
    } else {
        None
    };
    let beta_exact = if opts.columns.beta && within(n, cfg.broadcast_limit(None)) {
        Some(broadcast_independence(&g, None, cfg)?.value)
    } else {
        None
    };
    let beta_bounded2 = if opts.columns.bounded2 && within(n, cfg.broadcast_limit(Some(2))) {
        Some(broadcast_independence(&g, Some(2), cfg)?.value)
    } else {
        None
    };
    let witness = constructions::construct_witness(n, a);
    let witness_cost = witness.as_ref().ok().map(Broadcast::cost);
    let mut record = VerificationRecord {
        n,
        a,
        alpha_exact,
        beta_exact,
        beta_bounded2,
        prediction,
        alpha_prediction,
        witness_cost,
        status: Status::SkippedSize,
    };
    record.status = classify(&record, witness.err());
    Ok(record)
}

fn classify(r: &VerificationRecord, witness_error: Option<Error>) -> Status {
    let p = &r.prediction;
    if p.kind != Kind::Exact {
        return Status::OpenCase;
    }
    if matches!(witness_error, Some(Error::ConstructionDefect { .. })) || r.witness_cost != p.value
    {
        return Status::Mismatch;
    }
    if let (Some(alpha), Some(predicted), true) = (
        r.alpha_exact,
        r.alpha_prediction.value,
        r.alpha_prediction.is_exact(),
    ) {
        if alpha != predicted {
            return Status::Mismatch;
        }
    }
    match r.reference_beta() {
        Some(beta) if Some(beta) == p.value => Status::Confirmed,
        Some(_) => Status::Mismatch,
        None => Status::SkippedSize,
    }
}

/// Records for every pair of [`SweepOptions::pairs`], in `(n, a)` order.
pub fn sweep(opts: &SweepOptions) -> Result<Vec<VerificationRecord>> {
    // Rows run in parallel; each row's own search stays sequential.
    let mut row_opts = opts.clone();
    row_opts.config = row_opts.config.with_workers(1);
    let pairs = opts.pairs();
    let run = || {
        pairs
            .par_iter()
            .map(|&(n, a)| verify_pair(n, a, &row_opts))
            .collect::<Result<Vec<_>>>()
    };
    if opts.config.workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.config.workers)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?
            .install(run)
    } else {
        pairs
            .iter()
            .map(|&(n, a)| verify_pair(n, a, &row_opts))
            .collect()
    }
}

/// Number of records per status, in [`Status::ALL`] order.
pub fn status_counts(records: &[VerificationRecord]) -> Vec<(Status, usize)> {
    Status::ALL
        .iter()
        .map(|&s| (s, records.iter().filter(|r| r.status == s).count()))
        .collect()
}

pub fn summary_line(records: &[VerificationRecord]) -> String {
    let parts: Vec<String> = status_counts(records)
        .into_iter()
        .map(|(s, c)| format!("{}={c}", s.as_str()))
        .collect();
    format!("rows={} {}", records.len(), parts.join(" "))
}

pub fn records_csv(records: &[VerificationRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Unbounded versus 2-bounded optimum for one `(n, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapRecord {
    pub n: usize,
    pub a: usize,
    pub beta: u64,
    pub beta_bounded2: u64,
    pub gap: u64,
    /// `a = 2`, `n = 2a + 1`, or `n = 2a` with `a` even.
    pub exempt: bool,
}

impl GapRecord {
    pub fn violates(&self) -> bool {
        !self.exempt && self.gap > 0
    }
}

pub fn is_two_bounded_exempt(n: usize, a: usize) -> bool {
    a == 2 || n == 2 * a + 1 || (n == 2 * a && a % 2 == 0)
}

/// Compares the unbounded and 2-bounded optima for all `4 <= n <= n_max`.
pub fn check_2bounded(n_max: usize, config: &SolverConfig) -> Result<Vec<GapRecord>> {
    let limit = config.broadcast_limit(None);
    if n_max > limit {
        return Err(Error::ExceedsExactLimit {
            what: "2-bounded check",
            n: n_max,
            limit,
        });
    }
    let cfg = (*config).with_workers(1);
    let pairs: Vec<(usize, usize)> = (4..=n_max)
        .flat_map(|n| (2..=n / 2).map(move |a| (n, a)))
        .collect();
    pairs
        .par_iter()
        .map(|&(n, a)| {
            let g = CirculantGraph::two_generator(n, a)?;
            let beta = broadcast_independence(&g, None, &cfg)?.value;
            let beta_bounded2 = broadcast_independence(&g, Some(2), &cfg)?.value;
            Ok(GapRecord {
                n,
                a,
                beta,
                beta_bounded2,
                gap: beta - beta_bounded2,
                exempt: is_two_bounded_exempt(n, a),
            })
        })
        .collect()
}

pub fn gaps_csv(records: &[GapRecord]) -> String {
    let mut out = String::from("n,a,beta,beta_2bounded,gap,exempt\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, r.a, r.beta, r.beta_bounded2, r.gap, r.exempt
        );
    }
    out
}

/// The `qa + r` value computed three ways, against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QaPlusRProbe {
    pub n: usize,
    pub a: usize,
    pub cases: formulas::QaPlusRCases,
    pub oracle: Option<u64>,
    pub discrepancies: Vec<String>,
}

/// The `n = 3a`, `a` even, pattern "(i mod a+1) odd and i <= 2a".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeAProbe {
    pub a: usize,
    pub cost: u64,
    pub independent: bool,
    pub oracle: Option<u64>,
}

/// The cycle families on `C(qa;1,a)`, `a` even, `q` odd, `q <= a - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamiliesProbe {
    pub n: usize,
    pub a: usize,
    pub parity: FamilyParity,
    pub size: usize,
    pub expected: u64,
    /// First adjacent pair, if any.
    pub conflict: Option<(usize, usize)>,
}

/// Which term of `min(floor(q a^2 / (2(a+1))), (q-1) a / 2)` is smaller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinTermProbe {
    pub n: usize,
    pub a: usize,
    pub square_term: u64,
    pub odd_term: u64,
    pub tight: &'static str,
    pub oracle: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrataReport {
    pub qa_plus_r: Vec<QaPlusRProbe>,
    pub three_a_even: Vec<ThreeAProbe>,
    pub families: Vec<FamiliesProbe>,
    pub min_terms: Vec<MinTermProbe>,
}

impl ErrataReport {
    /// Human-readable findings, one per line.
    pub fn findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.qa_plus_r {
            for d in &p.discrepancies {
                out.push(format!("qa+r C({};1,{}): {d}", p.n, p.a));
            }
        }
        for p in &self.three_a_even {
            if !p.independent || p.cost != p.a as u64 || p.oracle.is_some_and(|o| o != p.cost) {
                out.push(format!(
                    "3a pattern a={}: cost {} independent {} oracle {:?}",
                    p.a, p.cost, p.independent, p.oracle
                ));
            }
        }
        for p in &self.families {
            if let Some((u, v)) = p.conflict {
                out.push(format!(
                    "families {:?} C({};1,{}): v{u} and v{v} are adjacent",
                    p.parity, p.n, p.a
                ));
            } else if p.size as u64 != p.expected {
                out.push(format!(
                    "families {:?} C({};1,{}): size {} expected {}",
                    p.parity, p.n, p.a, p.size, p.expected
                ));
            }
        }
        out
    }
}

/// Runs every probe; the oracle is consulted up to `oracle_n_max`, the
/// structural checks up to `structural_n_max`.
pub fn errata_report(
    oracle_n_max: usize,
    structural_n_max: usize,
    config: &SolverConfig,
) -> Result<ErrataReport> {
    let cfg = (*config).with_workers(1);
    // Past the unbounded limit, the 2-bounded optimum stands in where it
    // is known to equal beta_b.
    let oracle = |n: usize, a: usize| -> Result<Option<u64>> {
        let bound = if n <= cfg.broadcast_limit(None) {
            None
        } else if formulas::two_bounded_theorem_applies(n, a) && n <= cfg.broadcast_limit(Some(2)) {
            Some(2)
        } else {
            return Ok(None);
        };
        if n > oracle_n_max {
            return Ok(None);
        }
        Ok(Some(
            broadcast_independence(&CirculantGraph::two_generator(n, a)?, bound, &cfg)?.value,
        ))
    };

    let mut qa_plus_r = Vec::new();
    for n in 4..=structural_n_max.max(oracle_n_max) {
        for a in (6..=n / 2).step_by(2) {
            let Some(cases) = formulas::qa_plus_r_cases(n, a) else {
                continue;
            };
            let oracle = oracle(n, a)?;
            let mut discrepancies = Vec::new();
            if cases.case_value != cases.statement {
                discrepancies.push(format!(
                    "case {} gives {}, statement {}",
                    cases.case, cases.case_value, cases.statement
                ));
            }
            if let Some(c) = cases.concluding_value.filter(|&c| c != cases.case_value) {
                discrepancies.push(format!(
                    "case {} concludes {c} but derives {}",
                    cases.case, cases.case_value
                ));
            }
            if let Some(o) = oracle.filter(|&o| o != cases.statement) {
                discrepancies.push(format!("oracle {o}, statement {}", cases.statement));
            }
            qa_plus_r.push(QaPlusRProbe {
                n,
                a,
                cases,
                oracle,
                discrepancies,
            });
        }
    }

    let mut three_a_even = Vec::new();
    for a in (4..=structural_n_max / 3).step_by(2) {
        let n = 3 * a;
        let o = Arc::new(DistanceOracle::new(CirculantGraph::two_generator(n, a)?));
        let set: Vec<usize> = (0..=2 * a).filter(|i| (i % (a + 1)) % 2 == 1).collect();
        let b = Broadcast::from_support(o, set.iter().map(|&i| (i, 1)))?;
        let independent = b.is_independent()?;
        three_a_even.push(ThreeAProbe {
            a,
            cost: b.cost(),
            independent,
            oracle: oracle(n, a)?,
        });
    }

    let mut families = Vec::new();
    for a in (6..=structural_n_max / 3).step_by(2) {
        for q in (3..a).step_by(2) {
            let n = q * a;
            if n > structural_n_max {
                break;
            }
            let o = DistanceOracle::new(CirculantGraph::two_generator(n, a)?);
            for parity in [FamilyParity::Corrected, FamilyParity::AsWritten] {
                let set = constructions::qa_families(n, a, parity)?;
                let conflict = set.iter().enumerate().find_map(|(x, &u)| {
                    set[x + 1..]
                        .iter()
                        .find(|&&v| o.dist(u, v) <= 1)
                        .map(|&v| (u, v))
                });
                families.push(FamiliesProbe {
                    n,
                    a,
                    parity,
                    size: set.len(),
                    expected: (a * (q - 1) / 2) as u64,
                    conflict,
                });
            }
        }
    }

    let mut min_terms = Vec::new();
    for n in 4..=structural_n_max {
        for a in (6..=n / 4).step_by(2) {
            let q = n / a;
            if n % a != 0 || q % 2 == 0 || n % (a + 1) == 0 {
                continue;
            }
            let square_term = (q * a * a / (2 * (a + 1))) as u64;
            let odd_term = ((q - 1) * a / 2) as u64;
            let tight = match square_term.cmp(&odd_term) {
                std::cmp::Ordering::Less => "square",
                std::cmp::Ordering::Greater => "odd",
                std::cmp::Ordering::Equal => "both",
            };
            min_terms.push(MinTermProbe {
                n,
                a,
                square_term,
                odd_term,
                tight,
                oracle: oracle(n, a)?,
            });
        }
    }

    Ok(ErrataReport {
        qa_plus_r,
        three_a_even,
        families,
        min_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_confirms() {
        let records = sweep(&SweepOptions::new(12)).unwrap();
        assert!(
            records.iter().all(|r| r.status != Status::Mismatch),
            "{}",
            records_csv(&records)
        );
        let r = records.iter().find(|r| (r.n, r.a) == (12, 6)).unwrap();
        assert_eq!(r.csv_row(), "12,6,5,6,6,6,exact,two_a,6,confirmed");
    }

    #[test]
    fn empty_cells_for_skipped_columns() {
        let mut opts = SweepOptions::new(23);
        opts.n_min = 23;
        opts.a = Some(7);
        opts.columns = Columns::BOUNDED2_ONLY;
        let records = sweep(&opts).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].status, Status::OpenCase);
        assert!(records[0].csv_row().starts_with("23,7,,,"));
    }

    #[test]
    fn gap_at_21_2() {
        let gaps = check_2bounded(21, &SolverConfig::default()).unwrap();
        let g = gaps.iter().find(|g| (g.n, g.a) == (21, 2)).unwrap();
        assert_eq!((g.beta, g.beta_bounded2, g.gap, g.exempt), (9, 8, 1, true));
        assert!(gaps.iter().all(|g| !g.violates()));
        assert_eq!(gaps.iter().find(|g| (g.n, g.a) == (9, 3)).unwrap().gap, 0);
    }

    #[test]
    fn errata_runs() {
        let report = errata_report(20, 60, &SolverConfig::default()).unwrap();
        let probe = report
            .qa_plus_r
            .iter()
            .find(|p| (p.n, p.a) == (19, 6))
            .unwrap();
        assert_eq!(probe.oracle, Some(8));
        assert!(report
            .families
            .iter()
            .any(|p| p.parity == FamilyParity::AsWritten && p.conflict.is_some()));
        assert!(report
            .families
            .iter()
            .all(|p| p.parity != FamilyParity::Corrected || p.conflict.is_none()));
    }
}
