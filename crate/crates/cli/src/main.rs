//! `bcast`: exact search, closed-form predictions and verification sweeps
//! for broadcast independence on circulant graphs.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bcast_core::constructions::{construct_with_recipe, reduce_to_2bounded_with_steps};
use bcast_core::formulas::{self, applicable_theorems};
use bcast_core::verify::{self, Columns, SweepOptions};
use bcast_core::{
    broadcast_independence, max_independent_set, predict_alpha, predict_beta, Broadcast,
    CirculantGraph, DistanceOracle, Error, SolverConfig, Status, Witness,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_SIZE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bcast",
    version,
    about = "Broadcast independence on circulant graphs"
)]
struct Cli {
    /// Worker threads for exact searches and sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact optimum on C(n; gens) by search.
    Exact {
        #[arg(long)]
        n: usize,
        /// Comma-separated generators, e.g. 1,2.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<usize>,
        /// Largest allowed broadcast value; 1 gives the independence number.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the witness JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form value for C(n;1,a), if one is known.
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Explicit optimal broadcast for C(n;1,a).
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare predictions, constructions and exact values over a range.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Only this second generator.
        #[arg(long)]
        a: Option<usize>,
        /// 2 computes only the 2-bounded column.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gap between unbounded and 2-bounded optima up to n-max.
    #[command(name = "check-2bounded")]
    Check2bounded {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a witness into a 2-bounded one of no smaller cost, or run
    /// the rewrite on random broadcasts.
    Reduce {
        /// Witness JSON file, or - for stdin.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        input: Option<String>,
        /// Number of random independent broadcasts to reduce.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Largest n for random instances.
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Which (n, a) classes have a closed form.
    Coverage {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Recompute the case analyses behind the closed forms and report
    /// disagreements.
    Errata {
        /// Largest n checked against the exact solver.
        #[arg(long, default_value_t = 22)]
        n_max: usize,
        /// Largest n for the purely structural checks.
        #[arg(long, default_value_t = 120)]
        structural_n_max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Size(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ExceedsExactLimit { .. } => Failure::Size(e.to_string()),
            Error::ConstructionDefect { .. } | Error::ReductionDefect { .. } => {
                Failure::Mismatch(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serialises");
    s.push('\n');
    s
}

fn reject(format: Format, allowed: &[Format], command: &str) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{command} does not support this --format"
        )))
    }
}

fn exact(
    n: usize,
    gens: &[usize],
    bound: Option<u32>,
    format: Format,
    out: Option<&Path>,
    cfg: &SolverConfig,
) -> Outcome {
    reject(format, &[Format::Text, Format::Json], "exact")?;
    if bound == Some(0) {
        return Err(Failure::Usage("--bound must be at least 1".into()));
    }
    let g = CirculantGraph::new(n, gens)?;
    let r = if bound == Some(1) {
        max_independent_set(&g, cfg)?
    } else {
        broadcast_independence(&g, bound, cfg)?
    };
    r.witness.check_independent()?;
    if let Some(path) = out {
        fs::write(path, r.witness.to_witness_json())?;
    }
    let text = match format {
        Format::Json => pretty(&json!({
            "graph": g.to_string(),
            "bound": bound,
            "value": r.value,
            "nodes_explored": r.nodes_explored,
            "witness": r.witness.to_witness(),
        })),
        _ => format!(
            "graph: {g}\nbound: {}\nvalue: {}\nnodes_explored: {}\nwitness: {}",
            bound.map_or("none".to_string(), |b| b.to_string()),
            r.value,
            r.nodes_explored,
            r.witness.to_witness_json()
        ),
    };
    emit(None, &text)?;
    Ok(())
}

fn predict(n: usize, a: usize, format: Format) -> Outcome {
    let beta = predict_beta(n, a)?;
    let alpha = predict_alpha(n, a)?;
    let value = |v: Option<u64>| v.map_or("unknown".to_string(), |v| v.to_string());
    let text = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "a": a,
            "beta": beta,
            "alpha": alpha,
            "also_applies": applicable_theorems(n, a)?.iter().skip(1).map(|p| p.theorem).collect::<Vec<_>>(),
            "bounds": formulas::beta_bounds(n, a)?,
        })),
        Format::Csv => format!(
            "n,a,beta,kind,theorem,alpha\n{n},{a},{},{},{},{}\n",
            beta.value.map_or(String::new(), |v| v.to_string()),
            beta.kind,
            beta.theorem,
            alpha.value.map_or(String::new(), |v| v.to_string()),
        ),
        Format::Text => {
            let mut s = format!(
                "C({n};1,{a}) beta_b: {} ({}, {})\n",
                value(beta.value),
                beta.kind,
                beta.theorem
            );
            if !beta.note.is_empty() {
                s.push_str(&format!("  {}\n", beta.note));
            }
            s.push_str(&format!(
                "C({n};1,{a}) alpha: {} ({}, {})\n",
                value(alpha.value),
                alpha.kind,
                alpha.theorem
            ));
            for b in formulas::beta_bounds(n, a)? {
                s.push_str(&format!(
                    "beta_b {}: {} ({})\n",
                    b.kind,
                    value(b.value),
                    b.theorem
                ));
            }
            s
        }
    };
    emit(None, &text)?;
    Ok(())
}

fn construct(n: usize, a: usize, out: Option<&Path>) -> Outcome {
    let (recipe, b) = construct_with_recipe(n, a)?;
    let params: Vec<String> = recipe
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    eprintln!(
        "{} [{}] {}",
        recipe.theorem,
        params.join(" "),
        recipe.pattern
    );
    emit(out, &b.to_witness_json())?;
    Ok(())
}

fn sweep(opts: SweepOptions, format: Format, out: Option<&Path>) -> Outcome {
    reject(format, &[Format::Csv, Format::Json], "verify")?;
    let records = verify::sweep(&opts)?;
    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&records).expect("records serialise")),
        _ => verify::records_csv(&records),
    };
    emit(out, &text)?;
    let summary = verify::summary_line(&records);
    eprintln!("{summary}");
    let bad: Vec<String> = records
        .iter()
        .filter(|r| r.status == Status::Mismatch)
        .map(|r| format!("C({};1,{})", r.n, r.a))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("mismatch at {}", bad.join(", "))))
    }
}

fn check_2bounded(n_max: usize, format: Format, out: Option<&Path>, cfg: &SolverConfig) -> Outcome {
    reject(format, &[Format::Csv, Format::Json], "check-2bounded")?;
    let records = verify::check_2bounded(n_max, cfg)?;
    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&records).expect("records serialise")),
        _ => verify::gaps_csv(&records),
    };
    emit(out, &text)?;
    let gaps = records.iter().filter(|r| r.gap > 0).count();
    let bad: Vec<String> = records
        .iter()
        .filter(|r| r.violates())
        .map(|r| format!("C({};1,{}) gap {}", r.n, r.a, r.gap))
        .collect();
    eprintln!(
        "pairs={} gaps={gaps} exempt={} violations={}",
        records.len(),
        records.iter().filter(|r| r.exempt).count(),
        bad.len()
    );
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(bad.join(", ")))
    }
}

fn read_input(input: &str) -> io::Result<String> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(input)
    }
}

fn reduce_file(input: &str, out: Option<&Path>) -> Outcome {
    let b = Witness::from_json(&read_input(input)?)?.into_broadcast()?;
    let r = reduce_to_2bounded_with_steps(&b)?;
    for s in &r.steps {
        eprintln!(
            "v{} value {} -> {:?} by {:?}",
            s.source, s.value, s.vertices, s.rule
        );
    }
    eprintln!("cost {} -> {}", b.cost(), r.broadcast.cost());
    emit(out, &r.broadcast.to_witness_json())?;
    Ok(())
}

fn random_independent(o: &Arc<DistanceOracle>, rng: &mut ChaCha8Rng) -> Result<Broadcast, Error> {
    let n = o.n();
    let diam = o.diameter()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut values = vec![0u32; n];
    for &i in &order {
        let v = rng.gen_range(1..=diam);
        if (0..n).all(|u| values[u] == 0 || o.dist(u, i) > values[u].max(v)) {
            values[i] = v;
        }
    }
    Broadcast::new(Arc::clone(o), values)
}

fn reduce_random(count: usize, seed: u64, n_max: usize, out: Option<&Path>) -> Outcome {
    if n_max < 8 {
        return Err(Failure::Usage(
            "--n-max must be at least 8 for random reductions".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = String::from("n,a,cost_in,cost_out,replaced,ok\n");
    let mut failures = Vec::new();
    for _ in 0..count {
        let a = rng.gen_range(3..=(n_max - 2) / 2);
        let n = rng.gen_range(2 * a + 2..=n_max);
        let o = Arc::new(DistanceOracle::new(CirculantGraph::two_generator(n, a)?));
        let b = random_independent(&o, &mut rng)?;
        let (cost, replaced, ok) = match reduce_to_2bounded_with_steps(&b) {
            Ok(r) => {
                let g = &r.broadcast;
                let ok =
                    g.check_independent().is_ok() && g.is_ell_bounded(2) && g.cost() >= b.cost();
                (g.cost(), r.steps.len(), ok)
            }
            Err(_) => (0, 0, false),
        };
        if !ok {
            failures.push(b.to_witness_json().trim_end().to_string());
        }
        lines.push_str(&format!("{n},{a},{},{cost},{replaced},{ok}\n", b.cost()));
    }
    emit(out, &lines)?;
    eprintln!("reduced={count} seed={seed} failures={}", failures.len());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "reduction failed on {}",
            failures.join(" ")
        )))
    }
}

fn coverage(format: Format) -> Outcome {
    reject(format, &[Format::Csv, Format::Json], "coverage")?;
    let text = match format {
        Format::Json => {
            pretty(&serde_json::to_value(formulas::coverage_matrix()).expect("rows serialise"))
        }
        _ => formulas::coverage_csv(),
    };
    emit(None, &text)?;
    Ok(())
}

fn errata(
    n_max: usize,
    structural_n_max: usize,
    format: Format,
    out: Option<&Path>,
    cfg: &SolverConfig,
) -> Outcome {
    reject(format, &[Format::Text, Format::Json], "errata")?;
    let report = verify::errata_report(n_max, structural_n_max, cfg)?;
    let findings = report.findings();
    let text = match format {
        Format::Json => pretty(&json!({ "findings": findings, "report": report })),
        _ => {
            let mut s = format!(
                "{} qa+r instances, {} 3a patterns, {} family checks, {} min-term rows\n",
                report.qa_plus_r.len(),
                report.three_a_even.len(),
                report.families.len(),
                report.min_terms.len()
            );
            for f in &findings {
                s.push_str(f);
                s.push('\n');
            }
            s
        }
    };
    emit(out, &text)?;
    eprintln!("findings={}", findings.len());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = SolverConfig::from_env()?.with_workers(workers);
    match cli.command {
        Command::Exact {
            n,
            gens,
            bound,
            format,
            out,
        } => exact(n, &gens, bound, format, out.as_deref(), &cfg),
        Command::Predict { n, a, format } => predict(n, a, format),
        Command::Construct { n, a, out } => construct(n, a, out.as_deref()),
        Command::Verify {
            n_min,
            n_max,
            a,
            bound,
            format,
            out,
        } => {
            let columns = match bound {
                None => Columns::ALL,
                Some(2) => Columns::BOUNDED2_ONLY,
                Some(_) => return Err(Failure::Usage("verify supports only --bound 2".into())),
            };
            let opts = SweepOptions {
                n_min,
                n_max,
                a,
                columns,
                config: cfg,
            };
            sweep(opts, format, out.as_deref())
        }
        Command::Check2bounded { n_max, format, out } => {
            check_2bounded(n_max, format, out.as_deref(), &cfg)
        }
        Command::Reduce {
            input,
            random,
            seed,
            n_max,
            out,
        } => match (input, random) {
            (_, Some(count)) => reduce_random(count, seed, n_max, out.as_deref()),
            (Some(input), None) => reduce_file(&input, out.as_deref()),
            (None, None) => Err(Failure::Usage("reduce needs an input or --random".into())),
        },
        Command::Coverage { format } => coverage(format),
        Command::Errata {
            n_max,
            structural_n_max,
            format,
            out,
        } => errata(n_max, structural_n_max, format, out.as_deref(), &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Size(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(EXIT_SIZE)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
