//! Parameter sweeps. Instances run on a rayon pool; rows are collected in
//! parameter order so the JSON output does not depend on `--jobs`.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use nut_orbits::constructions::{
    cayley_nut, primes_from, prop1_graph, prop2_graph, prop3_graph, subdivided_nut,
    ConstructionError, VerifiedNut,
};
use nut_orbits::cyclotomic::{circulant_is_nut_symbolic, gcd_criterion};
use nut_orbits::graph::{circulant, CirculantSpec};
use nut_orbits::is_nut;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{CommandEcho, SCHEMA_VERSION};

/// Largest order accepted by the circulant cross-check; the number of
/// connection sets doubles with every step of 2.
pub const CROSS_NMAX_CAP: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prop1,
    Prop2,
    Prop3,
    Subdiv,
    CirculantCross,
}

#[derive(Debug, Clone)]
pub struct SweepArgs {
    pub suite: Suite,
    pub k: Option<usize>,
    pub kmax: Option<usize>,
    pub nmax: Option<usize>,
    pub pcount: Option<usize>,
    pub tmax: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub params: String,
    pub order: Option<usize>,
    pub census: Option<(usize, usize, usize)>,
    pub aut_order: Option<String>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub command: CommandEcho,
    pub suite: String,
    pub rows: Vec<Row>,
    pub all_verified: bool,
}

impl SweepArgs {
    /// Canonical flag list for the report echo; `--jobs` is deliberately absent.
    pub fn echo(&self) -> Vec<String> {
        let suite = self.suite.to_possible_value().expect("no skipped variants");
        let mut args = vec!["--suite".to_string(), suite.get_name().to_string()];
        for (flag, v) in [
            ("--k", self.k),
            ("--kmax", self.kmax),
            ("--nmax", self.nmax),
            ("--pcount", self.pcount),
            ("--tmax", Some(self.tmax)),
        ] {
            if let Some(v) = v {
                args.extend([flag.to_string(), v.to_string()]);
            }
        }
        args
    }
}

/// A sweep request that exceeds a desk-scale cap.
#[derive(Debug)]
pub struct CapExceeded(pub String);

#[derive(Debug, Clone)]
enum Task {
    Build(Builder),
    Cross { n: usize },
}

#[derive(Debug, Clone, Copy)]
enum Builder {
    Prop1 { k: usize, p: usize },
    Prop2 { k: usize, p: usize },
    Prop3 { n: usize },
    Subdiv { k: usize, orbit: usize, t: usize },
}

impl Builder {
    fn label(&self) -> String {
        match *self {
            Builder::Prop1 { k, p } => format!("prop1 k={k} p={p}"),
            Builder::Prop2 { k, p } => format!("prop2 k={k} p={p}"),
            Builder::Prop3 { n } => format!("prop3 n={n}"),
            Builder::Subdiv { k, orbit, t } => format!("subdiv k={k} orbit={orbit} t={t}"),
        }
    }

    fn run(&self) -> Result<VerifiedNut, ConstructionError> {
        match *self {
            Builder::Prop1 { k, p } => prop1_graph(k, p),
            Builder::Prop2 { k, p } => prop2_graph(k, p),
            Builder::Prop3 { n } => prop3_graph(n),
            Builder::Subdiv { k, orbit, t } => subdivided_nut(&cayley_nut(k)?, orbit, t),
        }
    }
}

fn plan(args: &SweepArgs, max_order: usize) -> Result<Vec<Task>, CapExceeded> {
    let ks = |default_max: usize, start: usize| -> Vec<usize> {
        match args.k {
            Some(k) => vec![k],
            None => (start..=args.kmax.unwrap_or(default_max))
                .step_by(2)
                .collect(),
        }
    };
    let check_order = |label: String, order: usize| {
        if order > max_order {
            Err(CapExceeded(format!(
                "{label} has order {order}, above the cap of {max_order} (NUTORB_MAX_ORDER)"
            )))
        } else {
            Ok(())
        }
    };
    let mut tasks = Vec::new();
    match args.suite {
        Suite::Prop1 => {
            for k in ks(6, 2) {
                for p in primes_from(k + 2).take(args.pcount.unwrap_or(2)) {
                    let b = Builder::Prop1 { k, p };
                    check_order(b.label(), 2 * p)?;
                    tasks.push(Task::Build(b));
                }
            }
        }
        Suite::Prop2 => {
            for k in ks(7, 5) {
                for p in primes_from(2 * k + 1).take(args.pcount.unwrap_or(1)) {
                    let b = Builder::Prop2 { k, p };
                    check_order(b.label(), 4 * p)?;
                    tasks.push(Task::Build(b));
                }
            }
        }
        Suite::Prop3 => {
            for n in (5..=args.nmax.unwrap_or(9)).step_by(2) {
                let b = Builder::Prop3 { n };
                check_order(b.label(), 8 * n)?;
                tasks.push(Task::Build(b));
            }
        }
        Suite::Subdiv => {
            let kmax = args.k.unwrap_or(args.kmax.unwrap_or(4));
            let kmin = args.k.unwrap_or(2);
            for k in kmin..=kmax {
                let (base_order, degree) = crate::cayley_shape(k);
                for t in 1..=args.tmax {
                    let bound = base_order + 4 * t * base_order * degree / 2;
                    for orbit in 0..k {
                        let b = Builder::Subdiv { k, orbit, t };
                        check_order(b.label(), bound)?;
                        tasks.push(Task::Build(b));
                    }
                }
            }
        }
        Suite::CirculantCross => {
            let nmax = args.nmax.unwrap_or(24);
            if nmax > CROSS_NMAX_CAP {
                return Err(CapExceeded(format!(
                    "circulant-cross --nmax {nmax} exceeds the cap of {CROSS_NMAX_CAP}"
                )));
            }
            tasks.extend((2..=nmax).step_by(2).map(|n| Task::Cross { n }));
        }
    }
    Ok(tasks)
}

fn run_task(task: &Task) -> Row {
    match task {
        Task::Build(b) => match b.run() {
            Ok(v) => Row {
                params: b.label(),
                order: Some(v.graph.order()),
                census: Some(v.census.counts()),
                aut_order: Some(v.census.aut_order.to_string()),
                verified: true,
                detail: None,
            },
            Err(e) => Row {
                params: b.label(),
                order: None,
                census: None,
                aut_order: None,
                verified: false,
                detail: Some(e.to_string()),
            },
        },
        Task::Cross { n } => cross_row(*n),
    }
}

/// Every nonempty connection set of order `n`: symbolic test against the
/// nullspace, plus the gcd rule on the consecutive sets it covers.
fn cross_row(n: usize) -> Row {
    let half = n / 2;
    let mut nuts = 0;
    let mut disagreements = Vec::new();
    for mask in 1u64..(1 << half) {
        let offsets: Vec<usize> = (1..=half).filter(|s| mask >> (s - 1) & 1 == 1).collect();
        let spec = CirculantSpec::new(n, offsets.iter().copied()).expect("offsets within 1..=n/2");
        let symbolic = circulant_is_nut_symbolic(&spec);
        let exact = is_nut(&circulant(&spec)).is_nut;
        nuts += usize::from(exact);
        let consecutive = offsets.iter().copied().eq(1..=offsets.len());
        let k = offsets.len();
        let gcd_ok =
            !(consecutive && k.is_multiple_of(2) && n >= 2 * k + 2) || gcd_criterion(n, k) == exact;
        if symbolic != exact || !gcd_ok {
            disagreements.push(format!("{offsets:?}"));
        }
    }
    let sets = (1usize << half) - 1;
    Row {
        params: format!("circulant-cross n={n} sets={sets} nut={nuts}"),
        order: Some(n),
        census: None,
        aut_order: None,
        verified: disagreements.is_empty(),
        detail: (!disagreements.is_empty()).then(|| {
            format!(
                "symbolic and nullspace disagree on {}",
                disagreements.join(", ")
            )
        }),
    }
}

pub struct SweepOutcome {
    pub report: SweepReport,
    pub timings: Vec<Duration>,
}

pub fn run(
    args: &SweepArgs,
    jobs: usize,
    max_order: usize,
    command: CommandEcho,
) -> Result<SweepOutcome, CapExceeded> {
    let tasks = plan(args, max_order)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let results: Vec<(Row, Duration)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let row = run_task(t);
                (row, start.elapsed())
            })
            .collect()
    });
    let (rows, timings): (Vec<Row>, Vec<Duration>) = results.into_iter().unzip();
    let suite = args
        .suite
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    Ok(SweepOutcome {
        report: SweepReport {
            schema_version: SCHEMA_VERSION,
            command,
            suite,
            all_verified: rows.iter().all(|r| r.verified),
            rows,
        },
        timings,
    })
}

/// Human-readable table with per-row timings, written to stderr.
pub fn timing_table(outcome: &SweepOutcome) -> String {
    let rows = &outcome.report.rows;
    let width = rows.iter().map(|r| r.params.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (row, t) in rows.iter().zip(&outcome.timings) {
        let census = row
            .census
            .map(|(v, e, a)| format!("({v}, {e}, {a})"))
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:<width$}  {:>6}  {:<12}  {:<4}  {:>10.2?}\n",
            row.params,
            row.order.map_or("-".into(), |o| o.to_string()),
            census,
            if row.verified { "ok" } else { "FAIL" },
            t,
        ));
    }
    out
}
