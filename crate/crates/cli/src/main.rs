//! `nutorb`: construct, check and sweep nut graphs with exact certificates.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 hypothesis or realizability rejection, 4 resource cap,
//! 5 parameters outside the implemented constructions (even `r`).

mod report;
mod sweep;

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nut_orbits::automorphism::{
    automorphism_group_with_cap, census_from_group, DEFAULT_ENUMERATION_CAP,
};
use nut_orbits::constructions::{
    cayley_nut, construct_with_orbits, fig3_graph, is_prime, primes_from, prop1_graph, prop2_graph,
    prop3_graph, smallest_edge_orbit, subdivided_nut, ConstructionError, VerifiedNut,
};
use nut_orbits::io::{read_graph6, write_dot, write_graph6};
use nut_orbits::{is_nut, Graph};

use report::{to_json, CommandEcho, Report, Timing};
use sweep::{Suite, SweepArgs};

const DEFAULT_MAX_ORDER: usize = 2000;

#[derive(Parser)]
#[command(
    name = "nutorb",
    version,
    about = "Exact nut-graph certificates and orbit censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a graph6 graph: nut verdict, kernel and orbit census
    Check {
        /// graph6 string, or `-` for stdin
        graph6: Option<String>,
        /// Read the graph6 line from a file
        #[arg(long, conflicts_with = "graph6")]
        file: Option<PathBuf>,
        /// Also print a human-readable table to stderr
        #[arg(short, long)]
        verbose: bool,
    },
    /// Build and certify a nut graph from orbit counts or a named family
    Construct {
        /// Number of vertex orbits
        #[arg(long, requires = "k", conflicts_with = "variant")]
        r: Option<usize>,
        /// Number of edge orbits (family parameter k with --variant)
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        variant: Option<Variant>,
        /// Prime for prop1/prop2 (default: smallest admissible)
        #[arg(long)]
        p: Option<usize>,
        /// Odd circulant parameter for prop3
        #[arg(long)]
        n: Option<usize>,
        /// Subdivision depth: each chosen edge becomes a path with 4t new vertices
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Edge orbit to subdivide (default: smallest)
        #[arg(long)]
        orbit: Option<usize>,
        /// Write the graph6 encoding here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write an orbit-coloured DOT drawing here
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        verbose: bool,
    },
    /// Run a family of constructions or cross-checks and report one row each
    Sweep {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Single family parameter k
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        /// Largest circulant order (prop3, circulant-cross)
        #[arg(long)]
        nmax: Option<usize>,
        /// Primes per k (default 2 for prop1, 1 for prop2)
        #[arg(long)]
        pcount: Option<usize>,
        #[arg(long, default_value_t = 2)]
        tmax: usize,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Convert a graph6 graph to DOT with vertices and edges coloured by orbit
    Export {
        /// graph6 string, or `-` for stdin
        graph6: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Prop1,
    Prop2,
    Prop3,
    Fig3,
    Subdivided,
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match e {
            ConstructionError::Inconsistent { .. } => 1,
            ConstructionError::NotCoveredByThisPaper { .. } => 5,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

fn env_usize(name: &str, default: usize) -> Result<usize, Failure> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(2, format!("{name}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(default),
    }
}

fn max_order() -> Result<usize, Failure> {
    env_usize("NUTORB_MAX_ORDER", DEFAULT_MAX_ORDER)
}

fn check_order(order: usize, what: &str) -> Result<(), Failure> {
    let cap = max_order()?;
    if order > cap {
        return Err(Failure::new(
            4,
            format!("{what} has order {order}, above the cap of {cap} (NUTORB_MAX_ORDER)"),
        ));
    }
    Ok(())
}

/// Order and degree of the Cayley graph `cayley_nut(k)` would build.
pub(crate) fn cayley_shape(k: usize) -> (usize, usize) {
    let first = |from| primes_from(from).next().expect("primes are unbounded");
    match k {
        0 | 1 => (0, 0),
        3 => (40, 6),
        k if k % 2 == 0 => (2 * first(k + 2), 2 * k),
        k => (4 * first(2 * k + 1), 2 * k - 2),
    }
}

/// Upper bound on the order of a subdivision of `cayley_nut(k)`.
fn subdivided_bound(k: usize, t: usize) -> usize {
    let (order, degree) = cayley_shape(k);
    order + 4 * t * order * degree / 2
}

fn read_input(arg: Option<&str>, file: Option<&PathBuf>) -> Result<String, Failure> {
    let io_err = |e: io::Error| Failure::new(2, format!("cannot read input: {e}"));
    match (arg, file) {
        (_, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display()))),
        (Some("-") | None, None) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        }
        (Some(s), None) => Ok(s.to_string()),
    }
}

fn parse_graph(text: &str) -> Result<Graph, Failure> {
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let g = read_graph6(line).map_err(|e| Failure::new(2, e.to_string()))?;
    check_order(g.order(), "input graph")?;
    Ok(g)
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn emit(report: &Report, verbose: bool) {
    println!("{}", to_json(report));
    if verbose {
        eprint!("{}", report.table());
    }
}

fn cmd_check(graph6: Option<String>, file: Option<PathBuf>, verbose: bool) -> Result<(), Failure> {
    let text = read_input(graph6.as_deref(), file.as_ref())?;
    let g = parse_graph(&text)?;
    let start = Instant::now();
    let verdict = is_nut(&g);
    let verdict_ms = ms(start);
    let census_start = Instant::now();
    let cap = env_usize("NUTORB_ENUM_CAP", DEFAULT_ENUMERATION_CAP)?;
    let census = census_from_group(&g, &automorphism_group_with_cap(&g, cap));
    let timing = Timing {
        verdict_ms,
        census_ms: ms(census_start),
        total_ms: ms(start),
    };
    let report = Report::new(
        CommandEcho::new("check"),
        &g,
        &verdict,
        census,
        None,
        timing,
    );
    emit(&report, verbose);
    Ok(())
}

struct ConstructArgs {
    r: Option<usize>,
    k: Option<usize>,
    variant: Option<Variant>,
    p: Option<usize>,
    n: Option<usize>,
    t: usize,
    orbit: Option<usize>,
}

fn need(v: Option<usize>, flag: &str, variant: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::new(2, format!("--variant {variant} requires --{flag}")))
}

fn build(a: &ConstructArgs) -> Result<VerifiedNut, Failure> {
    let first_prime = |from| primes_from(from).next().expect("primes are unbounded");
    let reject = |msg: String| Failure::new(3, msg);
    match (a.r, a.variant) {
        (Some(r), _) => {
            let k = need(a.k, "k", "")?;
            if r >= 3 && k > r {
                check_order(subdivided_bound(k - r + 1, (r - 1) / 2), "requested graph")?;
            } else if r == 1 {
                check_order(cayley_shape(k).0, "requested graph")?;
            }
            Ok(construct_with_orbits(r, k)?)
        }
        (None, None) => Err(Failure::new(2, "give either --r and --k, or --variant")),
        (None, Some(Variant::Prop1)) => {
            let k = need(a.k, "k", "prop1")?;
            let p = a.p.unwrap_or_else(|| first_prime(k + 2));
            check_order(2 * p, "requested graph")?;
            Ok(prop1_graph(k, p)?)
        }
        (None, Some(Variant::Prop2)) => {
            let k = need(a.k, "k", "prop2")?;
            let p = a.p.unwrap_or_else(|| first_prime(2 * k + 1));
            check_order(4 * p, "requested graph")?;
            Ok(prop2_graph(k, p)?)
        }
        (None, Some(Variant::Prop3)) => {
            let n = need(a.n, "n", "prop3")?;
            check_order(8 * n, "requested graph")?;
            Ok(prop3_graph(n)?)
        }
        (None, Some(Variant::Fig3)) => Ok(fig3_graph()?),
        (None, Some(Variant::Subdivided)) => {
            let k = need(a.k, "k", "subdivided")?;
            if let Some(p) = a.p {
                if !is_prime(p) {
                    return Err(reject(format!("p = {p} is not prime")));
                }
            }
            check_order(subdivided_bound(k, a.t), "requested graph")?;
            let base = match a.p {
                Some(p) if k % 2 == 0 => prop1_graph(k, p)?,
                Some(p) => prop2_graph(k, p)?,
                None => cayley_nut(k)?,
            };
            let orbit = a.orbit.unwrap_or_else(|| smallest_edge_orbit(&base.census));
            if orbit >= base.census.o_e {
                return Err(reject(format!(
                    "orbit {orbit} out of range: the base graph has {} edge orbits",
                    base.census.o_e
                )));
            }
            Ok(subdivided_nut(&base, orbit, a.t)?)
        }
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))
}

fn cmd_construct(
    a: ConstructArgs,
    out: Option<PathBuf>,
    dot: Option<PathBuf>,
    verbose: bool,
) -> Result<(), Failure> {
    let start = Instant::now();
    let v = build(&a)?;
    let timing = Timing {
        verdict_ms: 0.0,
        census_ms: 0.0,
        total_ms: ms(start),
    };
    if let Some(path) = &out {
        write_file(path, &format!("{}\n", write_graph6(&v.graph)))?;
    }
    if let Some(path) = &dot {
        write_file(path, &write_dot(&v.graph, Some(&v.census)))?;
    }
    let report = Report::new(
        CommandEcho::new("construct"),
        &v.graph,
        &v.verdict,
        v.census,
        Some(v.provenance),
        timing,
    );
    emit(&report, verbose);
    Ok(())
}

fn cmd_sweep(args: SweepArgs, jobs: usize) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::new(2, "--jobs must be at least 1"));
    }
    let outcome = sweep::run(
        &args,
        jobs,
        max_order()?,
        CommandEcho::with_args("sweep", args.echo()),
    )
    .map_err(|e| Failure::new(4, e.0))?;
    println!("{}", to_json(&outcome.report));
    eprint!("{}", sweep::timing_table(&outcome));
    if outcome.report.all_verified {
        Ok(())
    } else {
        let failed = outcome.report.rows.iter().filter(|r| !r.verified).count();
        Err(Failure::new(
            1,
            format!("{failed} instance(s) failed verification"),
        ))
    }
}

fn cmd_export(graph6: String) -> Result<(), Failure> {
    let text = read_input(Some(&graph6), None)?;
    let g = parse_graph(&text)?;
    let census = census_from_group(
        &g,
        &automorphism_group_with_cap(&g, env_usize("NUTORB_ENUM_CAP", DEFAULT_ENUMERATION_CAP)?),
    );
    print!("{}", write_dot(&g, Some(&census)));
    Ok(())
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Check {
            graph6,
            file,
            verbose,
        } => cmd_check(graph6, file, verbose),
        Command::Construct {
            r,
            k,
            variant,
            p,
            n,
            t,
            orbit,
            out,
            dot,
            verbose,
        } => cmd_construct(
            ConstructArgs {
                r,
                k,
                variant,
                p,
                n,
                t,
                orbit,
            },
            out,
            dot,
            verbose,
        ),
        Command::Sweep {
            suite,
            k,
            kmax,
            nmax,
            pcount,
            tmax,
            jobs,
        } => cmd_sweep(
            SweepArgs {
                suite,
                k,
                kmax,
                nmax,
                pcount,
                tmax,
            },
            jobs,
        ),
        Command::Export { graph6 } => cmd_export(graph6),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("nutorb: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
