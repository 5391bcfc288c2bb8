use nut_orbits::constructions::ConstructionParams;
use nut_orbits::io::write_graph6;
use nut_orbits::linalg::{NutVerdict, VerdictSummary};
use nut_orbits::{Graph, OrbitCensus};
use serde::Serialize;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct CommandEcho {
    pub name: &'static str,
    pub args: Vec<String>,
}

impl CommandEcho {
    pub fn new(name: &'static str) -> Self {
        CommandEcho {
            name,
            args: std::env::args().skip(1).collect(),
        }
    }

    /// Echo with explicit arguments, for output that must not depend on
    /// flags such as `--jobs`.
    pub fn with_args(name: &'static str, args: Vec<String>) -> Self {
        CommandEcho { name, args }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphMeta {
    pub order: usize,
    pub size: usize,
    pub degree_sequence: Vec<usize>,
    pub graph6: String,
}

impl GraphMeta {
    pub fn of(g: &Graph) -> Self {
        let mut degree_sequence = g.degrees();
        degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
        GraphMeta {
            order: g.order(),
            size: g.size(),
            degree_sequence,
            graph6: write_graph6(g),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub verdict_ms: f64,
    pub census_ms: f64,
    pub total_ms: f64,
}

/// Output of `check` and `construct`.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: CommandEcho,
    pub graph: GraphMeta,
    pub verdict: VerdictSummary,
    pub census: OrbitCensus,
    pub provenance: Option<ConstructionParams>,
    pub timing: Timing,
}

impl Report {
    pub fn new(
        command: CommandEcho,
        graph: &Graph,
        verdict: &NutVerdict,
        census: OrbitCensus,
        provenance: Option<ConstructionParams>,
        timing: Timing,
    ) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            graph: GraphMeta::of(graph),
            verdict: verdict.summary(),
            census,
            provenance,
            timing,
        }
    }

    /// Plain-text summary for `--verbose`.
    pub fn table(&self) -> String {
        let c = &self.census;
        let mut rows = vec![
            ("order", self.graph.order.to_string()),
            ("size", self.graph.size.to_string()),
            ("nullity", self.verdict.nullity.to_string()),
            ("full kernel", self.verdict.is_full.to_string()),
            ("nut", self.verdict.is_nut.to_string()),
            (
                "orbits (v, e, a)",
                format!("({}, {}, {})", c.o_v, c.o_e, c.o_a),
            ),
            (
                "|Aut|",
                format!(
                    "{}{}",
                    c.aut_order,
                    if c.order_verified {
                        ""
                    } else {
                        " (not enumerated)"
                    }
                ),
            ),
        ];
        if let Some(p) = &self.provenance {
            rows.push(("provenance", p.to_string()));
        }
        if let [v] = self.verdict.kernel_basis.as_slice() {
            rows.push(("kernel vector", v.join(" ")));
        }
        rows.push(("time", format!("{:.1} ms", self.timing.total_ms)));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}
