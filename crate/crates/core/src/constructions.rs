//! Builders for Cayley nut graphs with a prescribed number of edge and arc
//! orbits, the orbit-splitting subdivision, and the `(vertex orbits, edge
//! orbits)` dispatch on top of them.
//!
//! Every builder certifies its output from scratch: the kernel is recomputed
//! exactly and the census comes from a fresh automorphism search. A mismatch
//! with the predicted counts is reported as [`ConstructionError::Inconsistent`],
//! which always indicates a bug rather than a legitimate outcome.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::automorphism::{orbit_census, OrbitCensus};
use crate::graph::{
    cartesian_product, cayley_abelian, circulant, complete_graph, subdivide_edges,
    AbelianCayleySpec, CirculantSpec, Graph,
};
use crate::linalg::{is_nut, NutVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no nut graph has {r} vertex orbits and {k} edge orbits: requires k >= r + 1")]
    NotRealizable { r: usize, k: usize },
    #[error("no Cayley nut graph has {k} edge orbits: requires k >= 2")]
    NotRealizableCayley { k: usize },
    #[error(
        "r = {r} is even; even vertex-orbit counts come from a separate construction \
         that is not implemented here"
    )]
    NotCoveredByThisPaper { r: usize },
    #[error("internal consistency failure for {params}: {detail}")]
    Inconsistent {
        params: ConstructionParams,
        detail: String,
    },
}

fn hypothesis(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Hypothesis(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Prop1,
    Prop2,
    Prop3,
    Fig3,
    Subdivided,
}

/// Parameters a [`VerifiedNut`] was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub variant: Variant,
    /// Edge-orbit count of the Cayley graph (the base, for subdivisions).
    pub k: usize,
    /// Prime `p` for Prop1/Prop2, odd `n` for Prop3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<ConstructionParams>>,
}

impl ConstructionParams {
    fn new(variant: Variant, k: usize) -> Self {
        ConstructionParams {
            variant,
            k,
            p: None,
            n: None,
            t: None,
            orbit_index: None,
            base: None,
        }
    }
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(k={}", self.variant, self.k)?;
        for (name, v) in [
            ("p", self.p),
            ("n", self.n),
            ("t", self.t),
            ("orbit", self.orbit_index),
        ] {
            if let Some(v) = v {
                write!(f, ", {name}={v}")?;
            }
        }
        if let Some(b) = &self.base {
            write!(f, ", base={b}")?;
        }
        write!(f, ")")
    }
}

/// A graph together with its exact nut certificate and orbit census.
#[derive(Debug, Clone)]
pub struct VerifiedNut {
    pub graph: Graph,
    pub verdict: NutVerdict,
    pub census: OrbitCensus,
    pub provenance: ConstructionParams,
}

/// Predicted `(o_v, o_e, o_a)` and optionally `|Aut|`.
struct Expected {
    counts: (usize, usize, usize),
    aut_order: Option<BigUint>,
}

fn certify(
    graph: Graph,
    provenance: ConstructionParams,
    expected: Expected,
) -> Result<VerifiedNut, ConstructionError> {
    let verdict = is_nut(&graph);
    let census = orbit_census(&graph);
    let mut problems = Vec::new();
    if !verdict.is_nut {
        problems.push(format!(
            "not a nut graph (nullity {}, full {})",
            verdict.nullity, verdict.is_full
        ));
    }
    if census.counts() != expected.counts {
        problems.push(format!(
            "census {:?} differs from predicted {:?}",
            census.counts(),
            expected.counts
        ));
    }
    if let Some(order) = &expected.aut_order {
        if &census.aut_order != order {
            problems.push(format!(
                "|Aut| = {} differs from predicted {order}",
                census.aut_order
            ));
        }
    }
    if census.o_e < census.o_v + 1 {
        problems.push(format!(
            "edge orbits {} < vertex orbits {} + 1",
            census.o_e, census.o_v
        ));
    }
    if !problems.is_empty() {
        return Err(ConstructionError::Inconsistent {
            params: provenance,
            detail: format!(
                "{} (order {}, size {})",
                problems.join("; "),
                graph.order(),
                graph.size()
            ),
        });
    }
    Ok(VerifiedNut {
        graph,
        verdict,
        census,
        provenance,
    })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Ascending primes `>= lower_bound`, by trial division.
pub fn primes_from(lower_bound: usize) -> impl Iterator<Item = usize> {
    (lower_bound.max(2)..).filter(|&n| is_prime(n))
}

fn smallest_prime_from(lower_bound: usize) -> usize {
    primes_from(lower_bound)
        .next()
        .expect("primes are unbounded")
}

/// `Circ(2p, {1, …, k})` for even `k >= 2` and prime `p >= k + 2`: census
/// `(1, k, k)` with dihedral automorphism group of order `4p`.
pub fn prop1_graph(k: usize, p: usize) -> Result<VerifiedNut, ConstructionError> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(hypothesis(format!("k = {k} must be even and at least 2")));
    }
    if !is_prime(p) || p < k + 2 {
        return Err(hypothesis(format!(
            "p = {p} must be a prime >= k + 2 = {}",
            k + 2
        )));
    }
    let spec = CirculantSpec::new(2 * p, 1..=k).expect("k <= p");
    let mut params = ConstructionParams::new(Variant::Prop1, k);
    params.p = Some(p);
    certify(
        circulant(&spec),
        params,
        Expected {
            counts: (1, k, k),
            aut_order: Some(BigUint::from(4 * p)),
        },
    )
}

/// The circulant factor `Circ(2p, {2, …, k-1, p})` of the odd-`k` family.
pub fn prop2_circulant(k: usize, p: usize) -> CirculantSpec {
    CirculantSpec::new(2 * p, (2..k).chain([p])).expect("offsets within 1..=p")
}

/// `Circ(2p, {2, …, k-1, p}) □ K2` for odd `k >= 5` and prime `p >= 2k + 1`:
/// census `(1, k, k)` and `|Aut| = 8p`.
pub fn prop2_graph(k: usize, p: usize) -> Result<VerifiedNut, ConstructionError> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(hypothesis(format!("k = {k} must be odd and at least 5")));
    }
    if !is_prime(p) || p < 2 * k + 1 {
        return Err(hypothesis(format!(
            "p = {p} must be a prime >= 2k + 1 = {}",
            2 * k + 1
        )));
    }
    let graph = cartesian_product(&circulant(&prop2_circulant(k, p)), &complete_graph(2));
    let mut params = ConstructionParams::new(Variant::Prop2, k);
    params.p = Some(p);
    certify(
        graph,
        params,
        Expected {
            counts: (1, k, k),
            aut_order: Some(BigUint::from(8 * p)),
        },
    )
}

/// `Circ(2n, {1, n}) □ K4` for odd `n >= 5`: census `(1, 3, 3)`. The group is the
/// direct product of `Dih(2n)` (order `4n`) and `Sym(4)`, so `|Aut| = 96n`.
pub fn prop3_graph(n: usize) -> Result<VerifiedNut, ConstructionError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(hypothesis(format!("n = {n} must be odd and at least 5")));
    }
    let spec = CirculantSpec::new(2 * n, [1, n]).expect("offsets within 1..=n");
    let graph = cartesian_product(&circulant(&spec), &complete_graph(4));
    let mut params = ConstructionParams::new(Variant::Prop3, 3);
    params.n = Some(n);
    certify(
        graph,
        params,
        Expected {
            counts: (1, 3, 3),
            aut_order: Some(BigUint::from(96 * n)),
        },
    )
}

/// Connection set of the order-12 Cayley graph on `Z6 × Z2`.
pub fn fig3_spec() -> AbelianCayleySpec {
    let connection = [1, 2, 4, 5]
        .into_iter()
        .map(|i| vec![i, 0])
        .chain([0, 1, 3, 5].into_iter().map(|i| vec![i, 1]));
    AbelianCayleySpec::new(vec![6, 2], connection).expect("connection set is inverse-closed")
}

/// The 8-regular Cayley nut graph of order 12 with census `(1, 5, 5)`.
pub fn fig3_graph() -> Result<VerifiedNut, ConstructionError> {
    certify(
        cayley_abelian(&fig3_spec()),
        ConstructionParams::new(Variant::Fig3, 5),
        Expected {
            counts: (1, 5, 5),
            aut_order: None,
        },
    )
}

/// Cayley nut graph with `k` edge orbits and `k` arc orbits, using the
/// smallest admissible prime.
pub fn cayley_nut(k: usize) -> Result<VerifiedNut, ConstructionError> {
    match k {
        0 | 1 => Err(ConstructionError::NotRealizableCayley { k }),
        3 => prop3_graph(5),
        k if k % 2 == 0 => prop1_graph(k, smallest_prime_from(k + 2)),
        k => prop2_graph(k, smallest_prime_from(2 * k + 1)),
    }
}

/// Subdivides every edge of edge orbit `orbit_index` of a vertex-transitive
/// nut graph with `o_e = o_a = k` exactly `4t` times. The result is a nut graph
/// with census `(2t + 1, 2t + k, 4t + k)`.
pub fn subdivided_nut(
    base: &VerifiedNut,
    orbit_index: usize,
    t: usize,
) -> Result<VerifiedNut, ConstructionError> {
    if t == 0 {
        return Err(hypothesis("t must be at least 1"));
    }
    let c = &base.census;
    if !base.verdict.is_nut || c.o_v != 1 || c.o_e != c.o_a {
        return Err(hypothesis(format!(
            "base must be a vertex-transitive nut graph with o_e = o_a, got census {:?}",
            c.counts()
        )));
    }
    let orbit = c.edge_orbits.get(orbit_index).ok_or_else(|| {
        hypothesis(format!(
            "orbit index {orbit_index} out of range (base has {} edge orbits)",
            c.o_e
        ))
    })?;
    let k = c.o_e;
    let graph = subdivide_edges(&base.graph, orbit, 4 * t).expect("orbit edges belong to the base");
    let mut params = ConstructionParams::new(Variant::Subdivided, k);
    params.t = Some(t);
    params.orbit_index = Some(orbit_index);
    params.base = Some(Box::new(base.provenance.clone()));
    certify(
        graph,
        params,
        Expected {
            counts: (2 * t + 1, 2 * t + k, 4 * t + k),
            aut_order: Some(c.aut_order.clone()),
        },
    )
}

/// Index of the smallest edge orbit (first on ties).
pub fn smallest_edge_orbit(census: &OrbitCensus) -> usize {
    (0..census.edge_orbits.len())
        .min_by_key(|&i| census.edge_orbits[i].len())
        .unwrap_or(0)
}

/// Nut graph with `r` vertex orbits and `k` edge orbits for odd `r`.
///
/// `r = 1` is [`cayley_nut`]; odd `r >= 3` subdivides the smallest edge orbit of
/// `cayley_nut(k - r + 1)` with `t = (r - 1) / 2`.
pub fn construct_with_orbits(r: usize, k: usize) -> Result<VerifiedNut, ConstructionError> {
    if r == 0 {
        return Err(hypothesis("r must be at least 1"));
    }
    if k <= r {
        return Err(ConstructionError::NotRealizable { r, k });
    }
    if r.is_multiple_of(2) {
        return Err(ConstructionError::NotCoveredByThisPaper { r });
    }
    if r == 1 {
        return cayley_nut(k);
    }
    let base = cayley_nut(k - r + 1)?;
    subdivided_nut(&base, smallest_edge_orbit(&base.census), (r - 1) / 2)
}

/// A nut graph with `r` vertex orbits and `k` edge orbits exists iff `k >= r + 1`.
pub fn nut_realizable(r: usize, k: usize) -> bool {
    r >= 1 && k > r
}

/// A Cayley nut graph with `k` edge (equivalently arc) orbits exists iff `k >= 2`.
pub fn cayley_nut_edge_orbits(k: usize) -> bool {
    k >= 2
}

/// Some graph has `r` vertex orbits and `k` edge orbits iff `r <= 2k + 1`.
pub fn buset_general(r: usize, k: usize) -> bool {
    r >= 1 && r <= 2 * k + 1
}

/// Some connected graph has `r` vertex orbits and `k` edge orbits iff `r <= k + 1`.
pub fn buset_connected(r: usize, k: usize) -> bool {
    r >= 1 && r <= k + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_from(4).take(3).collect::<Vec<_>>(), vec![5, 7, 11]);
        assert_eq!(primes_from(11).next(), Some(11));
        assert_eq!(primes_from(0).next(), Some(2));
        assert!(!is_prime(1) && is_prime(2) && !is_prime(91));
    }

    #[test]
    fn hypotheses_are_checked() {
        assert!(matches!(
            prop1_graph(2, 4),
            Err(ConstructionError::Hypothesis(_))
        ));
        assert!(matches!(
            prop1_graph(3, 7),
            Err(ConstructionError::Hypothesis(_))
        ));
        assert!(matches!(
            prop2_graph(5, 7),
            Err(ConstructionError::Hypothesis(_))
        ));
        assert!(matches!(
            prop3_graph(4),
            Err(ConstructionError::Hypothesis(_))
        ));
        assert_eq!(
            cayley_nut(1).unwrap_err(),
            ConstructionError::NotRealizableCayley { k: 1 }
        );
    }

    #[test]
    fn prop1_small() {
        let g = prop1_graph(2, 5).unwrap();
        assert_eq!((g.graph.order(), g.census.counts()), (10, (1, 2, 2)));
        let g = prop1_graph(4, 7).unwrap();
        assert_eq!((g.graph.order(), g.census.counts()), (14, (1, 4, 4)));
    }

    #[test]
    fn fig3() {
        let g = fig3_graph().unwrap();
        assert_eq!(g.graph.order(), 12);
        assert_eq!(g.graph.regular_degree(), Some(8));
        assert_eq!(g.census.counts(), (1, 5, 5));
        assert!(g.verdict.is_nut);
    }

    #[test]
    fn subdivision_hypotheses() {
        let base = prop1_graph(2, 5).unwrap();
        assert!(matches!(
            subdivided_nut(&base, 0, 0),
            Err(ConstructionError::Hypothesis(_))
        ));
        assert!(matches!(
            subdivided_nut(&base, 7, 1),
            Err(ConstructionError::Hypothesis(_))
        ));
        let once = subdivided_nut(&base, 0, 1).unwrap();
        assert_eq!(once.census.counts(), (3, 4, 6));
        // not vertex-transitive, so it cannot be a base again
        assert!(matches!(
            subdivided_nut(&once, 0, 1),
            Err(ConstructionError::Hypothesis(_))
        ));
    }

    #[test]
    fn dispatch_errors() {
        assert_eq!(
            construct_with_orbits(3, 3).unwrap_err(),
            ConstructionError::NotRealizable { r: 3, k: 3 }
        );
        assert_eq!(
            construct_with_orbits(2, 5).unwrap_err(),
            ConstructionError::NotCoveredByThisPaper { r: 2 }
        );
        assert!(matches!(
            construct_with_orbits(0, 5),
            Err(ConstructionError::Hypothesis(_))
        ));
    }

    #[test]
    fn predicates() {
        assert!(nut_realizable(3, 4));
        assert!(!nut_realizable(1, 1));
        assert!(buset_general(5, 2));
        assert!(!buset_connected(5, 2));
        assert!(cayley_nut_edge_orbits(2) && !cayley_nut_edge_orbits(1));
    }
}
