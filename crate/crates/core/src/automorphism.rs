//! Automorphism groups by partition refinement and backtracking, and the
//! vertex/edge/arc orbit census derived from them.
//!
//! The search follows the usual individualization–refinement scheme. The
//! leftmost path of the search tree fixes a base `b_0, b_1, …`; for each level
//! (deepest first) every vertex of the target cell is tried as an image of
//! `b_i`, and a matching leaf yields an automorphism fixing `b_0 … b_{i-1}`.
//! Vertices already in the orbit of `b_i` are skipped. The group order is the
//! product of the basic orbit lengths.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

/// Groups up to this order are enumerated element by element.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("group of order {order} was not enumerated (cap {cap})")]
    NotEnumerated { order: BigUint, cap: usize },
    #[error("enumeration found {found} elements but the search reported order {order}")]
    OrderMismatch { found: usize, order: BigUint },
    #[error("generator {0} is not a permutation of the right degree")]
    BadGenerator(usize),
}

/// A permutation of `0..n`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.0)
    }
}

/// Permutation group given by generators, with the full element list when the
/// order is within the enumeration cap.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: BigUint,
    elements: Option<Vec<Permutation>>,
}

impl PermutationGroup {
    /// Group generated by `generators`, enumerated by closure.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, AutError> {
        if let Some(i) = generators.iter().position(|g| g.degree() != degree) {
            return Err(AutError::BadGenerator(i));
        }
        match enumerate(degree, &generators, cap) {
            Some(elements) => Ok(PermutationGroup {
                degree,
                order: BigUint::from(elements.len()),
                generators,
                elements: Some(elements),
            }),
            None => Err(AutError::NotEnumerated {
                order: BigUint::from(cap) + 1u32,
                cap,
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    /// True when the element list was enumerated and matches the order.
    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    /// Orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        let mut out = vec![x];
        while let Some(y) = queue.pop_front() {
            for g in &self.generators {
                let z = g.apply(y);
                if !std::mem::replace(&mut seen[z], true) {
                    out.push(z);
                    queue.push_back(z);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn enumerate(degree: usize, generators: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut next = 0;
    while next < elements.len() {
        let e = elements[next].clone();
        next += 1;
        for g in generators {
            let h = g.compose(&e);
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return None;
                }
                elements.push(h);
            }
        }
    }
    elements.sort();
    Some(elements)
}

/// Subgroup fixing `x`. Requires an enumerated group.
pub fn stabilizer(group: &PermutationGroup, x: usize) -> Result<PermutationGroup, AutError> {
    let elements = group.elements().ok_or_else(|| AutError::NotEnumerated {
        order: group.order().clone(),
        cap: 0,
    })?;
    let fixing: Vec<Permutation> = elements
        .iter()
        .filter(|g| g.apply(x) == x)
        .cloned()
        .collect();
    let generators = fixing
        .iter()
        .filter(|g| !g.is_identity())
        .cloned()
        .collect();
    Ok(PermutationGroup {
        degree: group.degree,
        generators,
        order: BigUint::from(fixing.len()),
        elements: Some(fixing),
    })
}

// ---------------------------------------------------------------------------
// search

/// Ordered partition as a colour per vertex; colours are `0..cells`.
#[derive(Clone, Debug)]
struct Coloring {
    color: Vec<usize>,
    cells: usize,
}

impl Coloring {
    fn unit(n: usize) -> Self {
        Coloring {
            color: vec![0; n],
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.color.len()
    }

    /// First non-singleton cell of smallest size, as its members in label order.
    fn target_cell(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.cells];
        for &c in &self.color {
            sizes[c] += 1;
        }
        let target = (0..self.cells)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| sizes[c])
            .expect("non-discrete partition");
        (0..self.color.len())
            .filter(|&v| self.color[v] == target)
            .collect()
    }

    fn individualize(&self, v: usize) -> Self {
        let c = self.color[v];
        let color = self
            .color
            .iter()
            .enumerate()
            .map(|(u, &x)| {
                if x > c || (x == c && u != v) {
                    x + 1
                } else {
                    x
                }
            })
            .collect();
        Coloring {
            color,
            cells: self.cells + 1,
        }
    }

    /// Colour refinement to the coarsest equitable refinement. Each round splits
    /// cells by the multiset of neighbour colours; new colours follow the sorted
    /// order of `(old colour, neighbour colours)`, so the result commutes with
    /// relabelling.
    fn refine(mut self, g: &Graph) -> Self {
        let n = self.color.len();
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> =
                        g.neighbors(v).iter().map(|&u| self.color[u]).collect();
                    nb.sort_unstable();
                    (self.color[v], nb)
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
            let mut color = vec![0; n];
            let mut cells = 0;
            for (i, &v) in order.iter().enumerate() {
                if i > 0 && keys[v] != keys[order[i - 1]] {
                    cells += 1;
                }
                color[v] = cells;
            }
            let cells = if n == 0 { 0 } else { cells + 1 };
            let stable = cells == self.cells;
            self = Coloring { color, cells };
            if stable {
                return self;
            }
        }
    }

    /// Relabelling-invariant summary: per cell, its size and the sorted
    /// neighbour colours of one member.
    fn invariant(&self, g: &Graph) -> Vec<(usize, Vec<usize>)> {
        let mut out = vec![(0usize, Vec::new()); self.cells];
        let mut filled = vec![false; self.cells];
        for (v, &c) in self.color.iter().enumerate() {
            out[c].0 += 1;
            if !std::mem::replace(&mut filled[c], true) {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| self.color[u]).collect();
                nb.sort_unstable();
                out[c].1 = nb;
            }
        }
        out
    }

    /// For a discrete colouring, the vertex holding each colour.
    fn labelling(&self) -> Vec<usize> {
        let mut lab = vec![0; self.color.len()];
        for (v, &c) in self.color.iter().enumerate() {
            lab[c] = v;
        }
        lab
    }
}

struct Search<'a> {
    graph: &'a Graph,
    path: Vec<Coloring>,
    invariants: Vec<Vec<(usize, Vec<usize>)>>,
    first_leaf: Vec<usize>,
}

impl Search<'_> {
    fn leaf_map(&self, leaf: &Coloring) -> Option<Permutation> {
        let lab = leaf.labelling();
        let mut images = vec![0; lab.len()];
        for (&from, &to) in self.first_leaf.iter().zip(&lab) {
            images[from] = to;
        }
        self.graph
            .is_automorphism(&images)
            .then_some(Permutation(images))
    }

    /// Looks for a leaf below `node` (at `level`) equivalent to the first leaf.
    fn descend(&self, node: Coloring, level: usize) -> Option<Permutation> {
        if node.is_discrete() {
            return self.leaf_map(&node);
        }
        for v in node.target_cell() {
            let child = node.individualize(v).refine(self.graph);
            if child.invariant(self.graph) == self.invariants[level + 1] {
                if let Some(p) = self.descend(child, level + 1) {
                    return Some(p);
                }
            }
        }
        None
    }
}

/// Automorphism group with the default enumeration cap.
pub fn automorphism_group(g: &Graph) -> PermutationGroup {
    automorphism_group_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

/// `Aut(g)`. Generators are always exact; elements are listed when the order is
/// at most `cap`, and the listing is checked against the computed order.
pub fn automorphism_group_with_cap(g: &Graph, cap: usize) -> PermutationGroup {
    let n = g.order();
    let root = Coloring::unit(n).refine(g);
    let mut path = vec![root];
    let mut cells = Vec::new();
    let mut base = Vec::new();
    while !path.last().expect("root").is_discrete() {
        let node = path.last().expect("root");
        let cell = node.target_cell();
        let b = cell[0];
        let child = node.individualize(b).refine(g);
        base.push(b);
        cells.push(cell);
        path.push(child);
    }
    let invariants = path.iter().map(|p| p.invariant(g)).collect();
    let first_leaf = path.last().expect("root").labelling();
    let search = Search {
        graph: g,
        path,
        invariants,
        first_leaf,
    };

    let mut generators: Vec<Permutation> = Vec::new();
    let mut order = BigUint::one();
    for level in (0..base.len()).rev() {
        let b = base[level];
        let mut orbit = orbit_under(n, &generators, b);
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cells[level] {
            if orbit.contains(&w) {
                continue;
            }
            // w is equivalent to an earlier failure under the current generators
            let w_orbit = orbit_under(n, &generators, w);
            if failed.iter().any(|f| w_orbit.contains(f)) {
                continue;
            }
            let child = search.path[level].individualize(w).refine(g);
            let found = if child.invariant(g) == search.invariants[level + 1] {
                search.descend(child, level + 1)
            } else {
                None
            };
            match found {
                Some(p) => {
                    debug_assert_eq!(p.apply(b), w);
                    generators.push(p);
                    orbit = orbit_under(n, &generators, b);
                }
                None => failed.push(w),
            }
        }
        order *= BigUint::from(orbit.len());
    }

    let elements = if order <= BigUint::from(cap) {
        let elements = enumerate(n, &generators, cap).expect("order within cap");
        assert_eq!(
            BigUint::from(elements.len()),
            order,
            "closure of the generators disagrees with the basic orbit product"
        );
        Some(elements)
    } else {
        None
    };
    PermutationGroup {
        degree: n,
        generators,
        order,
        elements,
    }
}

fn orbit_under(n: usize, generators: &[Permutation], x: usize) -> HashSet<usize> {
    let mut seen = HashSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in generators {
            let z = g.apply(y);
            if seen.insert(z) {
                stack.push(z);
            }
        }
    }
    debug_assert!(seen.iter().all(|&v| v < n.max(1)));
    seen
}

// ---------------------------------------------------------------------------
// orbits

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Classes as index lists, ordered by smallest member.
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_unstable_by_key(|c| c[0]);
        out
    }
}

fn serialize_order<S: Serializer>(order: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&order.to_string())
}

/// Vertex, edge and arc orbits of a graph under its full automorphism group.
///
/// Edge orbits are ordered by their lexicographically smallest edge; this is
/// the order used when an orbit is selected by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub o_v: usize,
    pub o_e: usize,
    pub o_a: usize,
    #[serde(serialize_with = "serialize_order")]
    pub aut_order: BigUint,
    pub order_verified: bool,
    pub vertex_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<Vec<(usize, usize)>>,
    pub arc_orbits: Vec<Vec<(usize, usize)>>,
}

impl OrbitCensus {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.o_v, self.o_e, self.o_a)
    }
}

pub fn orbit_census(g: &Graph) -> OrbitCensus {
    census_from_group(g, &automorphism_group(g))
}

/// Orbits obtained by closing the generator action on vertices, edges and arcs.
pub fn census_from_group(g: &Graph, group: &PermutationGroup) -> OrbitCensus {
    let gens = group.generators();
    let mut vs = DisjointSets::new(g.order());
    let mut es = DisjointSets::new(g.size());
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    let arc_index = |(u, v): (usize, usize)| {
        let e = g.edge_index(u, v).expect("image of an arc is an arc");
        2 * e + usize::from(u > v)
    };
    let mut arc_sets = DisjointSets::new(arcs.len());
    for p in gens {
        for v in 0..g.order() {
            vs.union(v, p.apply(v));
        }
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            let j = g
                .edge_index(p.apply(u), p.apply(v))
                .expect("automorphisms map edges to edges");
            es.union(i, j);
        }
        for (i, &(u, v)) in arcs.iter().enumerate() {
            arc_sets.union(i, arc_index((p.apply(u), p.apply(v))));
        }
    }
    let vertex_orbits = vs.classes();
    let edge_orbits: Vec<Vec<(usize, usize)>> = es
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.edges()[i]).collect())
        .collect();
    let mut arc_orbits: Vec<Vec<(usize, usize)>> = arc_sets
        .classes()
        .into_iter()
        .map(|c| {
            let mut orbit: Vec<_> = c.into_iter().map(|i| arcs[i]).collect();
            orbit.sort_unstable();
            orbit
        })
        .collect();
    arc_orbits.sort_unstable_by_key(|o| o[0]);
    OrbitCensus {
        o_v: vertex_orbits.len(),
        o_e: edge_orbits.len(),
        o_a: arc_orbits.len(),
        aut_order: group.order().clone(),
        order_verified: group.is_enumerated(),
        vertex_orbits,
        edge_orbits,
        arc_orbits,
    }
}

pub fn is_vertex_transitive(g: &Graph) -> bool {
    g.order() == 0 || orbit_census(g).o_v == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, complete_graph, cycle, path, CirculantSpec};

    fn circ(n: usize, s: &[usize]) -> Graph {
        circulant(&CirculantSpec::new(n, s.iter().copied()).unwrap())
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let a = perm(&[1, 2, 0]);
        let b = perm(&[1, 0, 2]);
        assert_eq!(a.compose(&b), perm(&[2, 1, 0]));
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert!(Permutation::new(vec![0, 2]).is_none());
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            *automorphism_group(&circ(10, &[1, 2])).order(),
            BigUint::from(20u32)
        );
        assert_eq!(
            *automorphism_group(&complete_graph(4)).order(),
            BigUint::from(24u32)
        );
        assert_eq!(
            *automorphism_group(&Graph::empty(1)).order(),
            BigUint::one()
        );
        assert_eq!(
            *automorphism_group(&Graph::empty(0)).order(),
            BigUint::one()
        );
        assert_eq!(*automorphism_group(&path(3)).order(), BigUint::from(2u32));
    }

    #[test]
    fn large_groups_skip_enumeration() {
        let g = automorphism_group_with_cap(&Graph::empty(7), 100);
        assert_eq!(*g.order(), BigUint::from(5040u32));
        assert!(!g.is_enumerated());
        assert!(matches!(
            stabilizer(&g, 0),
            Err(AutError::NotEnumerated { .. })
        ));
    }

    #[test]
    fn stabilizers() {
        let rot: Vec<usize> = (0..10).map(|v| (v + 1) % 10).collect();
        let refl: Vec<usize> = (0..10).map(|v| (10 - v) % 10).collect();
        let dih =
            PermutationGroup::from_generators(10, vec![perm(&rot), perm(&refl)], 1000).unwrap();
        assert_eq!(*dih.order(), BigUint::from(20u32));
        let st = stabilizer(&dih, 0).unwrap();
        assert_eq!(
            (st.order().clone(), dih.orbit(0).len()),
            (BigUint::from(2u32), 10)
        );

        let trivial = PermutationGroup::from_generators(5, vec![], 10).unwrap();
        assert_eq!(*stabilizer(&trivial, 3).unwrap().order(), BigUint::one());
        assert_eq!(trivial.orbit(3), vec![3]);

        let sym4 = automorphism_group(&complete_graph(4));
        assert_eq!(*stabilizer(&sym4, 2).unwrap().order(), BigUint::from(6u32));
        assert_eq!(sym4.orbit(2).len(), 4);
    }

    #[test]
    fn census_examples() {
        assert_eq!(orbit_census(&circ(14, &[1, 2, 3, 4])).counts(), (1, 4, 4));
        let c = orbit_census(&cycle(6));
        assert_eq!((c.counts(), c.edge_orbits[0].len()), ((1, 1, 1), 6));
        // the path P3 has two vertex orbits and two arc orbits on one edge orbit
        assert_eq!(orbit_census(&path(3)).counts(), (2, 1, 2));
        assert_eq!(orbit_census(&Graph::empty(3)).counts(), (1, 0, 0));
    }

    #[test]
    fn transitivity() {
        assert!(is_vertex_transitive(&circ(9, &[2, 3])));
        assert!(!is_vertex_transitive(&path(3)));
    }
}
