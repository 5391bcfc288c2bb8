//! Immutable simple graphs and the constructors used by the nut-graph families:
//! circulants, complete graphs, cartesian products, abelian Cayley graphs and
//! edge subdivisions.
//!
//! Vertices are dense labels `0..n`. Construction coordinates (residues of a
//! cyclic group, product pairs) are kept as side annotations and never take part
//! in equality.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("invalid circulant offset {offset} for order {n}: offsets must lie in 1..={max}")]
    InvalidOffset { offset: usize, n: usize, max: usize },
    #[error("circulant connection set is empty")]
    EmptyConnection,
    #[error("cyclic factor orders must be positive")]
    ZeroFactorOrder,
    #[error("connection element {0:?} has the wrong number of coordinates")]
    ElementArity(Vec<usize>),
    #[error("connection set contains the identity element")]
    IdentityInConnection,
    #[error(
        "connection set is not closed under inversion: {element:?} present but {inverse:?} missing"
    )]
    NotInverseClosed {
        element: Vec<usize>,
        inverse: Vec<usize>,
    },
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
}

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored normalized as `(min, max)` and sorted, so iteration order is
/// canonical. Equality compares order and edge set only.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    annotations: Option<Vec<Vec<usize>>>,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            annotations: None,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// Attaches construction coordinates, one tuple per vertex.
    pub fn with_annotations(mut self, annotations: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(annotations.len(), self.n);
        self.annotations = Some(annotations);
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Returns `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn annotations(&self) -> Option<&[Vec<usize>]> {
        self.annotations.as_deref()
    }

    /// Dense 0/1 adjacency rows.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        let mut rows = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            rows[u][v] = 1;
            rows[v][u] = 1;
        }
        rows
    }

    /// Checks that `perm` (image of each vertex) maps edges onto edges.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.is_adjacent(perm[u], perm[v]))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Order and offsets of a circulant graph `Circ(n, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantSpec {
    n: usize,
    offsets: BTreeSet<usize>,
}

impl CirculantSpec {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, offsets: I) -> Result<Self, GraphError> {
        let offsets: BTreeSet<usize> = offsets.into_iter().collect();
        if offsets.is_empty() {
            return Err(GraphError::EmptyConnection);
        }
        let max = n / 2;
        if let Some(&offset) = offsets.iter().find(|&&s| s == 0 || s > max) {
            return Err(GraphError::InvalidOffset { offset, n, max });
        }
        Ok(CirculantSpec { n, offsets })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.iter().copied()
    }
}

pub fn circulant(spec: &CirculantSpec) -> Graph {
    let n = spec.n;
    let mut edges = Vec::with_capacity(n * spec.offsets.len());
    for v in 0..n {
        for s in spec.offsets() {
            edges.push((v, (v + s) % n));
        }
    }
    Graph::from_edges(n, edges)
        .expect("validated circulant spec")
        .with_annotations((0..n).map(|v| vec![v]).collect())
}

pub fn complete_graph(m: usize) -> Graph {
    let edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
    Graph::from_edges(m, edges).expect("complete graph edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    circulant(&CirculantSpec::new(n, [1]).expect("cycle needs n >= 2"))
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
}

/// Cartesian product `G □ H`; vertex `(g, h)` gets label `g * |V(H)| + h`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.order();
    let label = |a: usize, b: usize| a * nh + b;
    let mut edges = Vec::with_capacity(g.order() * h.size() + nh * g.size());
    for a in 0..g.order() {
        for &(b1, b2) in h.edges() {
            edges.push((label(a, b1), label(a, b2)));
        }
    }
    for &(a1, a2) in g.edges() {
        for b in 0..nh {
            edges.push((label(a1, b), label(a2, b)));
        }
    }
    let coords = |graph: &Graph, v: usize| -> Vec<usize> {
        graph
            .annotations()
            .map_or_else(|| vec![v], |ann| ann[v].clone())
    };
    let annotations = (0..g.order())
        .flat_map(|a| (0..nh).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut c = coords(g, a);
            c.extend(coords(h, b));
            c
        })
        .collect();
    Graph::from_edges(g.order() * nh, edges)
        .expect("product edges are valid")
        .with_annotations(annotations)
}

/// Cayley graph of `Z_{m_1} × … × Z_{m_d}` for an inverse-closed connection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCayleySpec {
    orders: Vec<usize>,
    connection: BTreeSet<Vec<usize>>,
}

impl AbelianCayleySpec {
    pub fn new<I>(orders: Vec<usize>, connection: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if orders.contains(&0) {
            return Err(GraphError::ZeroFactorOrder);
        }
        let mut set = BTreeSet::new();
        for element in connection {
            if element.len() != orders.len() {
                return Err(GraphError::ElementArity(element));
            }
            let reduced: Vec<usize> = element.iter().zip(&orders).map(|(x, m)| x % m).collect();
            if reduced.iter().all(|&x| x == 0) {
                return Err(GraphError::IdentityInConnection);
            }
            set.insert(reduced);
        }
        for element in &set {
            let inverse: Vec<usize> = element
                .iter()
                .zip(&orders)
                .map(|(x, m)| (m - x) % m)
                .collect();
            if !set.contains(&inverse) {
                return Err(GraphError::NotInverseClosed {
                    element: element.clone(),
                    inverse,
                });
            }
        }
        Ok(AbelianCayleySpec {
            orders,
            connection: set,
        })
    }

    pub fn group_order(&self) -> usize {
        self.orders.iter().product()
    }

    /// Row-major label of a group element.
    pub fn label(&self, element: &[usize]) -> usize {
        element
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (x, m)| acc * m + x % m)
    }

    pub fn element(&self, mut label: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        for (slot, m) in out.iter_mut().zip(&self.orders).rev() {
            *slot = label % m;
            label /= m;
        }
        out
    }
}

pub fn cayley_abelian(spec: &AbelianCayleySpec) -> Graph {
    let n = spec.group_order();
    let mut edges = Vec::new();
    for v in 0..n {
        let x = spec.element(v);
        for s in &spec.connection {
            let y: Vec<usize> = x
                .iter()
                .zip(s)
                .zip(&spec.orders)
                .map(|((a, b), m)| (a + b) % m)
                .collect();
            edges.push((v, spec.label(&y)));
        }
    }
    Graph::from_edges(n, edges)
        .expect("inverse-closed connection without identity gives a simple graph")
        .with_annotations((0..n).map(|v| spec.element(v)).collect())
}

/// Replaces every target edge `uv` by a path `u, w_1, …, w_s, v` of fresh vertices.
///
/// New vertices are labelled `n, n+1, …` following the sorted order of the
/// targets, each path running from the smaller endpoint. Annotations are dropped.
pub fn subdivide_edges(
    g: &Graph,
    targets: &[(usize, usize)],
    s: usize,
) -> Result<Graph, GraphError> {
    let mut chosen = BTreeSet::new();
    for &(u, v) in targets {
        if !g.is_adjacent(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        chosen.insert((u.min(v), u.max(v)));
    }
    if s == 0 {
        return Ok(g.clone());
    }
    let mut next = g.order();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !chosen.contains(e))
        .collect();
    for &(u, v) in &chosen {
        let mut prev = u;
        for _ in 0..s {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(next, edges)
}
