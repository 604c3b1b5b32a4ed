//! Immutable simple undirected graphs and the classical invariants used by
//! the rest of the crate.
//!
//! Vertices are addressed by dense indices `0..n`; every vertex also carries
//! a string label so reports stay readable. Edges are kept twice: as sorted
//! neighbour lists for iteration and as bitset rows for constant-time
//! adjacency queries.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("operation requires at least one edge")]
    Edgeless,
    #[error("vertex map is not injective (image {0} used twice)")]
    NonInjectiveMap(usize),
    #[error("vertex map has {got} entries, expected {expected}")]
    MapLength { got: usize, expected: usize },
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("labels", &self.labels)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from vertex tokens and token pairs. Duplicate edges
    /// collapse; the vertex order is the label order.
    pub fn new<L, E, A, B>(labels: L, edges: E) -> Result<Self, GraphError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if u == v {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            pairs.push((u, v));
        }
        drop(index);
        Ok(Self::from_checked(labels, pairs))
    }

    /// Builds a graph from labels and index pairs.
    pub fn from_index_edges<I>(labels: Vec<String>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(GraphError::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            pairs.push((u, v));
        }
        Ok(Self::from_checked(labels, pairs))
    }

    /// Graph on `0..n` labelled by the decimal index.
    pub fn with_order<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_index_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Internal constructor: indices are in range and distinct. Labels are
    /// not required to be unique.
    pub(crate) fn from_checked(labels: Vec<String>, pairs: Vec<(usize, usize)>) -> Self {
        let n = labels.len();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in pairs {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Self::from_rows(labels, rows)
    }

    /// Internal constructor from symmetric, irreflexive adjacency rows.
    pub(crate) fn from_rows(labels: Vec<String>, rows: Vec<FixedBitSet>) -> Self {
        debug_assert_eq!(labels.len(), rows.len());
        let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        debug_assert!(degree_sum.is_multiple_of(2));
        Self {
            labels,
            adj,
            rows,
            m: degree_sum / 2,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Joins vertex labels into one token: concatenated when every label of
    /// the graph is a single character, hyphen-separated otherwise.
    pub fn join_labels(&self, vertices: &[usize]) -> String {
        let sep = if self.labels.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            "-"
        };
        vertices
            .iter()
            .map(|&v| self.labels[v].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by least vertex index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`, in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    pairs.push((i, j));
                }
            }
        }
        Graph::from_checked(labels, pairs)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if best == Some(3) {
                break;
            }
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().any(|(u, v)| {
            let mut common = self.rows[u].clone();
            common.intersect_with(&self.rows[v]);
            !common.is_clear()
        })
    }

    /// Number of triangles through each vertex.
    pub fn triangles_per_vertex(&self) -> Vec<usize> {
        let mut count = vec![0; self.n()];
        for (u, v) in self.edges() {
            for w in self.rows[u].intersection(&self.rows[v]) {
                if w > v {
                    count[u] += 1;
                    count[v] += 1;
                    count[w] += 1;
                }
            }
        }
        count
    }

    /// Tree test for graphs with at least one vertex.
    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m + 1 == self.n() && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// Acyclic test (every component a tree).
    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    pub fn regularity_class(&self) -> Result<Regularity, GraphError> {
        if self.m == 0 {
            return Err(GraphError::Edgeless);
        }
        let degrees = self.degrees();
        let distinct: BTreeSet<usize> = degrees.iter().copied().collect();
        match distinct.len() {
            1 => Ok(Regularity::Regular(degrees[0])),
            2 => {
                let mixed = self.edges().all(|(u, v)| degrees[u] != degrees[v]);
                if mixed {
                    let low = *distinct.first().unwrap();
                    let high = *distinct.last().unwrap();
                    Ok(Regularity::BiregularConstantSum(high, low))
                } else {
                    Ok(Regularity::Other)
                }
            }
            _ => Ok(Regularity::Other),
        }
    }

    /// True when every vertex has degree `k`. Edgeless graphs are 0-regular.
    pub fn is_regular(&self) -> bool {
        let mut ds = self.adj.iter().map(Vec::len);
        match ds.next() {
            None => true,
            Some(first) => ds.all(|d| d == first),
        }
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degree = self.degrees();
        let pendant: Vec<bool> = degree.iter().map(|&d| d == 1).collect();
        let internal: Vec<bool> = degree.iter().map(|&d| d > 1).collect();
        let pendant_neighbors: Vec<usize> = self
            .adj
            .iter()
            .map(|ns| ns.iter().filter(|&&w| pendant[w]).count())
            .collect();
        let internal_degree = degree
            .iter()
            .zip(&pendant_neighbors)
            .map(|(d, p)| d - p)
            .collect();
        let pendant_edge_count = self
            .edges()
            .filter(|&(u, v)| pendant[u] || pendant[v])
            .count();
        DegreeProfile {
            degree,
            pendant,
            internal,
            pendant_edge_count,
            pendant_neighbors,
            internal_degree,
        }
    }

    pub fn triangle_profile(&self) -> TriangleProfile {
        let n = self.n();
        let deg = self.degrees();
        let mut k = vec![0; n];
        let mut p = vec![0; n];
        for (u, v) in self.edges() {
            for w in self.rows[u].intersection(&self.rows[v]) {
                if w <= v {
                    continue;
                }
                for (x, a, b) in [(u, v, w), (v, u, w), (w, u, v)] {
                    match (deg[a] == 2) as u8 + (deg[b] == 2) as u8 {
                        2 => k[x] += 1,
                        1 => p[x] += 1,
                        _ => {}
                    }
                }
            }
        }
        TriangleProfile { k, p }
    }

    /// Line graph: vertex `i` is the `i`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let labels = edges.iter().map(|&(u, v)| self.join_labels(&[u, v])).collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut rows = vec![FixedBitSet::with_capacity(edges.len()); edges.len()];
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                for &j in &list[a + 1..] {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Graph::from_rows(labels, rows)
    }

    /// Checks that `map` (indexed by vertices of `h`) embeds `h` into `self`
    /// as an induced subgraph.
    pub fn is_induced_embedding(&self, h: &Graph, map: &[usize]) -> Result<bool, GraphError> {
        if map.len() != h.n() {
            return Err(GraphError::MapLength {
                got: map.len(),
                expected: h.n(),
            });
        }
        let mut used = FixedBitSet::with_capacity(self.n());
        for &x in map {
            if x >= self.n() {
                return Err(GraphError::IndexOutOfRange { index: x, n: self.n() });
            }
            if used.put(x) {
                return Err(GraphError::NonInjectiveMap(x));
            }
        }
        for a in 0..h.n() {
            for b in a + 1..h.n() {
                if h.has_edge(a, b) != self.has_edge(map[a], map[b]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Disjoint union; labels of `other` are suffixed on collision.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut labels = self.labels.clone();
        let taken: BTreeSet<&str> = self.labels.iter().map(String::as_str).collect();
        for l in &other.labels {
            let mut l2 = l.clone();
            while taken.contains(l2.as_str()) || labels[self.n()..].contains(&l2) {
                l2.push('\'');
            }
            labels.push(l2);
        }
        let off = self.n();
        let pairs = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)))
            .collect();
        Graph::from_checked(labels, pairs)
    }

    /// Join: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let union = self.disjoint_union(other);
        let off = self.n();
        let mut pairs: Vec<(usize, usize)> = union.edges().collect();
        for u in 0..self.n() {
            for v in 0..other.n() {
                pairs.push((u, v + off));
            }
        }
        Graph::from_checked(union.labels, pairs)
    }

    /// `Some(k)` when the graph is the star `K_{1,k}`, `k >= 1`.
    pub fn star_leaves(&self) -> Option<usize> {
        let n = self.n();
        if n < 2 || !self.is_tree() {
            return None;
        }
        (self.max_degree() == Some(n - 1)).then_some(n - 1)
    }

    /// `Some((a, b))` when the graph is the bistar `S_{a,b}`: two adjacent
    /// centres carrying `a` and `b` pendant vertices, `a, b >= 1`. The first
    /// count belongs to the lower-indexed centre.
    pub fn bistar_parts(&self) -> Option<(usize, usize)> {
        if !self.is_tree() {
            return None;
        }
        let internal: Vec<usize> = (0..self.n()).filter(|&v| self.degree(v) > 1).collect();
        match internal[..] {
            [x, y] if self.has_edge(x, y) => Some((self.degree(x) - 1, self.degree(y) - 1)),
            _ => None,
        }
    }
}

/// Degree structure of a regular or constant-sum biregular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Regular(usize),
    /// Exactly two degrees (larger first), every edge joining both kinds.
    BiregularConstantSum(usize, usize),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degree: Vec<usize>,
    pub pendant: Vec<bool>,
    pub internal: Vec<bool>,
    /// Edges with at least one endpoint of degree 1.
    pub pendant_edge_count: usize,
    pub pendant_neighbors: Vec<usize>,
    /// Degree minus pendant neighbours.
    pub internal_degree: Vec<usize>,
}

/// Per-vertex triangle counts split by how many of the other two corners
/// have degree 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleProfile {
    /// Both other corners have degree 2.
    pub k: Vec<usize>,
    /// Exactly one other corner has degree 2.
    pub p: Vec<usize>,
}
