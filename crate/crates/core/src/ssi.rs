//! Construction of the s-shunt intersection graph `A_s(G)`.
//!
//! Vertices are the shuntable s-arcs of `G` (directed, so an arc and its
//! reverse are distinct vertices); two vertices are adjacent when their
//! vertex sets meet. Adjacency is generated clique by clique from the arcs
//! through each host vertex.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::arcs::{self, Arc, ArcError};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsiError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("arc {0} is not a vertex of this ssi-graph")]
    UnknownArc(String),
    #[error("host graph needs at least three vertices (has {0})")]
    HostTooSmall(usize),
    #[error("host graph must be connected")]
    HostDisconnected,
    #[error("expected the 1-shunt graph, got s = {0}")]
    NotOneShunt(usize),
}

#[derive(Debug, Clone)]
pub struct SsiGraph {
    graph: Graph,
    labels: Vec<Arc>,
    s: usize,
    host: Graph,
}

impl SsiGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Arc labelling each vertex, sorted lexicographically.
    pub fn arcs(&self) -> &[Arc] {
        &self.labels
    }

    pub fn arc(&self, v: usize) -> &Arc {
        &self.labels[v]
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn size(&self) -> usize {
        self.graph.m()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn index_of(&self, arc: &Arc) -> Option<usize> {
        self.labels.binary_search(arc).ok()
    }

    pub fn degree(&self, arc: &Arc) -> Result<usize, SsiError> {
        self.index_of(arc)
            .map(|v| self.graph.degree(v))
            .ok_or_else(|| SsiError::UnknownArc(arc.display(&self.host)))
    }

    /// Arc as host-vertex tokens.
    pub fn arc_tokens(&self, v: usize) -> Vec<String> {
        self.labels[v].tokens(&self.host)
    }
}

pub fn build_ssi(g: &Graph, s: usize) -> Result<SsiGraph, SsiError> {
    let labels: Vec<Arc> = arcs::enumerate_arcs(g, s)?
        .into_iter()
        .filter(|a| arcs::is_shuntable(g, a))
        .collect();
    let n = labels.len();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, a) in labels.iter().enumerate() {
        for &v in a.vertices() {
            through[v].push(i);
        }
    }
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for list in &through {
        for (k, &i) in list.iter().enumerate() {
            for &j in &list[k + 1..] {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
    }
    let names = labels.iter().map(|a| a.display(g)).collect();
    Ok(SsiGraph {
        graph: Graph::from_rows(names, rows),
        labels,
        s,
        host: g.clone(),
    })
}

pub fn ssi_degree(a: &SsiGraph, label: &Arc) -> Result<usize, SsiError> {
    a.degree(label)
}

/// Maps edge `i` of `g` (in [`Graph::edges`] order, which is the vertex
/// order of [`Graph::line_graph`]) to a vertex of `A_1(G)`: the orientation
/// `uv` with `u < v` when it is shuntable, otherwise `vu`.
pub fn line_graph_embedding(g: &Graph, a1: &SsiGraph) -> Result<Vec<usize>, SsiError> {
    if a1.s() != 1 {
        return Err(SsiError::NotOneShunt(a1.s()));
    }
    if g.n() < 3 {
        return Err(SsiError::HostTooSmall(g.n()));
    }
    if !g.is_connected() {
        return Err(SsiError::HostDisconnected);
    }
    g.edges()
        .map(|(u, v)| {
            let forward = Arc::from_vec_unchecked(vec![u, v]);
            a1.index_of(&forward)
                .or_else(|| a1.index_of(&forward.reverse()))
                .ok_or_else(|| SsiError::UnknownArc(forward.display(g)))
        })
        .collect()
}
