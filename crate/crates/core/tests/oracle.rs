//! `build_ssi` against a constructor that scans every vertex sequence.

use std::collections::BTreeSet;

use ssi_core::generators::{all_connected, cycle, path, star};
use ssi_core::{build_ssi, Graph};

/// Vertices: all `(s+1)`-sequences that are walks on distinct vertices and
/// can be extended by a further distinct vertex. Edges: pairs of sequences
/// sharing a vertex.
fn naive(g: &Graph, s: usize) -> (Vec<Vec<usize>>, BTreeSet<(usize, usize)>) {
    let n = g.n();
    let len = s + 1;
    let mut vertices = Vec::new();
    let total = n.checked_pow(len as u32).unwrap_or(0);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        seq.reverse();
        let distinct = (0..len).all(|i| (i + 1..len).all(|j| seq[i] != seq[j]));
        let walk = seq.windows(2).all(|w| g.has_edge(w[0], w[1]));
        let last = seq[len - 1];
        let extendable = (0..n).any(|w| !seq.contains(&w) && g.has_edge(last, w));
        if distinct && walk && extendable {
            vertices.push(seq);
        }
    }
    let mut edges = BTreeSet::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if vertices[i].iter().any(|v| vertices[j].contains(v)) {
                edges.insert((i, j));
            }
        }
    }
    (vertices, edges)
}

fn assert_same(g: &Graph, s: usize) {
    let a = build_ssi(g, s).unwrap();
    let (vertices, edges) = naive(g, s);
    let arcs: Vec<Vec<usize>> = a.arcs().iter().map(|x| x.vertices().to_vec()).collect();
    assert_eq!(arcs, vertices, "s = {s}, edges {:?}", g.edges().collect::<Vec<_>>());
    let got: BTreeSet<(usize, usize)> = a.graph().edges().collect();
    assert_eq!(got, edges, "s = {s}");
}

#[test]
fn connected_graphs_up_to_six_vertices() {
    for n in 1..=6 {
        for g in all_connected(n) {
            for s in 1..n.max(2) {
                assert_same(&g, s);
            }
        }
    }
}

#[test]
fn disconnected_hosts() {
    let hosts = [
        path(4).disjoint_union(&cycle(3)),
        star(3).disjoint_union(&path(1)),
        path(5).disjoint_union(&path(5)),
    ];
    for g in &hosts {
        for s in 1..=4 {
            assert_same(g, s);
        }
    }
}
