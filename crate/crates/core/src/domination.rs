//! Exact domination and edge-domination numbers.
//!
//! Both searches deepen the budget `k = 0, 1, 2, ...` and branch on the
//! first element that is not yet dominated: some member of its closed
//! neighbourhood has to be picked, so at most `deg + 1` branches per level.

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, GraphError};

/// γ(G), with a witness set of that size.
pub fn minimum_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let closed: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut r = g.row(v).clone();
            r.grow(n);
            r.insert(v);
            r
        })
        .collect();
    smallest_cover(n, &closed)
}

pub fn domination_number(g: &Graph) -> usize {
    minimum_dominating_set(g).len()
}

/// γ'(G) with a witness, as edge indices into [`Graph::edges`] order.
pub fn minimum_edge_dominating_set(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if g.m() == 0 {
        return Err(GraphError::Edgeless);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    // closed[e]: edges sharing an endpoint with e, e included
    let closed: Vec<FixedBitSet> = edges
        .iter()
        .map(|&(a, b)| {
            let mut r = FixedBitSet::with_capacity(m);
            for (j, &(c, d)) in edges.iter().enumerate() {
                if a == c || a == d || b == c || b == d {
                    r.insert(j);
                }
            }
            r
        })
        .collect();
    Ok(smallest_cover(m, &closed))
}

pub fn edge_domination_number(g: &Graph) -> Result<usize, GraphError> {
    minimum_edge_dominating_set(g).map(|s| s.len())
}

/// Smallest set of indices whose closed sets cover `0..universe`.
/// `closed[i]` must contain `i`, and the relation must be symmetric.
fn smallest_cover(universe: usize, closed: &[FixedBitSet]) -> Vec<usize> {
    let mut chosen = Vec::new();
    for budget in 0..=universe {
        let covered = FixedBitSet::with_capacity(universe);
        if search(universe, closed, &covered, budget, &mut chosen) {
            chosen.sort_unstable();
            return chosen;
        }
        chosen.clear();
    }
    unreachable!("the full set always covers")
}

fn search(
    universe: usize,
    closed: &[FixedBitSet],
    covered: &FixedBitSet,
    budget: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(first) = covered.zeroes().next().filter(|&x| x < universe) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for pick in closed[first].ones() {
        let mut next = covered.clone();
        next.union_with(&closed[pick]);
        chosen.push(pick);
        if search(universe, closed, &next, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
