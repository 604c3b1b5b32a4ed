//! Detour (longest-path) distances by exhaustive depth-first search.
//!
//! Exponential in the worst case; fine for the small hosts this crate
//! targets (roughly n <= 16).

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetourProfile {
    /// `distance[u][v]`: edge count of a longest simple u-v path, `None` if
    /// u and v lie in different components.
    pub distance: Vec<Vec<Option<usize>>>,
    pub eccentricity: Vec<usize>,
    /// Largest detour distance over all pairs (`s*`). Zero for edgeless graphs.
    pub diameter: usize,
    /// One detour diameter per component, in [`Graph::components`] order.
    pub per_component_diameter: Vec<usize>,
}

impl DetourProfile {
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distance[u][v]
    }
}

pub fn detour_profile(g: &Graph) -> DetourProfile {
    let n = g.n();
    let comps = g.components();
    let mut comp_size = vec![0; n];
    for c in &comps {
        for &v in c {
            comp_size[v] = c.len();
        }
    }
    let mut distance = vec![vec![None; n]; n];
    for (src, row) in distance.iter_mut().enumerate() {
        let mut best = vec![None; n];
        let mut visited = FixedBitSet::with_capacity(n);
        visited.insert(src);
        let mut saturated = 0;
        let target = comp_size[src] - 1;
        best[src] = Some(0);
        if target == 0 {
            saturated = usize::MAX;
        }
        longest_from(g, src, 0, target, &mut visited, &mut best, &mut saturated);
        *row = best;
    }
    let eccentricity: Vec<usize> = distance
        .iter()
        .map(|r| r.iter().flatten().copied().max().unwrap_or(0))
        .collect();
    let per_component_diameter: Vec<usize> = comps
        .iter()
        .map(|c| c.iter().map(|&v| eccentricity[v]).max().unwrap_or(0))
        .collect();
    let diameter = per_component_diameter.iter().copied().max().unwrap_or(0);
    DetourProfile {
        distance,
        eccentricity,
        diameter,
        per_component_diameter,
    }
}

/// DFS over simple paths from the current endpoint. `saturated` counts
/// vertices whose best value already equals `target` (the component order
/// minus one); once all of them are saturated nothing can improve.
fn longest_from(
    g: &Graph,
    at: usize,
    depth: usize,
    target: usize,
    visited: &mut FixedBitSet,
    best: &mut [Option<usize>],
    saturated: &mut usize,
) {
    for &w in g.neighbors(at) {
        if *saturated >= target {
            return;
        }
        if visited.contains(w) {
            continue;
        }
        let d = depth + 1;
        if best[w].is_none_or(|b| b < d) {
            best[w] = Some(d);
            if d == target {
                *saturated += 1;
            }
        }
        visited.insert(w);
        longest_from(g, w, d, target, visited, best, saturated);
        visited.set(w, false);
    }
}

/// Detour diameter alone, with an early exit once a Hamiltonian path of the
/// largest component is found.
pub fn detour_diameter(g: &Graph) -> usize {
    let mut best = 0;
    for comp in g.components() {
        let cap = comp.len() - 1;
        if cap <= best {
            continue;
        }
        let mut visited = FixedBitSet::with_capacity(g.n());
        for &src in &comp {
            visited.insert(src);
            longest_path_len(g, src, 0, cap, &mut visited, &mut best);
            visited.set(src, false);
            if best == cap {
                break;
            }
        }
    }
    best
}

fn longest_path_len(
    g: &Graph,
    at: usize,
    depth: usize,
    cap: usize,
    visited: &mut FixedBitSet,
    best: &mut usize,
) {
    if depth > *best {
        *best = depth;
    }
    for &w in g.neighbors(at) {
        if *best == cap {
            return;
        }
        if !visited.contains(w) {
            visited.insert(w);
            longest_path_len(g, w, depth + 1, cap, visited, best);
            visited.set(w, false);
        }
    }
}

/// Geodesic (shortest-path) diameter of each component, largest overall.
pub fn geodesic_diameter(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for src in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            best = best.max(dist[u]);
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    best
}
