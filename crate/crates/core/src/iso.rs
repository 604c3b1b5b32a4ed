//! Isomorphism testing: colour refinement on both graphs with a shared
//! palette, then backtracking that only maps vertices of equal colour.

use std::collections::BTreeMap;

use crate::graph::Graph;

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let mut gd = g.degrees();
    let mut hd = h.degrees();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return None;
    }
    let (gc, hc) = refine(g, h)?;
    let n = g.n();

    // Map rarest colour classes first, then by BFS-ish adjacency to mapped ones.
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &gc {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, std::cmp::Reverse(class_size[&gc[v]]), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &gc, &hc, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    gc: &[usize],
    hc: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for x in 0..h.n() {
        if used[x] || hc[x] != gc[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], x));
        if !consistent {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if extend(g, h, gc, hc, order, depth + 1, map, used) {
            return true;
        }
        used[x] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Stable colourings of both graphs drawn from one palette, or `None` as
/// soon as the colour histograms differ.
fn refine(g: &Graph, h: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let gt = g.triangles_per_vertex();
    let ht = h.triangles_per_vertex();
    let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let seed = |graph: &Graph, tri: &[usize], palette: &mut BTreeMap<(usize, Vec<usize>), usize>| {
        (0..graph.n())
            .map(|v| {
                let key = (graph.degree(v), vec![tri[v]]);
                let next = palette.len();
                *palette.entry(key).or_insert(next)
            })
            .collect::<Vec<_>>()
    };
    let mut gc = seed(g, &gt, &mut palette);
    let mut hc = seed(h, &ht, &mut palette);
    let mut classes = count_classes(&gc);
    loop {
        if histogram(&gc) != histogram(&hc) {
            return None;
        }
        let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let step = |graph: &Graph, colours: &[usize], palette: &mut BTreeMap<(usize, Vec<usize>), usize>| {
            (0..graph.n())
                .map(|v| {
                    let mut around: Vec<usize> =
                        graph.neighbors(v).iter().map(|&w| colours[w]).collect();
                    around.sort_unstable();
                    let key = (colours[v], around);
                    let next = palette.len();
                    *palette.entry(key).or_insert(next)
                })
                .collect::<Vec<_>>()
        };
        let ng = step(g, &gc, &mut palette);
        let nh = step(h, &hc, &mut palette);
        let next_classes = count_classes(&ng);
        gc = ng;
        hc = nh;
        if next_classes == classes {
            if histogram(&gc) != histogram(&hc) {
                return None;
            }
            return Some((gc, hc));
        }
        classes = next_classes;
    }
}

fn histogram(colours: &[usize]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &c in colours {
        *out.entry(c).or_default() += 1;
    }
    out
}

fn count_classes(colours: &[usize]) -> usize {
    histogram(colours).len()
}
