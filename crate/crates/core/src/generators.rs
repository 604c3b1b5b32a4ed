//! Named graph families and the exhaustive connected-graph corpus.
//!
//! Labelling per family:
//! * `path`, `cycle`, `complete`, `circulant`, `random_gnp`, `all_connected`:
//!   vertices `a`, `b`, ... in index order (`v0`, `v1`, ... past 26);
//! * `star(k)`: centre `c`, leaves `l1..lk`;
//! * `bistar(a, b)`: `u1..ua`, centres `x1 x2`, then `v1..vb`;
//! * `complete_bipartite(a, b)`: `a1..`, then `b1..`;
//! * `petersen`: outer cycle `o0..o4`, inner pentagram `i0..i4`, spoke `oj ij`.
//!
//! Random graphs use PCG32 (`Pcg32::new(seed, 0xa02bdbf7bb3c0a7)`): for each
//! pair `i < j` in lexicographic order one `u32` draw `x` is taken, and the edge
//! is present iff `(x * 100) >> 32 < p` with `p` in percent.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand_core::RngCore;
use rand_pcg::Pcg32;
use thiserror::Error;

use crate::graph::Graph;

/// Largest order for [`FamilyKind::AllConnected`].
pub const ALL_CONNECTED_MAX_N: usize = 7;

const PCG_STREAM: u64 = 0xa02bdbf7bb3c0a7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Path,
    Cycle,
    Star,
    Bistar,
    Complete,
    CompleteBipartite,
    Circulant,
    Petersen,
    RandomGnp,
    AllConnected,
}

impl FamilyKind {
    pub const ALL: &'static [FamilyKind] = &[
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Star,
        FamilyKind::Bistar,
        FamilyKind::Complete,
        FamilyKind::CompleteBipartite,
        FamilyKind::Circulant,
        FamilyKind::Petersen,
        FamilyKind::RandomGnp,
        FamilyKind::AllConnected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Star => "star",
            FamilyKind::Bistar => "bistar",
            FamilyKind::Complete => "complete",
            FamilyKind::CompleteBipartite => "complete_bipartite",
            FamilyKind::Circulant => "circulant",
            FamilyKind::Petersen => "petersen",
            FamilyKind::RandomGnp => "random_gnp",
            FamilyKind::AllConnected => "all_connected",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| FamilyError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownKind(String),
    #[error("{kind} expects {expected}, got {got:?}")]
    BadParams {
        kind: FamilyKind,
        expected: &'static str,
        got: Vec<usize>,
    },
    #[error("a seed is only meaningful for random_gnp")]
    UnexpectedSeed,
}

/// A parameterised family of host graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    pub kind: FamilyKind,
    pub params: Vec<usize>,
    pub seed: Option<u64>,
}

impl GraphFamily {
    pub fn new(kind: FamilyKind, params: Vec<usize>) -> Result<Self, FamilyError> {
        let f = Self {
            kind,
            params,
            seed: None,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn with_seed(mut self, seed: u64) -> Result<Self, FamilyError> {
        self.seed = Some(seed);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        use FamilyKind::*;
        let p = &self.params[..];
        let (ok, expected) = match self.kind {
            Path => (matches!(p, [n] if *n >= 1), "[n], n >= 1"),
            Cycle => (matches!(p, [n] if *n >= 3), "[n], n >= 3"),
            Star => (matches!(p, [k] if *k >= 1), "[k], k >= 1"),
            Bistar => (matches!(p, [a, b] if *a >= 1 && *b >= 1), "[a, b], a, b >= 1"),
            Complete => (matches!(p, [n] if *n >= 1), "[n], n >= 1"),
            CompleteBipartite => (matches!(p, [a, b] if *a >= 1 && *b >= 1), "[a, b], a, b >= 1"),
            Circulant => (
                matches!(p, [n, jumps @ ..] if *n >= 3 && !jumps.is_empty()
                    && jumps.iter().all(|&j| j >= 1 && j <= n / 2)),
                "[n, j1, j2, ...], n >= 3, 1 <= j <= n/2",
            ),
            Petersen => (p.is_empty(), "no parameters"),
            RandomGnp => (
                matches!(p, [n, pct, count] if *n >= 1 && *pct <= 100 && *count >= 1),
                "[n, p_percent, count], n >= 1, p <= 100, count >= 1",
            ),
            AllConnected => (
                matches!(p, [n] if (1..=ALL_CONNECTED_MAX_N).contains(n)),
                "[n], 1 <= n <= 7",
            ),
        };
        if !ok {
            return Err(FamilyError::BadParams {
                kind: self.kind,
                expected,
                got: self.params.clone(),
            });
        }
        if self.seed.is_some() && self.kind != RandomGnp {
            return Err(FamilyError::UnexpectedSeed);
        }
        Ok(())
    }

    /// Stable identifier prefix, e.g. `bistar-3-2`.
    pub fn id(&self) -> String {
        let mut id = self.kind.as_str().to_string();
        for p in &self.params {
            id.push('-');
            id.push_str(&p.to_string());
        }
        if let Some(seed) = self.seed {
            id.push_str(&format!("-s{seed}"));
        }
        id
    }

    pub fn generate(&self) -> Result<Vec<Graph>, FamilyError> {
        self.validate()?;
        use FamilyKind::*;
        let p = &self.params;
        Ok(match self.kind {
            Path => vec![path(p[0])],
            Cycle => vec![cycle(p[0])],
            Star => vec![star(p[0])],
            Bistar => vec![bistar(p[0], p[1])],
            Complete => vec![complete(p[0])],
            CompleteBipartite => vec![complete_bipartite(p[0], p[1])],
            Circulant => vec![circulant(p[0], &p[1..])],
            Petersen => vec![petersen()],
            RandomGnp => {
                let mut rng = Pcg32::new(self.seed.unwrap_or(0), PCG_STREAM);
                (0..p[2]).map(|_| random_gnp(&mut rng, p[0], p[1] as u64)).collect()
            }
            AllConnected => all_connected(p[0]),
        })
    }

    /// Members with identifiers: the family id alone for single-graph
    /// families, otherwise suffixed by a zero-padded index.
    pub fn members(&self) -> Result<Vec<(String, Graph)>, FamilyError> {
        let graphs = self.generate()?;
        let id = self.id();
        if graphs.len() == 1 && !matches!(self.kind, FamilyKind::RandomGnp | FamilyKind::AllConnected) {
            return Ok(graphs.into_iter().map(|g| (id.clone(), g)).collect());
        }
        let width = graphs.len().saturating_sub(1).to_string().len().max(4);
        Ok(graphs
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("{id}-{i:0width$}"), g))
            .collect())
    }
}

fn letter_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("v{i}")).collect()
    }
}

fn numbered(prefix: &str, k: usize) -> impl Iterator<Item = String> + '_ {
    (1..=k).map(move |i| format!("{prefix}{i}"))
}

fn build(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_index_edges(labels, edges).expect("generator produces valid graphs")
}

pub fn path(n: usize) -> Graph {
    build(letter_labels(n), (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs n >= 3");
    build(letter_labels(n), (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(letter_labels(n), (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,k}`.
pub fn star(k: usize) -> Graph {
    let labels = std::iter::once("c".to_string()).chain(numbered("l", k)).collect();
    build(labels, (1..=k).map(|i| (0, i)))
}

/// `S_{a,b}`: centres `x1` (with `a` leaves) and `x2` (with `b` leaves).
pub fn bistar(a: usize, b: usize) -> Graph {
    let labels: Vec<String> = numbered("u", a)
        .chain(["x1".to_string(), "x2".to_string()])
        .chain(numbered("v", b))
        .collect();
    let (x1, x2) = (a, a + 1);
    let edges = (0..a)
        .map(move |i| (i, x1))
        .chain(std::iter::once((x1, x2)))
        .chain((0..b).map(move |j| (x2, a + 2 + j)));
    build(labels, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let labels = numbered("a", a).chain(numbered("b", b)).collect();
    build(labels, (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))))
}

pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| jumps.iter().map(move |&j| (i, (i + j) % n)))
        .collect();
    build(letter_labels(n), edges)
}

pub fn petersen() -> Graph {
    let labels = (0..5)
        .map(|i| format!("o{i}"))
        .chain((0..5).map(|i| format!("i{i}")))
        .collect();
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, 5 + i)]);
    build(labels, edges)
}

fn random_gnp(rng: &mut Pcg32, n: usize, p_percent: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let x = rng.next_u32() as u64;
            if (x * 100) >> 32 < p_percent {
                edges.push((u, v));
            }
        }
    }
    build(letter_labels(n), edges)
}

/// One graph per isomorphism class of connected graphs on `n` vertices.
///
/// Edge subsets are visited as bitmasks over the pairs `i < j` in
/// lexicographic order. The first connected mask not yet seen is kept, and
/// its images under all `n!` relabellings are marked seen, so each kept
/// graph is the numerically smallest mask of its class.
pub fn all_connected(n: usize) -> Vec<Graph> {
    assert!((1..=ALL_CONNECTED_MAX_N).contains(&n), "all_connected supports 1 <= n <= 7");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let e = pairs.len();
    let mut pair_index = vec![vec![usize::MAX; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = k;
        pair_index[v][u] = k;
    }
    let perm_maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| pair_index[p[u]][p[v]]).collect())
        .collect();

    let total = 1usize << e;
    let mut seen = FixedBitSet::with_capacity(total);
    let mut out = Vec::new();
    for mask in 0..total {
        if seen.contains(mask) || !mask_connected(n, &pairs, mask) {
            continue;
        }
        for map in &perm_maps {
            let mut image = 0usize;
            let mut rest = mask;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                image |= 1 << map[k];
                rest &= rest - 1;
            }
            seen.insert(image);
        }
        let edges = (0..e).filter(|k| mask >> k & 1 == 1).map(|k| pairs[k]);
        out.push(build(letter_labels(n), edges));
    }
    out
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: usize) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && (next >> u & 1 == 1 || next >> v & 1 == 1) {
                next |= 1 << u | 1 << v;
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::detour_diameter;

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_connected(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn bistar_shape() {
        let g = bistar(3, 2);
        assert_eq!((g.n(), g.m()), (7, 6));
        assert_eq!(g.bistar_parts(), Some((3, 2)));
        assert_eq!(g.labels(), ["u1", "u2", "u3", "x1", "x2", "v1", "v2"]);
    }

    #[test]
    fn named_families() {
        assert_eq!(detour_diameter(&cycle(5)), 4);
        let p = petersen();
        assert_eq!((p.n(), p.m(), p.girth()), (10, 15, Some(5)));
        assert!(p.is_regular());
        assert_eq!(star(4).star_leaves(), Some(4));
        assert_eq!(circulant(6, &[1, 3]).m(), 9);
        assert_eq!(complete_bipartite(2, 3).m(), 6);
        assert_eq!(complete(5).m(), 10);
    }

    #[test]
    fn validation() {
        assert!(GraphFamily::new(FamilyKind::Bistar, vec![0, 2]).is_err());
        assert!(GraphFamily::new(FamilyKind::Circulant, vec![6, 4]).is_err());
        assert!(GraphFamily::new(FamilyKind::Circulant, vec![6]).is_err());
        assert!(GraphFamily::new(FamilyKind::AllConnected, vec![8]).is_err());
        assert!(GraphFamily::new(FamilyKind::Petersen, vec![]).is_ok());
        assert_eq!(
            GraphFamily::new(FamilyKind::Path, vec![3]).unwrap().with_seed(1),
            Err(FamilyError::UnexpectedSeed)
        );
        assert_eq!("random_gnp".parse(), Ok(FamilyKind::RandomGnp));
        assert!("wheel".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let f = GraphFamily::new(FamilyKind::RandomGnp, vec![8, 40, 5]).unwrap().with_seed(7).unwrap();
        let a = f.generate().unwrap();
        let b = f.generate().unwrap();
        assert_eq!(a.len(), 5);
        let edges = |gs: &[Graph]| gs.iter().map(|g| g.edges().collect::<Vec<_>>()).collect::<Vec<_>>();
        assert_eq!(edges(&a), edges(&b));
        let other = GraphFamily::new(FamilyKind::RandomGnp, vec![8, 40, 5]).unwrap().with_seed(8).unwrap();
        assert_ne!(edges(&a), edges(&other.generate().unwrap()));
        let full = GraphFamily::new(FamilyKind::RandomGnp, vec![6, 100, 1]).unwrap();
        assert_eq!(full.generate().unwrap()[0].m(), 15);
        let none = GraphFamily::new(FamilyKind::RandomGnp, vec![6, 0, 1]).unwrap();
        assert_eq!(none.generate().unwrap()[0].m(), 0);
    }

    #[test]
    fn member_ids() {
        let f = GraphFamily::new(FamilyKind::AllConnected, vec![4]).unwrap();
        let ids: Vec<String> = f.members().unwrap().into_iter().map(|(id, _)| id).collect();
        assert_eq!(ids[0], "all_connected-4-0000");
        assert_eq!(ids.len(), 6);
        let f = GraphFamily::new(FamilyKind::Bistar, vec![3, 2]).unwrap();
        assert_eq!(f.members().unwrap()[0].0, "bistar-3-2");
    }
}
