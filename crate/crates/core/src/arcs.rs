//! s-arcs on distinct vertices and the shunt relation between them.
//!
//! An s-arc here is a directed simple path with `s` edges, stored as its
//! `s + 1` vertices. `a` shunts onto `b` when `a` followed by the last vertex
//! of `b` is an `(s + 1)`-arc on distinct vertices whose head is `b`.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("s must be at least 1")]
    ZeroLength,
    #[error("an arc needs at least two vertices")]
    TooShort,
    #[error("vertex {0} appears twice in the arc")]
    RepeatedVertex(usize),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex index {0} is out of range")]
    OutOfRange(usize),
    #[error("arcs have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("head/tail of a 1-arc is not an arc")]
    NoSubArc,
}

/// A directed path with pairwise distinct vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc(Vec<usize>);

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arc{:?}", self.0)
    }
}

impl Arc {
    /// Validates `vertices` against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, ArcError> {
        if vertices.len() < 2 {
            return Err(ArcError::TooShort);
        }
        for (i, &v) in vertices.iter().enumerate() {
            if v >= g.n() {
                return Err(ArcError::OutOfRange(v));
            }
            if vertices[..i].contains(&v) {
                return Err(ArcError::RepeatedVertex(v));
            }
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(ArcError::NotAdjacent(w[0], w[1]));
            }
        }
        Ok(Self(vertices))
    }

    /// Parses an arc from vertex tokens of `g`.
    pub fn from_labels<S: AsRef<str>>(g: &Graph, tokens: &[S]) -> Option<Self> {
        let vs = tokens
            .iter()
            .map(|t| g.index_of(t.as_ref()))
            .collect::<Option<Vec<_>>>()?;
        Self::new(g, vs).ok()
    }

    pub(crate) fn from_vec_unchecked(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges.
    pub fn s(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn shares_vertex(&self, other: &Arc) -> bool {
        self.0.iter().any(|v| other.contains(*v))
    }

    pub fn reverse(&self) -> Arc {
        Arc(self.0.iter().rev().copied().collect())
    }

    /// Drops the first vertex.
    pub fn head(&self) -> Result<Arc, ArcError> {
        if self.s() < 2 {
            return Err(ArcError::NoSubArc);
        }
        Ok(Arc(self.0[1..].to_vec()))
    }

    /// Drops the last vertex.
    pub fn tail(&self) -> Result<Arc, ArcError> {
        if self.s() < 2 {
            return Err(ArcError::NoSubArc);
        }
        Ok(Arc(self.0[..self.0.len() - 1].to_vec()))
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.0.iter().map(|&v| g.label(v)).collect()
    }

    pub fn tokens(&self, g: &Graph) -> Vec<String> {
        self.0.iter().map(|&v| g.label(v).to_string()).collect()
    }

    pub fn display(&self, g: &Graph) -> String {
        g.join_labels(&self.0)
    }
}

/// All s-arcs of `g`, both directions, in lexicographic order of the vertex
/// index sequence.
pub fn enumerate_arcs(g: &Graph, s: usize) -> Result<Vec<Arc>, ArcError> {
    if s == 0 {
        return Err(ArcError::ZeroLength);
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(s + 1);
    let mut on_path = vec![false; g.n()];
    for v in 0..g.n() {
        stack.push(v);
        on_path[v] = true;
        extend(g, s, &mut stack, &mut on_path, &mut out);
        on_path[v] = false;
        stack.pop();
    }
    Ok(out)
}

fn extend(g: &Graph, s: usize, stack: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Arc>) {
    if stack.len() == s + 1 {
        out.push(Arc(stack.clone()));
        return;
    }
    let at = *stack.last().unwrap();
    for &w in g.neighbors(at) {
        if !on_path[w] {
            on_path[w] = true;
            stack.push(w);
            extend(g, s, stack, on_path, out);
            stack.pop();
            on_path[w] = false;
        }
    }
}

/// `a` shunts onto `b` on an `(s + 1)`-arc with all `s + 2` vertices distinct.
pub fn can_shunt(g: &Graph, a: &Arc, b: &Arc) -> Result<bool, ArcError> {
    if a.s() != b.s() {
        return Err(ArcError::LengthMismatch(a.s(), b.s()));
    }
    let s = a.s();
    Ok(a.0[1..] == b.0[..s] && g.has_edge(a.last(), b.last()) && !a.contains(b.last()))
}

/// Some neighbour of the last vertex lies off the arc.
pub fn is_shuntable(g: &Graph, a: &Arc) -> bool {
    g.neighbors(a.last()).iter().any(|&w| !a.contains(w))
}

/// Arcs of one length with their shunt successors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuntDigraph {
    pub arcs: Vec<Arc>,
    /// `successors[i]`: indices of arcs that `arcs[i]` shunts onto, ascending.
    pub successors: Vec<Vec<usize>>,
}

impl ShuntDigraph {
    pub fn index_of(&self, a: &Arc) -> Option<usize> {
        self.arcs.binary_search(a).ok()
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }
}

pub fn shunt_digraph(g: &Graph, s: usize) -> Result<ShuntDigraph, ArcError> {
    let arcs = enumerate_arcs(g, s)?;
    let successors = arcs
        .iter()
        .map(|a| {
            let mut next: Vec<usize> = g
                .neighbors(a.last())
                .iter()
                .filter(|&&w| !a.contains(w))
                .map(|&w| {
                    let mut vs = a.0[1..].to_vec();
                    vs.push(w);
                    arcs.binary_search(&Arc(vs)).expect("shifted arc is an s-arc")
                })
                .collect();
            next.sort_unstable();
            next
        })
        .collect();
    Ok(ShuntDigraph { arcs, successors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn arc(g: &Graph, s: &str) -> Arc {
        let vs = s.chars().map(|c| g.index_of(&c.to_string()).unwrap()).collect();
        Arc::new(g, vs).unwrap()
    }

    fn names(g: &Graph, arcs: &[Arc]) -> Vec<String> {
        arcs.iter().map(|a| a.display(g)).collect()
    }

    #[test]
    fn enumerate_examples() {
        let p3 = path(3);
        assert_eq!(names(&p3, &enumerate_arcs(&p3, 1).unwrap()), ["ab", "ba", "bc", "cb"]);
        // 9 undirected 3-vertex paths (6 through x1, 3 through x2), two directions each
        assert_eq!(enumerate_arcs(&bistar32(), 2).unwrap().len(), 18);
        assert!(enumerate_arcs(&cycle(3), 3).unwrap().is_empty());
        assert_eq!(enumerate_arcs(&p3, 0), Err(ArcError::ZeroLength));
    }

    #[test]
    fn arc_validation() {
        let p3 = path(3);
        assert_eq!(Arc::new(&p3, vec![0, 2]), Err(ArcError::NotAdjacent(0, 2)));
        assert_eq!(Arc::new(&cycle(3), vec![0, 1, 0]), Err(ArcError::RepeatedVertex(0)));
        assert_eq!(Arc::new(&p3, vec![0]), Err(ArcError::TooShort));
    }

    #[test]
    fn reverse_head_tail() {
        let p4 = path(4);
        let abc = arc(&p4, "abc");
        assert_eq!(abc.reverse(), arc(&p4, "cba"));
        assert_eq!(abc.reverse().reverse(), abc);
        assert_eq!(arc(&p4, "ab").reverse(), arc(&p4, "ba"));
        let abcd = arc(&p4, "abcd");
        assert_eq!(abcd.head().unwrap(), arc(&p4, "bcd"));
        assert_eq!(abcd.tail().unwrap(), abc);
        assert_eq!(abc.head().unwrap(), arc(&p4, "bc"));
        assert_eq!(arc(&p4, "ab").head(), Err(ArcError::NoSubArc));
    }

    #[test]
    fn shunting() {
        let p4 = path(4);
        assert!(can_shunt(&p4, &arc(&p4, "abc"), &arc(&p4, "bcd")).unwrap());
        assert!(!can_shunt(&p4, &arc(&p4, "bcd"), &arc(&p4, "cba")).unwrap());
        let c3 = cycle(3);
        assert!(!can_shunt(&c3, &arc(&c3, "abc"), &arc(&c3, "bca")).unwrap());
        assert_eq!(
            can_shunt(&p4, &arc(&p4, "ab"), &arc(&p4, "bcd")),
            Err(ArcError::LengthMismatch(1, 2))
        );

        assert!(is_shuntable(&p4, &arc(&p4, "abc")));
        assert!(!is_shuntable(&p4, &arc(&p4, "bcd")));
        assert!(is_shuntable(&cycle(4), &arc(&cycle(4), "abc")));

        let s32 = bistar32();
        let idx = |l: &str| s32.index_of(l).unwrap();
        let x1x2v1 = Arc::new(&s32, vec![idx("x1"), idx("x2"), idx("v1")]).unwrap();
        assert!(!is_shuntable(&s32, &x1x2v1));
    }

    #[test]
    fn digraph_examples() {
        let p4 = path(4);
        let d = shunt_digraph(&p4, 2).unwrap();
        let mut edges = Vec::new();
        for (i, succ) in d.successors.iter().enumerate() {
            for &j in succ {
                edges.push(format!("{}->{}", d.arcs[i].display(&p4), d.arcs[j].display(&p4)));
            }
        }
        assert_eq!(edges, ["abc->bcd", "dcb->cba"]);

        let d = shunt_digraph(&cycle(3), 2).unwrap();
        assert_eq!((d.arcs.len(), d.edge_count()), (6, 0));
        let d = shunt_digraph(&path(2), 1).unwrap();
        assert_eq!((d.arcs.len(), d.edge_count()), (2, 0));
    }
}
