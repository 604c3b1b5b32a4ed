//! Closed-form predictions of ssi-graph quantities, computed from the host
//! graph alone. Evaluation is in exact rationals and converted to integers
//! only at the end.

use num_rational::Ratio;
use thiserror::Error;

use crate::arcs::{is_shuntable, Arc};
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("arc is not a vertex of the 1-shunt graph")]
    NotA1Vertex,
    #[error("degree must exceed 1 (got {0})")]
    DegreeTooSmall(usize),
    #[error("need at least two vertices (got {0})")]
    TooFewVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub name: &'static str,
    pub applicable: bool,
    pub value: Option<Rational>,
}

impl FormulaResult {
    fn value(name: &'static str, v: Rational) -> Self {
        Self {
            name,
            applicable: true,
            value: Some(v),
        }
    }

    fn not_applicable(name: &'static str) -> Self {
        Self {
            name,
            applicable: false,
            value: None,
        }
    }

    /// Integer value, `None` when inapplicable or (unexpectedly) fractional.
    pub fn as_integer(&self) -> Option<i64> {
        self.value.filter(Ratio::is_integer).map(|v| v.to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.value.is_none_or(|v| v.is_integer())
    }
}

fn int(x: usize) -> Rational {
    Ratio::from_integer(x as i64)
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn connected_on_three(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected()
}

/// `2m - m1`, `m1` the number of pendant edges.
pub fn predict_order_a1(g: &Graph) -> FormulaResult {
    const NAME: &str = "order_a1";
    if !connected_on_three(g) {
        return FormulaResult::not_applicable(NAME);
    }
    let m1 = g.degree_profile().pendant_edge_count;
    FormulaResult::value(NAME, int(2 * g.m()) - int(m1))
}

/// `1/2 * sum over internal u of (2 d_u - m_u)^2 - 3m + 5 m1 / 2`.
pub fn predict_size_a1(g: &Graph) -> FormulaResult {
    const NAME: &str = "size_a1";
    if !connected_on_three(g) {
        return FormulaResult::not_applicable(NAME);
    }
    let p = g.degree_profile();
    let squares: Rational = (0..g.n())
        .filter(|&v| p.internal[v])
        .map(|v| {
            let x = int(2 * p.degree[v]) - int(p.pendant_neighbors[v]);
            x * x
        })
        .sum();
    let half = Ratio::new(1, 2);
    let value = half * squares - int(3 * g.m()) + Ratio::new(5, 2) * int(p.pendant_edge_count);
    FormulaResult::value(NAME, value)
}

/// Degree of the vertex `uv` in `A_1(G)`.
pub fn predict_degree_a1(g: &Graph, a: &Arc) -> Result<FormulaResult, FormulaError> {
    const NAME: &str = "degree_a1";
    if a.s() != 1 || !is_shuntable(g, a) {
        return Err(FormulaError::NotA1Vertex);
    }
    let (u, v) = (a.first(), a.last());
    let p = g.degree_profile();
    let (du, dv) = (int(p.degree[u]), int(p.degree[v]));
    // pendant neighbours, not counting the other endpoint
    let mu = p.pendant_neighbors[u] - usize::from(p.pendant[v]);
    let mv = p.pendant_neighbors[v] - usize::from(p.pendant[u]);
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    let value = if p.degree[u] > 1 && p.degree[v] > 1 {
        two * (du + dv - two) - int(mu + mv) + one
    } else {
        // u pendant (v cannot be, or uv would not be shuntable)
        two * (dv - one) - int(mv)
    };
    Ok(FormulaResult::value(NAME, value))
}

/// Order of `A_2(G)` from internal degrees and degree-2 triangle corners.
pub fn predict_order_a2(g: &Graph) -> FormulaResult {
    const NAME: &str = "order_a2";
    if !g.is_connected() {
        return FormulaResult::not_applicable(NAME);
    }
    let p = g.degree_profile();
    let t = g.triangle_profile();
    let value = (0..g.n())
        .filter(|&v| p.internal[v])
        .map(|v| {
            let ideg = p.internal_degree[v];
            int(p.pendant_neighbors[v] * ideg) + int(2 * choose2(ideg))
                - int(2 * t.k[v])
                - int(t.p[v])
        })
        .sum();
    FormulaResult::value(NAME, value)
}

/// Triangle-free specialisation of [`predict_order_a2`].
pub fn predict_order_a2_c3_free(g: &Graph) -> FormulaResult {
    const NAME: &str = "order_a2_c3_free";
    if !g.is_connected() || g.has_triangle() {
        return FormulaResult::not_applicable(NAME);
    }
    let p = g.degree_profile();
    let value = (0..g.n())
        .filter(|&v| p.internal[v])
        .map(|v| {
            let ideg = p.internal_degree[v];
            int(p.pendant_neighbors[v] * ideg) + int(2 * choose2(ideg))
        })
        .sum();
    FormulaResult::value(NAME, value)
}

fn twice_p3(g: &Graph) -> Rational {
    int(2 * g.degrees().into_iter().map(choose2).sum::<usize>())
}

/// `2 * sum C(deg, 2)` for triangle-free graphs with minimum degree above 1.
pub fn predict_order_a2_c3_free_min_degree_2(g: &Graph) -> FormulaResult {
    const NAME: &str = "order_a2_c3_free_min_degree_2";
    if !g.is_connected() || g.has_triangle() || g.min_degree().is_none_or(|d| d < 2) {
        return FormulaResult::not_applicable(NAME);
    }
    FormulaResult::value(NAME, twice_p3(g))
}

/// `2 * sum C(deg, 2)` for connected graphs with minimum degree above 2.
pub fn predict_order_a2_min_degree_3(g: &Graph) -> FormulaResult {
    const NAME: &str = "order_a2_min_degree_3";
    if !g.is_connected() || g.min_degree().is_none_or(|d| d < 3) {
        return FormulaResult::not_applicable(NAME);
    }
    FormulaResult::value(NAME, twice_p3(g))
}

/// Undirected 3-vertex paths: `sum over internal v of C(deg v, 2)`.
pub fn predict_p3_count(g: &Graph) -> FormulaResult {
    let value = g
        .degrees()
        .into_iter()
        .filter(|&d| d > 1)
        .map(choose2)
        .sum();
    FormulaResult::value("p3_count", int(value))
}

/// `4k - 3` for a k-regular host.
pub fn predict_regular_degree_a1(k: usize) -> Result<usize, FormulaError> {
    if k <= 1 {
        return Err(FormulaError::DegreeTooSmall(k));
    }
    Ok(4 * k - 3)
}

/// Smallest `s` from which `A_s` of a connected order-`n` graph is complete.
pub fn completeness_threshold(n: usize) -> Result<usize, FormulaError> {
    if n < 2 {
        return Err(FormulaError::TooFewVertices(n));
    }
    Ok(n / 2)
}
