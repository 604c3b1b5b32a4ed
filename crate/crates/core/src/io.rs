//! Edge-list text format, DOT export and the JSON report documents.
//!
//! Edge lists hold one item per line: `vertex <token>` declares a vertex,
//! `<token> <token>` adds an edge, a lone `<token>` also declares a vertex,
//! and `#` starts a comment running to the end of the line. Vertices are
//! numbered in order of first appearance. `vertex` is reserved as the first
//! token of a line.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Regularity};
use crate::harness::CorpusRun;
use crate::ssi::SsiGraph;
use crate::theorems::{TheoremId, Verdict, VerificationReport, Witness};
use crate::domination::domination_number;

pub const TOOL_VERSION: &str = concat!("ssi ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: self-loop on `{token}`")]
    SelfLoop { line: usize, token: String },
    #[error("line {line}: expected one or two tokens, found {found}")]
    Malformed { line: usize, found: usize },
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut declare = |tok: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[..] {
            [] => {}
            [t] | ["vertex", t] => {
                declare(t, &mut labels);
            }
            [a, b] => {
                if a == b {
                    return Err(ParseError::SelfLoop {
                        line,
                        token: a.to_string(),
                    });
                }
                let u = declare(a, &mut labels);
                let v = declare(b, &mut labels);
                pairs.push((u, v));
            }
            _ => {
                return Err(ParseError::Malformed {
                    line,
                    found: tokens.len(),
                })
            }
        }
    }
    Ok(Graph::from_index_edges(labels, pairs).expect("labels are distinct and pairs in range"))
}

/// Canonical edge list: every vertex declared in index order, then the
/// edges `u v` with `u < v` in lexicographic index order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for l in g.labels() {
        writeln!(out, "vertex {l}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

/// `A_s(G)` as an edge list over arc labels, edges only (isolated arcs
/// cannot occur in a non-trivial ssi-graph but are declared if present).
pub fn write_ssi_edge_list(a: &SsiGraph) -> String {
    let g = a.graph();
    let mut out = String::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(out, "vertex {}", g.label(v)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

fn dot_quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

/// Undirected DOT graph; node `n<i>` is the i-th arc in lexicographic order.
pub fn export_dot(a: &SsiGraph) -> String {
    let g = a.graph();
    let mut out = String::new();
    writeln!(out, "graph A_{} {{", a.s()).unwrap();
    for v in 0..g.n() {
        writeln!(out, "  n{v} [label={}];", dot_quote(g.label(v))).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  n{u} -- n{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HostGraph {
    pub id: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecord {
    pub theorem: TheoremId,
    pub s: Option<usize>,
    pub applicable: bool,
    pub verdict: Option<Verdict>,
    pub predicted: Option<i64>,
    pub observed: Option<i64>,
    pub witness: Option<Witness>,
}

impl From<&VerificationReport> for RunRecord {
    fn from(r: &VerificationReport) -> Self {
        Self {
            theorem: r.theorem,
            s: r.s,
            applicable: r.applicable,
            verdict: r.verdict,
            predicted: r.predicted,
            observed: r.observed,
            witness: r.witness.clone(),
        }
    }
}

impl RunRecord {
    pub fn into_report(self, graph_id: &str) -> VerificationReport {
        VerificationReport {
            theorem: self.theorem,
            graph_id: graph_id.to_string(),
            s: self.s,
            applicable: self.applicable,
            verdict: self.verdict,
            predicted: self.predicted,
            observed: self.observed,
            witness: self.witness,
        }
    }
}

/// Harness output for one host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool_version: String,
    pub host_graph: HostGraph,
    pub runs: Vec<RunRecord>,
}

impl ReportDocument {
    pub fn new(id: &str, g: &Graph, reports: &[VerificationReport]) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            host_graph: HostGraph {
                id: id.to_string(),
                n: g.n(),
                m: g.m(),
            },
            runs: reports.iter().map(RunRecord::from).collect(),
        }
    }

    pub fn has_failures(&self) -> bool {
        self.runs.iter().any(|r| r.verdict == Some(Verdict::Fail))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HostRecord {
    pub host_graph: HostGraph,
    pub runs: Vec<RunRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSummary {
    pub hosts: usize,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Harness output for a family run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusDocument {
    pub tool_version: String,
    pub families: Vec<String>,
    pub summary: CorpusSummary,
    pub hosts: Vec<HostRecord>,
}

impl CorpusDocument {
    pub fn new(families: Vec<String>, run: &CorpusRun) -> Self {
        let hosts: Vec<HostRecord> = run
            .hosts
            .iter()
            .map(|h| HostRecord {
                host_graph: HostGraph {
                    id: h.id.clone(),
                    n: h.graph.n(),
                    m: h.graph.m(),
                },
                runs: h.reports.iter().map(RunRecord::from).collect(),
            })
            .collect();
        let failed = run.fail_count();
        let checked = run.checked_count();
        Self {
            tool_version: TOOL_VERSION.to_string(),
            families,
            summary: CorpusSummary {
                hosts: hosts.len(),
                checked,
                passed: checked - failed,
                failed,
            },
            hosts,
        }
    }
}

/// Structural summary of one ssi-graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDocument {
    pub tool_version: String,
    pub s: usize,
    pub order: usize,
    pub size: usize,
    pub girth: Option<usize>,
    pub connected: bool,
    pub components: usize,
    pub regularity: String,
    /// `[degree, count]` pairs, ascending by degree.
    pub degree_histogram: Vec<[usize; 2]>,
    pub domination_number: usize,
}

impl AnalysisDocument {
    pub fn new(a: &SsiGraph) -> Self {
        let g = a.graph();
        let mut histogram: Vec<[usize; 2]> = Vec::new();
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        for d in degrees {
            match histogram.last_mut() {
                Some(last) if last[0] == d => last[1] += 1,
                _ => histogram.push([d, 1]),
            }
        }
        let regularity = match g.regularity_class() {
            Ok(Regularity::Regular(k)) => format!("regular({k})"),
            Ok(Regularity::BiregularConstantSum(x, y)) => format!("biregular_constant_sum({x},{y})"),
            Ok(Regularity::Other) => "irregular".to_string(),
            Err(_) => "edgeless".to_string(),
        };
        Self {
            tool_version: TOOL_VERSION.to_string(),
            s: a.s(),
            order: a.order(),
            size: a.size(),
            girth: g.girth(),
            connected: g.n() > 0 && g.is_connected(),
            components: g.components().len(),
            regularity,
            degree_histogram: histogram,
            domination_number: domination_number(g),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::ssi::build_ssi;
    use crate::theorems::verify;

    const S32: &str = "u1 x1\nu2 x1\nu3 x1\nx1 x2\nx2 v1\nx2 v2\n";

    #[test]
    fn parse_examples() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(
            parse_edge_list("a a"),
            Err(ParseError::SelfLoop {
                line: 1,
                token: "a".into()
            })
        );
        assert_eq!(
            parse_edge_list("a b\na b c\n"),
            Err(ParseError::Malformed { line: 2, found: 3 })
        );
        let s32 = parse_edge_list(S32).unwrap();
        assert_eq!((s32.n(), s32.m()), (7, 6));
        assert_eq!(s32.bistar_parts(), Some((3, 2)));
    }

    #[test]
    fn comments_declarations_duplicates() {
        let g = parse_edge_list("# header\nvertex z\na b # trailing\nb a\n\n  c  \n").unwrap();
        assert_eq!(g.labels(), ["z", "a", "b", "c"]);
        assert_eq!(g.m(), 1);
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn canonical_round_trip() {
        let g = parse_edge_list("a c\nb c\nvertex d\n").unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "vertex a\nvertex c\nvertex b\nvertex d\na c\nc b\n");
        assert_eq!(write_edge_list(&parse_edge_list(&text).unwrap()), text);
    }

    #[test]
    fn dot_export() {
        let a2 = build_ssi(&parse_edge_list(S32).unwrap(), 2).unwrap();
        let dot = export_dot(&a2);
        assert_eq!(dot.matches("[label=").count(), 5);
        assert_eq!(dot.matches(" -- ").count(), 10);
        assert!(dot.contains("label=\"u1-x1-x2\""));

        let empty = build_ssi(&cycle(3), 2).unwrap();
        assert_eq!(export_dot(&empty), "graph A_2 {\n}\n");

        let p3 = build_ssi(&path(3), 1).unwrap();
        assert_eq!(export_dot(&p3), "graph A_1 {\n  n0 [label=\"ab\"];\n  n1 [label=\"cb\"];\n  n0 -- n1;\n}\n");
    }

    #[test]
    fn report_document_round_trip() {
        let g = bistar32();
        let r = verify(&g, TheoremId::BistarA2Complete, None).unwrap();
        let doc = ReportDocument::new("s32", &g, &[r]);
        let text = to_json(&doc);
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(to_json(&back), text);
        assert!(text.contains("\"witness\": null"));
        let extra = text.replacen("\"tool_version\"", "\"extra\": 1,\n  \"tool_version\"", 1);
        assert!(serde_json::from_str::<ReportDocument>(&extra).is_err());
    }

    #[test]
    fn analysis_of_bistar_a1() {
        let a1 = build_ssi(&bistar32(), 1).unwrap();
        let doc = AnalysisDocument::new(&a1);
        assert_eq!((doc.order, doc.size), (7, 15));
        assert!(doc.connected);
        assert_eq!(doc.girth, Some(3));
        assert_eq!(doc.degree_histogram.iter().map(|p| p[1]).sum::<usize>(), 7);
    }
}
