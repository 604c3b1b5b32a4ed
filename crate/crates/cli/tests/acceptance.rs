//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use ssi_core::arcs::Arc;
use ssi_core::formulas::predict_degree_a1;
use ssi_core::generators::{self, all_connected, FamilyKind, GraphFamily};
use ssi_core::harness::{run_hosts, CorpusOptions};
use ssi_core::iso::is_isomorphic;
use ssi_core::theorems::{replay, verify, verify_with, TheoremId, VerificationReport, VerifyOptions};
use ssi_core::{build_ssi, Graph, Verdict};

/// Runtime budgets. Comparisons of counts and graphs are exact.
const BUDGET_BISTAR: Duration = Duration::from_secs(1);
const BUDGET_DEGREES: Duration = Duration::from_secs(1);
const BUDGET_FORMULAS: Duration = Duration::from_secs(300);
const BUDGET_STRUCTURAL_1: Duration = Duration::from_secs(600);
const BUDGET_STRUCTURAL_4: Duration = Duration::from_secs(180);
const BUDGET_FAMILIES: Duration = Duration::from_secs(60);
const BUDGET_DOMINATION: Duration = Duration::from_secs(120);
const BUDGET_ISO: Duration = Duration::from_secs(600);
const BUDGET_ORACLE: Duration = Duration::from_secs(120);
const BUDGET_DESK: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took <= budget, "took {took:.2?}, budget {budget:?}");
    Ok(took)
}

fn s32() -> Graph {
    generators::bistar(3, 2)
}

fn arc(g: &Graph, tokens: &[&str]) -> Arc {
    Arc::from_labels(g, tokens).expect("arc of host")
}

fn connected_corpus(lo: usize, hi: usize) -> Vec<(String, Graph)> {
    (lo..=hi)
        .flat_map(|n| GraphFamily::new(FamilyKind::AllConnected, vec![n]).unwrap().members().unwrap())
        .collect()
}

/// Every fail must carry a witness that replays.
fn check_reports<'a>(g: &Graph, reports: impl IntoIterator<Item = &'a VerificationReport>) -> Result<usize, String> {
    let mut fails = 0;
    for r in reports {
        if r.is_fail() {
            fails += 1;
            ensure!(r.witness.is_some(), "{} failed without a witness on {}", r.theorem, r.graph_id);
            ensure!(replay(g, r) == Ok(true), "{} witness on {} does not replay", r.theorem, r.graph_id);
        }
    }
    Ok(fails)
}

fn bistar_reproduction() -> Outcome {
    let start = Instant::now();
    let g = s32();
    let a1 = build_ssi(&g, 1).unwrap();
    ensure!((a1.order(), a1.size()) == (7, 15), "A1 has {} vertices, {} edges", a1.order(), a1.size());
    // reference adjacency of A_1(S_{3,2}), by arc
    let drawn: [(&[&str], &[&str]); 15] = [
        (&["u1", "x1"], &["x1", "x2"]),
        (&["u2", "x1"], &["x1", "x2"]),
        (&["u3", "x1"], &["x1", "x2"]),
        (&["x1", "x2"], &["x2", "x1"]),
        (&["v1", "x2"], &["x2", "x1"]),
        (&["v2", "x2"], &["x2", "x1"]),
        (&["u1", "x1"], &["x2", "x1"]),
        (&["u2", "x1"], &["x2", "x1"]),
        (&["u3", "x1"], &["x2", "x1"]),
        (&["v1", "x2"], &["x1", "x2"]),
        (&["v2", "x2"], &["x1", "x2"]),
        (&["u1", "x1"], &["u2", "x1"]),
        (&["u1", "x1"], &["u3", "x1"]),
        (&["u2", "x1"], &["u3", "x1"]),
        (&["v1", "x2"], &["v2", "x2"]),
    ];
    let expected: BTreeSet<(usize, usize)> = drawn
        .iter()
        .map(|(p, q)| {
            let (i, j) = (a1.index_of(&arc(&g, p)).unwrap(), a1.index_of(&arc(&g, q)).unwrap());
            (i.min(j), i.max(j))
        })
        .collect();
    let actual: BTreeSet<(usize, usize)> = a1.graph().edges().collect();
    ensure!(actual == expected, "A1 adjacency differs from the reference");

    let a2 = build_ssi(&g, 2).unwrap();
    let k5 = Graph::with_order(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
    ensure!(is_isomorphic(a2.graph(), &k5), "A2 is not K5");
    let labels: Vec<String> = a2.arcs().iter().map(|a| a.tokens(&g).concat()).collect();
    ensure!(
        labels == ["u1x1x2", "u2x1x2", "u3x1x2", "v1x2x1", "v2x2x1"],
        "A2 vertices {labels:?}"
    );
    ensure!(build_ssi(&g, 3).unwrap().is_empty(), "A3 is not empty");
    let took = within(start, BUDGET_BISTAR)?;
    Ok(format!("A1 7/15 matches reference adjacency, A2 = K5, A3 empty ({took:.2?})"))
}

fn degree_spot_checks() -> Outcome {
    let start = Instant::now();
    let g = s32();
    let a1 = build_ssi(&g, 1).unwrap();
    for (tokens, want) in [(["x1", "x2"], 6), (["u1", "x1"], 4)] {
        let a = arc(&g, &tokens);
        let observed = a1.degree(&a).unwrap();
        let predicted = predict_degree_a1(&g, &a).unwrap().as_integer();
        ensure!(observed == want, "deg {tokens:?} = {observed}, want {want}");
        ensure!(predicted == Some(want as i64), "predicted deg {tokens:?} = {predicted:?}");
    }
    let took = within(start, BUDGET_DEGREES)?;
    Ok(format!("deg(x1x2) = 6, deg(u1x1) = 4, both predicted ({took:.2?})"))
}

fn formula_agreement() -> Outcome {
    use TheoremId::*;
    let start = Instant::now();
    let ids = [OrderA1, SizeA1, DegreeA1, OrderA2];
    let opts = VerifyOptions {
        theorems: Some(ids.to_vec()),
        s_max: None,
        include_inapplicable: true,
    };
    let hosts = connected_corpus(3, 6);
    let mut verdicts = 0;
    let mut fails = 0;
    for (id, g) in &hosts {
        let reports = verify_with(g, id, &opts);
        for t in ids {
            let r = reports.iter().find(|r| r.theorem == t).unwrap();
            ensure!(r.applicable && r.verdict.is_some(), "{t} not evaluated on {id}");
            verdicts += 1;
        }
        fails += check_reports(g, &reports)?;
    }
    ensure!(hosts.len() == 141, "corpus has {} hosts", hosts.len());
    ensure!(fails == 0, "{fails} formula failures");
    let took = within(start, BUDGET_FORMULAS)?;
    Ok(format!("{verdicts} verdicts on {} hosts, 0 fails ({took:.2?})", hosts.len()))
}

fn structural() -> Outcome {
    use TheoremId::*;
    let ids = [Connectivity, CompletenessHalfN, AcyclicOnlyK2, CompleteAtSstarMinus1, EmptyAtSstar, Girth3, NoK1];
    let hosts = connected_corpus(3, 6);
    let t1 = Instant::now();
    let single = run_hosts(hosts.clone(), &CorpusOptions::theorems(&ids).jobs(1));
    let took1 = within(t1, BUDGET_STRUCTURAL_1)?;
    let t4 = Instant::now();
    let four = run_hosts(hosts, &CorpusOptions::theorems(&ids).jobs(4));
    let took4 = within(t4, BUDGET_STRUCTURAL_4)?;
    let mut fails = 0;
    for h in &single.hosts {
        fails += check_reports(&h.graph, &h.reports)?;
        let covered: BTreeSet<TheoremId> = h.reports.iter().map(|r| r.theorem).collect();
        ensure!(covered.contains(&NoK1) && covered.contains(&EmptyAtSstar), "{} missing reports", h.id);
    }
    let flat = |r: &ssi_core::harness::CorpusRun| r.reports().cloned().collect::<Vec<_>>();
    ensure!(flat(&single) == flat(&four), "1 and 4 workers disagree");
    ensure!(fails == 0, "{fails} structural failures");
    Ok(format!(
        "{} verdicts, 0 fails ({took1:.2?} on 1 worker, {took4:.2?} on 4)",
        single.checked_count()
    ))
}

fn families() -> Outcome {
    use TheoremId::*;
    let start = Instant::now();
    let mut checks: Vec<(Graph, TheoremId, Option<i64>)> = Vec::new();
    for k in 2..=8 {
        checks.push((generators::star(k), StarGivesKn, None));
    }
    for a in 1..=5 {
        for b in 1..=5 {
            checks.push((generators::bistar(a, b), BistarA1Join, None));
            checks.push((generators::bistar(a, b), BistarA2Complete, None));
        }
    }
    for n in 3..=8 {
        checks.push((generators::cycle(n), Regular4kMinus3, Some(5)));
    }
    for n in 3..=6 {
        checks.push((generators::complete(n), Regular4kMinus3, Some(4 * n as i64 - 7)));
    }
    checks.push((generators::petersen(), Regular4kMinus3, Some(9)));
    for (g, t, degree) in &checks {
        let r = verify(g, *t, None).unwrap();
        ensure!(r.verdict == Some(Verdict::Pass), "{t} on n={} m={}: {r:?}", g.n(), g.m());
        if degree.is_some() {
            ensure!(r.observed == *degree, "{t}: degree {:?}, want {degree:?}", r.observed);
        }
    }
    let took = within(start, BUDGET_FAMILIES)?;
    Ok(format!("{} family checks pass ({took:.2?})", checks.len()))
}

fn domination() -> Outcome {
    let start = Instant::now();
    let mut hosts: Vec<(String, Graph)> = connected_corpus(3, 5);
    hosts.push(("P6".into(), generators::path(6)));
    hosts.push(("C6".into(), generators::cycle(6)));
    hosts.push(("S33".into(), generators::bistar(3, 3)));
    for (id, g) in &hosts {
        let r = verify(g, TheoremId::DominationEquality, None).unwrap();
        check_reports(g, [&r])?;
        ensure!(r.verdict == Some(Verdict::Pass), "domination differs on {id}: {:?}", r.witness);
    }
    let took = within(start, BUDGET_DOMINATION)?;
    Ok(format!("{} hosts, gamma(A1) = gamma(L) = gamma' everywhere ({took:.2?})", hosts.len()))
}

fn isomorphism_section() -> Outcome {
    use TheoremId::*;
    let start = Instant::now();
    let ids = [OrderNIffBistar, NoSelfIsoA1, A2OrderNImpliesDeltaLe2, C3freeNoOrderMatch, LIsoIffStar];
    let run = run_hosts(connected_corpus(1, 6), &CorpusOptions::theorems(&ids).jobs(4));
    let mut fails = 0;
    for h in &run.hosts {
        fails += check_reports(&h.graph, &h.reports)?;
    }
    for (h, r) in run.failures() {
        eprintln!("  counterexample: {} {} {:?}", h.id, r.theorem, r.witness);
    }
    ensure!(fails == 0, "{fails} counterexamples (witnesses above)");
    let took = within(start, BUDGET_ISO)?;
    Ok(format!("{} verdicts on {} hosts, 0 fails ({took:.2?})", run.checked_count(), run.hosts.len()))
}

/// Every `(s+1)`-sequence of host vertices, filtered.
fn naive_ssi(g: &Graph, s: usize) -> (Vec<Vec<usize>>, BTreeSet<(usize, usize)>) {
    let n = g.n();
    let mut seqs: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..=s {
        seqs = seqs
            .into_iter()
            .flat_map(|p| (0..n).map(move |v| [p.clone(), vec![v]].concat()))
            .collect();
    }
    let vertices: Vec<Vec<usize>> = seqs
        .into_iter()
        .filter(|q| {
            let distinct = q.iter().collect::<BTreeSet<_>>().len() == q.len();
            let walk = q.windows(2).all(|w| g.has_edge(w[0], w[1]));
            let end = *q.last().unwrap();
            distinct && walk && (0..n).any(|w| !q.contains(&w) && g.has_edge(end, w))
        })
        .collect();
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

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for n in 1..=5 {
        for g in all_connected(n) {
            for s in 1..n.max(2) {
                let a = build_ssi(&g, s).unwrap();
                let (vertices, edges) = naive_ssi(&g, s);
                let arcs: Vec<Vec<usize>> = a.arcs().iter().map(|x| x.vertices().to_vec()).collect();
                ensure!(arcs == vertices, "vertex sets differ, n={n} s={s}");
                ensure!(a.graph().edges().collect::<BTreeSet<_>>() == edges, "edges differ, n={n} s={s}");
                compared += 1;
            }
        }
    }
    let took = within(start, BUDGET_ORACLE)?;
    Ok(format!("{compared} (graph, s) pairs identical ({took:.2?})"))
}

fn desk_identities() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=6 {
        for g in all_connected(n) {
            if g.min_degree().unwrap() > 1 {
                let order = build_ssi(&g, 1).unwrap().order();
                ensure!(order == 2 * g.m(), "|V(A1)| = {order} != 2m = {}", 2 * g.m());
                checked += 1;
            }
        }
    }
    for s in [2, 3] {
        let even = generators::path(2 * s + 2);
        let odd = generators::path(2 * s + 1);
        let (ae, ao) = (build_ssi(&even, s).unwrap(), build_ssi(&odd, s).unwrap());
        ensure!(ae.order() == even.n(), "|V(A{s}(P{}))| = {}", even.n(), ae.order());
        ensure!(ao.order() == odd.m(), "|V(A{s}(P{}))| = {}", odd.n(), ao.order());
    }
    let took = within(start, BUDGET_DESK)?;
    Ok(format!("{checked} hosts with delta > 1; path identities for s = 2, 3 ({took:.2?})"))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_ssi"))
            .args(["corpus", "--family", "all_connected", "--params", "5", "--jobs", jobs, "--json", "-"])
            .output()
            .expect("run ssi");
        (out.status.code(), out.stdout)
    };
    let (c1, one) = run("1");
    let (c4, four) = run("4");
    ensure!(c1 == Some(0) && c4 == Some(0), "exit codes {c1:?} {c4:?}");
    ensure!(one == four, "outputs differ");
    ensure!(!one.is_empty(), "empty output");
    Ok(format!("{} identical bytes", one.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("bistar S(3,2) reproduction", bistar_reproduction),
        ("degree spot checks", degree_spot_checks),
        ("formula-construction agreement", formula_agreement),
        ("structural theorems", structural),
        ("family theorems", families),
        ("domination equality", domination),
        ("isomorphism theorems", isomorphism_section),
        ("oracle equivalence", oracle_equivalence),
        ("desk-scale identities", desk_identities),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
