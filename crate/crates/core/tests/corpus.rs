use std::collections::BTreeMap;

use ssi_core::formulas::{predict_order_a1, predict_order_a2, predict_p3_count, predict_size_a1};
use ssi_core::generators::all_connected;
use ssi_core::theorems::{replay, verify_all, TheoremId, Verdict};
use ssi_core::{build_ssi, Graph};

#[test]
fn connected_corpus_has_no_counterexamples() {
    let mut applicable: BTreeMap<TheoremId, usize> = BTreeMap::new();
    for n in 1..=6 {
        for g in all_connected(n) {
            for r in verify_all(&g, None) {
                *applicable.entry(r.theorem).or_default() += 1;
                if r.verdict == Some(Verdict::Fail) {
                    let stands = replay(&g, &r);
                    panic!("{} fails on {:?}: {r:?} (replay {stands:?})", r.theorem, g.edges().collect::<Vec<_>>());
                }
            }
        }
    }
    // every claim has hypotheses met somewhere in the corpus
    for &t in TheoremId::ALL {
        assert!(applicable.get(&t).copied().unwrap_or(0) > 0, "{t} never applicable");
    }
}

fn brute_p3(g: &Graph) -> usize {
    // unordered 3-vertex paths: middle vertex plus an unordered pair of its neighbours
    let mut count = 0;
    for a in 0..g.n() {
        for b in 0..g.n() {
            for c in a + 1..g.n() {
                if b != a && b != c && g.has_edge(a, b) && g.has_edge(b, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn formulas_match_construction_and_brute_force() {
    for n in 1..=7 {
        for g in all_connected(n) {
            assert_eq!(predict_p3_count(&g).as_integer(), Some(brute_p3(&g) as i64));
            let line = g.line_graph();
            assert_eq!(line.n(), g.m());
            let pairs: usize = g.degrees().iter().map(|d| d * d.saturating_sub(1) / 2).sum();
            assert_eq!(line.m(), pairs);

            let a1 = build_ssi(&g, 1).unwrap();
            if n >= 3 {
                assert_eq!(predict_order_a1(&g).as_integer(), Some(a1.order() as i64));
                assert_eq!(predict_size_a1(&g).as_integer(), Some(a1.size() as i64));
            }
            let a2 = build_ssi(&g, 2).unwrap();
            assert_eq!(predict_order_a2(&g).as_integer(), Some(a2.order() as i64), "{:?}", g.edges().collect::<Vec<_>>());
        }
    }
}

#[test]
fn seven_vertex_corpus_structural_claims() {
    use TheoremId::*;
    let ids = [Connectivity, CompletenessHalfN, AcyclicOnlyK2, Girth3, NoK1, OrderA1, SizeA1, DegreeA1, OrderA2];
    let opts = ssi_core::theorems::VerifyOptions {
        theorems: Some(ids.to_vec()),
        s_max: Some(3),
        include_inapplicable: false,
    };
    let mut checked = 0;
    for g in all_connected(7) {
        for r in ssi_core::theorems::verify_with(&g, "c7", &opts) {
            assert_ne!(r.verdict, Some(Verdict::Fail), "{r:?}");
            checked += 1;
        }
    }
    assert!(checked > 853 * 5);
}
