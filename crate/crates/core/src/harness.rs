//! Batch verification over families of hosts.
//!
//! Hosts are verified independently on a worker pool; the collected reports
//! are ordered by `(graph_id, theorem, s)` so the result does not depend on
//! the number of workers or on scheduling.

use rayon::prelude::*;

use crate::generators::{FamilyError, GraphFamily};
use crate::graph::Graph;
use crate::theorems::{verify_with, TheoremId, VerificationReport, VerifyOptions};

#[derive(Debug, Clone)]
pub struct CorpusOptions {
    pub verify: VerifyOptions,
    /// Worker threads; `0` lets rayon choose.
    pub jobs: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        Self {
            verify: VerifyOptions::default(),
            jobs: 1,
        }
    }
}

impl CorpusOptions {
    pub fn theorems(ids: &[TheoremId]) -> Self {
        Self {
            verify: VerifyOptions {
                theorems: Some(ids.to_vec()),
                ..Default::default()
            },
            ..Default::default()
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

#[derive(Debug, Clone)]
pub struct HostRun {
    pub id: String,
    pub graph: Graph,
    pub reports: Vec<VerificationReport>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusRun {
    pub hosts: Vec<HostRun>,
}

impl CorpusRun {
    pub fn reports(&self) -> impl Iterator<Item = &VerificationReport> {
        self.hosts.iter().flat_map(|h| h.reports.iter())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&HostRun, &VerificationReport)> {
        self.hosts
            .iter()
            .flat_map(|h| h.reports.iter().filter(|r| r.is_fail()).map(move |r| (h, r)))
    }

    pub fn fail_count(&self) -> usize {
        self.failures().count()
    }

    /// Number of reports with a verdict.
    pub fn checked_count(&self) -> usize {
        self.reports().filter(|r| r.verdict.is_some()).count()
    }
}

/// Verifies every `(id, graph)` pair.
pub fn run_hosts(hosts: Vec<(String, Graph)>, opts: &CorpusOptions) -> CorpusRun {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("thread pool");
    let mut hosts: Vec<HostRun> = pool.install(|| {
        hosts
            .into_par_iter()
            .map(|(id, graph)| {
                let mut reports = verify_with(&graph, &id, &opts.verify);
                reports.sort_by_key(|r| (r.theorem, r.s));
                HostRun { id, graph, reports }
            })
            .collect()
    });
    hosts.sort_by(|a, b| a.id.cmp(&b.id));
    CorpusRun { hosts }
}

/// Generates every member of `families` and verifies it.
pub fn run_corpus(families: &[GraphFamily], opts: &CorpusOptions) -> Result<CorpusRun, FamilyError> {
    let mut hosts = Vec::new();
    for f in families {
        hosts.extend(f.members()?);
    }
    Ok(run_hosts(hosts, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilyKind;

    #[test]
    fn worker_count_does_not_matter() {
        let f = GraphFamily::new(FamilyKind::AllConnected, vec![4]).unwrap();
        let one = run_corpus(std::slice::from_ref(&f), &CorpusOptions::default()).unwrap();
        let four = run_corpus(&[f], &CorpusOptions::default().jobs(4)).unwrap();
        let flat = |r: &CorpusRun| r.reports().cloned().collect::<Vec<_>>();
        assert_eq!(flat(&one), flat(&four));
        assert_eq!(one.hosts.len(), 6);
        assert_eq!(one.fail_count(), 0);
    }

    #[test]
    fn input_order_does_not_matter() {
        let f = GraphFamily::new(FamilyKind::AllConnected, vec![4]).unwrap();
        let mut hosts = f.members().unwrap();
        let forward = run_hosts(hosts.clone(), &CorpusOptions::default());
        hosts.reverse();
        let backward = run_hosts(hosts, &CorpusOptions::default().jobs(3));
        let flat = |r: &CorpusRun| r.reports().cloned().collect::<Vec<_>>();
        assert_eq!(flat(&forward), flat(&backward));
    }

    #[test]
    fn bistar_family_passes() {
        let families: Vec<GraphFamily> = (1..=3)
            .flat_map(|a| (1..=3).map(move |b| GraphFamily::new(FamilyKind::Bistar, vec![a, b]).unwrap()))
            .collect();
        let run = run_corpus(&families, &CorpusOptions::theorems(&[TheoremId::BistarA2Complete])).unwrap();
        assert_eq!(run.checked_count(), 9);
        assert_eq!(run.fail_count(), 0);
    }
}
