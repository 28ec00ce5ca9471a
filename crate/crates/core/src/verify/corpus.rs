use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::source::{Manifest, ManifestEntry, Source};
use super::{check, TheoremId, VerificationReport};

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
    /// Record wall time per report. Off by default so that output is
    /// byte-stable.
    pub timings: bool,
    pub fixture_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemReport {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub reports: Vec<VerificationReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub checks: Vec<TheoremId>,
    pub items: Vec<ItemReport>,
    pub reports: usize,
    pub errors: usize,
    pub violations: usize,
    pub candidate_counterexamples: usize,
}

impl AggregateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn run_item(entry: &ManifestEntry, checks: &[TheoremId], opts: &CorpusOptions) -> ItemReport {
    let mut item = ItemReport {
        source: entry.source.clone(),
        group: None,
        group_order: None,
        error: None,
        reports: Vec::new(),
    };
    let result = (|| -> Result<()> {
        let g: FiniteGroup = entry
            .source
            .parse::<Source>()?
            .build(opts.fixture_dir.as_deref())?;
        item.group = Some(g.label().to_string());
        item.group_order = Some(g.order());
        let supplements = entry.witnesses(&g)?;
        for &p in &entry.primes {
            for &t in checks {
                if !t.admits_prime(p) {
                    continue;
                }
                let start = Instant::now();
                let mut r = check(t, &g, p, &supplements)?;
                if opts.timings {
                    r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
                }
                item.reports.push(r);
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        item.error = Some(e.to_string());
    }
    item
}

/// Runs `checks` over every manifest entry and prime the check admits.
/// Item failures are recorded and do not stop the sweep; items are ordered
/// by group label, then source.
pub fn run_corpus(
    manifest: &Manifest,
    checks: &[TheoremId],
    opts: &CorpusOptions,
) -> Result<AggregateReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let mut items: Vec<ItemReport> = pool.install(|| {
        manifest
            .entries
            .par_iter()
            .map(|e| run_item(e, checks, opts))
            .collect()
    });
    items.sort_by(|a, b| {
        a.group
            .as_deref()
            .unwrap_or("")
            .cmp(b.group.as_deref().unwrap_or(""))
            .then_with(|| a.source.cmp(&b.source))
    });
    let all = || items.iter().flat_map(|i| &i.reports);
    let reports = all().count();
    let violations = all().filter(|r| r.is_violation()).count();
    let candidate_counterexamples = all()
        .filter(|r| r.consistency == super::Consistency::CandidateCounterexample)
        .count();
    let errors = items.iter().filter(|i| i.error.is_some()).count();
    Ok(AggregateReport {
        checks: checks.to_vec(),
        items,
        reports,
        errors,
        violations,
        candidate_counterexamples,
    })
}
