//! Verification campaigns and filtered enumeration over job streams.

use std::collections::BTreeMap;

use rayon::prelude::*;

use nsg_core::{betti_elements, NumericalSemigroup};

use crate::checks::{Analysis, CheckId};
use crate::enumerate::{enumerate_ci_by_frobenius, TreeBound, TreeWalker};
use crate::job::{EnumerationJob, Filter, Mode, ResumeToken};
use crate::report::ReportRecord;

/// Semigroups processed per parallel batch.
pub const CHUNK: usize = 2048;

pub type Stream = Box<dyn Iterator<Item = (ResumeToken, NumericalSemigroup)> + Send>;

/// The job's semigroups in their deterministic order, starting at the
/// resume point.
pub fn job_stream(job: &EnumerationJob) -> Stream {
    let token = job.resume_token.clone();
    match job.mode {
        Mode::ByGenus => Box::new(
            TreeWalker::resuming(TreeBound::GenusAtMost(job.limit), token.as_ref()).map(|n| (n.token(), n.semigroup)),
        ),
        Mode::ByFrobenius => Box::new(
            TreeWalker::resuming(TreeBound::Frobenius(job.limit as i64), token.as_ref()).map(|n| (n.token(), n.semigroup)),
        ),
        Mode::CiByFrobenius => {
            let all = enumerate_ci_by_frobenius(job.limit as i64);
            Box::new(
                all.into_iter()
                    .map(|s| (ResumeToken(s.generators().to_vec()), s))
                    .filter(move |(t, _)| token.as_ref().is_none_or(|start| t >= start)),
            )
        }
    }
}

/// A stream holding exactly `s`.
pub fn single_stream(s: NumericalSemigroup) -> Stream {
    Box::new(std::iter::once((ResumeToken(s.generators().to_vec()), s)))
}

pub fn passes_filters(s: &NumericalSemigroup, filters: &[Filter]) -> bool {
    if filters.is_empty() {
        return true;
    }
    let catalog = betti_elements(s);
    filters.iter().all(|f| f.accepts(s, &catalog))
}

/// Worker count from `NSG_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("NSG_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
    }
}

/// Maps `f` over the stream in parallel batches and hands results to `sink`
/// in stream order. `sink` returns `false` to stop; the token of the next
/// unprocessed item is then returned.
pub fn process<T, F, K>(stream: Stream, threads: Option<usize>, f: F, mut sink: K) -> Option<ResumeToken>
where
    T: Send,
    F: Fn(&NumericalSemigroup) -> T + Sync + Send,
    K: FnMut(&ResumeToken, &NumericalSemigroup, T) -> bool + Send,
{
    with_pool(threads, move || {
        let mut stream = stream.peekable();
        loop {
            let batch: Vec<(ResumeToken, NumericalSemigroup)> = stream.by_ref().take(CHUNK).collect();
            if batch.is_empty() {
                return None;
            }
            let results: Vec<T> = batch.par_iter().map(|(_, s)| f(s)).collect();
            let mut items = batch.into_iter().zip(results);
            while let Some(((token, s), r)) = items.next() {
                if !sink(&token, &s, r) {
                    return items.next().map(|((t, _), _)| t).or_else(|| stream.peek().map(|(t, _)| t.clone()));
                }
            }
        }
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationSummary {
    /// Semigroups that passed the filters and were checked.
    pub checked: u64,
    pub tallies: BTreeMap<String, CheckTally>,
    pub counterexamples: Vec<ReportRecord>,
    /// Where to resume after a halt on the first counterexample.
    pub resume: Option<ResumeToken>,
}

impl VerificationSummary {
    pub fn all_pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub bound: Option<usize>,
    pub halt_on_fail: bool,
    pub threads: Option<usize>,
}

/// Runs `checks` on every semigroup of the stream that passes `filters`.
pub fn run_stream(stream: Stream, filters: &[Filter], checks: &[CheckId], opts: &VerifyOptions) -> VerificationSummary {
    let mut summary = VerificationSummary::default();
    for c in checks {
        summary.tallies.insert(c.name().to_string(), CheckTally::default());
    }
    let bound = opts.bound;
    let work = |s: &NumericalSemigroup| -> Option<(Vec<bool>, Option<ReportRecord>)> {
        if !passes_filters(s, filters) {
            return None;
        }
        let a = Analysis::new(s, bound);
        let verdicts: Vec<bool> = checks.iter().map(|&c| a.run(c).iter().all(|r| r.pass)).collect();
        let bad = verdicts.iter().any(|&v| !v).then(|| ReportRecord::build(&a, checks));
        Some((verdicts, bad))
    };
    let halt = opts.halt_on_fail;
    let resume = process(stream, opts.threads, work, |_, _, r| {
        let Some((verdicts, bad)) = r else { return true };
        summary.checked += 1;
        for (c, ok) in checks.iter().zip(verdicts) {
            let t = summary.tallies.get_mut(c.name()).expect("tally per check");
            if ok {
                t.passed += 1;
            } else {
                t.failed += 1;
            }
        }
        match bad {
            Some(record) => {
                summary.counterexamples.push(record);
                !halt
            }
            None => true,
        }
    });
    summary.resume = resume;
    summary
}

pub fn run_verification(job: &EnumerationJob, checks: &[CheckId], opts: &VerifyOptions) -> VerificationSummary {
    run_stream(job_stream(job), &job.filters, checks, opts)
}

/// The job's semigroups that pass its filters, in stream order.
pub fn run_enumeration(job: &EnumerationJob, threads: Option<usize>) -> Vec<NumericalSemigroup> {
    let mut out = Vec::new();
    let filters = job.filters.clone();
    process(job_stream(job), threads, |s| passes_filters(s, &filters), |_, s, keep| {
        if keep {
            out.push(s.clone());
        }
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_result_for_any_worker_count() {
        let job = EnumerationJob::by_genus(9);
        let checks = [CheckId::CiCyclotomic, CheckId::Thm2];
        let one = run_verification(&job, &checks, &VerifyOptions { threads: Some(1), ..Default::default() });
        let four = run_verification(&job, &checks, &VerifyOptions { threads: Some(4), ..Default::default() });
        assert_eq!(one, four);
        assert_eq!(one.checked, 1 + 1 + 2 + 4 + 7 + 12 + 23 + 39 + 67 + 118);
        assert!(one.all_pass());
    }

    #[test]
    fn filtered_enumeration() {
        let ci = run_enumeration(&EnumerationJob::by_frobenius(11, vec![Filter::Ci]), Some(2));
        let tree = EnumerationJob { mode: Mode::ByFrobenius, limit: 11, filters: vec![Filter::Ci], resume_token: None };
        let brute = run_enumeration(&tree, Some(2));
        let mut b: Vec<Vec<usize>> = brute.iter().map(|s| s.generators().to_vec()).collect();
        b.sort();
        assert_eq!(ci.iter().map(|s| s.generators().to_vec()).collect::<Vec<_>>(), b);
    }

    #[test]
    fn stopping_reports_next_token() {
        let gens = [vec![3usize, 5, 7], vec![3, 4], vec![2, 5], vec![4, 6, 9]];
        let stream = |v: &[Vec<usize>]| -> Stream {
            let v = v.to_vec();
            Box::new(v.into_iter().map(|g| (ResumeToken(g.clone()), NumericalSemigroup::new(&g).unwrap())))
        };
        let mut seen = Vec::new();
        let next = process(stream(&gens), Some(2), |s| s.genus(), |_, s, g| {
            seen.push(g);
            s.generators() != [3, 4]
        });
        assert_eq!(seen, vec![3, 3]);
        assert_eq!(next, Some(ResumeToken(vec![2, 5])));
        let next = process(stream(&gens), None, |s| s.genus(), |_, s, _| s.generators() != [4, 6, 9]);
        assert_eq!(next, None);
    }
}
