mod common;

use std::collections::BTreeSet;

use nsg_core::{is_complete_intersection, NumericalSemigroup};
use nsg_workbench::verify::{job_stream, single_stream};
use nsg_workbench::*;

fn gap_lists<I: Iterator<Item = NumericalSemigroup>>(it: I) -> Vec<Vec<usize>> {
    it.map(|s| s.gaps().to_vec()).collect()
}

#[test]
fn genus_tree_matches_gap_sets() {
    let tree = gap_lists(enumerate_by_genus(8));
    let distinct: BTreeSet<Vec<usize>> = tree.iter().cloned().collect();
    assert_eq!(distinct.len(), tree.len(), "tree visits each semigroup once");
    let oracle: BTreeSet<Vec<usize>> = common::gap_sets(15).into_iter().filter(|g| g.len() <= 8).collect();
    assert_eq!(distinct, oracle);
    assert_eq!(genus_counts(8), common::genus_counts(8));
}

#[test]
fn frobenius_tree_matches_gap_sets() {
    let oracle = common::gap_sets(12);
    for f in 1..=12usize {
        let tree: BTreeSet<Vec<usize>> = gap_lists(enumerate_by_frobenius(f as i64)).into_iter().collect();
        let want: BTreeSet<Vec<usize>> = oracle.iter().filter(|g| g.last() == Some(&f)).cloned().collect();
        assert_eq!(tree, want, "F = {}", f);
    }
}

#[test]
fn gluing_enumeration_matches_tree() {
    for f in 1..=25i64 {
        let glued: Vec<Vec<usize>> = enumerate_ci_by_frobenius(f).iter().map(|s| s.generators().to_vec()).collect();
        let mut tree: Vec<Vec<usize>> = enumerate_by_frobenius(f)
            .filter(is_complete_intersection)
            .map(|s| s.generators().to_vec())
            .collect();
        tree.sort();
        assert_eq!(glued, tree, "F = {}", f);
        if f % 2 == 0 {
            assert!(glued.is_empty(), "F = {}", f);
        }
    }
}

#[test]
fn resuming_yields_the_suffix() {
    let job = EnumerationJob::by_genus(7);
    let full: Vec<(ResumeToken, NumericalSemigroup)> = job_stream(&job).collect();
    for k in [0, 1, 5, 40, full.len() / 2, full.len() - 1] {
        let token = full[k].0.clone();
        let rest: Vec<NumericalSemigroup> = job_stream(&job.clone().resuming(Some(token))).map(|(_, s)| s).collect();
        let want: Vec<NumericalSemigroup> = full[k..].iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(rest, want, "k = {}", k);
    }
    let ci = EnumerationJob::by_frobenius(31, vec![Filter::Ci]);
    let full: Vec<(ResumeToken, NumericalSemigroup)> = job_stream(&ci).collect();
    let rest: Vec<ResumeToken> = job_stream(&ci.clone().resuming(Some(full[3].0.clone()))).map(|(t, _)| t).collect();
    assert_eq!(rest, full[3..].iter().map(|(t, _)| t.clone()).collect::<Vec<_>>());
}

#[test]
fn halting_resumes_without_gaps() {
    // Stop after ten items, then resume from the returned token.
    let job = EnumerationJob::by_genus(6);
    let all: Vec<ResumeToken> = job_stream(&job).map(|(t, _)| t).collect();
    let mut seen = Vec::new();
    let next = verify::process(job_stream(&job), Some(3), |s| s.genus(), |t, _, _| {
        seen.push(t.clone());
        seen.len() < 10
    });
    assert_eq!(next.as_ref(), Some(&all[10]));
    let rest: Vec<ResumeToken> = job_stream(&job.clone().resuming(next)).map(|(t, _)| t).collect();
    seen.extend(rest);
    assert_eq!(seen, all);
}

#[test]
fn filtered_counts_are_thread_independent() {
    let job = EnumerationJob::by_genus(11).with_filters(vec![Filter::Cyclotomic]);
    let one = run_enumeration(&job, Some(1));
    let many = run_enumeration(&job, Some(5));
    assert_eq!(one, many);
    assert!(one.iter().all(nsg_core::is_cyclotomic));
    let s = NumericalSemigroup::new(&[10, 15, 16, 17, 19]).unwrap();
    let checks = parse_checks("all").unwrap();
    let summary = verify::run_stream(single_stream(s), &[], &checks, &VerifyOptions::default());
    assert_eq!(summary.checked, 1);
    assert!(summary.all_pass(), "{:?}", summary.counterexamples);
}
