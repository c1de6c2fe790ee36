//! Replays the checked-in fuzz corpora through the parsers they target.

use std::fs;
use std::path::PathBuf;

use nsg_core::{GeneratorSet, NumericalSemigroup};
use nsg_workbench::job::parse_list;
use nsg_workbench::{parse_checks, Filter, ReportRecord, ResumeToken};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(!paths.is_empty(), "{}", dir.display());
    paths.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn generator_seeds() {
    let mut ok = 0;
    for b in seeds("parse_generators") {
        if let Ok(set) = text(&b).parse::<GeneratorSet>() {
            if let Ok(s) = NumericalSemigroup::from_generator_set(&set) {
                assert_eq!(s.to_string().parse::<GeneratorSet>().map(|g| NumericalSemigroup::from_generator_set(&g).unwrap()).unwrap(), s);
                ok += 1;
            }
        }
    }
    assert!(ok >= 5);
}

#[test]
fn json_seeds() {
    let decoded = seeds("semigroup_json").iter().filter(|b| serde_json::from_slice::<NumericalSemigroup>(b).is_ok()).count();
    assert_eq!(decoded, 5, "the mismatched and non-minimal seeds are rejected");
    for b in seeds("report_json") {
        let r: ReportRecord = serde_json::from_slice(&b).unwrap();
        assert_eq!(r.recompute_flags().unwrap(), r.flags);
    }
}

#[test]
fn list_and_token_seeds() {
    for b in seeds("resume_token") {
        if let Ok(t) = text(&b).parse::<ResumeToken>() {
            assert_eq!(t.to_string().parse::<ResumeToken>().unwrap(), t);
        }
    }
    for b in seeds("check_list") {
        if let Ok(ids) = parse_checks(text(&b)) {
            let names: Vec<&str> = ids.iter().map(|c| c.name()).collect();
            assert_eq!(parse_checks(&names.join(",")).unwrap(), ids);
        }
    }
    for b in seeds("filter_list") {
        if let Ok(f) = parse_list::<Filter>(text(&b)) {
            let names: Vec<&str> = f.iter().map(|x| x.name()).collect();
            assert_eq!(parse_list::<Filter>(&names.join(",")).unwrap(), f);
        }
    }
}
