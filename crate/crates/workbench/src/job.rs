//! Enumeration jobs: mode, filters and resume tokens.

use std::fmt;
use std::str::FromStr;

use nsg_core::{classify_with, is_complete_intersection_with, is_cyclotomic, BettiCatalog, NumericalSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("unknown filter '{0}'")]
    UnknownFilter(String),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("malformed resume token '{0}'")]
    BadToken(String),
    #[error("empty list")]
    EmptyList,
}

/// Removed generators along the tree path from `N`, written `5.7.9`; the
/// root is `root`. In gluing mode the token is the generator list of the
/// first semigroup still to process.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResumeToken(pub Vec<usize>);

impl fmt::Display for ResumeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for ResumeToken {
    type Err = JobError;

    fn from_str(s: &str) -> Result<Self, JobError> {
        let t = s.trim();
        if t == "root" {
            return Ok(ResumeToken(Vec::new()));
        }
        let bad = || JobError::BadToken(s.to_string());
        let path: Vec<usize> = t.split('.').map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if path.contains(&0) || path.windows(2).any(|w| w[0] >= w[1]) {
            // Each removed generator exceeds the previous Frobenius number,
            // so paths are strictly increasing.
            return Err(bad());
        }
        Ok(ResumeToken(path))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filter {
    Ci,
    Cyclotomic,
    BettiSorted,
    BettiDivisible,
    UniqueBetti,
    Forest,
}

impl Filter {
    pub const ALL: [Filter; 6] =
        [Filter::Ci, Filter::Cyclotomic, Filter::BettiSorted, Filter::BettiDivisible, Filter::UniqueBetti, Filter::Forest];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Ci => "ci",
            Filter::Cyclotomic => "cyclotomic",
            Filter::BettiSorted => "betti-sorted",
            Filter::BettiDivisible => "betti-divisible",
            Filter::UniqueBetti => "unique-betti",
            Filter::Forest => "forest",
        }
    }

    pub fn accepts(self, s: &NumericalSemigroup, catalog: &BettiCatalog) -> bool {
        match self {
            Filter::Ci => is_complete_intersection_with(s, catalog),
            Filter::Cyclotomic => is_cyclotomic(s),
            Filter::BettiSorted => classify_with(s, catalog).betti_sorted,
            Filter::BettiDivisible => classify_with(s, catalog).betti_divisible,
            Filter::UniqueBetti => catalog.len() == 1,
            Filter::Forest => classify_with(s, catalog).betti_forest,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = JobError;

    fn from_str(s: &str) -> Result<Self, JobError> {
        Filter::ALL.iter().copied().find(|f| f.name() == s.trim()).ok_or_else(|| JobError::UnknownFilter(s.to_string()))
    }
}

/// Comma-separated names, deduplicated and sorted.
pub fn parse_list<T: FromStr<Err = JobError> + Ord>(s: &str) -> Result<Vec<T>, JobError> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        out.push(part.parse()?);
    }
    if out.is_empty() {
        return Err(JobError::EmptyList);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    ByGenus,
    ByFrobenius,
    CiByFrobenius,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationJob {
    pub mode: Mode,
    pub limit: usize,
    pub filters: Vec<Filter>,
    pub resume_token: Option<ResumeToken>,
}

impl EnumerationJob {
    pub fn by_genus(limit: usize) -> Self {
        EnumerationJob { mode: Mode::ByGenus, limit, filters: Vec::new(), resume_token: None }
    }

    /// Gluing-based when the filters ask for complete intersections.
    pub fn by_frobenius(limit: usize, filters: Vec<Filter>) -> Self {
        let mode = if filters.contains(&Filter::Ci) { Mode::CiByFrobenius } else { Mode::ByFrobenius };
        EnumerationJob { mode, limit, filters, resume_token: None }
    }

    pub fn with_filters(mut self, filters: Vec<Filter>) -> Self {
        self.filters = filters;
        self
    }

    pub fn resuming(mut self, token: Option<ResumeToken>) -> Self {
        self.resume_token = token;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for t in ["root", "1", "1.2.3", "3.5.7", "4.6"] {
            assert_eq!(t.parse::<ResumeToken>().unwrap().to_string(), t);
        }
        for t in ["", "0", "5.3", "a.b", "3..5", "3.3", "-1"] {
            assert!(t.parse::<ResumeToken>().is_err(), "{}", t);
        }
    }

    #[test]
    fn filter_lists() {
        assert_eq!(parse_list::<Filter>("forest,ci,ci").unwrap(), vec![Filter::Ci, Filter::Forest]);
        assert_eq!(parse_list::<Filter>("nope"), Err(JobError::UnknownFilter("nope".into())));
        assert_eq!(parse_list::<Filter>(","), Err(JobError::EmptyList));
    }
}
