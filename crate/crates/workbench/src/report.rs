//! Per-semigroup report records and their JSON, CSV and DOT exports.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use nsg_core::{exponent_sequence, CheckRecord, ExponentSequence, NumericalSemigroup, OrderedSubset};

use crate::checks::{e_members, Analysis, CheckId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub element: usize,
    pub nc: usize,
    pub isolated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub ci: bool,
    pub cyclotomic: bool,
    pub symmetric: bool,
    pub betti_sorted: bool,
    pub betti_divisible: bool,
    pub unique_betti: bool,
    pub betti_forest: bool,
    pub e_forest: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub generators: Vec<usize>,
    pub frobenius: i64,
    pub genus: usize,
    pub betti: Vec<BettiRecord>,
    pub hasse_covers: Vec<(i64, i64)>,
    pub u_set: Vec<usize>,
    pub exponent_bound: usize,
    /// `e_1..e_N` as decimal strings.
    pub exponents: Vec<String>,
    pub e_set_prefix: Vec<usize>,
    pub cyclotomic_factors: Option<BTreeMap<usize, u32>>,
    pub flags: Flags,
    pub checks: Vec<CheckRecord>,
}

impl ReportRecord {
    pub fn build(analysis: &Analysis<'_>, checks: &[CheckId]) -> Self {
        let s = analysis.semigroup;
        let c = &analysis.catalog;
        let bx = OrderedSubset::from_usize(s, c.elements());
        let e = exponent_sequence(s, Some(analysis.bound));
        let cl = analysis.classification();
        let flags = Flags {
            ci: analysis.is_ci(),
            cyclotomic: analysis.is_cyclotomic(),
            symmetric: is_symmetric(s),
            betti_sorted: cl.betti_sorted,
            betti_divisible: cl.betti_divisible,
            unique_betti: cl.unique_betti,
            betti_forest: cl.betti_forest,
            e_forest: analysis.e_forest(),
        };
        ReportRecord {
            generators: s.generators().to_vec(),
            frobenius: s.frobenius(),
            genus: s.genus(),
            betti: c
                .entries
                .iter()
                .map(|(&b, en)| BettiRecord { element: b, nc: en.nc, isolated: en.isolated_count })
                .collect(),
            hasse_covers: bx.hasse().covers,
            u_set: bx.u_set().to_usize(),
            exponent_bound: analysis.bound,
            exponents: e.entries().iter().map(|v| v.to_string()).collect(),
            e_set_prefix: e_members(s, &e),
            cyclotomic_factors: analysis.cyclotomic_factors().map(|f| f.factors.clone()),
            flags,
            checks: checks.iter().flat_map(|&id| analysis.run(id)).collect(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn semigroup(&self) -> nsg_core::Result<NumericalSemigroup> {
        NumericalSemigroup::new(&self.generators)
    }

    /// Recomputes the flags from the listed fields and the generators.
    pub fn recompute_flags(&self) -> nsg_core::Result<Flags> {
        let s = self.semigroup()?;
        let elements: Vec<usize> = self.betti.iter().map(|b| b.element).collect();
        let bx = OrderedSubset::from_usize(&s, elements.iter().copied());
        let relations: usize = self.betti.iter().map(|b| b.nc - 1).sum();
        let e_forest = match &self.cyclotomic_factors {
            Some(_) => {
                let members: Vec<usize> = self
                    .exponents
                    .iter()
                    .enumerate()
                    .filter(|(i, v)| i + 1 >= 2 && v.as_str() != "0" && !self.generators.contains(&(i + 1)))
                    .map(|(i, _)| i + 1)
                    .collect();
                Some(OrderedSubset::from_usize(&s, members).hasse().is_forest())
            }
            None => self.flags.e_forest,
        };
        Ok(Flags {
            ci: relations + 1 == self.generators.len(),
            cyclotomic: self.cyclotomic_factors.is_some(),
            symmetric: s.is_natural() || 2 * self.genus as i64 == self.frobenius + 1,
            betti_sorted: bx.is_chain(),
            betti_divisible: elements.iter().enumerate().all(|(i, &a)| elements[i + 1..].iter().all(|&b| b % a == 0)),
            unique_betti: elements.len() == 1,
            betti_forest: bx.hasse().is_forest(),
            e_forest,
        })
    }

    /// JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialize");
        serde_json::to_string_pretty(&value).expect("values serialize") + "\n"
    }

    pub fn to_json_line(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialize");
        serde_json::to_string(&value).expect("values serialize")
    }
}

fn is_symmetric(s: &NumericalSemigroup) -> bool {
    s.is_natural() || s.is_symmetric().unwrap_or(false)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub const CSV_HEADER: [&str; 17] = [
    "generators",
    "frobenius",
    "genus",
    "betti",
    "u_set",
    "e_set_prefix",
    "exponent_bound",
    "exponents",
    "ci",
    "cyclotomic",
    "symmetric",
    "betti_sorted",
    "betti_divisible",
    "unique_betti",
    "betti_forest",
    "e_forest",
    "failed_checks",
];

/// Records as CSV under [`CSV_HEADER`]. List fields are space separated;
/// Betti entries read `element:nc:isolated`.
pub fn records_to_csv(records: &[ReportRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        let betti: Vec<String> = r.betti.iter().map(|b| format!("{}:{}:{}", b.element, b.nc, b.isolated)).collect();
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.check_id.as_str()).collect();
        let f = &r.flags;
        let e_forest = f.e_forest.map(|b| b.to_string()).unwrap_or_else(|| "undecided".into());
        w.write_record([
            join(&r.generators),
            r.frobenius.to_string(),
            r.genus.to_string(),
            betti.join(" "),
            join(&r.u_set),
            join(&r.e_set_prefix),
            r.exponent_bound.to_string(),
            r.exponents.join(" "),
            f.ci.to_string(),
            f.cyclotomic.to_string(),
            f.symmetric.to_string(),
            f.betti_sorted.to_string(),
            f.betti_divisible.to_string(),
            f.unique_betti.to_string(),
            f.betti_forest.to_string(),
            e_forest,
            failed.join(" "),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// One row per semigroup: `generators,e_1,...,e_N`.
pub fn exponents_to_csv(rows: &[(&NumericalSemigroup, &ExponentSequence)]) -> String {
    let width = rows.iter().map(|(_, e)| e.bound()).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["generators".to_string()];
    header.extend((1..=width).map(|k| format!("e_{}", k)));
    w.write_record(&header).expect("in-memory write");
    for (s, e) in rows {
        let mut row = vec![join(s.generators())];
        row.extend(e.entries().iter().map(|v| v.to_string()));
        row.resize(width + 1, String::new());
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// The Hasse diagram of `Betti(S)` under `<=_S`.
pub fn betti_dot(s: &NumericalSemigroup) -> String {
    let c = nsg_core::betti_elements(s);
    OrderedSubset::from_usize(s, c.elements()).hasse().to_dot("betti")
}

/// Writes `contents` to `path`, or to standard output for `-`.
pub fn write_output(path: &Path, contents: &str) -> io::Result<()> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(contents.as_bytes())?;
        return out.flush();
    }
    fs::write(path, contents)
}
