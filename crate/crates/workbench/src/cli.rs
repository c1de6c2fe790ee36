//! The `nsg` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use nsg_core::{exponent_sequence, factorization_graph, gluing_decompose, GeneratorSet, NumericalSemigroup, OrderedSubset};

use crate::checks::{parse_checks, Analysis, CheckId};
use crate::enumerate::genus_counts;
use crate::job::{parse_list, EnumerationJob, Filter, Mode, ResumeToken};
use crate::report::{betti_dot, exponents_to_csv, records_to_csv, ReportRecord};
use crate::verify::{run_enumeration, run_stream, job_stream, single_stream, threads_from_env, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Longest exponent prefix accepted from `--count` and `--bound`.
pub const MAX_PREFIX: usize = 100_000;
/// `--graph` accepts elements up to this or the semigroup's default bound.
pub const MAX_GRAPH_ELEMENT: usize = 4096;

fn check_prefix(n: Option<usize>) -> Result<(), Usage> {
    match n {
        Some(n) if n > MAX_PREFIX => Err(Usage(format!("prefix length {} exceeds the limit {}", n, MAX_PREFIX))),
        _ => Ok(()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "nsg", version, about = "Numerical semigroup workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one semigroup.
    Analyze {
        generators: String,
        /// Exponent prefix length (raised to F + 2 max(A) + 1 if smaller).
        #[arg(long)]
        bound: Option<usize>,
        /// Write the report as JSON (`-` for standard output).
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Write the report as one CSV row.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        /// Write the Betti Hasse diagram as DOT.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// The first exponents e_1, e_2, ... of P_S.
    Exponents {
        generators: String,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Betti elements with their R-class and isolated-factorization counts.
    Betti {
        generators: String,
        /// Write the Hasse diagram under <=_S as DOT.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Print the factorization graph of one element as DOT.
        #[arg(long, value_name = "ELEMENT")]
        graph: Option<i64>,
    },
    /// List semigroups by genus or Frobenius number.
    Enumerate {
        #[command(flatten)]
        family: Family,
        /// Comma-separated: ci, cyclotomic, betti-sorted, betti-divisible, unique-betti, forest.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_name = "TOKEN")]
        resume: Option<String>,
    },
    /// Run checks over a family or a single semigroup.
    Verify {
        #[command(flatten)]
        family: Family,
        /// A single semigroup instead of a family.
        #[arg(long, conflicts_with_all = ["genus_max", "frobenius"])]
        gens: Option<String>,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_name = "TOKEN")]
        resume: Option<String>,
        #[arg(long)]
        bound: Option<usize>,
        /// Stop at the first counterexample and print a resume token.
        #[arg(long)]
        halt_on_fail: bool,
        /// Write counterexample records as JSON lines.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Family {
    #[arg(long, conflicts_with = "frobenius")]
    genus_max: Option<usize>,
    #[arg(long)]
    frobenius: Option<usize>,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn parse_semigroup(text: &str) -> Result<NumericalSemigroup, Usage> {
    let set: GeneratorSet = text.parse()?;
    Ok(NumericalSemigroup::from_generator_set(&set)?)
}

fn parse_token(t: Option<&String>) -> Result<Option<ResumeToken>, Usage> {
    Ok(t.map(|t| t.parse()).transpose()?)
}

fn parse_filters(f: Option<&String>) -> Result<Vec<Filter>, Usage> {
    Ok(f.map(|f| parse_list::<Filter>(f)).transpose()?.unwrap_or_default())
}

fn job_for(family: &Family, filters: Vec<Filter>, token: Option<ResumeToken>) -> Result<EnumerationJob, Usage> {
    let job = match (family.genus_max, family.frobenius) {
        (Some(g), None) => EnumerationJob::by_genus(g).with_filters(filters),
        (None, Some(f)) if f >= 1 => EnumerationJob::by_frobenius(f, filters),
        (None, Some(_)) => return Err(Usage("--frobenius must be at least 1".into())),
        _ => return Err(Usage("one of --genus-max or --frobenius is required".into())),
    };
    Ok(job.resuming(token))
}

fn emit(path: &Path, contents: &str, out: &mut dyn Write) -> Result<(), Usage> {
    if path.as_os_str() == "-" {
        out.write_all(contents.as_bytes())?;
    } else {
        std::fs::write(path, contents).map_err(|e| Usage(format!("{}: {}", path.display(), e)))?;
    }
    Ok(())
}

fn set(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn analyze(s: &NumericalSemigroup, bound: Option<usize>, out: &mut dyn Write) -> Result<ReportRecord, Usage> {
    let a = Analysis::new(s, bound);
    let r = ReportRecord::build(&a, &CheckId::ALL);
    writeln!(out, "semigroup: {:?}", s)?;
    writeln!(out, "frobenius: {}", s.frobenius())?;
    writeln!(out, "genus: {}", s.genus())?;
    writeln!(out, "multiplicity: {}", s.multiplicity())?;
    writeln!(out, "embedding dimension: {}", s.embedding_dimension())?;
    writeln!(out, "gaps: {}", set(s.gaps()))?;
    writeln!(out, "betti elements (element, nc, isolated):")?;
    for b in &r.betti {
        writeln!(out, "  {} {} {}", b.element, b.nc, b.isolated)?;
    }
    let covers: Vec<String> = r.hasse_covers.iter().map(|(a, b)| format!("{}->{}", a, b)).collect();
    writeln!(out, "hasse covers: {}", covers.join(" "))?;
    writeln!(out, "u-set: {}", set(&r.u_set))?;
    writeln!(out, "exponent bound: {}", r.exponent_bound)?;
    writeln!(out, "exponents: {}", r.exponents.join(", "))?;
    writeln!(out, "e-set prefix: {}", set(&r.e_set_prefix))?;
    match &r.cyclotomic_factors {
        Some(f) => {
            let parts: Vec<String> = f.iter().map(|(d, h)| if *h == 1 { format!("Phi_{}", d) } else { format!("Phi_{}^{}", d, h) }).collect();
            writeln!(out, "cyclotomic: yes, P_S = {}", if parts.is_empty() { "1".into() } else { parts.join(" ") })?;
        }
        None => writeln!(out, "cyclotomic: no")?,
    }
    match gluing_decompose(s).filter(|_| r.flags.ci) {
        Some(t) => writeln!(out, "complete intersection: yes, {}", t)?,
        None => writeln!(out, "complete intersection: no")?,
    }
    let f = &r.flags;
    let e_forest = f.e_forest.map(|b| b.to_string()).unwrap_or_else(|| "undecided".into());
    writeln!(
        out,
        "flags: symmetric={} betti-sorted={} betti-divisible={} unique-betti={} betti-forest={} e-forest={}",
        f.symmetric, f.betti_sorted, f.betti_divisible, f.unique_betti, f.betti_forest, e_forest
    )?;
    writeln!(out, "checks:")?;
    for c in &r.checks {
        let verdict = if c.pass { "pass" } else { "FAIL" };
        match &c.witness {
            Some(w) => writeln!(out, "  {} {}: {} [{}]", verdict, c.check_id, c.statement_ref, w)?,
            None => writeln!(out, "  {} {}: {}", verdict, c.check_id, c.statement_ref)?,
        }
    }
    Ok(r)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Usage> {
    let threads = threads_from_env();
    match cli.command {
        Command::Analyze { generators, bound, json, csv, dot } => {
            check_prefix(bound)?;
            let s = parse_semigroup(&generators)?;
            let quiet = [&json, &csv, &dot].iter().any(|p| p.as_deref() == Some(Path::new("-")));
            let mut sink = std::io::sink();
            let r = analyze(&s, bound, if quiet { &mut sink } else { &mut *out })?;
            if let Some(p) = json {
                emit(&p, &r.to_json(), out)?;
            }
            if let Some(p) = csv {
                emit(&p, &records_to_csv(std::slice::from_ref(&r)), out)?;
            }
            if let Some(p) = dot {
                emit(&p, &betti_dot(&s), out)?;
            }
            Ok(if r.all_pass() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Exponents { generators, count, csv } => {
            check_prefix(count)?;
            let s = parse_semigroup(&generators)?;
            let n = count.unwrap_or_else(|| s.default_bound());
            let e = exponent_sequence(&s, Some(n));
            writeln!(out, "{}", e)?;
            if let Some(p) = csv {
                emit(&p, &exponents_to_csv(&[(&s, &e)]), out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Betti { generators, dot, graph } => {
            let s = parse_semigroup(&generators)?;
            if let Some(v) = graph {
                let limit = MAX_GRAPH_ELEMENT.max(s.default_bound());
                if v > limit as i64 {
                    return Err(Usage(format!("--graph element {} exceeds the limit {}", v, limit)));
                }
                write!(out, "{}", factorization_graph(&s, v)?.to_dot())?;
                return Ok(EXIT_OK);
            }
            let c = nsg_core::betti_elements(&s);
            writeln!(out, "betti elements of {:?}: {}", s, set(&c.elements()))?;
            for (b, e) in &c.entries {
                let z: Vec<String> = e.factorizations.iter().map(|f| f.to_string()).collect();
                writeln!(out, "  {}: nc = {}, isolated = {}, factorizations {}", b, e.nc, e.isolated_count, z.join(" "))?;
            }
            let x = OrderedSubset::from_usize(&s, c.elements());
            let covers: Vec<String> = x.hasse().covers.iter().map(|(a, b)| format!("{}->{}", a, b)).collect();
            writeln!(out, "hasse covers: {}", covers.join(" "))?;
            writeln!(out, "u-set: {}", set(&x.u_set().to_usize()))?;
            if let Some(p) = dot {
                emit(&p, &betti_dot(&s), out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { family, filter, count_only, resume } => {
            let job = job_for(&family, parse_filters(filter.as_ref())?, parse_token(resume.as_ref())?)?;
            let found = run_enumeration(&job, threads);
            if !count_only {
                for s in &found {
                    writeln!(out, "{}", s)?;
                }
            }
            writeln!(out, "count: {}", found.len())?;
            if job.mode == Mode::ByGenus && job.filters.is_empty() && job.resume_token.is_none() {
                let per: Vec<String> = genus_counts(job.limit).iter().map(|c| c.to_string()).collect();
                writeln!(out, "per-genus: {}", per.join(","))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { family, gens, checks, filter, resume, bound, halt_on_fail, json } => {
            check_prefix(bound)?;
            let checks = parse_checks(&checks)?;
            let filters = parse_filters(filter.as_ref())?;
            let stream = match gens {
                Some(g) => single_stream(parse_semigroup(&g)?),
                None => job_stream(&job_for(&family, filters.clone(), parse_token(resume.as_ref())?)?),
            };
            let opts = VerifyOptions { bound, halt_on_fail, threads };
            let summary = run_stream(stream, &filters, &checks, &opts);
            writeln!(out, "checked: {}", summary.checked)?;
            for (name, t) in &summary.tallies {
                writeln!(out, "{}: {} passed, {} failed", name, t.passed, t.failed)?;
            }
            writeln!(out, "counterexamples: {}", summary.counterexamples.len())?;
            for r in &summary.counterexamples {
                writeln!(out, "counterexample: {}", r.to_json_line())?;
            }
            if let Some(p) = json {
                let lines: String = summary.counterexamples.iter().map(|r| r.to_json_line() + "\n").collect();
                emit(&p, &lines, out)?;
            }
            if halt_on_fail && !summary.all_pass() {
                match &summary.resume {
                    Some(t) => writeln!(out, "halted; resume with --resume {}", t)?,
                    None => writeln!(out, "halted at the last semigroup")?,
                }
            }
            Ok(if summary.all_pass() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{}", text);
            } else {
                let _ = write!(err, "{}", text);
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["nsg"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exponents_line() {
        let (code, out, _) = call(&["exponents", "3,5,7", "--count", "6"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1, 0, -1, 0, -1, 0\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["exponents", "4,6"]).0, EXIT_USAGE);
        assert_eq!(call(&["exponents", "0,3"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "--genus-max", "3", "--filter", "bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--genus-max", "3", "--checks", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--genus-max", "3", "--resume", "5.3"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn enumerate_counts() {
        let (code, out, _) = call(&["enumerate", "--genus-max", "5", "--count-only"]);
        assert_eq!(code, 0);
        assert_eq!(out, "count: 27\nper-genus: 1,1,2,4,7,12\n");
        let (_, out, _) = call(&["enumerate", "--frobenius", "3"]);
        assert_eq!(out, "4,5,6,7\n2,5\ncount: 2\n");
    }

    #[test]
    fn analyze_and_verify_single() {
        let (code, out, _) = call(&["analyze", "10,15,16,17,19"]);
        assert_eq!(code, 0, "{}", out);
        assert!(out.contains("hasse covers: 30->57 32->48 32->57"));
        assert!(out.contains("u-set: {30,32,34,35,36,48}"));
        let (code, out, _) = call(&["verify", "--gens", "10,15,16,17,19", "--checks", "all"]);
        assert_eq!(code, 0);
        assert!(out.contains("counterexamples: 0"));
        let (_, json, _) = call(&["analyze", "4,6,9", "--json", "-"]);
        assert!(json.starts_with("{\n"));
        assert!(serde_json::from_str::<ReportRecord>(&json).is_ok());
    }
}
