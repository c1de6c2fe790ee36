//! Named checks run per semigroup by verification campaigns.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use nsg_core::ci::ci_hilbert_identity;
use nsg_core::{
    betti_elements, classify_with, exponent_sequence, factor_into_cyclotomics, gluing_decompose, is_complete_intersection_with,
    verify_ci_identities, AnalysisContext, BettiCatalog, CheckRecord, Classification, CyclotomicFactorization, ExponentSequence,
    NumericalSemigroup, OrderedSubset,
};

use crate::job::JobError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    CiCyclotomic,
    Thm1,
    Thm2,
    Thm52,
    Thm57,
    Prop48,
    Thm3,
    ConjMsg,
    ConjBetti,
    ConjEquivalence,
    EForest,
    ForestMsg,
    DoubleForest,
    EarlyNegative,
    CiIdentities,
    CiAgreement,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::CiCyclotomic,
        CheckId::Thm1,
        CheckId::Thm2,
        CheckId::Thm52,
        CheckId::Thm57,
        CheckId::Prop48,
        CheckId::Thm3,
        CheckId::ConjMsg,
        CheckId::ConjBetti,
        CheckId::ConjEquivalence,
        CheckId::EForest,
        CheckId::ForestMsg,
        CheckId::DoubleForest,
        CheckId::EarlyNegative,
        CheckId::CiIdentities,
        CheckId::CiAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::CiCyclotomic => "ci-cyclotomic",
            CheckId::Thm1 => "thm1",
            CheckId::Thm2 => "thm2",
            CheckId::Thm52 => "thm5.2",
            CheckId::Thm57 => "thm5.7",
            CheckId::Prop48 => "prop4.8",
            CheckId::Thm3 => "thm3",
            CheckId::ConjMsg => "conj-msg",
            CheckId::ConjBetti => "conj-betti",
            CheckId::ConjEquivalence => "conj-equivalence",
            CheckId::EForest => "e-forest",
            CheckId::ForestMsg => "forest-msg",
            CheckId::DoubleForest => "double-forest",
            CheckId::EarlyNegative => "early-negative",
            CheckId::CiIdentities => "ci-identities",
            CheckId::CiAgreement => "ci-agreement",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = JobError;

    fn from_str(s: &str) -> Result<Self, JobError> {
        let t = s.trim();
        // Accept the long form of the U-set check as an alias.
        let t = if t == "theorem-1.2" { "thm2" } else { t };
        CheckId::ALL.iter().copied().find(|c| c.name() == t).ok_or_else(|| JobError::UnknownCheck(s.to_string()))
    }
}

/// Check names separated by commas; `all` selects every check.
pub fn parse_checks(s: &str) -> Result<Vec<CheckId>, JobError> {
    if s.split(',').any(|p| p.trim() == "all") {
        return Ok(CheckId::ALL.to_vec());
    }
    crate::job::parse_list(s)
}

/// Lazily computed data shared by the checks of one semigroup.
pub struct Analysis<'a> {
    pub semigroup: &'a NumericalSemigroup,
    pub bound: usize,
    pub catalog: BettiCatalog,
    classification: OnceCell<Classification>,
    cyclotomic: OnceCell<Option<CyclotomicFactorization>>,
    exact_exponents: OnceCell<Option<ExponentSequence>>,
    context: OnceCell<AnalysisContext<'a>>,
}

fn rec(id: CheckId, statement: &str, failure: Option<String>, note: Option<String>) -> CheckRecord {
    CheckRecord { check_id: id.name().to_string(), statement_ref: statement.to_string(), pass: failure.is_none(), witness: failure.or(note) }
}

fn vacuous(id: CheckId, statement: &str, why: &str) -> CheckRecord {
    rec(id, statement, None, Some(format!("vacuous: {}", why)))
}

fn fmt_set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `j >= 2` with `e_j != 0` that are not minimal generators.
pub(crate) fn e_members(s: &NumericalSemigroup, e: &ExponentSequence) -> Vec<usize> {
    (2..=e.bound()).filter(|&j| !e.get(j).is_zero() && !s.generators().contains(&j)).collect()
}

impl<'a> Analysis<'a> {
    /// `bound` below the semigroup's default is raised to the default.
    pub fn new(s: &'a NumericalSemigroup, bound: Option<usize>) -> Self {
        let bound = bound.unwrap_or(0).max(s.default_bound());
        Analysis {
            semigroup: s,
            bound,
            catalog: betti_elements(s),
            classification: OnceCell::new(),
            cyclotomic: OnceCell::new(),
            exact_exponents: OnceCell::new(),
            context: OnceCell::new(),
        }
    }

    pub fn classification(&self) -> &Classification {
        self.classification.get_or_init(|| classify_with(self.semigroup, &self.catalog))
    }

    pub fn is_ci(&self) -> bool {
        is_complete_intersection_with(self.semigroup, &self.catalog)
    }

    /// The cyclotomic factorization when `P_S` is a product of cyclotomic polynomials.
    pub fn cyclotomic_factors(&self) -> Option<&CyclotomicFactorization> {
        self.cyclotomic
            .get_or_init(|| {
                let p = self.semigroup.semigroup_polynomial();
                if !self.semigroup.is_natural() && !p.is_self_reciprocal() {
                    return None;
                }
                let f = factor_into_cyclotomics(&p);
                f.complete.then_some(f)
            })
            .as_ref()
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.cyclotomic_factors().is_some()
    }

    /// The whole exponent sequence of a cyclotomic semigroup, long enough to
    /// hold every non-zero entry and every Betti element.
    pub fn exact_exponents(&self) -> Option<&ExponentSequence> {
        self.exact_exponents
            .get_or_init(|| {
                let f = self.cyclotomic_factors()?;
                let top = f.factors.keys().copied().max().unwrap_or(1).max(self.bound);
                Some(f.exponents(top))
            })
            .as_ref()
    }

    pub fn context(&self) -> &AnalysisContext<'a> {
        self.context.get_or_init(|| AnalysisContext::new(self.semigroup, self.bound).expect("bound is at least the default"))
    }

    fn negatives(e: &ExponentSequence) -> Vec<usize> {
        (1..=e.bound()).filter(|&j| e.get(j).is_negative()).collect()
    }

    /// Minimal generators other than 1; `N` has `e_1 = 0`.
    fn proper_generators(&self) -> Vec<usize> {
        self.semigroup.generators().iter().copied().filter(|&g| g > 1).collect()
    }

    /// Conjecture on generators, for a cyclotomic semigroup.
    fn msg_holds(&self, e: &ExponentSequence) -> bool {
        Self::negatives(e) == self.proper_generators()
    }

    fn betti_exponent_failure(&self, e: &ExponentSequence) -> Option<String> {
        self.catalog.entries.iter().find_map(|(&b, en)| {
            let want = BigInt::from(en.nc as i64 - 1);
            (*e.get(b) != want).then(|| format!("at {}: e = {}, nc - 1 = {}", b, e.get(b), want))
        })
    }

    /// Whether the Hasse diagram of `E(S)` is a forest: `Some` once decided.
    /// For non-cyclotomic semigroups the prefix is grown up to four times the
    /// bound looking for a node with two lower covers.
    pub fn e_forest(&self) -> Option<bool> {
        if let Some(e) = self.exact_exponents() {
            let members = e_members(self.semigroup, e);
            return Some(OrderedSubset::from_usize(self.semigroup, members).hasse().is_forest());
        }
        let mut n = self.bound;
        for _ in 0..3 {
            let e = exponent_sequence(self.semigroup, Some(n));
            if !OrderedSubset::from_usize(self.semigroup, e_members(self.semigroup, &e)).hasse().is_forest() {
                return Some(false);
            }
            n *= 2;
        }
        None
    }

    pub fn run(&self, id: CheckId) -> Vec<CheckRecord> {
        let s = self.semigroup;
        match id {
            CheckId::CiCyclotomic => {
                let (ci, cy) = (self.is_ci(), self.is_cyclotomic());
                vec![rec(
                    id,
                    "S is a complete intersection if and only if S is cyclotomic",
                    (ci != cy).then(|| format!("ci = {}, cyclotomic = {}", ci, cy)),
                    None,
                )]
            }
            CheckId::Thm1 => self.context().check_generators(),
            CheckId::Thm2 => vec![self.context().check_u_sets()],
            CheckId::Thm52 => vec![self.context().check_minimals()],
            CheckId::Thm57 => vec![self.context().check_single_component()],
            CheckId::Prop48 => vec![self.context().check_e_below()],
            CheckId::Thm3 => vec![self.context().check_families()],
            CheckId::ConjMsg => {
                let st = "for cyclotomic S, n is a minimal generator if and only if e_n < 0";
                match self.exact_exponents() {
                    None => vec![vacuous(id, st, "not cyclotomic")],
                    Some(e) => {
                        let neg = Self::negatives(e);
                        let gens = self.proper_generators();
                        let failure = (neg != gens)
                            .then(|| format!("negative exponents at {}, generators {}", fmt_set(&neg), fmt_set(&gens)));
                        vec![rec(id, st, failure, None)]
                    }
                }
            }
            CheckId::ConjBetti => {
                let st = "for cyclotomic S, e_b = nc(b) - 1 at every Betti element";
                match self.exact_exponents() {
                    None => vec![vacuous(id, st, "not cyclotomic")],
                    Some(e) => vec![rec(id, st, self.betti_exponent_failure(e), None)],
                }
            }
            CheckId::ConjEquivalence => {
                let st = "for cyclotomic S, S is a complete intersection exactly when both exponent conjectures hold";
                match self.exact_exponents() {
                    None => vec![vacuous(id, st, "not cyclotomic")],
                    Some(e) => {
                        let both = self.msg_holds(e) && self.betti_exponent_failure(e).is_none();
                        let ci = self.is_ci();
                        vec![rec(id, st, (ci != both).then(|| format!("ci = {}, conjectures hold = {}", ci, both)), None)]
                    }
                }
            }
            CheckId::EForest => {
                let st = "if U(E(S)) = E(S) then E(S) ⊆ Betti(S), S is cyclotomic and the generator conjecture holds";
                match self.e_forest() {
                    Some(false) => vec![vacuous(id, st, "E(S) is not a forest")],
                    None => vec![vacuous(id, st, &format!("undecided up to {}", 4 * self.bound))],
                    Some(true) => {
                        let e = self.exact_exponents().expect("decided forests are cyclotomic");
                        let members = e_members(s, e);
                        let outside: Vec<usize> = members.iter().copied().filter(|&d| !self.catalog.contains(d)).collect();
                        let failure = if !outside.is_empty() {
                            Some(format!("E(S) \\ Betti(S) = {}", fmt_set(&outside)))
                        } else if !self.msg_holds(e) {
                            Some("generator conjecture fails".to_string())
                        } else {
                            None
                        };
                        vec![rec(id, st, failure, None)]
                    }
                }
            }
            CheckId::ForestMsg => {
                let st = "cyclotomic S with U(Betti(S)) = Betti(S) satisfying the generator conjecture is a complete intersection";
                let hyp = self.classification().betti_forest && self.exact_exponents().is_some_and(|e| self.msg_holds(e));
                if !hyp {
                    vec![vacuous(id, st, "hypothesis fails")]
                } else {
                    vec![rec(id, st, (!self.is_ci()).then(|| "not a complete intersection".to_string()), None)]
                }
            }
            CheckId::DoubleForest => {
                let st = "U(Betti(S)) = Betti(S) and U(E(S)) = E(S) imply S is a complete intersection";
                let hyp = self.classification().betti_forest && self.e_forest() == Some(true);
                if !hyp {
                    vec![vacuous(id, st, "hypothesis fails or is undecided")]
                } else {
                    vec![rec(id, st, (!self.is_ci()).then(|| "not a complete intersection".to_string()), None)]
                }
            }
            CheckId::EarlyNegative => {
                let st = "for cyclotomic S, every j with e_j < 0 below the first positive e_d (d >= 2) is a minimal generator";
                match self.exact_exponents() {
                    None => vec![vacuous(id, st, "not cyclotomic")],
                    Some(e) => {
                        let first_pos = (2..=e.bound()).find(|&d| e.get(d).is_positive());
                        let neg = Self::negatives(e);
                        let below: Vec<usize> = neg.iter().copied().filter(|&j| first_pos.is_none_or(|p| j < p)).collect();
                        let mut failure =
                            below.iter().find(|j| !s.generators().contains(j)).map(|j| format!("e_{} < 0 but {} is not a generator", j, j));
                        if failure.is_none() && below.len() == neg.len() && !self.msg_holds(e) {
                            failure = Some("all negatives precede the first positive, yet the generator conjecture fails".into());
                        }
                        vec![rec(id, st, failure, None)]
                    }
                }
            }
            CheckId::CiIdentities => {
                let st = "complete intersections satisfy the Hilbert, K-polynomial, degree and gluing identities";
                if !self.is_ci() {
                    return vec![vacuous(id, st, "not a complete intersection")];
                }
                match verify_ci_identities(s) {
                    Ok(v) => v,
                    Err(err) => vec![rec(id, st, Some(err.to_string()), None)],
                }
            }
            CheckId::CiAgreement => {
                let st = "presentation size, gluing trees and the Hilbert identity agree; CI implies cyclotomic and symmetric";
                let size = self.is_ci();
                let tree = gluing_decompose(s).is_some();
                let hilbert = ci_hilbert_identity(s, &self.catalog);
                let mut failure = (size != tree || size != hilbert)
                    .then(|| format!("size test {}, gluing tree {}, Hilbert identity {}", size, tree, hilbert));
                if failure.is_none() && size {
                    let sym = s.is_natural() || s.is_symmetric().unwrap_or(false);
                    if !self.is_cyclotomic() || !sym {
                        failure = Some(format!("ci but cyclotomic = {}, symmetric = {}", self.is_cyclotomic(), sym));
                    }
                }
                if failure.is_none() && self.classification().betti_sorted && !size {
                    failure = Some("Betti-sorted but not a complete intersection".into());
                }
                vec![rec(id, st, failure, None)]
            }
        }
    }
}
