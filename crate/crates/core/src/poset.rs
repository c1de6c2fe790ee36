//! The order `a <=_S b` (iff `b - a ∈ S`) on finite sets of integers, the
//! set `E(S)`, residual series and the exponent/Betti correspondences.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{factor_into_cyclotomics, is_cyclotomic};
use crate::error::{Error, Result};
use crate::factorization::{betti_elements, denumerant_table, BettiCatalog};
use crate::semigroup::NumericalSemigroup;
use crate::series::SeriesPrefix;
use crate::witt::{exponent_sequence, ExponentSequence};

/// `a <=_S b`.
pub fn leq(s: &NumericalSemigroup, a: i64, b: i64) -> bool {
    s.contains(b - a)
}

/// A finite set of integers with the `<=_S` relation precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSubset {
    elements: Vec<i64>,
    relation: Vec<Vec<bool>>,
}

impl OrderedSubset {
    pub fn new<I: IntoIterator<Item = i64>>(s: &NumericalSemigroup, items: I) -> Self {
        let elements: Vec<i64> = items.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let relation = elements.iter().map(|&a| elements.iter().map(|&b| leq(s, a, b)).collect()).collect();
        OrderedSubset { elements, relation }
    }

    pub fn from_usize<I: IntoIterator<Item = usize>>(s: &NumericalSemigroup, items: I) -> Self {
        Self::new(s, items.into_iter().map(|v| v as i64))
    }

    fn select(&self, keep: impl Fn(usize) -> bool) -> OrderedSubset {
        let idx: Vec<usize> = (0..self.elements.len()).filter(|&i| keep(i)).collect();
        OrderedSubset {
            elements: idx.iter().map(|&i| self.elements[i]).collect(),
            relation: idx.iter().map(|&i| idx.iter().map(|&j| self.relation[i][j]).collect()).collect(),
        }
    }

    /// Ascending.
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn to_usize(&self) -> Vec<usize> {
        self.elements.iter().map(|&v| v as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: i64) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// `elements[i] <=_S elements[j]`.
    pub fn le_at(&self, i: usize, j: usize) -> bool {
        self.relation[i][j]
    }

    fn comparable(&self, i: usize, j: usize) -> bool {
        self.relation[i][j] || self.relation[j][i]
    }

    /// `↓x = {y ∈ X : y <=_S x}`.
    pub fn down_set(&self, x: i64) -> Result<OrderedSubset> {
        let k = self.index_of(x).ok_or(Error::NotInSubset(x.max(0) as usize))?;
        Ok(self.select(|i| self.relation[i][k]))
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.comparable(i, j)))
    }

    /// `U(X)`: elements whose down-set is a chain.
    pub fn u_set(&self) -> OrderedSubset {
        let n = self.len();
        self.select(|k| {
            let below: Vec<usize> = (0..n).filter(|&i| self.relation[i][k]).collect();
            below.iter().all(|&i| below.iter().all(|&j| self.comparable(i, j)))
        })
    }

    pub fn minimals(&self) -> OrderedSubset {
        let n = self.len();
        self.select(|k| (0..n).all(|i| i == k || !self.relation[i][k]))
    }

    /// First pair of elements incomparable under `<=_S`.
    pub fn incomparable_pair(&self) -> Option<(i64, i64)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.comparable(i, j) {
                    return Some((self.elements[i], self.elements[j]));
                }
            }
        }
        None
    }

    /// Covers `a -> b`: `a <_S b` with nothing strictly between.
    pub fn hasse(&self) -> HasseDiagram {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.relation[i][j];
        let mut covers = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    covers.push((self.elements[i], self.elements[j]));
                }
            }
        }
        covers.sort_unstable();
        HasseDiagram { nodes: self.elements.clone(), covers }
    }
}

pub fn down_set(x_set: &OrderedSubset, x: i64) -> Result<OrderedSubset> {
    x_set.down_set(x)
}

pub fn u_set(x_set: &OrderedSubset) -> OrderedSubset {
    x_set.u_set()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseDiagram {
    pub nodes: Vec<i64>,
    /// `(lower, upper)` pairs, sorted.
    pub covers: Vec<(i64, i64)>,
}

impl HasseDiagram {
    /// Every node has at most one lower cover.
    pub fn is_forest(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.covers.iter().all(|&(_, b)| seen.insert(b))
    }

    /// Graphviz digraph, nodes ascending, edges from lower to upper.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", name);
        for n in &self.nodes {
            out.push_str(&format!("  {};\n", n));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  {} -> {};\n", a, b));
        }
        out.push_str("}\n");
        out
    }
}

pub fn hasse(x_set: &OrderedSubset) -> HasseDiagram {
    x_set.hasse()
}

/// `E(S)` indices found up to `bound`, or all of `E(S)` when `exact`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ESet {
    pub members: Vec<usize>,
    pub bound: usize,
    pub exact: bool,
}

fn e_members(s: &NumericalSemigroup, e: &ExponentSequence) -> Vec<usize> {
    e.support().into_iter().filter(|&d| d >= 2 && !s.generators().contains(&d)).collect()
}

pub fn e_set(s: &NumericalSemigroup, bound: usize) -> Result<ESet> {
    let required = s.default_bound();
    if bound < required {
        return Err(Error::BoundTooSmall { given: bound, required });
    }
    if is_cyclotomic(s) {
        let f = factor_into_cyclotomics(&s.semigroup_polynomial());
        let top = f.factors.keys().copied().max().unwrap_or(0).max(bound);
        let members = e_members(s, &f.exponents(top));
        return Ok(ESet { members, bound, exact: true });
    }
    Ok(ESet { members: e_members(s, &exponent_sequence(s, Some(bound))), bound, exact: false })
}

/// Coefficients of `H_S(x) prod_j (1 - x^{b_j})^{-e_{b_j}}` up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualSeries {
    pub chain: Vec<usize>,
    pub coefficients: SeriesPrefix,
}

/// The chain must be strictly increasing under `<=_S`.
pub fn residual_coefficients(s: &NumericalSemigroup, chain: &[usize], bound: usize) -> Result<ResidualSeries> {
    for w in chain.windows(2) {
        if w[0] == w[1] || !leq(s, w[0] as i64, w[1] as i64) {
            return Err(Error::ChainNotSorted);
        }
    }
    let top = chain.iter().copied().max().unwrap_or(0).max(bound).max(1);
    let e = exponent_sequence(s, Some(top));
    let mut r = s.hilbert_prefix(bound);
    for &b in chain {
        if b == 0 {
            return Err(Error::ChainNotSorted);
        }
        r.mul_binomial_power(b, &-e.get(b));
    }
    Ok(ResidualSeries { chain: chain.to_vec(), coefficients: r })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub betti_sorted: bool,
    pub betti_divisible: bool,
    pub unique_betti: bool,
    pub betti_forest: bool,
    /// `None` when the Hasse diagram of `E(S)` cannot be decided from the
    /// computed prefix.
    pub e_forest: Option<bool>,
    /// No exponent-side characterization contradicts the Betti-side flags.
    pub exponent_side_consistent: bool,
}

fn divisibility_chain(v: &[usize]) -> bool {
    v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| b % a == 0))
}

pub fn classify(s: &NumericalSemigroup) -> Classification {
    classify_with(s, &betti_elements(s))
}

pub fn classify_with(s: &NumericalSemigroup, catalog: &BettiCatalog) -> Classification {
    let betti = catalog.elements();
    let bx = OrderedSubset::from_usize(s, betti.iter().copied());
    let betti_sorted = bx.is_chain();
    let betti_divisible = divisibility_chain(&betti);
    let unique_betti = betti.len() == 1;
    let betti_forest = bx.hasse().is_forest();

    let es = e_set(s, s.default_bound()).expect("default bound");
    let ex = OrderedSubset::from_usize(s, es.members.iter().copied());
    // Lower covers of `d` in the prefix are exact, since everything below `d`
    // is smaller than `d`.
    let e_forest = if es.exact || !ex.hasse().is_forest() { Some(ex.hasse().is_forest()) } else { None };

    let e_sorted = ex.is_chain();
    let e_divisible = divisibility_chain(&es.members);
    let e_single = es.members.len() == 1;
    let exponent_side_consistent = if es.exact {
        e_sorted == betti_sorted && e_divisible == betti_divisible && e_single == unique_betti
    } else {
        (e_sorted || !betti_sorted) && (e_divisible || !betti_divisible) && (es.members.len() <= 1 || !unique_betti)
    };
    Classification { betti_sorted, betti_divisible, unique_betti, betti_forest, e_forest, exponent_side_consistent }
}

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub statement_ref: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckRecord {
    fn new(id: &str, statement: &str, failure: Option<String>, note: Option<String>) -> Self {
        CheckRecord {
            check_id: id.to_string(),
            statement_ref: statement.to_string(),
            pass: failure.is_none(),
            witness: failure.or(note),
        }
    }
}

fn fmt_set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Everything the exponent/Betti checks need, computed once.
pub struct AnalysisContext<'a> {
    pub semigroup: &'a NumericalSemigroup,
    pub bound: usize,
    pub exponents: ExponentSequence,
    pub catalog: BettiCatalog,
    pub denumerants: Vec<u64>,
}

impl<'a> AnalysisContext<'a> {
    pub fn new(s: &'a NumericalSemigroup, bound: usize) -> Result<Self> {
        let required = s.default_bound();
        if bound < required {
            return Err(Error::BoundTooSmall { given: bound, required });
        }
        Ok(AnalysisContext {
            semigroup: s,
            bound,
            exponents: exponent_sequence(s, Some(bound)),
            catalog: betti_elements(s),
            denumerants: denumerant_table(s, bound),
        })
    }

    pub fn e_prefix(&self) -> Vec<usize> {
        e_members(self.semigroup, &self.exponents)
    }

    fn e(&self, k: usize) -> &BigInt {
        self.exponents.get(k)
    }

    /// Exponents at gaps, generators and unique-factorization elements.
    pub fn check_generators(&self) -> Vec<CheckRecord> {
        let s = self.semigroup;
        if s.is_natural() {
            let vac = Some("S = N, vacuous".to_string());
            return vec![CheckRecord::new("thm1", "S = N has no gaps and the single generator 1", None, vac)];
        }
        let n = self.bound;
        let first = |pred: &dyn Fn(usize) -> bool, want: &dyn Fn(&BigInt) -> bool| {
            (1..=n).find(|&j| pred(j) && !want(self.e(j))).map(|j| format!("e_{} = {}", j, self.e(j)))
        };
        let gens = s.generators();
        vec![
            CheckRecord::new("thm1.a", "e_1 = 1", (!self.e(1).is_one()).then(|| format!("e_1 = {}", self.e(1))), None),
            CheckRecord::new(
                "thm1.b",
                "e_j = 0 for every gap j >= 2",
                first(&|j| j >= 2 && !s.contains_usize(j), &|e| e.is_zero()),
                None,
            ),
            CheckRecord::new(
                "thm1.c",
                "e_j = -1 for every minimal generator j",
                first(&|j| gens.contains(&j), &|e| *e == -BigInt::one()),
                None,
            ),
            CheckRecord::new(
                "thm1.d",
                "e_j = 0 for every non-generator j in S with a unique factorization",
                first(&|j| j >= 2 && s.contains_usize(j) && !gens.contains(&j) && self.denumerants[j] == 1, &|e| e.is_zero()),
                None,
            ),
        ]
    }

    /// Betti-minimal elements against minimal indices of `E(S)`.
    pub fn check_minimals(&self) -> CheckRecord {
        let s = self.semigroup;
        let b = OrderedSubset::from_usize(s, self.catalog.elements()).minimals().to_usize();
        let e = OrderedSubset::from_usize(s, self.e_prefix()).minimals().to_usize();
        let mut failure = (b != e).then(|| format!("Minimals Betti = {}, Minimals E = {}", fmt_set(&b), fmt_set(&e)));
        if failure.is_none() {
            for &a in &b {
                let entry = self.catalog.get(a).expect("Betti element");
                let want = BigInt::from(self.denumerants[a]) - 1;
                if *self.e(a) != want || entry.isolated_count as u64 != self.denumerants[a] {
                    failure = Some(format!(
                        "at {}: e = {}, d - 1 = {}, i - 1 = {}",
                        a,
                        self.e(a),
                        want,
                        entry.isolated_count as i64 - 1
                    ));
                    break;
                }
            }
        }
        CheckRecord::new(
            "thm5.2",
            "Betti-minimal elements are the minimal elements of E(S), with e = d - 1 = i - 1 there",
            failure,
            Some(format!("minimals {}", fmt_set(&b))),
        )
    }

    /// `U(Betti(S)) = U(E(S))` and `e_b = nc - 1` on it.
    pub fn check_u_sets(&self) -> CheckRecord {
        let s = self.semigroup;
        let ub = OrderedSubset::from_usize(s, self.catalog.elements()).u_set().to_usize();
        let ue = OrderedSubset::from_usize(s, self.e_prefix()).u_set().to_usize();
        let mut failure = (ub != ue).then(|| format!("U(Betti) = {}, U(E) = {}", fmt_set(&ub), fmt_set(&ue)));
        if failure.is_none() {
            for &b in &ub {
                let nc = self.catalog.get(b).expect("Betti element").nc;
                if *self.e(b) != BigInt::from(nc as i64 - 1) {
                    failure = Some(format!("at {}: e = {}, nc - 1 = {}", b, self.e(b), nc - 1));
                    break;
                }
            }
        }
        CheckRecord::new(
            "thm2",
            "U(Betti(S)) = U(E(S)) and e_b = nc(b) - 1 on it",
            failure,
            Some(format!("U = {}", fmt_set(&ub))),
        )
    }

    /// Non-minimal elements of `U(Betti(S))` have `i(b) = nc(b) - 1`.
    pub fn check_single_component(&self) -> CheckRecord {
        let s = self.semigroup;
        let bx = OrderedSubset::from_usize(s, self.catalog.elements());
        let mins = bx.minimals().to_usize();
        let failure = bx.u_set().to_usize().into_iter().filter(|b| !mins.contains(b)).find_map(|b| {
            let e = self.catalog.get(b).expect("Betti element");
            (e.isolated_count + 1 != e.nc).then(|| format!("at {}: i = {}, nc = {}", b, e.isolated_count, e.nc))
        });
        CheckRecord::new(
            "thm5.7",
            "non-minimal b in U(Betti(S)) have exactly one non-singleton R-class",
            failure,
            None,
        )
    }

    /// Every `s` with at least two factorizations lies above some `d ∈ E(S)`.
    pub fn check_e_below(&self) -> CheckRecord {
        let s = self.semigroup;
        let e = self.e_prefix();
        let failure = (0..=self.bound)
            .find(|&v| self.denumerants[v] >= 2 && !e.iter().any(|&d| leq(s, d as i64, v as i64)))
            .map(|v| format!("{} has no lower bound in E(S)", v));
        CheckRecord::new("prop4.8", "every s with d(s) >= 2 has some d in E(S) with d <=_S s", failure, None)
    }

    /// The exponent-side characterizations of the Betti families.
    pub fn check_families(&self) -> CheckRecord {
        let c = classify_with(self.semigroup, &self.catalog);
        let failure = (!c.exponent_side_consistent).then(|| format!("{:?}", c));
        CheckRecord::new(
            "thm3",
            "Betti-sorted, Betti-divisible and unique-Betti match the order, divisibility and size of E(S)",
            failure,
            None,
        )
    }
}

/// Runs the exponent/Betti checks over `[0, bound]`.
pub fn verify_theorems(s: &NumericalSemigroup, bound: usize) -> Result<Vec<CheckRecord>> {
    let ctx = AnalysisContext::new(s, bound)?;
    let mut out = ctx.check_generators();
    out.push(ctx.check_minimals());
    out.push(ctx.check_u_sets());
    out.push(ctx.check_single_component());
    out.push(ctx.check_e_below());
    out.push(ctx.check_families());
    Ok(out)
}

/// Exponent data at Betti elements outside `U(Betti(S))`: `(b, e_b, nc, i(b))`.
pub fn betti_outside_u(s: &NumericalSemigroup) -> Vec<(usize, BigInt, usize, usize)> {
    let catalog = betti_elements(s);
    let e = exponent_sequence(s, None);
    let bx = OrderedSubset::from_usize(s, catalog.elements());
    let u = bx.u_set().to_usize();
    catalog
        .entries
        .iter()
        .filter(|(b, _)| !u.contains(b))
        .map(|(&b, en)| (b, e.get(b).clone(), en.nc, en.isolated_count))
        .collect()
}

/// Whether every exponent in `E(S)` found so far is positive.
pub fn e_prefix_positive(s: &NumericalSemigroup, bound: usize) -> bool {
    let e = exponent_sequence(s, Some(bound));
    e_members(s, &e).iter().all(|&d| e.get(d).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[usize]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn order_examples() {
        let s = sg(&[8, 12, 18, 25]);
        assert!(leq(&s, 24, 36));
        assert!(!leq(&s, 36, 50) && !leq(&s, 50, 36));
        assert!(leq(&s, 7, 7));
    }

    #[test]
    fn down_and_u_sets() {
        let s = sg(&[10, 15, 16, 17, 19]);
        let x = OrderedSubset::from_usize(&s, betti_elements(&s).elements());
        assert_eq!(x.down_set(57).unwrap().elements(), &[30, 32, 57]);
        assert_eq!(x.down_set(48).unwrap().elements(), &[32, 48]);
        assert_eq!(x.down_set(30).unwrap().elements(), &[30]);
        assert_eq!(x.down_set(31), Err(Error::NotInSubset(31)));
        assert_eq!(x.u_set().elements(), &[30, 32, 34, 35, 36, 48]);
        assert_eq!(x.minimals(), x.u_set().minimals());

        let t = sg(&[3, 5, 7]);
        let e = e_set(&t, 30).unwrap();
        let ex = OrderedSubset::from_usize(&t, e.members.iter().copied().filter(|&d| d <= 14));
        assert_eq!(ex.u_set().elements(), &[10, 12, 14]);
    }

    #[test]
    fn hasse_examples() {
        let s = sg(&[8, 12, 18, 25]);
        let h = OrderedSubset::from_usize(&s, betti_elements(&s).elements()).hasse();
        assert_eq!(h.covers, vec![(24, 36), (24, 50)]);
        assert!(h.is_forest());
        assert_eq!(h.to_dot("betti"), "digraph betti {\n  24;\n  36;\n  50;\n  24 -> 36;\n  24 -> 50;\n}\n");

        let s = sg(&[10, 15, 16, 17, 19]);
        let h = OrderedSubset::from_usize(&s, betti_elements(&s).elements()).hasse();
        assert_eq!(h.covers, vec![(30, 57), (32, 48), (32, 57)]);
        assert!(!h.is_forest());

        let single = OrderedSubset::from_usize(&s, [30]).hasse();
        assert!(single.covers.is_empty() && single.is_forest());
    }

    #[test]
    fn e_set_examples() {
        let s = sg(&[3, 5, 7]);
        let e = e_set(&s, 30).unwrap();
        assert!(!e.exact);
        assert_eq!(&e.members[..5], &[10, 12, 14, 17, 19]);
        let t = sg(&[8, 12, 18, 25]);
        let e = e_set(&t, t.default_bound()).unwrap();
        assert!(e.exact);
        assert_eq!(e.members, vec![24, 36, 50]);
        let n = NumericalSemigroup::natural();
        assert!(e_set(&n, 10).unwrap().members.is_empty());
        assert_eq!(e_set(&s, 5), Err(Error::BoundTooSmall { given: 5, required: s.default_bound() }));
    }

    #[test]
    fn residual_examples() {
        let s = sg(&[4, 5, 6]);
        let r = residual_coefficients(&s, &[10], 30).unwrap();
        assert_eq!(*r.coefficients.coeff(20), BigInt::from(3));
        let r0 = residual_coefficients(&s, &[], 30).unwrap();
        assert_eq!(r0.coefficients, s.hilbert_prefix(30));
        assert_eq!(residual_coefficients(&s, &[12, 10], 30), Err(Error::ChainNotSorted));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&sg(&[4, 6, 9]));
        assert!(c.betti_sorted && !c.betti_divisible && !c.unique_betti);
        let c = classify(&sg(&[2, 3]));
        assert!(c.betti_sorted && c.betti_divisible && c.unique_betti);
        let c = classify(&sg(&[10, 15, 16, 17, 19]));
        assert!(!c.betti_sorted && !c.betti_divisible && !c.unique_betti && !c.betti_forest);
        assert!(c.exponent_side_consistent);
        let c = classify(&sg(&[3, 5, 7]));
        assert!(c.exponent_side_consistent);
    }

    #[test]
    fn theorem_reports() {
        for g in [&[3, 5, 7][..], &[10, 15, 16, 17, 19], &[1]] {
            let s = sg(g);
            let rep = verify_theorems(&s, s.default_bound()).unwrap();
            assert!(rep.iter().all(|r| r.pass), "{:?}: {:?}", s, rep);
        }
        let s = sg(&[10, 15, 16, 17, 19]);
        let rep = verify_theorems(&s, s.default_bound()).unwrap();
        let u = rep.iter().find(|r| r.check_id == "thm2").unwrap();
        assert_eq!(u.witness.as_deref(), Some("U = {30,32,34,35,36,48}"));
        let t = sg(&[3, 5, 7]);
        let e = exponent_sequence(&t, None);
        for b in [10, 12, 14] {
            assert_eq!(*e.get(b), BigInt::one());
        }
    }

    #[test]
    fn outside_u_data() {
        let s = sg(&[10, 15, 16, 17, 19]);
        let rows = betti_outside_u(&s);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].0, 57);
    }
}
