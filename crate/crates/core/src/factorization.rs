//! Factorizations, the graphs `∇_s`, Betti elements and minimal presentations.
//!
//! Betti elements never exceed `F(S) + 2 max(A)`. If `s` is larger and two
//! factorizations `x`, `y` of `s` use generators `n_i` and `n_j`, then
//! `s - n_i - n_j > F(S)` lies in `S`; any factorization of it plus `e_i + e_j`
//! shares a generator with both `x` and `y`, so `∇_s` is connected.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::union_find::UnionFind;

/// Exponent vector over the ascending minimal generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factorization(pub Vec<u32>);

impl Factorization {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// The factored element `sum x_i n_i`.
    pub fn value(&self, generators: &[usize]) -> usize {
        self.0.iter().zip(generators).map(|(&x, &g)| x as usize * g).sum()
    }

    pub fn dot(&self, other: &Factorization) -> u64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a as u64 * b as u64).sum()
    }

    pub fn shares_support(&self, other: &Factorization) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a > 0 && b > 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Factorization) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Factorization) -> Option<Factorization> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.checked_sub(b)).collect::<Option<Vec<_>>>().map(Factorization)
    }

    pub fn add(&self, other: &Factorization) -> Factorization {
        Factorization(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn length(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `reach[i][t]`: `t` is a non-negative combination of `generators[i..]`.
fn suffix_reachability(generators: &[usize], limit: usize) -> Vec<Vec<bool>> {
    let e = generators.len();
    let mut reach = vec![vec![false; limit + 1]; e];
    for i in (0..e).rev() {
        let g = generators[i];
        for t in 0..=limit {
            let from_rest = if i + 1 < e { reach[i + 1][t] } else { t == 0 };
            reach[i][t] = from_rest || (t >= g && reach[i][t - g]);
        }
    }
    reach
}

/// `Z(s)` in lexicographically descending order. Empty iff `s ∉ S`.
pub fn factorizations(s: &NumericalSemigroup, v: usize) -> Vec<Factorization> {
    let gens = s.generators();
    if !s.contains_usize(v) {
        return Vec::new();
    }
    let reach = suffix_reachability(gens, v);
    let mut out = Vec::new();
    let mut cur = vec![0u32; gens.len()];
    collect(gens, &reach, 0, v, &mut cur, &mut out);
    out
}

fn collect(gens: &[usize], reach: &[Vec<bool>], i: usize, rem: usize, cur: &mut Vec<u32>, out: &mut Vec<Factorization>) {
    let g = gens[i];
    if i + 1 == gens.len() {
        if rem.is_multiple_of(g) {
            cur[i] = (rem / g) as u32;
            out.push(Factorization(cur.clone()));
            cur[i] = 0;
        }
        return;
    }
    for x in (0..=rem / g).rev() {
        let r = rem - x * g;
        if reach[i + 1][r] {
            cur[i] = x as u32;
            collect(gens, reach, i + 1, r, cur, out);
        }
    }
    cur[i] = 0;
}

/// `𝔡(0..=bound)` by the coin-change recursion.
pub fn denumerant_table(s: &NumericalSemigroup, bound: usize) -> Vec<u64> {
    let mut d = vec![0u64; bound + 1];
    d[0] = 1;
    for &g in s.generators() {
        for k in g..=bound {
            d[k] = d[k].checked_add(d[k - g]).expect("denumerant overflow");
        }
    }
    d
}

/// `|Z(v)|`.
pub fn denumerant(s: &NumericalSemigroup, v: usize) -> u64 {
    denumerant_table(s, v)[v]
}

/// Number of R-classes of `∇_v` without listing `Z(v)`.
///
/// A generator `n_i` occurs in some factorization iff `v - n_i ∈ S`, and
/// `n_i`, `n_j` occur together iff `v - n_i - n_j ∈ S`. R-classes are the
/// connected components of this co-occurrence graph.
pub fn r_class_count(s: &NumericalSemigroup, v: usize) -> usize {
    if !s.contains_usize(v) {
        return 0;
    }
    if v == 0 {
        return 1;
    }
    let gens = s.generators();
    let active: Vec<usize> = gens.iter().copied().filter(|&g| g <= v && s.contains_usize(v - g)).collect();
    let mut uf = UnionFind::new(active.len());
    let mut comps = active.len();
    for i in 0..active.len() {
        for j in i + 1..active.len() {
            let (a, b) = (active[i], active[j]);
            if a + b <= v && s.contains_usize(v - a - b) && uf.union(i, j) {
                comps -= 1;
            }
        }
    }
    comps
}

/// `∇_v`: the factorizations of `v` and their R-classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationGraph {
    pub element: usize,
    pub vertices: Vec<Factorization>,
    /// Vertex indices per class; classes ordered by smallest index, i.e. by
    /// their lexicographically largest factorization.
    pub r_classes: Vec<Vec<usize>>,
}

impl FactorizationGraph {
    pub fn new(s: &NumericalSemigroup, v: i64) -> Result<Self> {
        if !s.contains(v) {
            return Err(Error::NotAMember(v));
        }
        let element = v as usize;
        let vertices = factorizations(s, element);
        let mut uf = UnionFind::new(vertices.len());
        for i in 0..s.embedding_dimension() {
            let mut first = None;
            for (k, z) in vertices.iter().enumerate() {
                if z.0[i] > 0 {
                    match first {
                        None => first = Some(k),
                        Some(f) => {
                            uf.union(f, k);
                        }
                    }
                }
            }
        }
        let r_classes = uf.classes();
        Ok(FactorizationGraph { element, vertices, r_classes })
    }

    pub fn nc(&self) -> usize {
        self.r_classes.len()
    }

    pub fn is_betti(&self) -> bool {
        self.nc() >= 2
    }

    /// Members of singleton R-classes.
    pub fn isolated(&self) -> Vec<Factorization> {
        self.r_classes.iter().filter(|c| c.len() == 1).map(|c| self.vertices[c[0]].clone()).collect()
    }

    pub fn isolated_count(&self) -> usize {
        self.r_classes.iter().filter(|c| c.len() == 1).count()
    }

    /// Graphviz rendering: one node per factorization, one edge per pair with
    /// shared support.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph nabla_{} {{\n", self.element);
        for (k, z) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", k, z));
        }
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if self.vertices[i].shares_support(&self.vertices[j]) {
                    out.push_str(&format!("  v{} -- v{};\n", i, j));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn factorization_graph(s: &NumericalSemigroup, v: i64) -> Result<FactorizationGraph> {
    FactorizationGraph::new(s, v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub nc: usize,
    pub isolated_count: usize,
    pub factorizations: Vec<Factorization>,
    pub r_classes: Vec<Vec<usize>>,
}

impl BettiEntry {
    pub fn isolated(&self) -> Vec<Factorization> {
        self.r_classes.iter().filter(|c| c.len() == 1).map(|c| self.factorizations[c[0]].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiCatalog {
    pub entries: BTreeMap<usize, BettiEntry>,
}

impl BettiCatalog {
    /// Betti elements, ascending.
    pub fn elements(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, b: usize) -> Option<&BettiEntry> {
        self.entries.get(&b)
    }

    pub fn contains(&self, b: usize) -> bool {
        self.entries.contains_key(&b)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_b (nc(∇_b) - 1)`, the size of every minimal presentation.
    pub fn presentation_size(&self) -> usize {
        self.entries.values().map(|e| e.nc - 1).sum()
    }

    /// Betti elements with at least one isolated factorization.
    pub fn isolated_betti(&self) -> Vec<usize> {
        self.entries.iter().filter(|(_, e)| e.isolated_count > 0).map(|(&b, _)| b).collect()
    }
}

/// Every `b` with `nc(∇_b) >= 2`, found in `[0, F(S) + 2 max(A)]`.
pub fn betti_elements(s: &NumericalSemigroup) -> BettiCatalog {
    let mut entries = BTreeMap::new();
    if s.is_natural() {
        return BettiCatalog { entries };
    }
    let top = s.default_bound() - 1;
    for v in 2 * s.multiplicity()..=top {
        if r_class_count(s, v) >= 2 {
            let g = FactorizationGraph::new(s, v as i64).expect("member");
            entries.insert(
                v,
                BettiEntry { nc: g.nc(), isolated_count: g.isolated_count(), factorizations: g.vertices, r_classes: g.r_classes },
            );
        }
    }
    BettiCatalog { entries }
}

/// Factorizations of `v` that form singleton R-classes of `∇_v`.
pub fn isolated_factorizations(s: &NumericalSemigroup, v: i64) -> Result<Vec<Factorization>> {
    Ok(FactorizationGraph::new(s, v)?.isolated())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationPair {
    pub element: usize,
    pub left: Factorization,
    pub right: Factorization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPresentation {
    pub pairs: Vec<PresentationPair>,
}

impl MinimalPresentation {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Chains the lexicographically largest factorization of consecutive
/// R-classes of each Betti element.
pub fn minimal_presentation(s: &NumericalSemigroup) -> MinimalPresentation {
    minimal_presentation_from(&betti_elements(s))
}

pub fn minimal_presentation_from(catalog: &BettiCatalog) -> MinimalPresentation {
    let mut pairs = Vec::new();
    for (&b, e) in &catalog.entries {
        let reps: Vec<&Factorization> = e.r_classes.iter().map(|c| &e.factorizations[c[0]]).collect();
        for w in reps.windows(2) {
            pairs.push(PresentationPair { element: b, left: w[0].clone(), right: w[1].clone() });
        }
    }
    MinimalPresentation { pairs }
}

/// `B(v; Λ)`: factorizations of `v` of the form `w + x_1 + ... + x_l`, with
/// `w` the only factorization of its element and every `x_i` an isolated
/// factorization of some element of `Λ`.
pub fn restricted_factorizations(s: &NumericalSemigroup, v: i64, lambda: &[usize]) -> Result<Vec<Factorization>> {
    restricted_factorizations_with(s, &betti_elements(s), v, lambda)
}

pub fn restricted_factorizations_with(
    s: &NumericalSemigroup,
    catalog: &BettiCatalog,
    v: i64,
    lambda: &[usize],
) -> Result<Vec<Factorization>> {
    if !s.contains(v) {
        return Err(Error::NotAMember(v));
    }
    let mut pieces = Vec::new();
    for &b in lambda {
        match catalog.get(b) {
            Some(e) if e.isolated_count > 0 => pieces.extend(e.isolated()),
            _ => return Err(Error::LambdaNotIsolatedBetti(b)),
        }
    }
    let v = v as usize;
    let den = denumerant_table(s, v);
    let gens = s.generators();
    let mut memo: HashMap<Factorization, bool> = HashMap::new();
    Ok(factorizations(s, v)
        .into_iter()
        .filter(|z| is_restricted(z, gens, &den, &pieces, &mut memo))
        .collect())
}

fn is_restricted(
    z: &Factorization,
    gens: &[usize],
    den: &[u64],
    pieces: &[Factorization],
    memo: &mut HashMap<Factorization, bool>,
) -> bool {
    if den[z.value(gens)] == 1 {
        return true;
    }
    if let Some(&b) = memo.get(z) {
        return b;
    }
    let mut found = false;
    for x in pieces {
        if let Some(rest) = z.checked_sub(x) {
            if is_restricted(&rest, gens, den, pieces, memo) {
                found = true;
                break;
            }
        }
    }
    memo.insert(z.clone(), found);
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[usize]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn fz(v: &[u32]) -> Factorization {
        Factorization(v.to_vec())
    }

    #[test]
    fn factorization_examples() {
        let s = sg(&[4, 5, 6]);
        assert_eq!(factorizations(&s, 10), vec![fz(&[1, 0, 1]), fz(&[0, 2, 0])]);
        assert_eq!(factorizations(&s, 12), vec![fz(&[3, 0, 0]), fz(&[0, 0, 2])]);
        assert!(factorizations(&sg(&[2, 3]), 1).is_empty());
        assert_eq!(factorizations(&s, 0), vec![fz(&[0, 0, 0])]);
    }

    #[test]
    fn denumerant_examples() {
        assert_eq!(denumerant(&sg(&[4, 5, 6]), 10), 2);
        assert_eq!(denumerant(&sg(&[3, 5, 7]), 6), 1);
        assert_eq!(denumerant(&sg(&[3, 5, 7]), 0), 1);
        let s = sg(&[3, 5, 7]);
        for v in 0..60 {
            assert_eq!(denumerant(&s, v), factorizations(&s, v).len() as u64);
        }
    }

    #[test]
    fn graph_examples() {
        let g = factorization_graph(&sg(&[4, 6, 9]), 18).unwrap();
        assert_eq!(g.vertices, vec![fz(&[3, 1, 0]), fz(&[0, 3, 0]), fz(&[0, 0, 2])]);
        assert_eq!(g.r_classes, vec![vec![0, 1], vec![2]]);
        let g = factorization_graph(&sg(&[3, 5, 7]), 10).unwrap();
        assert_eq!(g.r_classes, vec![vec![0], vec![1]]);
        assert_eq!(g.isolated(), vec![fz(&[1, 0, 1]), fz(&[0, 2, 0])]);
        let g = factorization_graph(&sg(&[3, 5, 7]), 7).unwrap();
        assert_eq!(g.nc(), 1);
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(factorization_graph(&sg(&[3, 5, 7]), 4), Err(Error::NotAMember(4)));
    }

    #[test]
    fn fast_class_count_matches_graph() {
        for gens in [&[3, 5, 7][..], &[4, 6, 9], &[10, 15, 16, 17, 19], &[5, 6, 7, 8, 9]] {
            let s = sg(gens);
            for v in 0..=s.default_bound() + 10 {
                let want = if s.contains_usize(v) { factorization_graph(&s, v as i64).unwrap().nc() } else { 0 };
                assert_eq!(r_class_count(&s, v), want, "{:?} at {}", s, v);
            }
        }
    }

    #[test]
    fn betti_examples() {
        let c = betti_elements(&sg(&[3, 5, 7]));
        assert_eq!(c.elements(), vec![10, 12, 14]);
        assert!(c.entries.values().all(|e| e.nc == 2 && e.isolated_count == 2));
        let c = betti_elements(&sg(&[10, 15, 16, 17, 19]));
        assert_eq!(c.elements(), vec![30, 32, 34, 35, 36, 48, 57]);
        assert_eq!(betti_elements(&sg(&[5, 7])).elements(), vec![35]);
        assert!(betti_elements(&NumericalSemigroup::natural()).is_empty());
    }

    #[test]
    fn isolated_examples() {
        assert_eq!(isolated_factorizations(&sg(&[4, 5, 6]), 10).unwrap().len(), 2);
        assert!(!isolated_factorizations(&sg(&[10, 15, 16, 17, 19]), 57).unwrap().is_empty());
        assert_eq!(isolated_factorizations(&sg(&[4, 5, 6]), 5).unwrap(), vec![fz(&[0, 1, 0])]);
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(minimal_presentation(&sg(&[3, 5, 7])).len(), 3);
        assert_eq!(minimal_presentation(&sg(&[4, 6, 9])).len(), 2);
        let p = minimal_presentation(&sg(&[5, 7]));
        assert_eq!(p.pairs, vec![PresentationPair { element: 35, left: fz(&[7, 0]), right: fz(&[0, 5]) }]);
    }

    #[test]
    fn restricted_examples() {
        let s = sg(&[4, 5, 6]);
        assert_eq!(restricted_factorizations(&s, 72, &[10, 12]).unwrap(), factorizations(&s, 72));
        assert_eq!(
            restricted_factorizations(&s, 20, &[10]).unwrap(),
            vec![fz(&[2, 0, 2]), fz(&[1, 2, 1]), fz(&[0, 4, 0])]
        );
        assert!(restricted_factorizations(&s, 20, &[]).unwrap().is_empty());
        assert_eq!(restricted_factorizations(&s, 9, &[]).unwrap(), vec![fz(&[1, 1, 0])]);
        assert_eq!(restricted_factorizations(&s, 20, &[11]), Err(Error::LambdaNotIsolatedBetti(11)));
        assert_eq!(restricted_factorizations(&s, 7, &[10]), Err(Error::NotAMember(7)));
    }

    #[test]
    fn dot_output() {
        let g = factorization_graph(&sg(&[4, 6, 9]), 18).unwrap();
        assert_eq!(
            g.to_dot(),
            "graph nabla_18 {\n  v0 [label=\"(3,1,0)\"];\n  v1 [label=\"(0,3,0)\"];\n  v2 [label=\"(0,0,2)\"];\n  v0 -- v1;\n}\n"
        );
    }
}
