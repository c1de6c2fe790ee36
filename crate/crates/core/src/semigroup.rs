//! Numerical semigroups and their elementary invariants.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::SeriesPrefix;

/// Largest membership table (and largest multiplicity) accepted at
/// construction.
pub const MAX_WINDOW: usize = 1 << 24;

/// A sorted, duplicate-free list of positive integers with gcd 1.
///
/// Not necessarily minimal; [`NumericalSemigroup::new`] minimalizes it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet(Vec<usize>);

impl GeneratorSet {
    pub fn new(raw: &[usize]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if raw.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let mut v = raw.to_vec();
        v.sort_unstable();
        v.dedup();
        let g = gcd_all(&v);
        if g != 1 {
            return Err(Error::NonCoprimeGenerators(g as u64));
        }
        Ok(GeneratorSet(v))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    /// Accepts `4,6,9`, `4 6 9`, `<4,6,9>`, `{4, 6, 9}` and `⟨4,6,9⟩`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches(['<', '{', '(', '[', '⟨'])
            .trim_end_matches(['>', '}', ')', ']', '⟩']);
        let mut raw = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: u64 = tok.parse().map_err(|_| Error::Parse(format!("bad integer {:?}", tok)))?;
            let v = usize::try_from(v).map_err(|_| Error::TooLarge(v))?;
            raw.push(v);
        }
        GeneratorSet::new(&raw)
    }
}

/// A numerical semigroup, stored through its minimal generators together with
/// a membership table covering `0..=F(S) + 2·max(A) + 1`.
///
/// Immutable after construction. Equality and hashing use the minimal
/// generators only.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<usize>,
    gaps: Vec<usize>,
    frobenius: i64,
    members: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `raw` (any order, repeats and
    /// redundant generators allowed).
    pub fn new(raw: &[usize]) -> Result<Self> {
        let set = GeneratorSet::new(raw)?;
        Self::from_generator_set(&set)
    }

    /// The semigroup `N = <1>`.
    pub fn natural() -> Self {
        NumericalSemigroup { generators: vec![1], gaps: Vec::new(), frobenius: -1, members: vec![true; 3] }
    }

    pub fn from_generator_set(set: &GeneratorSet) -> Result<Self> {
        let all = set.values();
        let m = all[0];
        if m == 1 {
            return Ok(Self::natural());
        }
        // A minimal generator g has g <= F + m, so one above the window limit
        // would overflow the window anyway. If the rest still have gcd 1,
        // every dropped value exceeds their Frobenius number and is redundant.
        let raw: Vec<usize> = all.iter().copied().filter(|&g| g <= MAX_WINDOW).collect();
        if raw.is_empty() || gcd_all(&raw) != 1 {
            return Err(Error::TooLarge(*all.last().expect("non-empty") as u64));
        }
        let raw = &raw[..];
        let apery = apery_by_shortest_paths(raw);
        let frobenius = (*apery.iter().max().expect("m >= 2") - m as u64) as i64;
        // Every element above F + m is m plus an element of S, so no larger
        // value can be a minimal generator.
        let cap = frobenius as u64 + m as u64;
        let candidates: Vec<usize> = raw.iter().copied().filter(|&g| g as u64 <= cap).collect();
        let max_cand = *candidates.last().expect("m survives the filter") as u64;
        let window = frobenius as u64 + 2 * max_cand + 1;
        if window > MAX_WINDOW as u64 {
            return Err(Error::TooLarge(window));
        }
        let members = sieve(&candidates, window as usize);
        let generators: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&g| !(1..g).any(|s| members[s] && members[g - s]))
            .collect();
        let max_gen = *generators.last().expect("at least one generator");
        let window = (frobenius + 2 * max_gen as i64 + 1) as usize;
        let mut members = members;
        members.truncate(window + 1);
        let gaps = (1..=frobenius as usize).filter(|&k| !members[k]).collect();
        Ok(NumericalSemigroup { generators, gaps, frobenius, members })
    }

    /// The semigroup `S \ {g}` for a minimal generator `g`.
    pub fn remove_minimal_generator(&self, g: usize) -> Result<Self> {
        if !self.generators.contains(&g) {
            return Err(Error::Inconsistent(format!("{} is not a minimal generator", g)));
        }
        let mut raw: Vec<usize> = self.generators.iter().copied().filter(|&a| a != g).collect();
        raw.extend(self.generators.iter().filter(|&&a| a != g).map(|&a| a + g));
        raw.push(2 * g);
        raw.push(3 * g);
        NumericalSemigroup::new(&raw)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> usize {
        self.generators[0]
    }

    pub fn max_generator(&self) -> usize {
        *self.generators.last().expect("non-empty")
    }

    /// Largest gap, −1 for `N`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> usize {
        (self.frobenius + 1) as usize
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    pub fn is_natural(&self) -> bool {
        self.frobenius < 0
    }

    /// `F(S) + 2·max(A) + 1`: covers every Betti element with one spare slot.
    pub fn default_bound(&self) -> usize {
        (self.frobenius + 2 * self.max_generator() as i64 + 1) as usize
    }

    /// Largest index stored in the membership table.
    pub fn window(&self) -> usize {
        self.members.len() - 1
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if n > self.frobenius {
            return true;
        }
        self.members[n as usize]
    }

    #[inline]
    pub fn contains_usize(&self, n: usize) -> bool {
        n as i64 > self.frobenius || self.members[n]
    }

    /// Elements of `S` in `0..=bound`.
    pub fn elements_up_to(&self, bound: usize) -> Vec<usize> {
        (0..=bound).filter(|&k| self.contains_usize(k)).collect()
    }

    /// `Ap(S; m)`: the least element of `S` in each residue class modulo `m`,
    /// sorted ascending. Requires `m ∈ S`, `m ≥ 1`.
    pub fn apery_set(&self, m: i64) -> Result<Vec<usize>> {
        if m <= 0 || !self.contains(m) {
            return Err(Error::NotAMember(m));
        }
        let m = m as usize;
        let mut out: Vec<usize> = (0..m)
            .map(|r| {
                let mut s = r;
                while !self.contains_usize(s) {
                    s += m;
                }
                s
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `1 + (x − 1)·Σ_{g ∈ G(S)} x^g`.
    pub fn semigroup_polynomial(&self) -> Poly {
        if self.is_natural() {
            return Poly::one();
        }
        let deg = self.conductor();
        let mut c = vec![0i64; deg + 1];
        c[0] = 1;
        for &g in &self.gaps {
            c[g + 1] += 1;
            c[g] -= 1;
        }
        Poly::new(c)
    }

    /// Hilbert series truncated at degree `bound`.
    pub fn hilbert_prefix(&self, bound: usize) -> SeriesPrefix {
        SeriesPrefix::new((0..=bound).map(|k| BigInt::from(self.contains_usize(k) as i64)).collect())
    }

    /// Symmetry via self-reciprocity of the semigroup polynomial.
    pub fn is_symmetric(&self) -> Result<bool> {
        if self.is_natural() {
            return Err(Error::IsN);
        }
        Ok(self.semigroup_polynomial().is_self_reciprocal())
    }

    /// Symmetry via the pairing `n ∈ S` or `F − n ∈ S` for every integer `n`.
    pub fn is_symmetric_by_gaps(&self) -> Result<bool> {
        if self.is_natural() {
            return Err(Error::IsN);
        }
        let f = self.frobenius;
        Ok((0..=f).all(|n| self.contains(n) != self.contains(f - n)))
    }
}

/// `dist[r]` = least element of `<raw>` congruent to `r` modulo `raw[0]`.
fn apery_by_shortest_paths(raw: &[usize]) -> Vec<u64> {
    let m = raw[0];
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in &raw[1..] {
            let nd = d + g as u64;
            let nr = (r + g % m) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

fn sieve(gens: &[usize], window: usize) -> Vec<bool> {
    let mut members = vec![false; window + 1];
    members[0] = true;
    for k in 1..=window {
        members[k] = gens.iter().any(|&g| g <= k && members[k - g]);
    }
    members
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl Hash for NumericalSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.generators.cmp(&other.generators)
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self)
    }
}

/// Comma-separated minimal generators, the same format [`FromStr`] accepts.
impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NumericalSemigroup::from_generator_set(&s.parse()?)
    }
}

#[derive(Serialize, Deserialize)]
struct SemigroupRecord {
    generators: Vec<usize>,
    frobenius: i64,
    genus: usize,
    gaps: Vec<usize>,
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SemigroupRecord {
            generators: self.generators.clone(),
            frobenius: self.frobenius,
            genus: self.genus(),
            gaps: self.gaps.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    /// Rebuilds from `generators` and rejects records whose other fields
    /// disagree with the rebuilt semigroup.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = SemigroupRecord::deserialize(d)?;
        let s = NumericalSemigroup::new(&rec.generators).map_err(D::Error::custom)?;
        if s.generators != rec.generators {
            return Err(D::Error::custom(Error::Inconsistent("generators are not minimal and sorted".into())));
        }
        if s.frobenius != rec.frobenius || s.genus() != rec.genus || s.gaps != rec.gaps {
            return Err(D::Error::custom(Error::Inconsistent("frobenius, genus or gaps mismatch".into())));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[usize]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn construction_examples() {
        let s = sg(&[4, 6, 9]);
        assert_eq!(s.generators(), &[4, 6, 9]);
        assert_eq!(s.frobenius(), 11);
        assert_eq!(s.semigroup_polynomial().degree(), Some(12));
        assert_eq!(sg(&[6, 4, 9, 10, 13]).generators(), &[4, 6, 9]);
        assert_eq!(NumericalSemigroup::new(&[2, 4]), Err(Error::NonCoprimeGenerators(2)));
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyGenerators));
        assert_eq!(NumericalSemigroup::new(&[0, 1]), Err(Error::ZeroGenerator));
    }

    #[test]
    fn huge_redundant_generators_are_dropped_before_sieving() {
        let s = sg(&[2, 3, 1 << 40]);
        assert_eq!(s.generators(), &[2, 3]);
        assert!(matches!(NumericalSemigroup::new(&[1 << 20, (1 << 20) + 1]), Err(Error::TooLarge(_))));
        assert!(matches!(NumericalSemigroup::new(&[2, usize::MAX]), Err(Error::TooLarge(_))));
        assert!(matches!(NumericalSemigroup::new(&[3, (1 << 62) + 1]), Err(Error::TooLarge(_))));
        let big = NumericalSemigroup::new(&[3, 5, usize::MAX, 1 << 40]).unwrap();
        assert_eq!(big.generators(), &[3, 5]);
    }

    #[test]
    fn membership() {
        let s = sg(&[3, 5, 7]);
        assert!(!s.contains(4));
        assert!(s.contains(0));
        assert!(!s.contains(-3));
        let t = sg(&[4, 6, 9]);
        assert!(!t.contains(11));
        assert!(t.contains(12));
        assert!(t.contains(10_000));
    }

    #[test]
    fn gap_sets() {
        assert_eq!(sg(&[3, 5, 7]).gaps(), &[1, 2, 4]);
        assert!(NumericalSemigroup::natural().gaps().is_empty());
        assert_eq!(sg(&[4, 6, 9]).gaps(), &[1, 2, 3, 5, 7, 11]);
        assert_eq!(sg(&[1, 5]), NumericalSemigroup::natural());
    }

    #[test]
    fn apery_sets() {
        assert_eq!(sg(&[3, 5, 7]).apery_set(3).unwrap(), vec![0, 5, 7]);
        assert_eq!(sg(&[2, 3]).apery_set(2).unwrap(), vec![0, 3]);
        assert_eq!(sg(&[3, 5, 7]).apery_set(4), Err(Error::NotAMember(4)));
        assert_eq!(sg(&[3, 5, 7]).apery_set(0), Err(Error::NotAMember(0)));
    }

    #[test]
    fn semigroup_polynomials() {
        assert_eq!(sg(&[4, 6, 9]).semigroup_polynomial().to_string(), "x^12 - x^11 + x^8 - x^7 + x^6 - x^5 + x^4 - x + 1");
        assert_eq!(sg(&[3, 5, 7]).semigroup_polynomial().to_string(), "x^5 - x^4 + x^3 - x + 1");
        assert_eq!(NumericalSemigroup::natural().semigroup_polynomial(), Poly::one());
    }

    #[test]
    fn hilbert_prefixes() {
        assert_eq!(sg(&[2, 3]).hilbert_prefix(6), SeriesPrefix::from_i64(&[1, 0, 1, 1, 1, 1, 1]));
        assert_eq!(NumericalSemigroup::natural().hilbert_prefix(4), SeriesPrefix::from_i64(&[1; 5]));
        assert_eq!(sg(&[3, 5, 7]).hilbert_prefix(8), SeriesPrefix::from_i64(&[1, 0, 0, 1, 0, 1, 1, 1, 1]));
    }

    #[test]
    fn symmetry() {
        for (g, want) in [(&[4, 6, 9][..], true), (&[3, 5, 7][..], false), (&[2, 3][..], true)] {
            let s = sg(g);
            assert_eq!(s.is_symmetric(), Ok(want));
            assert_eq!(s.is_symmetric_by_gaps(), Ok(want));
        }
        assert_eq!(NumericalSemigroup::natural().is_symmetric(), Err(Error::IsN));
    }

    #[test]
    fn parsing_and_json() {
        let s: NumericalSemigroup = "⟨6, 4, 9⟩".parse().unwrap();
        assert_eq!(s.to_string(), "4,6,9");
        assert!("4,x".parse::<NumericalSemigroup>().is_err());
        assert_eq!("".parse::<NumericalSemigroup>(), Err(Error::EmptyGenerators));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"generators":[4,6,9],"frobenius":11,"genus":6,"gaps":[1,2,3,5,7,11]}"#);
        let back: NumericalSemigroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"generators":[4,6,9],"frobenius":13,"genus":6,"gaps":[1,2,3,5,7,11]}"#;
        assert!(serde_json::from_str::<NumericalSemigroup>(bad).is_err());
    }

    #[test]
    fn removing_a_generator() {
        let n = NumericalSemigroup::natural();
        assert_eq!(n.remove_minimal_generator(1).unwrap().generators(), &[2, 3]);
        let s = sg(&[2, 3]).remove_minimal_generator(3).unwrap();
        assert_eq!(s.generators(), &[2, 5]);
        assert_eq!(s.frobenius(), 3);
    }
}
