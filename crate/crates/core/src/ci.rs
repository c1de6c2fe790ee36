//! Complete intersections: gluing trees, `K_S` and the product formulas.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::factorization::{betti_elements, BettiCatalog};
use crate::poly::Poly;
use crate::poset::CheckRecord;
use crate::semigroup::NumericalSemigroup;
use crate::series::SeriesPrefix;

/// `N`, or the gluing `a1·S1 +_{a1 a2} a2·S2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingTree {
    Leaf,
    Node { a1: usize, left: Box<GluingTree>, a2: usize, right: Box<GluingTree> },
}

impl GluingTree {
    /// Minimal generators of the semigroup this tree builds.
    pub fn generators(&self) -> Vec<usize> {
        match self {
            GluingTree::Leaf => vec![1],
            GluingTree::Node { a1, left, a2, right } => {
                let mut g: Vec<usize> = left.generators().iter().map(|x| x * a1).collect();
                g.extend(right.generators().iter().map(|x| x * a2));
                g.sort_unstable();
                g
            }
        }
    }

    pub fn semigroup(&self) -> NumericalSemigroup {
        NumericalSemigroup::new(&self.generators()).expect("gluing of numerical semigroups")
    }

    /// `F = a1 a2 + a1 F(S1) + a2 F(S2)`, `F(N) = -1`: read off the degrees of
    /// `P_S (1 - x^{a1})(1 - x^{a2}) = (1 - x)(1 - x^{a1 a2}) P_{S1}(x^{a1}) P_{S2}(x^{a2})`.
    pub fn frobenius(&self) -> i64 {
        match self {
            GluingTree::Leaf => -1,
            GluingTree::Node { a1, left, a2, right } => {
                let (a1, a2) = (*a1 as i64, *a2 as i64);
                a1 * a2 + a1 * left.frobenius() + a2 * right.frobenius()
            }
        }
    }

    /// Betti elements predicted by the tree: `{a1 a2} ∪ a1·Betti(S1) ∪ a2·Betti(S2)`.
    pub fn betti(&self) -> BTreeSet<usize> {
        match self {
            GluingTree::Leaf => BTreeSet::new(),
            GluingTree::Node { a1, left, a2, right } => {
                let mut out: BTreeSet<usize> = left.betti().iter().map(|b| b * a1).collect();
                out.extend(right.betti().iter().map(|b| b * a2));
                out.insert(a1 * a2);
                out
            }
        }
    }

    /// Internal nodes in pre-order.
    pub fn nodes(&self) -> Vec<&GluingTree> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a GluingTree, out: &mut Vec<&'a GluingTree>) {
            if let GluingTree::Node { left, right, .. } = t {
                out.push(t);
                walk(left, out);
                walk(right, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Leaves serialize as `"N"`; nodes as `{a1, left, a2, right, generators}`.
impl Serialize for GluingTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GluingTree::Leaf => s.serialize_str("N"),
            GluingTree::Node { a1, left, a2, right } => {
                let mut m = s.serialize_map(Some(5))?;
                m.serialize_entry("a1", a1)?;
                m.serialize_entry("a2", a2)?;
                m.serialize_entry("generators", &self.generators())?;
                m.serialize_entry("left", left)?;
                m.serialize_entry("right", right)?;
                m.end()
            }
        }
    }
}

/// `2·(2·N +_6 3·N) +_18 9·N` style.
impl fmt::Display for GluingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluingTree::Leaf => write!(f, "N"),
            GluingTree::Node { a1, left, a2, right } => {
                let wrap = |t: &GluingTree| match t {
                    GluingTree::Leaf => t.to_string(),
                    _ => format!("({})", t),
                };
                write!(f, "{}·{} +_{} {}·{}", a1, wrap(left), a1 * a2, a2, wrap(right))
            }
        }
    }
}

/// Minimal presentation size equals `e(S) - 1`.
pub fn is_complete_intersection(s: &NumericalSemigroup) -> bool {
    is_complete_intersection_with(s, &betti_elements(s))
}

pub fn is_complete_intersection_with(s: &NumericalSemigroup, catalog: &BettiCatalog) -> bool {
    catalog.presentation_size() + 1 == s.embedding_dimension()
}

fn gcd_of(v: &[usize]) -> usize {
    v.iter().fold(0u64, |a, &b| gcd(a, b as u64)) as usize
}

/// Bipartitions `A = A1 ⊔ A2` with the smallest generator in `A1`, larger
/// `A1` first, then lexicographic on `A1`.
fn bipartitions(a: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let e = a.len();
    let rest = e - 1;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << rest) - 1 {
        let mut a1 = vec![a[0]];
        let mut a2 = Vec::new();
        for (i, &g) in a[1..].iter().enumerate() {
            if mask >> i & 1 == 1 {
                a1.push(g);
            } else {
                a2.push(g);
            }
        }
        out.push((a1, a2));
    }
    out.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then_with(|| x.0.cmp(&y.0)));
    out
}

/// `a ∈ T` and `a` is not a minimal generator of `T`.
fn hits_non_generator(t: &NumericalSemigroup, a: usize) -> bool {
    t.contains_usize(a) && !t.generators().contains(&a)
}

/// First gluing tree under the fixed partition order, or `None` when `S` is
/// not a complete intersection.
pub fn gluing_decompose(s: &NumericalSemigroup) -> Option<GluingTree> {
    let a = s.generators();
    if a.len() == 1 {
        return Some(GluingTree::Leaf);
    }
    for (p1, p2) in bipartitions(a) {
        let (a1, a2) = (gcd_of(&p1), gcd_of(&p2));
        if gcd(a1 as u64, a2 as u64) != 1 {
            continue;
        }
        let g1: Vec<usize> = p1.iter().map(|x| x / a1).collect();
        let g2: Vec<usize> = p2.iter().map(|x| x / a2).collect();
        let s1 = NumericalSemigroup::new(&g1).expect("coprime after division");
        let s2 = NumericalSemigroup::new(&g2).expect("coprime after division");
        if !hits_non_generator(&s1, a2) || !hits_non_generator(&s2, a1) {
            continue;
        }
        let (Some(left), Some(right)) = (gluing_decompose(&s1), gluing_decompose(&s2)) else {
            continue;
        };
        return Some(GluingTree::Node { a1, left: Box::new(left), a2, right: Box::new(right) });
    }
    None
}

/// `(1 - x^{n_1}) ... (1 - x^{n_e}) H_S(x)`, a polynomial of degree `F(S) + sum n_i`.
pub fn k_polynomial(s: &NumericalSemigroup) -> Poly {
    let gens = s.generators();
    let geometric = Poly::new(vec![1; gens[0]]);
    let rest = gens[1..].iter().fold(Poly::one(), |acc, &n| &acc * &Poly::one_minus_x_pow(n));
    &(&geometric * &rest) * &s.semigroup_polynomial()
}

/// `prod_b (1 - x^b)^{nc(b) - 1}`.
pub fn betti_product(catalog: &BettiCatalog) -> Poly {
    Poly::product_of_binomials(catalog.entries.iter().map(|(&b, e)| (b, (e.nc - 1) as u32)))
}

/// `P_S prod (1 - x^{n_i}) = (1 - x) prod_b (1 - x^b)^{nc(b) - 1}`, which
/// holds exactly for complete intersections. Both sides are compared as
/// exact series up to the larger degree, since the right side of a
/// non-intersection can outgrow 64-bit coefficients.
pub fn ci_hilbert_identity(s: &NumericalSemigroup, catalog: &BettiCatalog) -> bool {
    let lhs_degree = s.conductor() + s.generators().iter().sum::<usize>();
    let rhs_degree = 1 + catalog.entries.iter().map(|(&b, e)| b * (e.nc - 1)).sum::<usize>();
    if lhs_degree != rhs_degree {
        return false;
    }
    let mut lhs = SeriesPrefix::from_poly(&s.semigroup_polynomial(), lhs_degree);
    for &n in s.generators() {
        lhs.mul_binomial_power(n, &BigInt::one());
    }
    let mut rhs = SeriesPrefix::from_poly(&Poly::one_minus_x_pow(1), rhs_degree);
    for (&b, e) in &catalog.entries {
        rhs.mul_binomial_power(b, &BigInt::from(e.nc - 1));
    }
    lhs == rhs
}

/// The product and degree identities, and the per-node gluing identities.
pub fn verify_ci_identities(s: &NumericalSemigroup) -> Result<Vec<CheckRecord>> {
    let catalog = betti_elements(s);
    if !is_complete_intersection_with(s, &catalog) {
        return Err(Error::NotCompleteIntersection);
    }
    let tree = gluing_decompose(s).ok_or_else(|| Error::Inconsistent("no gluing tree for a complete intersection".into()))?;
    let mut out = Vec::new();
    let rec = |id: &str, statement: &str, failure: Option<String>| CheckRecord {
        check_id: id.to_string(),
        statement_ref: statement.to_string(),
        pass: failure.is_none(),
        witness: failure,
    };

    out.push(rec(
        "ci-hilbert",
        "P_S prod (1 - x^n) = (1 - x) prod_b (1 - x^b)^(nc(b) - 1)",
        (!ci_hilbert_identity(s, &catalog)).then(|| "polynomials differ".to_string()),
    ));
    out.push(rec(
        "ci-k",
        "K_S = prod_b (1 - x^b)^(nc(b) - 1)",
        (k_polynomial(s) != betti_product(&catalog)).then(|| "polynomials differ".to_string()),
    ));
    let lhs = s.frobenius() + s.generators().iter().sum::<usize>() as i64;
    let rhs: i64 = catalog.entries.iter().map(|(&b, e)| (b * (e.nc - 1)) as i64).sum();
    out.push(rec(
        "ci-degree",
        "F(S) + sum n = sum_b b (nc(b) - 1)",
        (lhs != rhs).then(|| format!("{} != {}", lhs, rhs)),
    ));

    let mut pol_failure = None;
    let mut betti_failure = None;
    let mut frob_failure = None;
    for node in tree.nodes() {
        let GluingTree::Node { a1, left, a2, right } = node else { unreachable!() };
        let here = node.semigroup();
        let lhs = &(&here.semigroup_polynomial() * &Poly::one_minus_x_pow(*a1)) * &Poly::one_minus_x_pow(*a2);
        let rhs = &(&(&Poly::one_minus_x_pow(1) * &Poly::one_minus_x_pow(a1 * a2))
            * &left.semigroup().semigroup_polynomial().compose_power(*a1))
            * &right.semigroup().semigroup_polynomial().compose_power(*a2);
        if lhs != rhs && pol_failure.is_none() {
            pol_failure = Some(format!("node {}", node));
        }
        let actual: BTreeSet<usize> = betti_elements(&here).elements().into_iter().collect();
        if actual != node.betti() && betti_failure.is_none() {
            betti_failure = Some(format!("node {}: {:?} vs {:?}", node, actual, node.betti()));
        }
        if here.frobenius() != node.frobenius() && frob_failure.is_none() {
            frob_failure = Some(format!("node {}: F = {} vs {}", node, here.frobenius(), node.frobenius()));
        }
    }
    out.push(rec(
        "ci-gluing-pol",
        "P_S (1 - x^a1)(1 - x^a2) = (1 - x)(1 - x^(a1 a2)) P_S1(x^a1) P_S2(x^a2) at every gluing",
        pol_failure,
    ));
    out.push(rec("ci-gluing-betti", "Betti(S) = {a1 a2} ∪ a1 Betti(S1) ∪ a2 Betti(S2) at every gluing", betti_failure));
    out.push(rec("ci-gluing-frobenius", "F(S) = a1 a2 + a1 F(S1) + a2 F(S2) at every gluing", frob_failure));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[usize]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn ci_examples() {
        assert!(is_complete_intersection(&sg(&[4, 6, 9])));
        assert!(!is_complete_intersection(&sg(&[3, 5, 7])));
        assert!(is_complete_intersection(&sg(&[8, 12, 18, 25])));
        assert!(is_complete_intersection(&NumericalSemigroup::natural()));
    }

    #[test]
    fn decomposition_examples() {
        let t = gluing_decompose(&sg(&[4, 6, 9])).unwrap();
        let two_three = GluingTree::Node {
            a1: 2,
            left: Box::new(GluingTree::Leaf),
            a2: 3,
            right: Box::new(GluingTree::Leaf),
        };
        assert_eq!(t, GluingTree::Node { a1: 2, left: Box::new(two_three), a2: 9, right: Box::new(GluingTree::Leaf) });
        assert_eq!(t.betti(), BTreeSet::from([12, 18]));
        assert_eq!(t.frobenius(), 11);
        assert_eq!(t.to_string(), "2·(2·N +_6 3·N) +_18 9·N");
        assert_eq!(gluing_decompose(&NumericalSemigroup::natural()), Some(GluingTree::Leaf));
        assert_eq!(gluing_decompose(&sg(&[3, 5, 7])), None);
    }

    #[test]
    fn tree_json() {
        let t = gluing_decompose(&sg(&[2, 3])).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"a1":2,"a2":3,"generators":[2,3],"left":"N","right":"N"}"#
        );
    }

    #[test]
    fn k_polynomials() {
        assert_eq!(k_polynomial(&sg(&[5, 7])), Poly::one_minus_x_pow(35));
        assert_eq!(k_polynomial(&NumericalSemigroup::natural()), Poly::one());
        let s = sg(&[4, 6, 9]);
        assert_eq!(k_polynomial(&s), &Poly::one_minus_x_pow(12) * &Poly::one_minus_x_pow(18));
        assert_eq!(k_polynomial(&s).degree(), Some(11 + 4 + 6 + 9));
    }

    #[test]
    fn identity_reports() {
        for g in [&[4, 6, 9][..], &[8, 12, 18, 25], &[2, 3]] {
            let rep = verify_ci_identities(&sg(g)).unwrap();
            assert!(rep.iter().all(|r| r.pass), "{:?}", rep);
        }
        assert_eq!(verify_ci_identities(&sg(&[3, 5, 7])), Err(Error::NotCompleteIntersection));
        let s = sg(&[8, 12, 18, 25]);
        let num = [1usize, 24, 36, 50].iter().fold(Poly::one(), |a, &b| &a * &Poly::one_minus_x_pow(b));
        let den = [8usize, 12, 18, 25].iter().fold(Poly::one(), |a, &b| &a * &Poly::one_minus_x_pow(b));
        assert_eq!(num.div_exact(&den), Some(s.semigroup_polynomial()));
    }
}
