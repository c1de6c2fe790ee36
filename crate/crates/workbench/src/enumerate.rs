//! Enumeration of numerical semigroups: the genus tree, its Frobenius-pruned
//! variant, and complete intersections built by gluing.

use std::collections::{BTreeSet, HashMap};

use nsg_core::arith::gcd;
use nsg_core::{is_complete_intersection, NumericalSemigroup};

use crate::job::ResumeToken;

/// A node of the semigroup tree: `path` lists the removed generators from
/// `N` down to `semigroup`.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub path: Vec<usize>,
    pub semigroup: NumericalSemigroup,
}

impl TreeNode {
    pub fn token(&self) -> ResumeToken {
        ResumeToken(self.path.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeBound {
    /// Every semigroup of genus at most the limit.
    GenusAtMost(usize),
    /// Every semigroup with this exact Frobenius number.
    Frobenius(i64),
}

/// Preorder walk of the semigroup tree. Children of `S` are `S \ {g}` for
/// minimal generators `g > F(S)`, in increasing `g`, so preorder is the
/// lexicographic order of paths.
pub struct TreeWalker {
    bound: TreeBound,
    resume: Option<Vec<usize>>,
    stack: Vec<TreeNode>,
}

impl TreeWalker {
    pub fn new(bound: TreeBound) -> Self {
        Self::resuming(bound, None)
    }

    /// Skips every node whose path sorts before `token`.
    pub fn resuming(bound: TreeBound, token: Option<&ResumeToken>) -> Self {
        let root = TreeNode { path: Vec::new(), semigroup: NumericalSemigroup::natural() };
        TreeWalker { bound, resume: token.map(|t| t.0.clone()), stack: vec![root] }
    }

    fn emits(&self, s: &NumericalSemigroup) -> bool {
        match self.bound {
            TreeBound::GenusAtMost(g) => s.genus() <= g,
            TreeBound::Frobenius(f) => s.frobenius() == f,
        }
    }

    fn child_generators(&self, s: &NumericalSemigroup) -> Vec<usize> {
        let above = s.generators().iter().copied().filter(|&g| g as i64 > s.frobenius());
        match self.bound {
            TreeBound::GenusAtMost(g) if s.genus() >= g => Vec::new(),
            TreeBound::GenusAtMost(_) => above.collect(),
            TreeBound::Frobenius(f) => above.filter(|&g| g as i64 <= f).collect(),
        }
    }

    /// Whether the subtree under `path` may still contain nodes at or after
    /// the resume point, and whether `path` itself is before it.
    fn resume_state(&self, path: &[usize]) -> (bool, bool) {
        match &self.resume {
            None => (true, false),
            Some(t) => {
                let is_prefix = t.starts_with(path);
                let before = path < t.as_slice();
                (is_prefix || !before, before)
            }
        }
    }
}

impl Iterator for TreeWalker {
    type Item = TreeNode;

    fn next(&mut self) -> Option<TreeNode> {
        while let Some(node) = self.stack.pop() {
            let (keep, before) = self.resume_state(&node.path);
            if !keep {
                continue;
            }
            for g in self.child_generators(&node.semigroup).into_iter().rev() {
                let mut path = node.path.clone();
                path.push(g);
                let child = node.semigroup.remove_minimal_generator(g).expect("minimal generator");
                self.stack.push(TreeNode { path, semigroup: child });
            }
            if !before && self.emits(&node.semigroup) {
                return Some(node);
            }
        }
        None
    }
}

pub fn enumerate_by_genus(g_max: usize) -> impl Iterator<Item = NumericalSemigroup> {
    TreeWalker::new(TreeBound::GenusAtMost(g_max)).map(|n| n.semigroup)
}

pub fn enumerate_by_frobenius(f: i64) -> impl Iterator<Item = NumericalSemigroup> {
    TreeWalker::new(TreeBound::Frobenius(f)).map(|n| n.semigroup)
}

/// Number of semigroups of each genus `0..=g_max`.
pub fn genus_counts(g_max: usize) -> Vec<u64> {
    let mut out = vec![0; g_max + 1];
    for s in enumerate_by_genus(g_max) {
        out[s.genus()] += 1;
    }
    out
}

/// Complete intersections by Frobenius number, built from
/// `S = a1·S1 + a2·S2` with `F(S) = a1 a2 + a1 F(S1) + a2 F(S2)`.
#[derive(Default)]
pub struct CiEnumerator {
    memo: HashMap<i64, Vec<NumericalSemigroup>>,
}

fn frobenius_admissible(f: i64) -> bool {
    f == -1 || (f > 0 && f % 2 == 1)
}

impl CiEnumerator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorted by generator list.
    pub fn by_frobenius(&mut self, f: i64) -> Vec<NumericalSemigroup> {
        if let Some(v) = self.memo.get(&f) {
            return v.clone();
        }
        let out = self.build(f);
        self.memo.insert(f, out.clone());
        out
    }

    fn build(&mut self, f: i64) -> Vec<NumericalSemigroup> {
        if f == -1 {
            return vec![NumericalSemigroup::natural()];
        }
        if !frobenius_admissible(f) {
            return Vec::new();
        }
        let mut found: BTreeSet<NumericalSemigroup> = BTreeSet::new();
        // F >= a1 a2 - a1 - a2, i.e. (a1 - 1)(a2 - 1) <= F + 1.
        let cap = f + 1;
        let mut a1 = 2;
        while (a1 - 1) * a1 <= cap {
            for a2 in (a1 + 1)..=(cap / (a1 - 1) + 1) {
                if gcd(a1 as u64, a2 as u64) != 1 {
                    continue;
                }
                let mut f1 = -1;
                while a1 * a2 + a1 * f1 - a2 <= f {
                    let rem = f - a1 * a2 - a1 * f1;
                    if rem % a2 == 0 && frobenius_admissible(rem / a2) {
                        let f2 = rem / a2;
                        let left = self.by_frobenius(f1);
                        let right = self.by_frobenius(f2);
                        for s1 in &left {
                            if !hits_non_generator(s1, a2 as usize) {
                                continue;
                            }
                            for s2 in &right {
                                if !hits_non_generator(s2, a1 as usize) {
                                    continue;
                                }
                                let s = glue(a1 as usize, s1, a2 as usize, s2);
                                debug_assert_eq!(s.frobenius(), f);
                                found.insert(s);
                            }
                        }
                    }
                    f1 += 2;
                }
            }
            a1 += 1;
        }
        found.into_iter().collect()
    }
}

fn hits_non_generator(t: &NumericalSemigroup, a: usize) -> bool {
    t.contains_usize(a) && !t.generators().contains(&a)
}

fn glue(a1: usize, s1: &NumericalSemigroup, a2: usize, s2: &NumericalSemigroup) -> NumericalSemigroup {
    let mut gens: Vec<usize> = s1.generators().iter().map(|g| g * a1).collect();
    gens.extend(s2.generators().iter().map(|g| g * a2));
    NumericalSemigroup::new(&gens).expect("gluing of numerical semigroups")
}

/// Every complete intersection with Frobenius number `f`, sorted by
/// generators and each confirmed by the presentation-size test.
pub fn enumerate_ci_by_frobenius(f: i64) -> Vec<NumericalSemigroup> {
    let out = CiEnumerator::new().by_frobenius(f);
    for s in &out {
        assert!(is_complete_intersection(s), "gluing produced a non-CI semigroup {:?}", s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(v: &[NumericalSemigroup]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.generators().to_vec()).collect()
    }

    #[test]
    fn genus_tree_counts() {
        assert_eq!(genus_counts(5), vec![1, 1, 2, 4, 7, 12]);
        assert_eq!(genus_counts(0), vec![1]);
        assert!(enumerate_by_genus(0).next().unwrap().is_natural());
    }

    #[test]
    fn small_frobenius() {
        assert_eq!(gens(&enumerate_by_frobenius(1).collect::<Vec<_>>()), vec![vec![2, 3]]);
        let mut f3 = gens(&enumerate_by_frobenius(3).collect::<Vec<_>>());
        f3.sort();
        assert_eq!(f3, vec![vec![2, 5], vec![4, 5, 6, 7]]);
        assert!(enumerate_by_frobenius(11).any(|s| s.generators() == [4, 6, 9]));
    }

    #[test]
    fn ci_by_gluing() {
        let ci11 = gens(&enumerate_ci_by_frobenius(11));
        assert!(ci11.contains(&vec![4, 6, 9]));
        assert!(ci11.contains(&vec![2, 13]));
        assert!(enumerate_ci_by_frobenius(10).is_empty());
        assert_eq!(gens(&enumerate_ci_by_frobenius(1)), vec![vec![2, 3]]);
    }

    #[test]
    fn paths_sort_in_walk_order() {
        let nodes: Vec<TreeNode> = TreeWalker::new(TreeBound::GenusAtMost(6)).collect();
        assert!(nodes.windows(2).all(|w| w[0].path < w[1].path));
        let mid = &nodes[nodes.len() / 2];
        let resumed: Vec<TreeNode> = TreeWalker::resuming(TreeBound::GenusAtMost(6), Some(&mid.token())).collect();
        assert_eq!(resumed.len(), nodes.len() - nodes.len() / 2);
        assert_eq!(resumed[0].path, mid.path);
    }
}
