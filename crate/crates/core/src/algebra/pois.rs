//! Rewriting forests to the tall basis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::LinCombo;
use crate::combinatorics::{sort_trees, Forest, Tree};
use crate::error::{mismatch, Result};
use crate::sign::{Parity, Sign};

/// Memoizing rewriter of trees to combinations of tall trees.
///
/// `[A,B]` with tall `A`, `B` is oriented by anti-symmetry so the minimal
/// leaf is on the left; a non-leaf right argument `[B1,b]` is then pushed
/// left with Jacobi, which deepens the minimal leaf until the tree is a comb.
pub struct PoisNormalizer {
    parity: Parity,
    trees: BTreeMap<Tree, LinCombo<Tree>>,
    combined: BTreeMap<(Tree, Tree), LinCombo<Tree>>,
}

impl PoisNormalizer {
    pub fn new(parity: Parity) -> Self {
        PoisNormalizer { parity, trees: BTreeMap::new(), combined: BTreeMap::new() }
    }

    pub fn tree(&mut self, t: &Tree) -> LinCombo<Tree> {
        if let Tree::Leaf(_) = t {
            return LinCombo::basis(t.clone());
        }
        if let Some(x) = self.trees.get(t) {
            return x.clone();
        }
        let Tree::Node(l, r) = t else { unreachable!() };
        let (nl, nr) = (self.tree(l), self.tree(r));
        let mut out = LinCombo::zero();
        for (a, ca) in nl.iter() {
            for (b, cb) in nr.iter() {
                out.add_scaled(&self.bracket(a, b), &(ca * cb));
            }
        }
        self.trees.insert(t.clone(), out.clone());
        out
    }

    /// `[a, b]` for tall `a`, `b` in the tall basis.
    fn bracket(&mut self, a: &Tree, b: &Tree) -> LinCombo<Tree> {
        if a.min_leaf() < b.min_leaf() {
            self.combine(a, b)
        } else {
            let s = self.parity.antisymmetry(a.vertex_count(), b.vertex_count());
            self.combine(b, a).scaled(&s.to_bigint())
        }
    }

    /// `[a, b]` for tall `a`, `b` where `a` holds the minimal leaf.
    fn combine(&mut self, a: &Tree, b: &Tree) -> LinCombo<Tree> {
        let Tree::Node(b1, leaf) = b else {
            return LinCombo::basis(Tree::node(a.clone(), b.clone()));
        };
        let key = (a.clone(), b.clone());
        if let Some(x) = self.combined.get(&key) {
            return x.clone();
        }
        let p = self.parity;
        let (na, nb1) = (a.vertex_count(), b1.vertex_count());
        // [a,[b1,l]] = s0 [[b1,l],a], and Jacobi on (b1, l, a):
        // [[b1,l],a] = -w(na) [[l,a],b1] - w(nb1) [[a,b1],l]
        let total = na + nb1;
        let s0 = p.antisymmetry(na, nb1 + 1);
        let s1 = -(s0 * p.jacobi_weight(na, total) * p.antisymmetry(0, na));
        let s2 = -(s0 * p.jacobi_weight(nb1, total));
        let mut out = self.combine(&Tree::node(a.clone(), (**leaf).clone()), b1).scaled(&s1.to_bigint());
        for (c, k) in self.combine(a, b1).iter() {
            out.add_signed(Tree::node(c.clone(), (**leaf).clone()), k, s2);
        }
        self.combined.insert(key, out.clone());
        out
    }

    /// Products of per-tree combinations, re-sorted with the commutativity
    /// sign.
    pub fn forest_trees(&mut self, trees: &[Tree], n: usize) -> LinCombo<Forest> {
        let per: Vec<LinCombo<Tree>> = trees.iter().map(|t| self.tree(t)).collect();
        let mut out = LinCombo::zero();
        let mut stack: Vec<(Vec<Tree>, BigInt)> = alloc::vec![(Vec::new(), BigInt::from(1))];
        for combo in &per {
            let mut next = Vec::new();
            for (prefix, c) in &stack {
                for (t, k) in combo.iter() {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    next.push((p, c * k));
                }
            }
            stack = next;
        }
        for (ts, c) in stack {
            let (sorted, sigma) = sort_trees(ts);
            out.add_signed(Forest::from_sorted(n, sorted), &c, self.parity.commutativity(sigma));
        }
        out
    }

    pub fn forest(&mut self, f: &Forest) -> LinCombo<Forest> {
        self.forest_trees(f.trees(), f.n())
    }
}

/// Expresses `x` in the tall-forest basis.
pub fn normalize_pois(x: &LinCombo<Forest>, p: Parity) -> Result<LinCombo<Forest>> {
    check_same_n(x.keys().map(Forest::n))?;
    let mut nz = PoisNormalizer::new(p);
    Ok(x.flat_map(|f| nz.forest(f)))
}

pub(crate) fn check_same_n(mut ns: impl Iterator<Item = usize>) -> Result<()> {
    if let Some(first) = ns.next() {
        if let Some(other) = ns.find(|&m| m != first) {
            return Err(mismatch!("terms on {first} and {other} labels"));
        }
    }
    Ok(())
}

/// Sign `s` with `trees = s * canonical forest` under the commutativity
/// relation.
pub fn canonical_forest(trees: Vec<Tree>, p: Parity) -> Result<(Forest, Sign)> {
    let (f, sigma) = Forest::with_sign(trees)?;
    Ok((f, p.commutativity(sigma)))
}
