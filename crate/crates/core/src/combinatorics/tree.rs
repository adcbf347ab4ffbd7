use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// Planar binary tree with labeled leaves.
///
/// Internal vertices are numbered in order: every vertex of the left subtree,
/// then the vertex itself, then every vertex of the right subtree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(left: Tree, right: Tree) -> Tree {
        Tree::Node(Box::new(left), Box::new(right))
    }

    /// Left comb `[[[s0,s1],s2],...]` on a nonempty sequence.
    pub fn comb(seq: &[usize]) -> Tree {
        let mut t = Tree::Leaf(seq[0]);
        for &x in &seq[1..] {
            t = Tree::node(t, Tree::Leaf(x));
        }
        t
    }

    /// Number of internal vertices.
    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(l, r) => 1 + l.vertex_count() + r.vertex_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.vertex_count() + 1
    }

    /// Leaf labels from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_leaves(&mut out);
        out
    }

    fn push_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(x) => out.push(*x),
            Tree::Node(l, r) => {
                l.push_leaves(out);
                r.push_leaves(out);
            }
        }
    }

    pub fn min_leaf(&self) -> usize {
        match self {
            Tree::Leaf(x) => *x,
            Tree::Node(l, r) => l.min_leaf().min(r.min_leaf()),
        }
    }

    /// A tall tree is a left comb whose deepest (leftmost) leaf carries the
    /// minimal label.
    pub fn is_tall(&self) -> bool {
        let mut t = self;
        let min = self.min_leaf();
        loop {
            match t {
                Tree::Leaf(x) => return *x == min,
                Tree::Node(l, r) => {
                    if !matches!(**r, Tree::Leaf(_)) {
                        return false;
                    }
                    t = l;
                }
            }
        }
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(x) => Tree::Leaf(f(*x)),
            Tree::Node(l, r) => Tree::node(l.relabel(f), r.relabel(f)),
        }
    }

    /// Rejects repeated or zero labels.
    pub fn validate(&self) -> Result<()> {
        let mut leaves = self.leaves();
        if leaves.contains(&0) {
            return Err(invalid!("leaf labels must be positive"));
        }
        leaves.sort_unstable();
        if let Some(w) = leaves.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid!("duplicate leaf label {}", w[0]));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comb_and_tall() {
        let t = Tree::comb(&[1, 3, 2]);
        assert_eq!(t, Tree::node(Tree::node(Tree::Leaf(1), Tree::Leaf(3)), Tree::Leaf(2)));
        assert!(t.is_tall());
        assert!(!Tree::comb(&[2, 1, 3]).is_tall());
        assert!(!Tree::node(Tree::Leaf(1), Tree::node(Tree::Leaf(2), Tree::Leaf(3))).is_tall());
        assert!(Tree::Leaf(4).is_tall());
    }

    #[test]
    fn counts() {
        let t = Tree::node(Tree::comb(&[2, 6]), Tree::node(Tree::comb(&[1, 7]), Tree::Leaf(3)));
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.leaves(), [2, 6, 1, 7, 3]);
        assert_eq!(t.min_leaf(), 1);
    }

    #[test]
    fn duplicate_rejected() {
        assert!(Tree::comb(&[1, 1]).validate().is_err());
        assert!(Tree::comb(&[0, 1]).validate().is_err());
    }
}
