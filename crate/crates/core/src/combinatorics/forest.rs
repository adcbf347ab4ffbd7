use alloc::vec;
use alloc::vec::Vec;

use super::Tree;
use crate::error::{invalid, Error, Result};
use crate::sign::Sign;

/// Ordered list of trees whose leaves partition `{1..n}`, stored with trees
/// sorted by minimal leaf.
///
/// The global internal-vertex order is the concatenation of the per-tree
/// in-order sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    n: usize,
    trees: Vec<Tree>,
}

/// One step on the path from a tree's root down to a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    /// Global in-order index of the vertex passed through.
    pub vertex: usize,
    /// Whether the path continues into the right subtree.
    pub right: bool,
}

/// Root-to-leaf paths of every label; heights are 1-based (the root vertex
/// sits one edge above the univalent root).
#[derive(Clone, Debug)]
pub struct Layout {
    pub tree_of: Vec<usize>,
    pub paths: Vec<Vec<Step>>,
    pub vertex_count: usize,
}

impl Layout {
    /// Layout of trees taken in the given order. `n` is the label count.
    pub fn new(trees: &[Tree], n: usize) -> Layout {
        let mut tree_of = vec![usize::MAX; n];
        let mut paths = vec![Vec::new(); n];
        let mut offset = 0;
        for (ti, t) in trees.iter().enumerate() {
            let mut path = Vec::new();
            walk(t, offset, ti, &mut path, &mut tree_of, &mut paths);
            offset += t.vertex_count();
        }
        Layout { tree_of, paths, vertex_count: offset }
    }

    fn path(&self, label: usize) -> &[Step] {
        &self.paths[label - 1]
    }

    /// Nadir of leaves `i` and `j` as `(vertex, i is left of j)`.
    pub fn nadir(&self, i: usize, j: usize) -> Option<(usize, bool)> {
        if self.tree_of[i - 1] != self.tree_of[j - 1] || i == j {
            return None;
        }
        let (a, b) = (self.path(i), self.path(j));
        let c = a.iter().zip(b).position(|(x, y)| x.right != y.right)?;
        Some((a[c].vertex, !a[c].right))
    }

    /// Height of every vertex, indexed by global order.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.vertex_count];
        for p in &self.paths {
            for (depth, s) in p.iter().enumerate() {
                h[s.vertex] = depth + 1;
            }
        }
        h
    }
}

fn walk(
    t: &Tree,
    offset: usize,
    ti: usize,
    path: &mut Vec<Step>,
    tree_of: &mut [usize],
    paths: &mut [Vec<Step>],
) {
    match t {
        Tree::Leaf(x) => {
            tree_of[x - 1] = ti;
            paths[x - 1] = path.clone();
        }
        Tree::Node(l, r) => {
            let vertex = offset + l.vertex_count();
            path.push(Step { vertex, right: false });
            walk(l, offset, ti, path, tree_of, paths);
            path.pop();
            path.push(Step { vertex, right: true });
            walk(r, vertex + 1, ti, path, tree_of, paths);
            path.pop();
        }
    }
}

/// Checks that the leaves of `trees` partition `{1..n}` and returns `n`.
fn check_partition(trees: &[Tree]) -> Result<usize> {
    let mut labels: Vec<usize> = trees.iter().flat_map(|t| t.leaves()).collect();
    labels.sort_unstable();
    for (k, &x) in labels.iter().enumerate() {
        if x != k + 1 {
            return Err(if k > 0 && x == labels[k - 1] {
                invalid!("duplicate leaf label {x}")
            } else {
                invalid!("leaf labels must be exactly 1..={}", labels.len())
            });
        }
    }
    Ok(labels.len())
}

/// Sign of the internal-vertex permutation that sorts `trees` by minimal
/// leaf, together with the sorted list.
pub fn sort_trees(mut trees: Vec<Tree>) -> (Vec<Tree>, Sign) {
    let keys: Vec<(usize, usize)> = trees.iter().map(|t| (t.min_leaf(), t.vertex_count())).collect();
    let mut sign = Sign::Plus;
    for a in 0..keys.len() {
        for b in a + 1..keys.len() {
            if keys[a].0 > keys[b].0 && keys[a].1 * keys[b].1 % 2 == 1 {
                sign = -sign;
            }
        }
    }
    trees.sort_by_key(|t| t.min_leaf());
    (trees, sign)
}

impl Forest {
    /// Validates and sorts into canonical order, returning the raw sign of
    /// the internal-vertex permutation this caused.
    pub fn with_sign(trees: Vec<Tree>) -> Result<(Forest, Sign)> {
        let n = check_partition(&trees)?;
        let (trees, sign) = sort_trees(trees);
        Ok((Forest { n, trees }, sign))
    }

    /// Validates and sorts into canonical order. The reordering sign is
    /// discarded; use [`Forest::with_sign`] inside linear combinations.
    pub fn new(trees: Vec<Tree>) -> Result<Forest> {
        Forest::with_sign(trees).map(|(f, _)| f)
    }

    /// The forest of `n` isolated leaves.
    pub fn singletons(n: usize) -> Forest {
        Forest { n, trees: (1..=n).map(Tree::Leaf).collect() }
    }

    pub(crate) fn from_sorted(n: usize, trees: Vec<Tree>) -> Forest {
        debug_assert!(trees.windows(2).all(|w| w[0].min_leaf() < w[1].min_leaf()));
        Forest { n, trees }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(Tree::vertex_count).sum()
    }

    pub fn is_tall(&self) -> bool {
        self.trees.iter().all(Tree::is_tall)
    }

    pub fn layout(&self) -> Layout {
        Layout::new(&self.trees, self.n)
    }

    fn check_label(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n {
            Err(Error::LabelOutOfRange { label: x, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Lowest vertex on the path between leaves `i` and `j`, as a global
    /// in-order vertex index; `None` if they lie in different trees.
    pub fn nadir(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check_label(i)?;
        self.check_label(j)?;
        if i == j {
            return Err(invalid!("nadir needs two distinct leaves"));
        }
        Ok(self.layout().nadir(i, j).map(|(v, _)| v))
    }
}
