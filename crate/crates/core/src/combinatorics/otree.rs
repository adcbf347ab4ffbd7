use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// Rooted tree with ordered inputs at every vertex (an o-tree).
///
/// The input edges of a vertex are labeled `1..=arity` by position, and
/// leaves are labeled `1..=n` in planar order. Only the root may have arity
/// zero (the tree `gamma_0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OTree {
    Leaf,
    Vertex(Vec<OTree>),
}

/// Position of a vertex: the input labels (1-based) followed from the root.
pub type VertexPath = Vec<usize>;

impl OTree {
    /// The corolla `gamma_n`.
    pub fn corolla(n: usize) -> OTree {
        OTree::Vertex(vec![OTree::Leaf; n])
    }

    pub fn new(children: Vec<OTree>) -> Result<OTree> {
        let t = OTree::Vertex(children);
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            OTree::Leaf => Err(invalid!("the root of an o-tree must be a vertex")),
            OTree::Vertex(cs) => cs.iter().try_for_each(|c| c.validate_inner()),
        }
    }

    fn validate_inner(&self) -> Result<()> {
        match self {
            OTree::Leaf => Ok(()),
            OTree::Vertex(cs) if cs.is_empty() => Err(invalid!("only the root may have arity 0")),
            OTree::Vertex(cs) => cs.iter().try_for_each(|c| c.validate_inner()),
        }
    }

    pub fn children(&self) -> &[OTree] {
        match self {
            OTree::Leaf => &[],
            OTree::Vertex(cs) => cs,
        }
    }

    pub fn arity(&self) -> usize {
        self.children().len()
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            OTree::Leaf => 1,
            OTree::Vertex(cs) => cs.iter().map(OTree::leaf_count).sum(),
        }
    }

    /// Internal vertices in pre-order: root first, then the subtrees of its
    /// inputs in label order.
    pub fn vertex_paths(&self) -> Vec<VertexPath> {
        let mut out = Vec::new();
        self.push_vertices(&mut Vec::new(), &mut out);
        out
    }

    fn push_vertices(&self, path: &mut VertexPath, out: &mut Vec<VertexPath>) {
        if let OTree::Vertex(cs) = self {
            out.push(path.clone());
            for (i, c) in cs.iter().enumerate() {
                path.push(i + 1);
                c.push_vertices(path, out);
                path.pop();
            }
        }
    }

    /// For each leaf in planar order, the input labels from the root to it.
    pub fn leaf_paths(&self) -> Vec<VertexPath> {
        let mut out = Vec::new();
        self.push_leaves(&mut Vec::new(), &mut out);
        out
    }

    fn push_leaves(&self, path: &mut VertexPath, out: &mut Vec<VertexPath>) {
        match self {
            OTree::Leaf => out.push(path.clone()),
            OTree::Vertex(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    path.push(i + 1);
                    c.push_leaves(path, out);
                    path.pop();
                }
            }
        }
    }

    pub fn get(&self, path: &[usize]) -> Option<&OTree> {
        let mut t = self;
        for &i in path {
            t = t.children().get(i.checked_sub(1)?)?;
        }
        Some(t)
    }

    /// Contracts the internal edge below the vertex at `path`: its inputs
    /// take the place of that edge, so they are relabeled `i..i+k-1` and
    /// later siblings shift by `k - 1`.
    pub fn contract(&self, path: &[usize]) -> Result<OTree> {
        let Some((&last, parent)) = path.split_last() else {
            return Err(invalid!("the root has no edge below it to contract"));
        };
        match self.get(path) {
            Some(OTree::Vertex(_)) => {}
            Some(OTree::Leaf) => return Err(invalid!("leaf edges cannot be contracted")),
            None => return Err(invalid!("no edge at path {:?}", path)),
        }
        let mut out = self.clone();
        let mut t = &mut out;
        for &i in parent {
            let OTree::Vertex(cs) = t else { unreachable!() };
            t = &mut cs[i - 1];
        }
        let OTree::Vertex(cs) = t else { unreachable!() };
        let OTree::Vertex(grand) = cs.remove(last - 1) else { unreachable!() };
        cs.splice(last - 1..last - 1, grand);
        Ok(out)
    }

    /// Paths of all contractible (internal, non-root) edges.
    pub fn internal_edges(&self) -> Vec<VertexPath> {
        self.vertex_paths().into_iter().filter(|p| !p.is_empty()).collect()
    }

    /// Whether the tree is a root whose children are leaves or vertices all
    /// of whose children are leaves.
    pub fn is_two_level(&self) -> bool {
        self.children()
            .iter()
            .all(|c| c.children().iter().all(|g| matches!(g, OTree::Leaf)))
    }
}
