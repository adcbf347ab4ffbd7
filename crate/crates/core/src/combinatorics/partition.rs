use alloc::vec::Vec;

use super::{Forest, Graph, Tree};
use crate::error::{invalid, Result};

/// Blocks of `{1..n}`, each sequenced with its minimum first, blocks sorted
/// by minimum. Indexes both the tall-forest and the long-graph bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<OrderedPartition> {
        let mut seen = alloc::vec![false; n + 1];
        for b in &blocks {
            let Some(&first) = b.first() else {
                return Err(invalid!("empty block"));
            };
            for &x in b {
                if x == 0 || x > n || core::mem::replace(&mut seen[x], true) {
                    return Err(invalid!("blocks must partition 1..={n}"));
                }
                if x < first {
                    return Err(invalid!("block must start with its minimum"));
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(invalid!("blocks must partition 1..={n}"));
        }
        if blocks.windows(2).any(|w| w[0][0] > w[1][0]) {
            return Err(invalid!("blocks must be sorted by minimum"));
        }
        Ok(OrderedPartition { n, blocks })
    }

    pub(crate) fn from_valid(n: usize, blocks: Vec<Vec<usize>>) -> OrderedPartition {
        OrderedPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `n` minus the number of blocks: the degree of the basis elements.
    pub fn degree(&self) -> usize {
        self.n - self.blocks.len()
    }

    /// Consecutive pairs within blocks; also the sort key of both bases.
    pub fn chain_edges(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().flat_map(|b| b.windows(2).map(|w| (w[0], w[1]))).collect()
    }

    pub fn tall_forest(&self) -> Forest {
        Forest::from_sorted(self.n, self.blocks.iter().map(|b| Tree::comb(b)).collect())
    }

    pub fn long_graph(&self) -> Graph {
        Graph::from_valid(self.n, self.chain_edges())
    }
}

impl Forest {
    /// Blocks are the leaf sets of the trees, sequenced by leaf order.
    pub fn ordered_partition(&self) -> Result<OrderedPartition> {
        if !self.is_tall() {
            return Err(invalid!("forest is not tall"));
        }
        Ok(OrderedPartition::from_valid(self.n(), self.trees().iter().map(Tree::leaves).collect()))
    }
}

/// Any long graph or tall forest, for [`ordered_partition`].
pub enum Basis<'a> {
    Tall(&'a Forest),
    Long(&'a Graph),
}

pub fn ordered_partition(x: Basis<'_>) -> Result<OrderedPartition> {
    match x {
        Basis::Tall(f) => f.ordered_partition(),
        Basis::Long(g) => g.ordered_partition(),
    }
}
