use alloc::vec::Vec;

use super::OrderedPartition;
use crate::error::{invalid, Error, Result};

/// `n` vertices with an ordered list of directed edges `i -> j`.
///
/// Repeated edges and cycles are allowed here; they vanish only in the
/// quotient by the Arnold relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for &(i, j) in &edges {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
            }
            if i == j {
                return Err(invalid!("loop edge {i}->{i}"));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }

    pub(crate) fn from_valid(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Long graphs are disjoint chains, each leaving its block minimum, with
    /// edges listed consecutively along each chain and chains in order of
    /// their minima.
    pub fn is_long(&self) -> bool {
        self.ordered_partition().is_ok()
    }

    /// Reads the chains of a long graph.
    pub fn ordered_partition(&self) -> Result<OrderedPartition> {
        let not_long = || invalid!("graph is not long");
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &(i, j) in &self.edges {
            match blocks.last_mut() {
                Some(b) if *b.last().unwrap() == i => b.push(j),
                _ => blocks.push(alloc::vec![i, j]),
            }
        }
        let mut seen = alloc::vec![false; self.n + 1];
        for b in &blocks {
            for &x in b {
                if core::mem::replace(&mut seen[x], true) {
                    return Err(not_long());
                }
            }
        }
        for x in 1..=self.n {
            if !seen[x] {
                blocks.push(alloc::vec![x]);
            }
        }
        // chains must be listed in the order of their minima; singletons
        // carry no edges so they may be merged in anywhere
        let chain_mins: Vec<usize> = blocks.iter().filter(|b| b.len() > 1).map(|b| b[0]).collect();
        if chain_mins.windows(2).any(|w| w[0] > w[1]) {
            return Err(not_long());
        }
        if blocks.iter().any(|b| b.iter().any(|&x| x < b[0])) {
            return Err(not_long());
        }
        blocks.sort_by_key(|b| b[0]);
        OrderedPartition::new(self.n, blocks)
    }
}
