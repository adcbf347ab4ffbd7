//! The configuration pairing between graphs and forests.
//!
//! Each edge `i -> j` is sent to the nadir of leaves `i`, `j`. The pairing
//! vanishes unless this map is a bijection onto the internal vertices; then
//! it is a sign: for even `d`, the sign of the edge-to-vertex permutation;
//! for odd `d`, `-1` per edge whose source leaf lies right of its target.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::algebra::LinCombo;
use crate::combinatorics::{
    enumerate_long_graphs, enumerate_tall_forests, ordered_partitions, product_coefficients, Forest, Graph, Layout,
    Tree,
};
use crate::error::{mismatch, Result};
use crate::sign::{Parity, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingResult {
    pub value: i32,
    /// Vertex (global in-order index) hit by each edge, when bijective.
    pub beta: Option<Vec<usize>>,
}

impl PairingResult {
    fn zero() -> Self {
        PairingResult { value: 0, beta: None }
    }
}

/// Pairing against trees taken in the given (possibly non-canonical) order.
pub fn pair_trees(g: &Graph, trees: &[Tree], p: Parity) -> Result<PairingResult> {
    let n: usize = trees.iter().map(Tree::leaf_count).sum();
    if g.n() != n {
        return Err(mismatch!("graph on {} vertices, forest on {n} leaves", g.n()));
    }
    Ok(pair_layout(g, &Layout::new(trees, n), p))
}

pub fn pair_layout(g: &Graph, layout: &Layout, p: Parity) -> PairingResult {
    if g.edge_count() != layout.vertex_count {
        return PairingResult::zero();
    }
    let mut beta = Vec::with_capacity(g.edge_count());
    let mut hit = vec![false; layout.vertex_count];
    let mut sign = Sign::Plus;
    for &(i, j) in g.edges() {
        let Some((v, i_left)) = layout.nadir(i, j) else {
            return PairingResult::zero();
        };
        if core::mem::replace(&mut hit[v], true) {
            return PairingResult::zero();
        }
        if !i_left {
            sign = -sign;
        }
        beta.push(v);
    }
    let value = match p {
        Parity::Even => Sign::of_sequence(&beta),
        Parity::Odd => sign,
    };
    PairingResult { value: value.to_i32(), beta: Some(beta) }
}

pub fn pair(g: &Graph, f: &Forest, p: Parity) -> Result<PairingResult> {
    pair_trees(g, f.trees(), p)
}

/// Bilinear extension.
pub fn pair_combo(x: &LinCombo<Graph>, y: &LinCombo<Forest>, p: Parity) -> Result<BigInt> {
    let mut total = BigInt::zero();
    let layouts: Vec<(Layout, &Forest, &BigInt)> = y.iter().map(|(f, c)| (f.layout(), f, c)).collect();
    for (g, cg) in x.iter() {
        for (layout, f, cf) in &layouts {
            if g.n() != f.n() {
                return Err(mismatch!("graph on {} vertices, forest on {} leaves", g.n(), f.n()));
            }
            let v = pair_layout(g, layout, p).value;
            if v != 0 {
                total += cg * *cf * v;
            }
        }
    }
    Ok(total)
}

/// Pairings of long graphs (rows) with tall forests (columns) in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub k: usize,
    pub parity: Parity,
    pub rows: Vec<Graph>,
    pub cols: Vec<Forest>,
    pub entries: Vec<Vec<i32>>,
}

impl GramMatrix {
    /// Positions `(row, col, value)` that differ from the identity.
    pub fn identity_defects(&self) -> Vec<(usize, usize, i32)> {
        let mut out = Vec::new();
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != i32::from(r == c) {
                    out.push((r, c, v));
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.identity_defects().is_empty()
    }
}

/// Rows and columns both follow [`ordered_partitions`], so they are aligned.
pub fn gram_matrix(n: usize, k: usize, p: Parity) -> GramMatrix {
    gram_matrix_with(n, k, p, |g, f, p| pair(g, f, p).map(|r| r.value).unwrap_or(0))
}

pub fn gram_matrix_with(n: usize, k: usize, p: Parity, pairing: impl Fn(&Graph, &Forest, Parity) -> i32) -> GramMatrix {
    let rows = enumerate_long_graphs(n, k);
    let cols = enumerate_tall_forests(n, k);
    let entries = rows.iter().map(|g| cols.iter().map(|f| pairing(g, f, p)).collect()).collect();
    GramMatrix { n, k, parity: p, rows, cols, entries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    pub n: usize,
    pub d: u64,
    /// `ranks[k]` is the Betti number in degree `k (d - 1)`.
    pub ranks: Vec<BigUint>,
}

impl RankTable {
    pub fn degrees(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        self.ranks.iter().enumerate().map(move |(k, r)| (k as u64 * (self.d - 1), r))
    }

    pub fn total(&self) -> BigUint {
        self.ranks.iter().sum()
    }
}

/// Betti numbers of the configuration space of `n` points in `R^d`, from
/// `Q_i = Q_{i-1} (1 + (i-1) t^{d-1})`.
pub fn rank_table(n: usize, d: u64) -> RankTable {
    let mut q = vec![BigUint::from(1u32)];
    for i in 2..=n.max(1) {
        let mut next = vec![BigUint::zero(); q.len() + 1];
        for (k, c) in q.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * BigUint::from(i - 1);
        }
        q = next;
    }
    RankTable { n, d, ranks: q }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub k: usize,
    pub size: usize,
    pub expected_size: u128,
    /// `(row, column, value)` entries off the identity.
    pub failures: Vec<(Graph, Forest, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectReport {
    pub n: usize,
    pub parity: Parity,
    pub degrees: Vec<DegreeReport>,
    /// Degree-one basis `{i -> j}` against `{[i,j]}`, `i < j`.
    pub first_degree: DegreeReport,
}

impl PerfectReport {
    pub fn passed(&self) -> bool {
        let ok = |d: &DegreeReport| d.failures.is_empty() && d.size as u128 == d.expected_size;
        self.degrees.iter().all(ok) && ok(&self.first_degree)
    }
}

pub fn verify_perfect(n: usize, p: Parity) -> PerfectReport {
    verify_perfect_with(n, p, |g, f, p| pair(g, f, p).map(|r| r.value).unwrap_or(0))
}

/// As [`verify_perfect`] with a substitute pairing (used for negative
/// controls).
pub fn verify_perfect_with(n: usize, p: Parity, pairing: impl Fn(&Graph, &Forest, Parity) -> i32) -> PerfectReport {
    let expected = product_coefficients(n);
    let degree = |k: usize| {
        let m = gram_matrix_with(n, k, p, &pairing);
        let failures =
            m.identity_defects().into_iter().map(|(r, c, v)| (m.rows[r].clone(), m.cols[c].clone(), v)).collect();
        DegreeReport { k, size: m.rows.len(), expected_size: expected[k], failures }
    };
    let degrees: Vec<DegreeReport> = (0..n.max(1)).map(degree).collect();
    PerfectReport { n, parity: p, degrees, first_degree: first_degree(n, p, &pairing) }
}

/// Degree-one Gram block between `{i -> j}` and `{[i,j]}`, `i < j`.
pub fn first_degree(n: usize, p: Parity, pairing: &impl Fn(&Graph, &Forest, Parity) -> i32) -> DegreeReport {
    let mut graphs = Vec::new();
    let mut forests = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            graphs.push(Graph::from_valid(n, vec![(i, j)]));
            let mut trees = vec![Tree::comb(&[i, j])];
            trees.extend((1..=n).filter(|&x| x != i && x != j).map(Tree::Leaf));
            forests.push(Forest::new(trees).expect("valid partition"));
        }
    }
    let mut failures = Vec::new();
    for (r, g) in graphs.iter().enumerate() {
        for (c, f) in forests.iter().enumerate() {
            let v = pairing(g, f, p);
            if v != i32::from(r == c) {
                failures.push((g.clone(), f.clone(), v));
            }
        }
    }
    let expected = if n >= 2 { (n * (n - 1) / 2) as u128 } else { 0 };
    DegreeReport { k: 1, size: graphs.len(), expected_size: expected, failures }
}

/// Number of ordered partitions in degree `k`; equals the basis sizes.
pub fn basis_size(n: usize, k: usize) -> usize {
    ordered_partitions(n, k).len()
}
