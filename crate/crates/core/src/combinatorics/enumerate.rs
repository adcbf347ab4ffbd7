//! Enumeration of the tall and long bases through ordered partitions.

use alloc::vec;
use alloc::vec::Vec;

use super::{Forest, Graph, OrderedPartition, Tree};

/// All ordered partitions of `{1..n}` into `n - k` blocks, sorted by their
/// chain edge lists. Both bases are enumerated in this order, so Gram
/// matrices come out aligned.
pub fn ordered_partitions(n: usize, k: usize) -> Vec<OrderedPartition> {
    if n == 0 {
        return if k == 0 { vec![OrderedPartition::from_valid(0, Vec::new())] } else { Vec::new() };
    }
    if k >= n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    set_partitions(1, n, n - k, &mut blocks, &mut |sets| {
        let mut acc = Vec::new();
        sequence_blocks(sets, 0, &mut acc, &mut |seqs| {
            out.push(OrderedPartition::from_valid(n, seqs.to_vec()));
        });
    });
    out.sort_by_cached_key(|p| p.chain_edges());
    out
}

/// Set partitions of `{next..n}` added to `blocks`, ending with exactly
/// `target` blocks. Blocks are created in order of their minima.
fn set_partitions(
    next: usize,
    n: usize,
    target: usize,
    blocks: &mut Vec<Vec<usize>>,
    emit: &mut impl FnMut(&[Vec<usize>]),
) {
    if next > n {
        if blocks.len() == target {
            emit(blocks);
        }
        return;
    }
    let remaining = n - next + 1;
    if blocks.len() + remaining < target {
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(next);
        set_partitions(next + 1, n, target, blocks, emit);
        blocks[b].pop();
    }
    if blocks.len() < target {
        blocks.push(vec![next]);
        set_partitions(next + 1, n, target, blocks, emit);
        blocks.pop();
    }
}

/// Every sequencing of each block that keeps the minimum first.
fn sequence_blocks(
    sets: &[Vec<usize>],
    idx: usize,
    acc: &mut Vec<Vec<usize>>,
    emit: &mut impl FnMut(&[Vec<usize>]),
) {
    if idx == sets.len() {
        emit(acc);
        return;
    }
    let set = &sets[idx];
    let mut rest = set[1..].to_vec();
    permutations(&mut rest, 0, &mut |perm| {
        let mut seq = vec![set[0]];
        seq.extend_from_slice(perm);
        acc.push(seq);
        sequence_blocks(sets, idx + 1, acc, emit);
        acc.pop();
    });
}

fn permutations(items: &mut Vec<usize>, start: usize, emit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        emit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, emit);
        items.swap(start, i);
    }
}

/// Tall forests on `{1..n}` with `k` internal vertices.
pub fn enumerate_tall_forests(n: usize, k: usize) -> Vec<Forest> {
    ordered_partitions(n, k).iter().map(OrderedPartition::tall_forest).collect()
}

/// Long graphs on `n` vertices with `k` edges.
pub fn enumerate_long_graphs(n: usize, k: usize) -> Vec<Graph> {
    ordered_partitions(n, k).iter().map(OrderedPartition::long_graph).collect()
}

/// Every planar binary tree with leaf set `labels` (all shapes, all leaf
/// orders). Exponential; meant for exhaustive checks at small sizes.
pub fn all_trees(labels: &[usize]) -> Vec<Tree> {
    if labels.len() == 1 {
        return vec![Tree::Leaf(labels[0])];
    }
    let mut out = Vec::new();
    let (first, rest) = (labels[0], &labels[1..]);
    // split into the part containing `first` and a nonempty complement
    for mask in 0..(1u32 << rest.len()) - 1 {
        let mut a = vec![first];
        let mut b = Vec::new();
        for (bit, &x) in rest.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.push(x);
            } else {
                b.push(x);
            }
        }
        let (ta, tb) = (all_trees(&a), all_trees(&b));
        for x in &ta {
            for y in &tb {
                out.push(Tree::node(x.clone(), y.clone()));
                out.push(Tree::node(y.clone(), x.clone()));
            }
        }
    }
    out
}

/// Every forest on `{1..n}` (canonical tree order) with `k` internal
/// vertices, all shapes.
pub fn all_forests(n: usize, k: usize) -> Vec<Forest> {
    let mut out = Vec::new();
    if k >= n.max(1) {
        return out;
    }
    let mut blocks = Vec::new();
    set_partitions(1, n, n - k, &mut blocks, &mut |sets| {
        let per: Vec<Vec<Tree>> = sets.iter().map(|s| all_trees(s)).collect();
        let mut idx = vec![0usize; per.len()];
        loop {
            let trees = per.iter().zip(&idx).map(|(ts, &i)| ts[i].clone()).collect();
            out.push(Forest::from_sorted(n, trees));
            let mut p = 0;
            while p < idx.len() {
                idx[p] += 1;
                if idx[p] < per[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == idx.len() {
                break;
            }
        }
    });
    out
}

/// Every graph on `n` vertices with `k` ordered, directed edges (loops
/// excluded; repeats and cycles included).
pub fn all_graphs(n: usize, k: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(pairs: &[(usize, usize)], k: usize, n: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Graph>) {
        if cur.len() == k {
            out.push(Graph::from_valid(n, cur.clone()));
            return;
        }
        for &p in pairs {
            cur.push(p);
            rec(pairs, k, n, cur, out);
            cur.pop();
        }
    }
    if k == 0 || !pairs.is_empty() {
        rec(&pairs, k, n, &mut cur, &mut out);
    }
    out
}

/// Coefficients of `prod_{i=1}^{n-1} (1 + i t)` (unsigned Stirling numbers
/// of the first kind `c(n, n-k)`).
pub fn product_coefficients(n: usize) -> Vec<u128> {
    let mut q = vec![1u128];
    for i in 1..n.max(1) {
        let mut next = vec![0u128; q.len() + 1];
        for (k, &c) in q.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * i as u128;
        }
        q = next;
    }
    q
}
