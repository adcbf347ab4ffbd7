//! Seeded random inputs. Everything is drawn from a `ChaCha8Rng`, so a seed
//! fixes the output on every platform.

use confpair_core::geometry::TorusPoint;
use confpair_core::{Forest, Graph, LinCombo, Tree};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the unit sphere in `R^d` (rejection from the cube).
pub fn random_unit(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let r2: f64 = v.iter().map(|x| x * x).sum();
        if r2 > 1e-4 && r2 <= 1.0 {
            let r = r2.sqrt();
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

pub fn random_torus_point(rng: &mut impl Rng, vertices: usize, d: usize) -> TorusPoint {
    TorusPoint::new((0..vertices).map(|_| random_unit(rng, d)).collect()).expect("unit vectors")
}

/// Random planar binary tree on the given labels, in random leaf order.
pub fn random_tree(rng: &mut impl Rng, labels: &[usize]) -> Tree {
    let mut labels = labels.to_vec();
    labels.shuffle(rng);
    fn build(rng: &mut impl Rng, labels: &[usize]) -> Tree {
        if labels.len() == 1 {
            return Tree::Leaf(labels[0]);
        }
        let cut = rng.gen_range(1..labels.len());
        Tree::node(build(rng, &labels[..cut]), build(rng, &labels[cut..]))
    }
    build(rng, &labels)
}

/// Random trees with `k` internal vertices whose leaves partition `1..=n`,
/// in random order.
pub fn random_trees(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Tree> {
    assert!(k < n, "a forest on {n} leaves has fewer than {n} vertices");
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(n - k - 1).collect();
    cuts.sort_unstable();
    let mut trees = Vec::new();
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(n)) {
        trees.push(random_tree(rng, &labels[start..end]));
        start = end;
    }
    trees.shuffle(rng);
    trees
}

pub fn random_forest(rng: &mut impl Rng, n: usize, k: usize) -> Forest {
    Forest::new(random_trees(rng, n, k)).expect("labels partition 1..=n")
}

/// `k` random edges between distinct vertices; repeats and cycles allowed.
pub fn random_graph(rng: &mut impl Rng, n: usize, k: usize) -> Graph {
    assert!(n >= 2 || k == 0);
    let edges = (0..k)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            let mut j = rng.gen_range(1..n);
            if j >= i {
                j += 1;
            }
            (i, j)
        })
        .collect();
    Graph::new(n, edges).expect("edges in range")
}

fn random_coeff(rng: &mut impl Rng, max: i64) -> i64 {
    let c = rng.gen_range(1..=max);
    if rng.gen() {
        c
    } else {
        -c
    }
}

/// Up to `terms` forests of mixed degrees with coefficients in `[-max, max]`.
pub fn random_forest_combo(rng: &mut impl Rng, n: usize, terms: usize, max: i64) -> LinCombo<Forest> {
    let mut x = LinCombo::zero();
    for _ in 0..terms {
        let k = rng.gen_range(0..n);
        let f = random_forest(rng, n, k);
        x.add_term(f, random_coeff(rng, max));
    }
    x
}

/// Up to `terms` graphs with at most `n - 1` edges.
pub fn random_graph_combo(rng: &mut impl Rng, n: usize, terms: usize, max: i64) -> LinCombo<Graph> {
    let mut x = LinCombo::zero();
    for _ in 0..terms {
        let k = rng.gen_range(0..n);
        let g = random_graph(rng, n, k);
        x.add_term(g, random_coeff(rng, max));
    }
    x
}
