//! Rewriting graphs to the long basis.
//!
//! Every acyclic graph without repeated vertex pairs equals, up to sign,
//! the graph on the same undirected edges oriented `min -> max` and listed in
//! sorted order; those undirected forests are the intermediate basis. Arnold
//! moves then straighten each component into a chain from its minimum.

use alloc::vec;
use alloc::vec::Vec;

use super::pois::check_same_n;
use super::LinCombo;
use crate::combinatorics::Graph;
use crate::error::Result;
use crate::sign::{Parity, Sign};

type EdgeSet = Vec<(usize, usize)>;

/// `edges = s * C` with `C` the sorted, `min -> max` oriented edge set;
/// `None` when a vertex pair repeats.
fn to_sorted(edges: &[(usize, usize)], p: Parity) -> Option<(EdgeSet, Sign)> {
    let mut reversed = 0;
    let undirected: EdgeSet = edges
        .iter()
        .map(|&(i, j)| {
            if i > j {
                reversed += 1;
                (j, i)
            } else {
                (i, j)
            }
        })
        .collect();
    let sigma = Sign::of_sequence(&undirected);
    let mut sorted = undirected;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, p.reversal(reversed, sigma)))
}

fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a == b {
            return true;
        }
        parent[a] = b;
    }
    false
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n + 1];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Rooting every component at its minimum, the first vertex with two
/// children, as `(vertex, child, child)`.
fn find_branch(n: usize, edges: &[(usize, usize)]) -> Option<(usize, usize, usize)> {
    let adj = adjacency(n, edges);
    let mut seen = vec![false; n + 1];
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        let mut prev = 0;
        let mut cur = root;
        loop {
            seen[cur] = true;
            let children: Vec<usize> = adj[cur].iter().copied().filter(|&c| c != prev).collect();
            match children.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = children[0];
                }
                _ => return Some((cur, children[0], children[1])),
            }
        }
    }
    None
}

/// The long graph reading off the chains of a forest of paths.
fn chains(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let adj = adjacency(n, edges);
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut cur = root;
        while let Some(&next) = adj[cur].iter().find(|&&c| !seen[c]) {
            seen[next] = true;
            out.push((cur, next));
            cur = next;
        }
    }
    out
}

fn orient(e: (usize, usize)) -> (usize, usize) {
    (e.0.min(e.1), e.0.max(e.1))
}

/// Expresses one graph in the long basis.
pub fn normalize_graph(g: &Graph, p: Parity) -> LinCombo<Graph> {
    let n = g.n();
    let mut out = LinCombo::zero();
    let Some((start, s)) = to_sorted(g.edges(), p) else {
        return out;
    };
    if has_cycle(n, &start) {
        return out;
    }
    let mut work: LinCombo<EdgeSet> = LinCombo::term(start, s.to_i32());
    while let Some((c, coeff)) = work.pop_first() {
        match find_branch(n, &c) {
            None => {
                let long = chains(n, &c);
                let (_, s) = to_sorted(&long, p).expect("chains have no repeated pairs");
                out.add_signed(Graph::from_valid(n, long), &coeff, s);
            }
            Some((k, x, y)) => {
                // a_xk a_ky + a_ky a_yx + a_yx a_xk = 0 after the other edges
                let rest: EdgeSet = c.iter().copied().filter(|&e| e != orient((x, k)) && e != orient((k, y))).collect();
                let term = |pair: [(usize, usize); 2]| {
                    let mut e = rest.clone();
                    e.extend_from_slice(&pair);
                    to_sorted(&e, p).expect("Arnold terms stay simple")
                };
                let (_, s1) = term([(x, k), (k, y)]);
                let (c2, s2) = term([(k, y), (y, x)]);
                let (c3, s3) = term([(y, x), (x, k)]);
                let neg = -coeff;
                work.add_signed(c2, &neg, s1 * s2);
                work.add_signed(c3, &neg, s1 * s3);
            }
        }
    }
    out
}

/// Expresses `x` in the long-graph basis; graphs with repeated vertex pairs
/// or cycles vanish.
pub fn normalize_siop(x: &LinCombo<Graph>, p: Parity) -> Result<LinCombo<Graph>> {
    check_same_n(x.keys().map(Graph::n))?;
    Ok(x.flat_map(|g| normalize_graph(g, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::text::parse_graph;

    fn g(s: &str) -> Graph {
        parse_graph(s).unwrap()
    }

    fn norm(s: &str, p: Parity) -> LinCombo<Graph> {
        normalize_graph(&g(s), p)
    }

    #[test]
    fn long_is_fixed() {
        for p in Parity::BOTH {
            assert_eq!(norm("n=3; 1->3, 3->2", p), LinCombo::basis(g("n=3; 1->3, 3->2")));
            assert_eq!(norm("n=4; 1->2, 3->4", p), LinCombo::basis(g("n=4; 1->2, 3->4")));
        }
    }

    #[test]
    fn transposed_chain() {
        // one transposition, no reversal: sign (-1)^{d-1}
        assert_eq!(norm("n=3; 2->3, 1->2", Parity::Even), LinCombo::term(g("n=3; 1->2, 2->3"), -1));
        assert_eq!(norm("n=3; 2->3, 1->2", Parity::Odd), LinCombo::basis(g("n=3; 1->2, 2->3")));
    }

    #[test]
    fn vanishing() {
        for p in Parity::BOTH {
            assert!(norm("n=2; 1->2, 1->2", p).is_zero());
            assert!(norm("n=2; 1->2, 2->1", p).is_zero());
            assert!(norm("n=3; 1->2, 2->3, 3->1", p).is_zero());
        }
    }

    #[test]
    fn arnold_sum_vanishes() {
        for p in Parity::BOTH {
            let mut x = LinCombo::zero();
            for s in ["n=3; 1->2, 2->3", "n=3; 2->3, 3->1", "n=3; 3->1, 1->2"] {
                x.add_term(g(s), 1);
            }
            assert!(normalize_siop(&x, p).unwrap().is_zero());
        }
    }
}
