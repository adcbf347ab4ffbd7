//! Operad composition of forests, cooperad maps on graphs, and the check
//! that the two are adjoint under the pairing.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{normalize_pois, reduce_bracket_expr, BracketExpr, LinCombo};
use crate::combinatorics::{enumerate_long_graphs, enumerate_tall_forests, Forest, Graph, OTree, Tree};
use crate::error::{invalid, mismatch, Result};
use crate::pairing::{pair, pair_combo};
use crate::sign::{Parity, Sign};

/// Number of internal vertices after leaf `i` when the trees are read in
/// order (left subtree, vertex, right subtree).
fn vertices_after_leaf(f: &Forest, i: usize) -> usize {
    fn walk(t: &Tree, i: usize, found: &mut bool, after: &mut usize) {
        match t {
            Tree::Leaf(x) => *found |= *x == i,
            Tree::Node(l, r) => {
                walk(l, i, found, after);
                if *found {
                    *after += 1;
                }
                walk(r, i, found, after);
            }
        }
    }
    let (mut found, mut after) = (false, 0);
    for t in f.trees() {
        walk(t, i, &mut found, &mut after);
    }
    after
}

/// `f1 o_i f2` before rewriting to the tall basis: variables of `f2` become
/// `x_i..x_{i+m-1}`, later variables of `f1` shift by `m - 1`, the result
/// is expanded by the Leibniz rule and carries the Koszul sign of moving
/// `f2`'s brackets past the vertices of `f1` that follow `x_i`.
pub fn substitute_forests(f1: &Forest, i: usize, f2: &Forest, p: Parity) -> Result<LinCombo<Forest>> {
    let (n, m) = (f1.n(), f2.n());
    if i == 0 || i > n {
        return Err(invalid!("composition index {i} outside 1..={n}"));
    }
    let outer = BracketExpr::from_forest(f1).relabel(&|j| if j > i { j + m - 1 } else { j });
    let inner = BracketExpr::from_forest(f2).relabel(&|j| j + i - 1);
    let sign = p.substitution(f2.vertex_count(), vertices_after_leaf(f1, i));
    Ok(reduce_bracket_expr(&outer.substitute(i, &inner), p)?.scaled(&sign.to_bigint()))
}

fn arity(x: &LinCombo<Forest>, what: &str) -> Result<usize> {
    let mut ns = x.keys().map(Forest::n);
    let Some(n) = ns.next() else {
        return Err(invalid!("{what} is zero; arity undefined"));
    };
    if ns.any(|m| m != n) {
        return Err(mismatch!("{what} mixes arities"));
    }
    Ok(n)
}

/// Bilinear `b1 o_i b2` without the final rewriting to the tall basis.
pub fn substitute(b1: &LinCombo<Forest>, i: usize, b2: &LinCombo<Forest>, p: Parity) -> Result<LinCombo<Forest>> {
    let n = arity(b1, "left operand")?;
    arity(b2, "right operand")?;
    if i == 0 || i > n {
        return Err(invalid!("composition index {i} outside 1..={n}"));
    }
    let mut out = LinCombo::zero();
    for (f1, c1) in b1.iter() {
        for (f2, c2) in b2.iter() {
            out.add_scaled(&substitute_forests(f1, i, f2, p)?, &(c1 * c2));
        }
    }
    Ok(out)
}

/// Operad composition `b1 o_i b2` in the tall basis.
pub fn compose(b1: &LinCombo<Forest>, i: usize, b2: &LinCombo<Forest>, p: Parity) -> Result<LinCombo<Forest>> {
    normalize_pois(&substitute(b1, i, b2, p)?, p)
}

/// Image of a graph under the cooperad map of an o-tree: one factor per
/// internal vertex (root first, then pre-order), with a global sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CooperadOutput {
    pub sign: Sign,
    pub factors: Vec<Graph>,
}

/// Sends each edge `j -> k` of `g` to the nadir vertex `v` of leaves `j`, `k`
/// in `tau`, as the edge between the inputs of `v` leading to them. The
/// sign is `pi^{d-1}` for the permutation `pi` from `g`'s edge order to the
/// concatenation of the factors.
pub fn cooperad(g: &Graph, tau: &OTree, p: Parity) -> Result<CooperadOutput> {
    tau.validate()?;
    let n = tau.leaf_count();
    if g.n() != n {
        return Err(mismatch!("graph on {} vertices, o-tree with {n} leaves", g.n()));
    }
    let vertices = tau.vertex_paths();
    let index: BTreeMap<&[usize], usize> = vertices.iter().enumerate().map(|(k, v)| (v.as_slice(), k)).collect();
    let leaves = tau.leaf_paths();
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices.len()];
    let mut origin: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (e, &(j, k)) in g.edges().iter().enumerate() {
        let (a, b) = (&leaves[j - 1], &leaves[k - 1]);
        let c = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        let v = index[&a[..c]];
        edges[v].push((a[c], b[c]));
        origin[v].push(e);
    }
    let factors = vertices
        .iter()
        .zip(edges)
        .map(|(path, es)| Graph::from_valid(tau.get(path).expect("vertex").arity(), es))
        .collect();
    let pi: Vec<usize> = origin.concat();
    Ok(CooperadOutput { sign: p.cooperad(Sign::of_sequence(&pi)), factors })
}

/// Bilinear extension, keyed by the factor list.
pub fn cooperad_combo(x: &LinCombo<Graph>, tau: &OTree, p: Parity) -> Result<LinCombo<Vec<Graph>>> {
    let mut out = LinCombo::zero();
    for (g, c) in x.iter() {
        let r = cooperad(g, tau, p)?;
        out.add_signed(r.factors, c, r.sign);
    }
    Ok(out)
}

/// Left and right side of one duality instance that disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityFailure {
    pub forests: Vec<Forest>,
    pub graph: Graph,
    pub composed: BigInt,
    pub factorwise: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub tau: OTree,
    pub parity: Parity,
    pub cases_checked: usize,
    pub failures: Vec<DualityFailure>,
}

/// The vertices of `tau` other than the root, as `(input label, arity)`,
/// for a two-level o-tree.
fn sites(tau: &OTree) -> Result<Vec<(usize, usize)>> {
    tau.validate()?;
    if !tau.is_two_level() {
        return Err(invalid!("duality check expects a two-level o-tree"));
    }
    Ok(tau
        .children()
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c, OTree::Vertex(_)))
        .map(|(i, c)| (i + 1, c.arity()))
        .collect())
}

/// Forest tuples `(outer, inner...)` to test for a two-level o-tree: every
/// tall forest in every degree, one per internal vertex in cooperad factor
/// order.
pub fn duality_tuples(tau: &OTree) -> Result<Vec<Vec<Forest>>> {
    let arities: Vec<usize> = core::iter::once(tau.arity()).chain(sites(tau)?.iter().map(|s| s.1)).collect();
    let mut tuples: Vec<Vec<Forest>> = vec![Vec::new()];
    for &a in &arities {
        let all: Vec<Forest> = (0..a.max(1)).flat_map(|k| enumerate_tall_forests(a, k)).collect();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                all.iter().map(move |f| {
                    let mut t = t.clone();
                    t.push(f.clone());
                    t
                })
            })
            .collect();
    }
    Ok(tuples)
}

/// Composes the May map of `tau` on a tuple, leftmost site first.
pub fn compose_tuple(tau: &OTree, tuple: &[Forest], p: Parity) -> Result<LinCombo<Forest>> {
    let mut current = LinCombo::basis(tuple[0].clone());
    let mut shift = 0;
    for ((label, a), f) in sites(tau)?.into_iter().zip(&tuple[1..]) {
        current = compose(&current, label + shift, &LinCombo::basis(f.clone()), p)?;
        shift += a - 1;
    }
    Ok(current)
}

/// Checks `<G, F0 o (F_v)> = <g_tau(G), F0 (x) F_v...>` for one tuple against
/// every long graph of the matching degree.
pub fn check_tuple(tau: &OTree, tuple: &[Forest], p: Parity) -> Result<(usize, Vec<DualityFailure>)> {
    let composed = compose_tuple(tau, tuple, p)?;
    let k: usize = tuple.iter().map(Forest::vertex_count).sum();
    let mut failures = Vec::new();
    let graphs = enumerate_long_graphs(tau.leaf_count(), k);
    for g in &graphs {
        let lhs = pair_combo(&LinCombo::basis(g.clone()), &composed, p)?;
        let r = cooperad(g, tau, p)?;
        let mut rhs = r.sign.to_bigint();
        for (factor, f) in r.factors.iter().zip(tuple) {
            rhs *= pair(factor, f, p)?.value;
            if rhs.is_zero() {
                break;
            }
        }
        if lhs != rhs {
            failures.push(DualityFailure { forests: tuple.to_vec(), graph: g.clone(), composed: lhs, factorwise: rhs });
        }
    }
    Ok((graphs.len(), failures))
}

pub fn check_duality(tau: &OTree, p: Parity) -> Result<DualityReport> {
    let mut report = DualityReport { tau: tau.clone(), parity: p, cases_checked: 0, failures: Vec::new() };
    for tuple in duality_tuples(tau)? {
        let (cases, failures) = check_tuple(tau, &tuple, p)?;
        report.cases_checked += cases;
        report.failures.extend(failures);
    }
    Ok(report)
}

/// All two-level o-trees with `1..=max_leaves` leaves: a root whose
/// children are leaves or corollas of arity at least one.
pub fn two_level_otrees(max_leaves: usize) -> Vec<OTree> {
    fn rec(budget: usize, cur: &mut Vec<OTree>, out: &mut Vec<OTree>) {
        if !cur.is_empty() {
            out.push(OTree::Vertex(cur.clone()));
        }
        for arity in 0..=budget {
            if arity == 0 {
                if budget >= 1 {
                    cur.push(OTree::Leaf);
                    rec(budget - 1, cur, out);
                    cur.pop();
                }
            } else {
                cur.push(OTree::corolla(arity));
                rec(budget - arity, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(max_leaves, &mut Vec::new(), &mut out);
    out
}

/// The unit of the operad in arity one.
pub fn unit() -> LinCombo<Forest> {
    LinCombo::basis(Forest::singletons(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::render_forest_expr;
    use crate::combinatorics::text::{parse_forest, parse_graph, parse_otree, render_graph};
    use alloc::string::String;

    fn f(s: &str) -> LinCombo<Forest> {
        LinCombo::basis(parse_forest(s).unwrap())
    }

    #[test]
    fn unit_laws() {
        for p in Parity::BOTH {
            for s in ["[[1,3],2]; 4", "[1,2]; [3,4]", "1; 2"] {
                let x = f(s);
                for i in 1..=4usize.min(parse_forest(s).unwrap().n()) {
                    assert_eq!(compose(&x, i, &unit(), p).unwrap(), x);
                }
                assert_eq!(compose(&unit(), 1, &x, p).unwrap(), x);
            }
        }
    }

    #[test]
    fn grafting() {
        for p in Parity::BOTH {
            let grafted = crate::algebra::normalize_pois(&f("[1,[2,3]]"), p).unwrap();
            assert_eq!(compose(&f("[1,2]"), 2, &f("[1,2]"), p).unwrap(), grafted);
        }
        assert_eq!(compose(&f("[1,2]"), 1, &f("[1,2]"), Parity::Odd).unwrap(), f("[[1,2],3]"));
        // the inner bracket moves past the root vertex, which is odd for even d
        assert_eq!(compose(&f("[1,2]"), 1, &f("[1,2]"), Parity::Even).unwrap(), f("[[1,2],3]").scaled(&BigInt::from(-1)));
    }

    #[test]
    fn leibniz_example_through_composition() {
        let r = substitute(&f("[1,[2,3]]"), 3, &f("1; 2"), Parity::Even).unwrap();
        let mut got: Vec<(i64, String)> =
            r.iter().map(|(f, c)| (i64::try_from(c).unwrap(), render_forest_expr(f))).collect();
        got.sort();
        let mut want: Vec<(i64, String)> =
            ["[x1,[x2,x3]].x4", "[x1,x4].[x2,x3]", "[x1,x3].[x2,x4]", "[x1,[x2,x4]].x3"]
                .iter()
                .map(|s| (1, String::from(*s)))
                .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn index_checked() {
        assert!(compose(&f("[1,2]"), 3, &unit(), Parity::Odd).is_err());
    }

    #[test]
    fn corolla_is_identity() {
        let g = parse_graph("n=3; 2->1, 1->3").unwrap();
        for p in Parity::BOTH {
            let r = cooperad(&g, &OTree::corolla(3), p).unwrap();
            assert_eq!(r.sign, Sign::Plus);
            assert_eq!(r.factors, vec![g.clone()]);
        }
    }

    #[test]
    fn worked_cooperad_example() {
        let tau = parse_otree("(*,*,(*,*),*)").unwrap();
        let g = parse_graph("n=5; 3->4, 5->4, 1->3, 1->4").unwrap();
        let r = cooperad(&g, &tau, Parity::Even).unwrap();
        assert_eq!(render_graph(&r.factors[0]), "n=4; 4->3, 1->3, 1->3");
        assert_eq!(render_graph(&r.factors[1]), "n=2; 1->2");
        // concatenation (5->4, 1->3, 1->4, 3->4) is a 4-cycle of the edges
        assert_eq!(r.sign, Sign::Minus);
        assert_eq!(cooperad(&g, &tau, Parity::Odd).unwrap().sign, Sign::Plus);
    }

    #[test]
    fn small_duality() {
        for p in Parity::BOTH {
            for s in ["((*,*),*)", "((*,*),(*,*))", "(*,(*,*,*))", "((*,*),*,(*,*))"] {
                let r = check_duality(&parse_otree(s).unwrap(), p).unwrap();
                assert!(r.failures.is_empty(), "{s} {p:?}: {:?}", r.failures.first());
                assert!(r.cases_checked > 0);
            }
        }
    }

    #[test]
    fn two_level_enumeration() {
        let ts = two_level_otrees(3);
        assert!(ts.contains(&OTree::corolla(3)));
        assert!(ts.iter().all(|t| t.is_two_level() && t.leaf_count() <= 3));
    }
}
