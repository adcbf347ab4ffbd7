use confpair_core::algebra::{normalize_pois, normalize_siop};
use confpair_core::operad::compose;
use confpair_core::combinatorics::text::{parse_forest, parse_graph, render_forest, render_graph};
use confpair_core::combinatorics::{all_forests, all_graphs, enumerate_long_graphs, enumerate_tall_forests, product_coefficients};
use confpair_core::geometry::{alpha, eval_system, s_ratio, separation_bound, Epsilon, TorusPoint};
use confpair_core::pairing::{pair, pair_combo};
use confpair_core::{Forest, Graph, LinCombo, Parity};
use num_bigint::BigInt;
use proptest::prelude::*;

fn forest(n: usize, k: usize) -> impl Strategy<Value = Forest> {
    prop::sample::select(all_forests(n, k))
}

fn any_forest(max_n: usize) -> impl Strategy<Value = Forest> {
    (1..=max_n).prop_flat_map(|n| (0..n).prop_flat_map(move |k| forest(n, k)))
}

fn graph(n: usize, k: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec((1..=n, 1..n), k).prop_map(move |es| {
        let edges = es.into_iter().map(|(i, j)| (i, if j >= i { j + 1 } else { j })).collect();
        Graph::new(n, edges).unwrap()
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop::sample::select(Parity::BOTH.to_vec())
}

fn unit_vector(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, d).prop_filter_map("near zero", |v| {
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        (r > 0.1).then(|| v.into_iter().map(|x| x / r).collect())
    })
}

/// A forest together with a point of the torus and a small epsilon.
fn placed_forest() -> impl Strategy<Value = (Forest, TorusPoint, f64, usize)> {
    (any_forest(6), 2usize..=4).prop_flat_map(|(f, d)| {
        let k = f.vertex_count();
        (Just(f), prop::collection::vec(unit_vector(d), k), 0.01f64..0.3, Just(d))
            .prop_map(|(f, us, e, d)| (f, TorusPoint::new(us).unwrap(), e, d))
    })
}

fn basis(f: Forest) -> LinCombo<Forest> {
    LinCombo::basis(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn forest_text_roundtrip(f in any_forest(6)) {
        prop_assert_eq!(parse_forest(&render_forest(&f)).unwrap(), f);
    }

    #[test]
    fn graph_text_roundtrip(g in (2usize..=6).prop_flat_map(|n| graph(n, n - 1))) {
        prop_assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
    }

    #[test]
    fn pois_normalization_idempotent_and_pairing_preserving(f in any_forest(5), p in parity()) {
        let x = normalize_pois(&basis(f.clone()), p).unwrap();
        prop_assert_eq!(&normalize_pois(&x, p).unwrap(), &x);
        for g in all_graphs(f.n(), f.vertex_count()) {
            let direct = BigInt::from(pair(&g, &f, p).unwrap().value);
            prop_assert_eq!(pair_combo(&LinCombo::basis(g), &x, p).unwrap(), direct);
        }
    }

    #[test]
    fn siop_normalization_idempotent_and_pairing_preserving(
        g in (2usize..=5).prop_flat_map(|n| (0..n).prop_flat_map(move |k| graph(n, k))),
        p in parity(),
    ) {
        let x = normalize_siop(&LinCombo::basis(g.clone()), p).unwrap();
        prop_assert_eq!(&normalize_siop(&x, p).unwrap(), &x);
        for f in enumerate_tall_forests(g.n(), g.edge_count()) {
            let direct = BigInt::from(pair(&g, &f, p).unwrap().value);
            prop_assert_eq!(pair_combo(&x, &LinCombo::basis(f), p).unwrap(), direct);
        }
    }

    #[test]
    fn alpha_is_antisymmetric((f, u, e, d) in placed_forest(), i in 1usize..=6, j in 1usize..=6) {
        prop_assume!(i != j && i <= f.n() && j <= f.n());
        let c = eval_system(&f, Epsilon::new(e).unwrap(), &u, d).unwrap();
        let (a, b) = (alpha(&c, i, j).unwrap(), alpha(&c, j, i).unwrap());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn s_ratio_is_multiplicative((f, u, e, d) in placed_forest(), idx in prop::sample::subsequence(vec![1usize, 2, 3, 4, 5, 6], 4)) {
        prop_assume!(idx.iter().all(|&x| x <= f.n()));
        let c = eval_system(&f, Epsilon::new(e).unwrap(), &u, d).unwrap();
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let lhs = s_ratio(&c, i, j, k).unwrap() * s_ratio(&c, i, k, l).unwrap();
        let rhs = s_ratio(&c, i, j, l).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn points_respect_separation_bound((f, u, e, d) in placed_forest()) {
        let eps = Epsilon::new(e).unwrap();
        let c = eval_system(&f, eps, &u, d).unwrap();
        let bound = separation_bound(&f, eps);
        for a in 0..c.points.len() {
            for b in a + 1..c.points.len() {
                let dist: f64 = c.points[a].iter().zip(&c.points[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
                prop_assert!(dist >= bound * (1.0 - 1e-12), "{dist} < {bound}");
            }
        }
    }

    #[test]
    fn sequential_associativity(
        a in any_forest(3), b in any_forest(3), c in any_forest(2),
        i in 1usize..=3, j in 1usize..=3, p in parity(),
    ) {
        prop_assume!(i <= a.n() && j <= b.n());
        let (a, b, c) = (basis(a), basis(b), basis(c));
        let left = compose(&compose(&a, i, &b, p).unwrap(), i + j - 1, &c, p).unwrap();
        let right = compose(&a, i, &compose(&b, j, &c, p).unwrap(), p).unwrap();
        prop_assert_eq!(left, right);
    }

    /// `(a o_i b) o_{j + m - 1} c = (-1)^{(d-1)|b||c|} (a o_j c) o_i b` for
    /// `i < j`, `m` the arity of `b`.
    #[test]
    fn parallel_associativity(
        a in (2usize..=3).prop_flat_map(|n| (0..n).prop_flat_map(move |k| forest(n, k))),
        b in any_forest(3), c in any_forest(2),
        i in 1usize..=3, j in 1usize..=3, p in parity(),
    ) {
        prop_assume!(i < j && j <= a.n());
        let sign = p.shifted(b.vertex_count() * c.vertex_count());
        let (m, bb, cb, ab) = (b.n(), basis(b), basis(c), basis(a));
        let left = compose(&compose(&ab, i, &bb, p).unwrap(), j + m - 1, &cb, p).unwrap();
        let right = compose(&compose(&ab, j, &cb, p).unwrap(), i, &bb, p).unwrap();
        prop_assert_eq!(left, right.scaled(&sign.to_bigint()));
    }
}

/// Basis sizes against the product formula `prod (1 + i t)`, and raw counts
/// against closed forms.
#[test]
fn brute_force_counts() {
    for n in 1..=6 {
        let coeffs = product_coefficients(n);
        for k in 0..n {
            let c = coeffs[k] as usize;
            assert_eq!(enumerate_tall_forests(n, k).len(), c, "tall n={n} k={k}");
            assert_eq!(enumerate_long_graphs(n, k).len(), c, "long n={n} k={k}");
        }
    }
    for n in 1..=4 {
        for k in 0..3 {
            assert_eq!(all_graphs(n, k).len(), (n * (n - 1)).pow(k as u32), "graphs n={n} k={k}");
        }
    }
    // Planar binary trees on m labelled leaves: m! Catalan(m-1) = (2m-2)!/(m-1)!.
    let planar = |m: usize| (m..=2 * m - 2).product::<usize>().max(1);
    for m in 1..=5 {
        let labels: Vec<usize> = (1..=m).collect();
        assert_eq!(confpair_core::combinatorics::all_trees(&labels).len(), planar(m), "trees m={m}");
    }
    assert_eq!(all_forests(3, 2).len(), 12);
}
