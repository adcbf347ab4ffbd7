//! Rayon versions of the exhaustive checks. Results are collected in input
//! order, so output does not depend on scheduling.

use confpair_core::combinatorics::{enumerate_long_graphs, enumerate_tall_forests, product_coefficients};
use confpair_core::operad::{check_tuple, duality_tuples, DualityReport};
use confpair_core::pairing::{first_degree, pair, pair_layout, DegreeReport, GramMatrix, PerfectReport};
use confpair_core::{OTree, Parity};
use rayon::prelude::*;

use crate::cache::{gram, Cache};
use crate::error::Result;

pub fn par_gram_matrix(n: usize, k: usize, p: Parity) -> GramMatrix {
    let rows = enumerate_long_graphs(n, k);
    let cols = enumerate_tall_forests(n, k);
    let layouts: Vec<_> = cols.iter().map(|f| f.layout()).collect();
    let entries = rows.par_iter().map(|g| layouts.iter().map(|l| pair_layout(g, l, p).value).collect()).collect();
    GramMatrix { n, k, parity: p, rows, cols, entries }
}

pub fn par_check_duality(tau: &OTree, p: Parity) -> Result<DualityReport> {
    let parts = duality_tuples(tau)?
        .par_iter()
        .map(|t| check_tuple(tau, t, p))
        .collect::<confpair_core::Result<Vec<_>>>()?;
    let mut report = DualityReport { tau: tau.clone(), parity: p, cases_checked: 0, failures: Vec::new() };
    for (cases, failures) in parts {
        report.cases_checked += cases;
        report.failures.extend(failures);
    }
    Ok(report)
}

/// Perfect-pairing verification with Gram matrices taken from the cache.
pub fn verify_perfect_cached(cache: Option<&Cache>, n: usize, p: Parity) -> Result<PerfectReport> {
    let expected = product_coefficients(n);
    let degrees = (0..n.max(1))
        .map(|k| {
            let m = gram(cache, n, k, p)?;
            let failures =
                m.identity_defects().into_iter().map(|(r, c, v)| (m.rows[r].clone(), m.cols[c].clone(), v)).collect();
            Ok(DegreeReport { k, size: m.rows.len(), expected_size: expected[k], failures })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairing = |g: &_, f: &_, p| pair(g, f, p).map(|r| r.value).unwrap_or(0);
    Ok(PerfectReport { n, parity: p, degrees, first_degree: first_degree(n, p, &pairing) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use confpair_core::combinatorics::text::parse_otree;
    use confpair_core::operad::check_duality;
    use confpair_core::pairing::gram_matrix;

    #[test]
    fn matches_serial() {
        for p in Parity::BOTH {
            assert_eq!(par_gram_matrix(4, 2, p), gram_matrix(4, 2, p));
            let tau = parse_otree("((*,*),*,(*,*))").unwrap();
            assert_eq!(par_check_duality(&tau, p).unwrap(), check_duality(&tau, p).unwrap());
        }
    }
}
