//! Spectral invariants: exact division identities, route agreement, and
//! the Ramanujan bound on real graphs.

mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use ssig_core::field::Fp2;
use ssig_core::hecke::{
    adjacency_matrix, charpoly_crt, charpoly_exact, hecke_generates, is_squarefree,
    ramanujan_verify, restricted_charpoly, IntMatrix, IntPolynomial,
};
use ssig_core::{Error, IsogenyGraph};

#[test]
fn charpoly_vanishes_at_row_sum_eigenvalue() {
    for (p, l) in [(73u64, 2u64), (73, 7), (79, 2), (89, 3), (101, 2), (103, 13)] {
        let g = common::build(p, l);
        let full = charpoly_exact(&adjacency_matrix(&g));
        assert!(full.eval(&BigInt::from(l + 1)).is_zero(), "(p, l) = ({p}, {l})");
    }
}

#[test]
fn exact_division_identity_over_z() {
    for (p, l) in [(73u64, 2u64), (73, 11), (89, 2), (101, 3)] {
        let g = common::build(p, l);
        let full = charpoly_exact(&adjacency_matrix(&g));
        let restricted = restricted_charpoly(&g).unwrap();
        assert_eq!(restricted.degree(), Some(g.genus()));
        // (X - (l+1)) * restricted == full, coefficient-wise
        let linear = IntPolynomial::from_coeffs(vec![BigInt::from(-((l + 1) as i64)), BigInt::from(1)]);
        assert_eq!(linear.mul(&restricted), full, "(p, l) = ({p}, {l})");
        // the quotient does not vanish at l+1: the trivial eigenvalue sits
        // off the degree-zero submodule
        assert!(!restricted.eval(&BigInt::from(l + 1)).is_zero());
    }
}

#[test]
fn perturbed_row_sum_gives_inexact_division() {
    let g = common::build(73, 2);
    let mut adj: Vec<Vec<u32>> = g.adjacency().to_vec();
    adj[0][1] += 1; // row sum now l+2
    let bad = IsogenyGraph::from_raw_parts(73, 2, g.vertices().to_vec(), adj).unwrap();
    assert!(matches!(restricted_charpoly(&bad), Err(Error::InexactDivision)));
}

#[test]
fn berkowitz_and_crt_agree_on_graph_matrices() {
    for (p, l) in [(73u64, 7u64), (101, 3), (103, 13)] {
        let g = common::build(p, l);
        let m = adjacency_matrix(&g);
        assert_eq!(charpoly_exact(&m), charpoly_crt(&m), "(p, l) = ({p}, {l})");
    }
}

#[test]
fn frobenius_commutes_with_t_l_over_z() {
    for (p, l) in [(73u64, 2u64), (73, 7), (89, 5)] {
        let g = common::build(p, l);
        let a = adjacency_matrix(&g);
        let fr = g.frobenius_permutation().unwrap();
        let n = g.vertex_count();
        let mut perm = IntMatrix::zeros(n);
        for (i, &v) in fr.image.iter().enumerate() {
            *perm.get_mut(v, i) = BigInt::from(1);
        }
        assert_eq!(perm.mul(&a), a.mul(&perm), "(p, l) = ({p}, {l})");
    }
}

#[test]
fn ramanujan_holds_on_real_graphs() {
    for (p, l) in [(73u64, 2u64), (73, 3), (73, 5), (73, 7), (73, 11), (73, 13), (79, 2), (89, 3), (101, 2)] {
        let g = common::build(p, l);
        assert!(ramanujan_verify(&g).unwrap(), "(p, l) = ({p}, {l})");
    }
}

#[test]
fn disconnected_regular_graph_fails_ramanujan() {
    // two disjoint copies of K4: 3-regular, eigenvalue 3 with multiplicity
    // 2, one copy of which survives on the degree-zero submodule
    let n = 8;
    let mut adj = vec![vec![0u32; n]; n];
    for i in 0..4 {
        for k in 0..4 {
            if i != k {
                adj[i][k] = 1;
                adj[i + 4][k + 4] = 1;
            }
        }
    }
    let vertices: Vec<Fp2> = (0..n as u64).map(|a| Fp2::new(a, 0)).collect();
    let fake = IsogenyGraph::from_raw_parts(11, 2, vertices, adj).unwrap();
    let restricted = restricted_charpoly(&fake).unwrap();
    assert!(restricted.eval(&BigInt::from(3)).is_zero());
    assert!(!ramanujan_verify(&fake).unwrap());
}

#[test]
fn degenerate_small_graphs_flagged() {
    // p = 13 has a single supersingular class: g = 0, vacuous condition
    let g13 = common::build(13, 2);
    assert_eq!(g13.vertex_count(), 1);
    let report = hecke_generates(&g13).unwrap();
    assert!(report.degenerate);
    assert!(report.generates);
    assert_eq!(report.charpoly_restricted.degree(), Some(0));

    // p = 11 has two classes: g = 1, still degenerate but nontrivial
    let g11 = common::build(11, 2);
    assert_eq!(g11.vertex_count(), 2);
    let report = hecke_generates(&g11).unwrap();
    assert!(report.degenerate);
    assert!(report.generates);
}

#[test]
fn report_json_uses_decimal_strings() {
    let g = common::build(73, 2);
    let report = hecke_generates(&g).unwrap();
    let json = report.to_json();
    assert_eq!(json["p"], 73);
    assert_eq!(json["g"], 5);
    let coeffs: Vec<String> = json["charpoly_restricted"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(coeffs, vec!["3", "7", "-5", "-7", "1", "1"]);
    assert_eq!(json["generates"], true);
    assert_eq!(json["discriminant_is_zero"], false);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// squarefreeness agrees with multiplicity counting on polynomials
    /// built from explicit factorizations
    #[test]
    fn squarefree_matches_constructed_multiplicities(
        roots in prop::collection::vec((-20i64..=20, 1u32..=3), 1..6),
        scale in 1i64..50,
    ) {
        let mut f = IntPolynomial::from_i64(&[scale]);
        for &(r, m) in &roots {
            for _ in 0..m {
                f = f.mul(&IntPolynomial::from_i64(&[-r, 1]));
            }
        }
        let mut distinct: Vec<i64> = roots.iter().map(|&(r, _)| r).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let expect = roots.iter().all(|&(_, m)| m == 1) && distinct.len() == roots.len();
        prop_assert_eq!(is_squarefree(&f).unwrap(), expect);
    }

    #[test]
    fn crt_agrees_with_berkowitz(entries in prop::collection::vec(-50i64..=50, 36)) {
        let rows: Vec<Vec<i64>> = entries.chunks(6).map(|c| c.to_vec()).collect();
        let m = IntMatrix::from_i64_rows(&rows);
        prop_assert_eq!(charpoly_exact(&m), charpoly_crt(&m));
    }
}
