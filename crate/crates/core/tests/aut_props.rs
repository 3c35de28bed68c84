//! Automorphism search against the factorial oracle, group-theoretic
//! sanity, and the documented example groups.

mod common;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use ssig_core::aut::{
    automorphisms, automorphisms_of_matrix, brute_force_automorphisms, group_structure,
    hecke_pipeline_verdict, is_automorphism, verify_main_theorem,
};
use ssig_core::field::Fp2;
use ssig_core::hecke::hecke_generates;
use ssig_core::{Error, IsogenyGraph, VertexPermutation};

#[test]
fn search_equals_brute_force_oracle() {
    for (p, l) in [(73u64, 2u64), (73, 3), (97, 2), (101, 3), (113, 2)] {
        let g = common::build(p, l);
        assert!(g.vertex_count() <= 10);
        let fast = automorphisms(&g).unwrap();
        let brute = brute_force_automorphisms(&g).unwrap();
        assert_eq!(fast.elements, brute, "(p, l) = ({p}, {l})");
    }
}

#[test]
fn groups_contain_identity_and_frobenius_and_are_closed() {
    for (p, l) in [(73u64, 2u64), (73, 7), (79, 3), (89, 2), (101, 5), (103, 2)] {
        let g = common::build(p, l);
        let grp = automorphisms(&g).unwrap();
        let fr = g.frobenius_permutation().unwrap();
        assert!(grp.elements.contains(&VertexPermutation::identity(g.vertex_count())));
        assert!(grp.elements.contains(&fr));
        assert!(grp.contains_frobenius);
        assert!(grp.order >= 2, "p > 71 forces at least {{id, Fr}}");
        for sigma in &grp.elements {
            assert!(is_automorphism(&g, sigma).unwrap());
        }
        // closure and structure are validated together
        group_structure(&grp).unwrap();
    }
}

#[test]
fn relabeling_conjugates_the_group() {
    let g = common::build(73, 7);
    let n = g.vertex_count();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..5 {
        let mut relabel: Vec<usize> = (0..n).collect();
        relabel.shuffle(&mut rng);
        let rho = VertexPermutation::new(relabel);
        let mut adj = vec![vec![0u32; n]; n];
        for i in 0..n {
            for k in 0..n {
                adj[rho.image[i]][rho.image[k]] = g.adjacency()[i][k];
            }
        }
        let relabeled = automorphisms_of_matrix(&adj);
        let mut expected: Vec<VertexPermutation> = automorphisms_of_matrix(g.adjacency())
            .iter()
            .map(|s| rho.compose(&s.compose(&rho.inverse())))
            .collect();
        expected.sort_unstable();
        assert_eq!(relabeled, expected);
    }
}

#[test]
fn example_73_7_order_8() {
    // the rigidity hypothesis fails at (73, 7): the group is strictly
    // larger than {id, Fr}; see docs/MATH.md for its structure
    let g = common::build(73, 7);
    let grp = automorphisms(&g).unwrap();
    assert_eq!(grp.order, 8);
    assert!(grp.contains_frobenius);
    let report = hecke_generates(&g).unwrap();
    assert!(!report.generates, "forced by rigidity: |Aut*| > 2");
    let verdict = verify_main_theorem(&g, &report).unwrap();
    assert!(verdict.consistent_with_theorem);
    assert!(!verdict.aut_equals_id_frob);
    // directed and symmetrized conventions agree on this graph
    assert_eq!(verdict.aut_order_symmetrized, None);
}

#[test]
fn generates_forces_id_frob_on_shipped_levels() {
    for l in [2u64, 3, 5, 11, 13] {
        let g = common::build(73, l);
        let verdict = hecke_pipeline_verdict(&g).unwrap();
        assert!(verdict.condition_holds, "l = {l}");
        assert!(verdict.aut_equals_id_frob, "l = {l}");
        assert_eq!(verdict.aut_order, 2);
        assert!(verdict.aut_structure.elementary_abelian_2);
        assert!(verdict.consistent_with_theorem);
    }
}

#[test]
fn mismatched_inputs_rejected() {
    let g2 = common::build(73, 2);
    let g3 = common::build(73, 3);
    let report = hecke_generates(&g3).unwrap();
    assert!(matches!(verify_main_theorem(&g2, &report), Err(Error::MismatchedInputs(_))));
}

#[test]
fn loop_count_breaks_symmetry() {
    // transposing two vertices with different loop counts is never an
    // automorphism
    let g = common::build(73, 2);
    let adj = g.adjacency();
    let n = g.vertex_count();
    for i in 0..n {
        for k in i + 1..n {
            if adj[i][i] != adj[k][k] {
                let mut image: Vec<usize> = (0..n).collect();
                image.swap(i, k);
                assert!(!is_automorphism(&g, &VertexPermutation::new(image)).unwrap());
            }
        }
    }
}

#[test]
fn theorem_consistency_small_sweep() {
    for p in [73u64, 79, 89, 97, 101] {
        for l in [2u64, 3, 5, 7, 11, 13] {
            let g = common::build(p, l);
            let verdict = hecke_pipeline_verdict(&g).unwrap();
            assert!(verdict.consistent_with_theorem, "(p, l) = ({p}, {l})");
        }
    }
}

#[test]
fn verdict_serializes_with_image_arrays() {
    let g = common::build(73, 2);
    let grp = automorphisms(&g).unwrap();
    let json = serde_json::to_value(&grp).unwrap();
    assert_eq!(json["order"], 2);
    assert!(json["elements"][0].is_array(), "permutations serialize as image arrays");
    let verdict = hecke_pipeline_verdict(&g).unwrap();
    let vjson = serde_json::to_value(&verdict).unwrap();
    assert_eq!(vjson["aut_order"], 2);
    assert!(vjson.get("aut_order_symmetrized").is_none());
}

#[test]
fn single_vertex_graph() {
    let g = common::build(13, 2);
    let brute = brute_force_automorphisms(&g).unwrap();
    assert_eq!(brute.len(), 1);
    assert!(brute[0].is_identity());
    let grp = automorphisms(&g).unwrap();
    assert_eq!(grp.order, 1);
}
