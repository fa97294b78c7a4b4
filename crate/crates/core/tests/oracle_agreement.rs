//! The exhaustive oracle against the constructions and the counting
//! formulas.

use permcover::completeness::{is_minimal_complete, selection_graphs_all, Mode, PermSet};
use permcover::construction::{enumerate_p_star, enumerate_q_star, is_q_star, orbit};
use permcover::counting::{count_p_star, count_q_star};
use permcover::oracle::{
    all_minimal_complete, oracle_check_membership, oracle_enumerate, oracle_restricted,
};
use permcover::Permutation;

#[test]
fn witness_counts_match_formulas() {
    for n in 2..=4 {
        let inv = oracle_enumerate(n, Mode::Inversion).unwrap();
        assert_eq!(
            Some(inv.witness_sets.len() as u64),
            count_q_star(n).unwrap().to_u64()
        );
        let pair = oracle_enumerate(n, Mode::Pair).unwrap();
        assert_eq!(
            Some(pair.witness_sets.len() as u64),
            count_p_star(n).unwrap().to_u64()
        );
    }
}

#[test]
fn witness_lists_equal_constructive_lists() {
    for n in 2..=4 {
        let mut built: Vec<PermSet> = enumerate_q_star(n).unwrap().collect();
        built.sort();
        assert_eq!(
            oracle_enumerate(n, Mode::Inversion).unwrap().witness_sets,
            built,
            "n={n}"
        );
        let mut built: Vec<PermSet> = enumerate_p_star(n).unwrap().collect();
        built.sort();
        assert_eq!(
            oracle_enumerate(n, Mode::Pair).unwrap().witness_sets,
            built,
            "n={n}"
        );
    }
}

#[test]
fn report_invariants() {
    for mode in [Mode::Inversion, Mode::Pair] {
        for n in 2..=4 {
            let r = oracle_enumerate(n, mode).unwrap();
            assert!(r.witness_sets.windows(2).all(|w| w[0] < w[1]));
            for w in &r.witness_sets {
                assert_eq!(w.len(), r.max_size_found);
                assert_eq!(w.mode(), mode);
                assert!(is_minimal_complete(w));
            }
            // maximality: nothing larger among all minimal sets
            let all = all_minimal_complete(n, mode).unwrap();
            assert_eq!(all.len(), r.minimal_sets_total);
            assert!(all.iter().all(|s| s.len() <= r.max_size_found));
            assert!(all.iter().all(is_minimal_complete));
        }
    }
}

#[test]
fn reports_are_reproducible() {
    let a = oracle_enumerate(4, Mode::Pair).unwrap();
    let b = oracle_enumerate(4, Mode::Pair).unwrap();
    assert_eq!(a.witness_sets, b.witness_sets);
    assert_eq!(a.search_space_nodes, b.search_space_nodes);
}

#[test]
fn membership_examples() {
    let q4 = enumerate_q_star(4).unwrap().next().unwrap();
    assert!(oracle_check_membership(&q4).unwrap());
    let o = orbit(&Permutation::identity(4).unwrap());
    assert!(oracle_check_membership(&o).unwrap());
    let single = PermSet::parse(3, Mode::Inversion, &["321"]).unwrap();
    assert!(!oracle_check_membership(&single).unwrap());
    assert!(oracle_check_membership(&enumerate_q_star(5).unwrap().next().unwrap()).is_err());
}

#[test]
fn every_minimal_inversion_set_is_triangle_free_under_every_selection() {
    for n in 2..=4 {
        for s in all_minimal_complete(n, Mode::Inversion).unwrap() {
            for g in selection_graphs_all(&s).unwrap() {
                assert_eq!(g.edges().len(), s.len());
                assert!(g.is_triangle_free(), "{s}");
            }
        }
    }
}

/// Pair-mode selection graphs are triangle-free for minimal sets with at
/// least four members; the argument needs `|P| - 2 >= 2`. Three-member
/// minimal sets at `n = 4` can have a triangle.
#[test]
fn pair_triangle_freeness_needs_four_members() {
    let all = all_minimal_complete(4, Mode::Pair).unwrap();
    let mut counterexamples = Vec::new();
    for s in &all {
        for g in selection_graphs_all(s).unwrap() {
            if s.len() >= 4 {
                assert!(g.is_triangle_free(), "{s}");
            } else if !g.is_triangle_free() {
                counterexamples.push(s.clone());
            }
        }
    }
    assert!(!counterexamples.is_empty());
    assert!(counterexamples.iter().all(|s| s.len() == 3));

    // selecting (2,4), (3,2), (4,3) closes the triangle 2-3-4
    let pinned = PermSet::parse(4, Mode::Pair, &["1234", "1342", "4231"]).unwrap();
    assert!(is_minimal_complete(&pinned));
    assert!(counterexamples.contains(&pinned));
    let triangle = selection_graphs_all(&pinned)
        .unwrap()
        .find(|g| !g.is_triangle_free())
        .unwrap();
    assert_eq!(triangle.underlying().find_triangle(), Some((2, 3, 4)));
    // orbit of 123 at n = 3 shows the same thing below n = 4
    let o3 = orbit(&Permutation::identity(3).unwrap());
    assert!(selection_graphs_all(&o3)
        .unwrap()
        .all(|g| !g.is_triangle_free()));
}

#[test]
fn restricted_mode_accepts_the_constructions_at_n5() {
    let qs: Vec<PermSet> = enumerate_q_star(5).unwrap().collect();
    assert!(qs.iter().all(is_q_star));
    let r = oracle_restricted(5, Mode::Inversion, &qs, 20_000, 1).unwrap();
    assert!(r.passed());
    assert_eq!(r.candidates_verified, 128);
    let ps: Vec<PermSet> = enumerate_p_star(5).unwrap().collect();
    let r = oracle_restricted(5, Mode::Pair, &ps, 20_000, 1).unwrap();
    assert!(r.passed());
    assert_eq!(r.candidates_verified, 1280);
}
