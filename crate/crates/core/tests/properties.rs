use permcover::completeness::{
    is_complete, is_minimal_complete, is_minimal_complete_by_removal, selection_graph_lex_min,
    Mode, PermSet,
};
use permcover::construction::{
    is_q_star, is_transversal, orbit, phi, phi_inverse, q_star_level, relabel_set, sample_p_star,
    sample_q_star, sample_transversal, seeded_rng,
};
use permcover::counting::gamma_i;
use permcover::Permutation;
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(&v).unwrap())
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Inversion), Just(Mode::Pair)]
}

/// A set of up to 8 random permutations of `[n]`, `2 <= n <= 5`.
fn small_set() -> impl Strategy<Value = PermSet> {
    (2usize..=5, mode()).prop_flat_map(|(n, m)| {
        prop::collection::vec(perm(n), 0..8).prop_map(move |ps| PermSet::new(n, m, ps).unwrap())
    })
}

fn balanced_subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |mut v| {
            v.truncate(n / 2);
            v.sort_unstable();
            v
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn completeness_is_monotone(s in small_set(), extra in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let all: Vec<Permutation> = Permutation::all(s.n()).unwrap().collect();
        let mut t = s.clone();
        for i in extra {
            t.insert(i.get(&all).clone()).unwrap();
        }
        prop_assert!(s.is_subset_of(&t));
        if is_complete(&s) {
            prop_assert!(is_complete(&t));
        }
    }

    #[test]
    fn minimality_two_routes_agree(s in small_set()) {
        prop_assert_eq!(is_minimal_complete(&s), is_minimal_complete_by_removal(&s));
    }

    #[test]
    fn transversals_are_minimal_of_size_c_times_rest(n in 3usize..=10, c_frac in 0.0f64..1.0, seed in any::<u64>()) {
        let c = 1 + ((n - 1) as f64 * c_frac) as usize;
        let c = c.min(n - 1);
        let t = sample_transversal(n, c, &mut seeded_rng(seed)).unwrap();
        prop_assert_eq!(t.len(), c * (n - c));
        prop_assert!(is_transversal(&t, c));
        prop_assert!(is_minimal_complete(&t));
    }

    #[test]
    fn q_star_samples_are_maximum(n in 2usize..=12, seed in any::<u64>()) {
        let q = sample_q_star(n, seed).unwrap();
        prop_assert!(is_minimal_complete(&q));
        prop_assert_eq!(Some(q.len() as u64), gamma_i(n).unwrap().to_u64());
        prop_assert!(is_q_star(&q));
        let g = selection_graph_lex_min(&q).unwrap();
        prop_assert_eq!(g.edges().len(), q.len());
        prop_assert!(g.is_triangle_free());
        if n >= 4 {
            prop_assert!(g.balanced_bipartition().is_some());
        }
    }

    #[test]
    fn p_star_samples_have_acyclic_digraphs(n in 5usize..=10, seed in any::<u64>()) {
        let p = sample_p_star(n, seed).unwrap();
        prop_assert!(is_minimal_complete(&p));
        let d = selection_graph_lex_min(&p).unwrap().digraph();
        prop_assert!(d.is_acyclic());
        prop_assert!(d.reversed().is_acyclic());
        prop_assert!(!d.has_doubly_oriented_edge());
    }

    #[test]
    fn orbits_are_minimal(p in (2usize..=12).prop_flat_map(perm)) {
        let o = orbit(&p);
        prop_assert_eq!(o.len(), p.n());
        prop_assert!(o.contains(&p));
        prop_assert!(is_minimal_complete(&o));
    }

    #[test]
    fn relabeling_preserves_minimality(s in small_set(), tau_seed in any::<u64>()) {
        let tau = permcover::construction::sample_permutation(s.n(), &mut seeded_rng(tau_seed)).unwrap();
        let r = relabel_set(&tau, &s).unwrap();
        prop_assert_eq!(r.len(), s.len());
        if s.mode() == Mode::Pair {
            prop_assert_eq!(is_minimal_complete(&r), is_minimal_complete(&s));
        }
    }

    #[test]
    fn phi_inverts_phi_inverse((n, x) in (5usize..=9).prop_flat_map(|n| (Just(n), balanced_subset(n))), seed in any::<u64>()) {
        let q = sample_q_star(n, seed).unwrap();
        let p = phi_inverse(&x, &q).unwrap();
        prop_assert!(is_minimal_complete(&p));
        let (x2, q2) = phi(&p).unwrap();
        prop_assert_eq!(x2, x);
        prop_assert_eq!(q_star_level(&q2), q_star_level(&q));
        prop_assert_eq!(q2, q);
    }

    #[test]
    fn phi_inverse_inverts_phi(n in 5usize..=9, seed in any::<u64>()) {
        let p = sample_p_star(n, seed).unwrap();
        let (x, q) = phi(&p).unwrap();
        prop_assert_eq!(phi_inverse(&x, &q).unwrap(), p);
    }

    /// Any relabeling of a `Q*_n` set is a maximum minimal pair-complete
    /// set, not only the canonical ones.
    #[test]
    fn every_relabeling_of_q_star_is_p_star(n in 5usize..=9, seed in any::<u64>(), tau_seed in any::<u64>()) {
        let q = sample_q_star(n, seed).unwrap();
        let tau = permcover::construction::sample_permutation(n, &mut seeded_rng(tau_seed)).unwrap();
        let p = relabel_set(&tau, &q).unwrap().with_mode(Mode::Pair);
        prop_assert!(is_minimal_complete(&p));
        let (x, q2) = phi(&p).unwrap();
        prop_assert_eq!(phi_inverse(&x, &q2).unwrap(), p);
    }
}
