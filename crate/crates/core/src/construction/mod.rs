//! Constructions of maximum-cardinality minimal complete sets.
//!
//! For `n >= 4` the maximum minimal inversion-complete sets are exactly the
//! transversals of `F_c` with `c` in `{floor(n/2), ceil(n/2)}`. The pair-mode
//! optima for `n >= 5` are the relabelings of those by canonical
//! permutations; see [`phi`] and [`phi_inverse`].

mod family;
mod relabel;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use family::{
    family_collection, family_of, is_transversal, sample_transversal, FamilyDescriptor,
    FamilyMembers, Transversals,
};
pub use relabel::{
    canonical_tau, enumerate_p_star, orbit, phi, phi_inverse, relabel_set, sample_p_star,
    BalancedPartition, PStarIter,
};

use crate::completeness::{Mode, PermSet};
use crate::error::{Error, Result};
use crate::perm::{check_size, Permutation};

/// Largest `n` for which full enumeration of `Q*_n` or `P*_n` is allowed;
/// `|Q*_7|` is already about `1.8e13`.
pub const ENUMERATION_MAX_N: usize = 6;

/// The maximum minimal inversion-complete subsets of `S_3`. The
/// transversal characterization needs `n >= 4`; these three come from
/// exhaustive search.
const Q_STAR_3: [[&str; 2]; 3] = [["132", "231"], ["213", "312"], ["231", "312"]];

/// The pseudo-random generator behind every seeded operation: ChaCha8
/// seeded through `SeedableRng::seed_from_u64`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn q_star_small(n: usize) -> Option<Vec<PermSet>> {
    match n {
        2 => Some(vec![PermSet::parse(2, Mode::Inversion, &["21"]).unwrap()]),
        3 => Some(
            Q_STAR_3
                .iter()
                .map(|s| PermSet::parse(3, Mode::Inversion, s).unwrap())
                .collect(),
        ),
        _ => None,
    }
}

/// The balanced family levels `c` for `n`: one value for even `n`, two for
/// odd `n`.
pub fn balanced_levels(n: usize) -> Vec<usize> {
    if n.is_multiple_of(2) {
        vec![n / 2]
    } else {
        vec![n / 2, n / 2 + 1]
    }
}

/// For `n >= 4`, the `c` such that `q` is a transversal of `F_c` with `c`
/// balanced; this is membership in `Q*_n`.
pub fn q_star_level(q: &PermSet) -> Option<usize> {
    if q.n() < 4 {
        return None;
    }
    balanced_levels(q.n())
        .into_iter()
        .find(|&c| is_transversal(q, c))
}

/// True iff `q` is a maximum-cardinality minimal inversion-complete set,
/// decided structurally (`n >= 4`) or against the stored list (`n <= 3`).
pub fn is_q_star(q: &PermSet) -> bool {
    let q = q.clone().with_mode(Mode::Inversion);
    match q_star_small(q.n()) {
        Some(list) => list.contains(&q),
        None => q_star_level(&q).is_some(),
    }
}

/// Lazy enumeration of `Q*_n` as canonical inversion-mode sets.
pub struct QStarIter {
    inner: Box<dyn Iterator<Item = PermSet> + Send>,
}

impl Iterator for QStarIter {
    type Item = PermSet;

    fn next(&mut self) -> Option<PermSet> {
        self.inner.next()
    }
}

impl QStarIter {
    /// Enumeration without the size cap, for callers that stop early.
    pub fn unbounded(n: usize) -> Result<Self> {
        check_size(n)?;
        if let Some(list) = q_star_small(n) {
            return Ok(QStarIter {
                inner: Box::new(list.into_iter()),
            });
        }
        let mut chain: Box<dyn Iterator<Item = PermSet> + Send> = Box::new(std::iter::empty());
        for c in balanced_levels(n) {
            chain = Box::new(chain.chain(Transversals::new(n, c)?));
        }
        Ok(QStarIter { inner: chain })
    }
}

/// Every element of `Q*_n`: transversals of `F_{floor(n/2)}` then, for odd
/// `n`, of `F_{ceil(n/2)}`. Refused above [`ENUMERATION_MAX_N`].
pub fn enumerate_q_star(n: usize) -> Result<QStarIter> {
    check_size(n)?;
    if n > ENUMERATION_MAX_N {
        return Err(Error::Resource(format!(
            "refusing to enumerate Q*_{n}: exceeds the enumeration bound n <= {ENUMERATION_MAX_N} \
             (|Q*_{n}| = {})",
            crate::counting::count_q_star(n)?
        )));
    }
    QStarIter::unbounded(n)
}

pub(crate) fn sample_q_star_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PermSet> {
    check_size(n)?;
    if let Some(list) = q_star_small(n) {
        let k = rng.gen_range(0..list.len());
        return Ok(list[k].clone());
    }
    // both levels contribute the same number of transversals
    let c = if n % 2 == 1 && rng.gen_bool(0.5) {
        n / 2 + 1
    } else {
        n / 2
    };
    sample_transversal(n, c, rng)
}

/// A uniformly random element of `Q*_n`, determined by `seed`.
pub fn sample_q_star(n: usize, seed: u64) -> Result<PermSet> {
    sample_q_star_with(n, &mut seeded_rng(seed))
}

/// A uniformly random permutation of `[n]`, for seeded generators.
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    use rand::seq::SliceRandom;
    check_size(n)?;
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::is_minimal_complete;
    use crate::counting::count_q_star;

    fn set(n: usize, perms: &[&str]) -> PermSet {
        PermSet::parse(n, Mode::Inversion, perms).unwrap()
    }

    #[test]
    fn q_star_small_cases() {
        let two: Vec<_> = enumerate_q_star(2).unwrap().collect();
        assert_eq!(two, vec![set(2, &["21"])]);
        let three: Vec<_> = enumerate_q_star(3).unwrap().collect();
        assert_eq!(three.len(), 3);
        assert!(three.iter().all(|q| is_minimal_complete(q) && q.len() == 2));
        let four: Vec<_> = enumerate_q_star(4).unwrap().collect();
        assert_eq!(four, vec![set(4, &["2314", "2413", "1324", "1423"])]);
    }

    #[test]
    fn q_star_counts_match_formula() {
        for n in 2..=6 {
            let mut all: Vec<PermSet> = enumerate_q_star(n).unwrap().collect();
            let len = all.len();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), len, "duplicates at n={n}");
            assert_eq!(Some(len as u64), count_q_star(n).unwrap().to_u64(), "n={n}");
        }
    }

    #[test]
    fn odd_levels_are_disjoint() {
        let low: Vec<_> = Transversals::new(5, 2).unwrap().collect();
        let high: Vec<_> = Transversals::new(5, 3).unwrap().collect();
        assert!(low.iter().all(|q| !high.contains(q)));
        for q in &low {
            assert_eq!(q_star_level(q), Some(2));
        }
        for q in &high {
            assert_eq!(q_star_level(q), Some(3));
        }
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(enumerate_q_star(7), Err(Error::Resource(_))));
        assert_eq!(QStarIter::unbounded(7).unwrap().take(3).count(), 3);
        assert!(enumerate_q_star(1).is_err());
    }

    #[test]
    fn sampling() {
        for seed in 0..5 {
            assert_eq!(
                sample_q_star(4, seed).unwrap(),
                set(4, &["2314", "2413", "1324", "1423"])
            );
        }
        let q = sample_q_star(12, 7).unwrap();
        assert_eq!(q.len(), 36);
        assert!(is_minimal_complete(&q));
        assert_eq!(q_star_level(&q), Some(6));
        let a = sample_q_star(6, 1).unwrap();
        let b = sample_q_star(6, 2).unwrap();
        assert!(is_transversal(&a, 3) && is_transversal(&b, 3));
        assert_eq!(sample_q_star(9, 11).unwrap(), sample_q_star(9, 11).unwrap());
        assert!(is_q_star(&sample_q_star(3, 5).unwrap()));
    }

    #[test]
    fn odd_sampling_reaches_both_levels() {
        let levels: std::collections::BTreeSet<_> = (0..64)
            .map(|s| q_star_level(&sample_q_star(7, s).unwrap()).unwrap())
            .collect();
        assert_eq!(levels.into_iter().collect::<Vec<_>>(), vec![3, 4]);
    }
}
