//! Brute-force ground truth for small `n`.
//!
//! This module deliberately relies only on [`Permutation`] (and uses
//! [`PermSet`] as a container); coverage, minimality and the subset search
//! are all computed here with bitmasks, so it can cross-check the
//! constructive modules.
//!
//! The search enumerates every *irredundant* subset of `S_n` (each member
//! covers some required pair no other member covers). Irredundance is
//! inherited by subsets, so extending members in index order with an
//! irredundance check at every step visits each irredundant set exactly
//! once. Minimal complete sets are the complete irredundant sets, and no
//! complete set can be extended irredundantly, so they are leaves of the
//! search. Exhausting the tree certifies the maximum size.

use std::time::{Duration, Instant};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::completeness::{Mode, PermSet};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `n` for full exhaustion.
pub const ORACLE_MAX_N: usize = 4;

/// Largest `n` for the restricted (sampling) check; `n(n-1)` pair bits must
/// fit a `u64` and `S_n` is materialized.
pub const RESTRICTED_MAX_N: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub mode: Mode,
    pub max_size_found: usize,
    /// Every minimal complete set of size `max_size_found`, canonically
    /// ordered.
    pub witness_sets: Vec<PermSet>,
    /// Minimal complete sets of any size.
    pub minimal_sets_total: usize,
    /// Irredundant subsets visited by the search.
    pub search_space_nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Universe {
    n: usize,
    mode: Mode,
    perms: Vec<Permutation>,
    masks: Vec<u64>,
    full: u64,
}

impl Universe {
    fn new(n: usize, mode: Mode, max_n: usize) -> Result<Self> {
        if !(2..=max_n).contains(&n) {
            return Err(Error::Resource(format!(
                "oracle supports 2 <= n <= {max_n}, got n={n}"
            )));
        }
        let mut pairs = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                let needed = match mode {
                    Mode::Inversion => a > b,
                    Mode::Pair => a != b,
                };
                if needed {
                    pairs.push((a, b));
                }
            }
        }
        let perms: Vec<Permutation> = Permutation::all(n)?.collect();
        let masks = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().fold(0u64, |m, (bit, &(a, b))| {
                    let before = p.position_of(a).unwrap() < p.position_of(b).unwrap();
                    if before {
                        m | (1 << bit)
                    } else {
                        m
                    }
                })
            })
            .collect();
        Ok(Universe {
            n,
            mode,
            perms,
            masks,
            full: (1u64 << pairs.len()) - 1,
        })
    }

    fn to_set(&self, chosen: &[usize]) -> PermSet {
        PermSet::new(
            self.n,
            self.mode,
            chosen.iter().map(|&k| self.perms[k].clone()),
        )
        .expect("members of S_n")
    }

    /// `(covered exactly once, covered at least twice)` for the chosen
    /// members.
    fn tallies(&self, chosen: &[usize]) -> (u64, u64) {
        chosen
            .iter()
            .fold((0, 0), |(once, multi), &k| add(once, multi, self.masks[k]))
    }

    fn is_irredundant(&self, chosen: &[usize], once: u64) -> bool {
        chosen.iter().all(|&k| self.masks[k] & once != 0)
    }

    fn is_minimal_complete(&self, chosen: &[usize]) -> bool {
        let (once, multi) = self.tallies(chosen);
        (once | multi) == self.full && self.is_irredundant(chosen, once)
    }

    fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.perms.binary_search(p).ok()
    }
}

#[inline]
fn add(once: u64, multi: u64, mask: u64) -> (u64, u64) {
    let multi = multi | (once & mask);
    let once = (once | mask) & !multi;
    (once, multi)
}

struct Search<'a> {
    u: &'a Universe,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, start: usize, once: u64, multi: u64) {
        for k in start..self.u.perms.len() {
            let (once2, multi2) = add(once, multi, self.u.masks[k]);
            if self.u.masks[k] & once2 == 0 {
                continue;
            }
            self.chosen.push(k);
            if self.u.is_irredundant(&self.chosen, once2) {
                self.nodes += 1;
                if (once2 | multi2) == self.u.full {
                    self.found.push(self.chosen.clone());
                } else {
                    self.run(k + 1, once2, multi2);
                }
            }
            self.chosen.pop();
        }
    }
}

fn exhaust(n: usize, mode: Mode) -> Result<(Universe, Vec<Vec<usize>>, u64)> {
    let u = Universe::new(n, mode, ORACLE_MAX_N)?;
    let mut search = Search {
        u: &u,
        chosen: Vec::new(),
        found: Vec::new(),
        nodes: 0,
    };
    search.run(0, 0, 0);
    let (found, nodes) = (search.found, search.nodes);
    Ok((u, found, nodes))
}

/// Every minimal complete subset of `S_n`, of any size, canonically ordered.
pub fn all_minimal_complete(n: usize, mode: Mode) -> Result<Vec<PermSet>> {
    let (u, found, _) = exhaust(n, mode)?;
    let mut sets: Vec<PermSet> = found.iter().map(|c| u.to_set(c)).collect();
    sets.sort();
    Ok(sets)
}

/// Exhaustive search for the maximum minimal complete subsets of `S_n`,
/// `2 <= n <= 4`.
pub fn oracle_enumerate(n: usize, mode: Mode) -> Result<OracleReport> {
    let started = Instant::now();
    let (u, found, nodes) = exhaust(n, mode)?;
    let max_size_found = found.iter().map(Vec::len).max().unwrap_or(0);
    let mut witness_sets: Vec<PermSet> = found
        .iter()
        .filter(|c| c.len() == max_size_found)
        .map(|c| u.to_set(c))
        .collect();
    witness_sets.sort();
    Ok(OracleReport {
        n,
        mode,
        max_size_found,
        witness_sets,
        minimal_sets_total: found.len(),
        search_space_nodes: nodes,
        elapsed: started.elapsed(),
    })
}

/// True iff `s` is one of the oracle's maximum witnesses for its `n` and
/// mode.
pub fn oracle_check_membership(s: &PermSet) -> Result<bool> {
    let report = oracle_enumerate(s.n(), s.mode())?;
    Ok(report.witness_sets.binary_search(s).is_ok())
}

/// Outcome of [`oracle_restricted`]. The sampling half is statistical
/// evidence, not a proof.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictedReport {
    pub n: usize,
    pub mode: Mode,
    pub set_size: usize,
    pub candidates: usize,
    /// Candidates that are distinct and minimally complete of `set_size`.
    pub candidates_verified: usize,
    pub samples: u64,
    pub seed: u64,
    /// Random `set_size`-subsets of `S_n` that were minimally complete.
    pub sampled_minimal: u64,
    /// Of those, how many were missing from the candidate list.
    pub sampled_outside_candidates: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RestrictedReport {
    pub fn passed(&self) -> bool {
        self.candidates_verified == self.candidates && self.sampled_outside_candidates == 0
    }
}

/// For `n` beyond full exhaustion: checks that every candidate is minimally
/// complete of a common size, then draws `samples` seeded uniformly random
/// subsets of that size and checks that each minimally complete one is a
/// candidate.
pub fn oracle_restricted(
    n: usize,
    mode: Mode,
    candidates: &[PermSet],
    samples: u64,
    seed: u64,
) -> Result<RestrictedReport> {
    let started = Instant::now();
    let u = Universe::new(n, mode, RESTRICTED_MAX_N)?;
    let set_size = candidates.first().map(PermSet::len).ok_or_else(|| {
        Error::Precondition("restricted oracle needs at least one candidate".into())
    })?;

    let mut keys: Vec<Vec<usize>> = Vec::with_capacity(candidates.len());
    for cand in candidates {
        if cand.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: cand.n(),
            });
        }
        let idx: Option<Vec<usize>> = cand.iter().map(|p| u.index_of(p)).collect();
        if let Some(idx) = idx {
            if idx.len() == set_size && u.is_minimal_complete(&idx) {
                keys.push(idx);
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let candidates_verified = keys.len();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sampled_minimal, mut sampled_outside) = (0u64, 0u64);
    for _ in 0..samples {
        let mut pick = index::sample(&mut rng, u.perms.len(), set_size).into_vec();
        pick.sort_unstable();
        if u.is_minimal_complete(&pick) {
            sampled_minimal += 1;
            if keys.binary_search(&pick).is_err() {
                sampled_outside += 1;
            }
        }
    }

    Ok(RestrictedReport {
        n,
        mode,
        set_size,
        candidates: candidates.len(),
        candidates_verified,
        samples,
        seed,
        sampled_minimal,
        sampled_outside_candidates: sampled_outside,
        elapsed: started.elapsed(),
    })
}
