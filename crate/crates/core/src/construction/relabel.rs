//! Relabelings, circular-shift orbits, and the correspondence between
//! maximum minimal pair-complete sets and (balanced subset, `Q*_n`) pairs.

use rand::Rng;

use super::{
    enumerate_q_star, q_star_level, q_star_small, sample_q_star_with, seeded_rng, QStarIter,
    ENUMERATION_MAX_N,
};
use crate::completeness::{all_critical_elements, is_complete, Mode, PermSet};
use crate::counting::{count_p_star, gamma_p};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::{check_size, Permutation};

/// `{tau . p : p in s}`, keeping the mode of `s`.
pub fn relabel_set(tau: &Permutation, s: &PermSet) -> Result<PermSet> {
    let members = s
        .iter()
        .map(|p| tau.compose(p))
        .collect::<Result<Vec<_>>>()?;
    PermSet::new(s.n(), s.mode(), members)
}

/// The `n` rotations `p, p.s, ..., p.s^{n-1}` of `p` as a pair-mode set.
pub fn orbit(p: &Permutation) -> PermSet {
    let n = p.n();
    let shift = Permutation::circular_shift(n).expect("valid n");
    let mut members = Vec::with_capacity(n);
    let mut current = p.clone();
    for _ in 0..n {
        let next = current.compose(&shift).expect("same n");
        members.push(current);
        current = next;
    }
    PermSet::new(n, Mode::Pair, members).expect("same n")
}

/// An ordered partition `(W, [n] \ W)` with `|W|` in
/// `{floor(n/2), ceil(n/2)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BalancedPartition {
    n: usize,
    w: Vec<usize>,
}

impl BalancedPartition {
    pub fn new(n: usize, w: &[usize]) -> Result<Self> {
        check_size(n)?;
        let w = normalize_subset(n, w)?;
        if w.len() != n / 2 && w.len() != n - n / 2 {
            return Err(Error::Precondition(format!(
                "|W|={} is not balanced for n={n}",
                w.len()
            )));
        }
        Ok(BalancedPartition { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> &[usize] {
        &self.w
    }

    pub fn complement(&self) -> Vec<usize> {
        complement(self.n, &self.w)
    }

    /// `c = |[n] \ W|`.
    pub fn c(&self) -> usize {
        self.n - self.w.len()
    }
}

fn normalize_subset(n: usize, xs: &[usize]) -> Result<Vec<usize>> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    if let Some(&bad) = v.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::OutOfRange { index: bad, n });
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("subset has repeated elements".into()));
    }
    Ok(v)
}

fn complement(n: usize, w: &[usize]) -> Vec<usize> {
    (1..=n).filter(|v| w.binary_search(v).is_err()).collect()
}

/// The permutation sending `1..c` increasingly onto `[n] \ W` and
/// `c+1..n` increasingly onto `W`.
pub fn canonical_tau(part: &BalancedPartition) -> Permutation {
    let mut image = part.complement();
    image.extend_from_slice(&part.w);
    Permutation::new(&image).expect("partition of [n]")
}

/// Maps a maximum minimal pair-complete set (`n >= 5`) to `(X, Q)` with
/// `|X| = floor(n/2)` and `Q` in `Q*_n`.
///
/// Every critical pair `(a, b)` of `p` runs from a side `W` to its
/// complement; with `c = |[n] \ W|`, `Q = tau_W^-1 . p` is a transversal of
/// `F_c`. `X` is the complement of `W` when `c = floor(n/2)` and `W`
/// otherwise. The declared mode of `p` is ignored; it is judged as a
/// pair-mode set.
pub fn phi(p: &PermSet) -> Result<(Vec<usize>, PermSet)> {
    let n = p.n();
    if n < 5 {
        return Err(Error::Precondition(format!(
            "phi requires n >= 5, got n={n}"
        )));
    }
    let p = p.clone().with_mode(Mode::Pair);
    let gamma = gamma_p(n)?.to_u64().unwrap_or(u64::MAX);
    if p.len() as u64 != gamma {
        return Err(Error::Precondition(format!(
            "set has {} members but maximum minimal pair-complete sets for n={n} have {gamma}",
            p.len()
        )));
    }
    if !is_complete(&p) {
        return Err(Error::Precondition("set is not pair-complete".into()));
    }
    let crit = all_critical_elements(&p);
    if crit.iter().any(|c| c.is_empty()) {
        return Err(Error::Precondition(
            "set is not minimally pair-complete".into(),
        ));
    }

    let mut is_source = vec![false; n + 1];
    let mut is_target = vec![false; n + 1];
    for pair in crit.iter().flatten() {
        is_source[pair.first] = true;
        is_target[pair.second] = true;
    }
    let w: Vec<usize> = (1..=n).filter(|&v| is_source[v]).collect();
    let w_bar: Vec<usize> = (1..=n).filter(|&v| is_target[v]).collect();
    let partitioned = (1..=n).all(|v| is_source[v] != is_target[v]);
    let graph = SimpleGraph::from_edges(n, crit.iter().map(|c| (c[0].first, c[0].second)));
    let sides = graph.balanced_bipartition();
    let matches_graph = sides
        .as_ref()
        .is_some_and(|(a, b)| (a == &w && b == &w_bar) || (a == &w_bar && b == &w));
    if !partitioned || !matches_graph {
        return Err(Error::Precondition(
            "critical pairs do not orient a balanced complete bipartite graph".into(),
        ));
    }

    let part = BalancedPartition::new(n, &w)?;
    let c = part.c();
    let q = relabel_set(&canonical_tau(&part).inverse(), &p)?.with_mode(Mode::Inversion);
    if q_star_level(&q) != Some(c) {
        return Err(Error::Precondition(
            "relabeled set is not a transversal of a balanced family".into(),
        ));
    }
    let x = if c == n / 2 { w_bar } else { w };
    Ok((x, q))
}

/// The unique maximum minimal pair-complete set `P` with `phi(P) = (x, q)`.
pub fn phi_inverse(x: &[usize], q: &PermSet) -> Result<PermSet> {
    let n = q.n();
    if n < 5 {
        return Err(Error::Precondition(format!(
            "phi_inverse requires n >= 5, got n={n}"
        )));
    }
    let x = normalize_subset(n, x)?;
    if x.len() != n / 2 {
        return Err(Error::Precondition(format!(
            "|X|={} but must be floor(n/2)={}",
            x.len(),
            n / 2
        )));
    }
    let q = q.clone().with_mode(Mode::Inversion);
    let Some(c) = q_star_level(&q) else {
        return Err(Error::Precondition(
            "Q is not a maximum-cardinality minimal inversion-complete set".into(),
        ));
    };
    let w = if c == n / 2 { complement(n, &x) } else { x };
    let tau = canonical_tau(&BalancedPartition::new(n, &w)?);
    Ok(relabel_set(&tau, &q)?.with_mode(Mode::Pair))
}

/// `P*_n` for `n <= 4`: `S_2`; the two shift orbits at `n = 3`; at `n = 4`
/// the six orbits of `r4` (`r` in `S_3`) and the six relabelings of `Q*_4`.
fn p_star_small(n: usize) -> Option<Vec<PermSet>> {
    let mut out = match n {
        2 => vec![PermSet::parse(2, Mode::Pair, &["12", "21"]).unwrap()],
        3 => ["123", "132"]
            .iter()
            .map(|s| orbit(&s.parse().unwrap()))
            .collect(),
        4 => {
            let mut v: Vec<PermSet> = Permutation::all(3)
                .unwrap()
                .map(|r| {
                    let mut image = r.one_line();
                    image.push(4);
                    orbit(&Permutation::new(&image).unwrap())
                })
                .collect();
            let q4 = q_star_small_or_first(4);
            v.extend(
                Permutation::all(4)
                    .unwrap()
                    .map(|tau| relabel_set(&tau, &q4).unwrap().with_mode(Mode::Pair)),
            );
            v
        }
        _ => return None,
    };
    out.sort();
    out.dedup();
    Some(out)
}

fn q_star_small_or_first(n: usize) -> PermSet {
    q_star_small(n)
        .and_then(|v| v.into_iter().next())
        .unwrap_or_else(|| QStarIter::unbounded(n).unwrap().next().unwrap())
}

/// Lazy enumeration of `P*_n`.
pub struct PStarIter {
    inner: Box<dyn Iterator<Item = PermSet> + Send>,
}

impl Iterator for PStarIter {
    type Item = PermSet;

    fn next(&mut self) -> Option<PermSet> {
        self.inner.next()
    }
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> + Send {
    let mut next: Option<Vec<usize>> = Some((1..=k).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if let Some(pos) = (0..k).rev().find(|&p| succ[p] < n - k + p + 1) {
            succ[pos] += 1;
            for q in pos + 1..k {
                succ[q] = succ[q - 1] + 1;
            }
            next = Some(succ);
        }
        Some(current)
    })
}

impl PStarIter {
    /// Enumeration without the size cap, for callers that stop early.
    /// For `n >= 5` the order is `X` lexicographic (outer), `Q` in
    /// enumeration order (inner).
    pub fn unbounded(n: usize) -> Result<Self> {
        check_size(n)?;
        if let Some(list) = p_star_small(n) {
            return Ok(PStarIter {
                inner: Box::new(list.into_iter()),
            });
        }
        let inner = subsets_of_size(n, n / 2).flat_map(move |x| {
            QStarIter::unbounded(n)
                .expect("valid n")
                .map(move |q| phi_inverse(&x, &q).expect("q in Q*_n"))
        });
        Ok(PStarIter {
            inner: Box::new(inner),
        })
    }
}

/// Every element of `P*_n`, refused above [`ENUMERATION_MAX_N`].
pub fn enumerate_p_star(n: usize) -> Result<PStarIter> {
    check_size(n)?;
    if n > ENUMERATION_MAX_N {
        return Err(Error::Resource(format!(
            "refusing to enumerate P*_{n}: exceeds the enumeration bound n <= {ENUMERATION_MAX_N} \
             (|P*_{n}| = {})",
            count_p_star(n)?
        )));
    }
    // touch the cap-checked path so both enumerations fail alike
    let _ = enumerate_q_star(n)?;
    PStarIter::unbounded(n)
}

pub(crate) fn sample_p_star_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PermSet> {
    check_size(n)?;
    if let Some(list) = p_star_small(n) {
        let k = rng.gen_range(0..list.len());
        return Ok(list[k].clone());
    }
    let x = rand::seq::index::sample(rng, n, n / 2)
        .into_iter()
        .map(|k| k + 1)
        .collect::<Vec<_>>();
    let q = sample_q_star_with(n, rng)?;
    phi_inverse(&x, &q)
}

/// A uniformly random element of `P*_n`, determined by `seed`.
pub fn sample_p_star(n: usize, seed: u64) -> Result<PermSet> {
    sample_p_star_with(n, &mut seeded_rng(seed))
}
