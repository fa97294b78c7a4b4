//! Completeness and minimality of permutation sets, critical elements, and
//! critical selection graphs.
//!
//! In [`Mode::Inversion`] the required pairs are the inversions `(j, i)` with
//! `j > i`; in [`Mode::Pair`] they are all ordered pairs of distinct
//! elements. A member's *critical* elements are the required pairs it covers
//! and no other member covers. A complete set is minimal iff every member
//! owns at least one critical element, since coverage is monotone.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Digraph, SimpleGraph};
use crate::perm::{check_size, OrderedPair, Permutation};

/// Which ordered pairs a set must cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Inversion,
    Pair,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Inversion => "inversion",
            Mode::Pair => "pair",
        }
    }

    pub fn requires(&self, pair: OrderedPair) -> bool {
        match self {
            Mode::Inversion => pair.is_inversion(),
            Mode::Pair => true,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inversion" => Ok(Mode::Inversion),
            "pair" => Ok(Mode::Pair),
            other => Err(Error::Precondition(format!(
                "unknown mode `{other}` (expected `inversion` or `pair`)"
            ))),
        }
    }
}

/// The required pairs for `(n, mode)` in lexicographic order.
pub fn required_pairs(n: usize, mode: Mode) -> Vec<OrderedPair> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b && (mode == Mode::Pair || a > b) {
                out.push(OrderedPair {
                    first: a,
                    second: b,
                });
            }
        }
    }
    out
}

/// A duplicate-free set of permutations of a common `n`, kept in
/// lexicographic order, tagged with the completeness mode it is judged
/// against.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermSet {
    n: usize,
    mode: Mode,
    members: Vec<Permutation>,
}

impl PermSet {
    /// Builds a set, sorting and dropping repeated members.
    pub fn new<I>(n: usize, mode: Mode, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Permutation>,
    {
        check_size(n)?;
        let mut members: Vec<Permutation> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(PermSet { n, mode, members })
    }

    pub fn empty(n: usize, mode: Mode) -> Result<Self> {
        Self::new(n, mode, std::iter::empty())
    }

    /// Parses compact or space separated permutations; convenient in tests.
    pub fn parse(n: usize, mode: Mode, perms: &[&str]) -> Result<Self> {
        let members = perms
            .iter()
            .map(|s| s.parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, mode, members)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, mode: Mode, members: Vec<Permutation>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        PermSet { n, mode, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// Inserts `p`, returning whether it was new.
    pub fn insert(&mut self, p: Permutation) -> Result<bool> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        match self.members.binary_search(&p) {
            Ok(_) => Ok(false),
            Err(at) => {
                self.members.insert(at, p);
                Ok(true)
            }
        }
    }

    pub fn remove(&mut self, p: &Permutation) -> bool {
        match self.members.binary_search(p) {
            Ok(at) => {
                self.members.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    pub fn without(&self, p: &Permutation) -> PermSet {
        let mut out = self.clone();
        out.remove(p);
        out
    }

    pub fn with_mode(mut self, mode: Mode) -> PermSet {
        self.mode = mode;
        self
    }

    pub fn is_subset_of(&self, other: &PermSet) -> bool {
        self.n == other.n && self.members.iter().all(|p| other.contains(p))
    }
}

impl fmt::Display for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermSet(n={}, {}, {self})", self.n, self.mode)
    }
}

impl<'a> IntoIterator for &'a PermSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl Serialize for PermSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let perms: Vec<Vec<usize>> = self.members.iter().map(Permutation::one_line).collect();
        let mut st = serializer.serialize_struct("PermSet", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("perms", &perms)?;
        st.end()
    }
}

/// How many members cover each ordered pair, indexed `(a-1)*n + (b-1)`.
struct Coverage {
    n: usize,
    counts: Vec<u32>,
}

impl Coverage {
    fn of(s: &PermSet) -> Self {
        let n = s.n;
        let mut counts = vec![0u32; n * n];
        for p in &s.members {
            let image = p.raw_image();
            for k in 0..n {
                let a = image[k] as usize - 1;
                for &b in &image[k + 1..] {
                    counts[a * n + b as usize - 1] += 1;
                }
            }
        }
        Coverage { n, counts }
    }

    fn count(&self, pair: OrderedPair) -> u32 {
        self.counts[(pair.first - 1) * self.n + pair.second - 1]
    }
}

/// True iff every required pair is covered by some member.
pub fn is_complete(s: &PermSet) -> bool {
    uncovered(s).is_empty()
}

/// Required pairs covered by no member, in lexicographic order.
pub fn uncovered(s: &PermSet) -> Vec<OrderedPair> {
    let cov = Coverage::of(s);
    required_pairs(s.n, s.mode)
        .into_iter()
        .filter(|&pr| cov.count(pr) == 0)
        .collect()
}

fn critical_of(s: &PermSet, cov: &Coverage, member: &Permutation) -> Vec<OrderedPair> {
    required_pairs(s.n, s.mode)
        .into_iter()
        .filter(|&pr| cov.count(pr) == 1 && member.covers_unchecked(pr.first, pr.second))
        .collect()
}

/// Required pairs covered by `member` and by no other member of `s`.
pub fn critical_elements(s: &PermSet, member: &Permutation) -> Result<Vec<OrderedPair>> {
    if !s.contains(member) {
        return Err(Error::NotAMember(member.to_string()));
    }
    Ok(critical_of(s, &Coverage::of(s), member))
}

/// Critical elements of every member, in member order.
pub fn all_critical_elements(s: &PermSet) -> Vec<Vec<OrderedPair>> {
    let cov = Coverage::of(s);
    s.members.iter().map(|m| critical_of(s, &cov, m)).collect()
}

/// Members owning no critical element; removing any one of them keeps the
/// coverage unchanged.
pub fn redundant_members(s: &PermSet) -> Vec<Permutation> {
    s.members
        .iter()
        .zip(all_critical_elements(s))
        .filter(|(_, crit)| crit.is_empty())
        .map(|(m, _)| m.clone())
        .collect()
}

/// Complete, and every member owns a critical element.
pub fn is_minimal_complete(s: &PermSet) -> bool {
    is_complete(s) && all_critical_elements(s).iter().all(|c| !c.is_empty())
}

/// Complete, and no set obtained by deleting one member is complete. Agrees
/// with [`is_minimal_complete`]; kept as a second route for cross-checking.
pub fn is_minimal_complete_by_removal(s: &PermSet) -> bool {
    is_complete(s) && s.members.iter().all(|m| !is_complete(&s.without(m)))
}

/// One chosen critical pair of one member, viewed as an edge `{u, v}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionEdge {
    pub u: usize,
    pub v: usize,
    pub selector: Permutation,
    pub directed_pair: OrderedPair,
}

impl SelectionEdge {
    fn new(selector: Permutation, directed_pair: OrderedPair) -> Self {
        let (u, v) = if directed_pair.first < directed_pair.second {
            (directed_pair.first, directed_pair.second)
        } else {
            (directed_pair.second, directed_pair.first)
        };
        SelectionEdge {
            u,
            v,
            selector,
            directed_pair,
        }
    }
}

/// One edge record per member of a minimally complete set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSelectionGraph {
    n: usize,
    mode: Mode,
    edges: Vec<SelectionEdge>,
}

impl CriticalSelectionGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edges(&self) -> &[SelectionEdge] {
        &self.edges
    }

    /// The simple graph on `[n]`; parallel records collapse to one edge.
    pub fn underlying(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edges.iter().map(|e| (e.u, e.v)))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.underlying().is_triangle_free()
    }

    /// See [`SimpleGraph::balanced_bipartition`].
    pub fn balanced_bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        self.underlying().balanced_bipartition()
    }

    /// Each selected pair `(a, b)` as the arc `a -> b`.
    pub fn digraph(&self) -> Digraph {
        Digraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| (e.directed_pair.first, e.directed_pair.second))
                .collect(),
        )
    }
}

/// How to pick one critical pair per member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionStrategy {
    /// The lexicographically smallest critical pair of each member.
    LexMin,
    /// Every combination of per-member choices.
    All,
}

impl FromStr for SelectionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex_min" => Ok(SelectionStrategy::LexMin),
            "all" => Ok(SelectionStrategy::All),
            other => Err(Error::Precondition(format!(
                "unknown strategy `{other}` (expected `lex_min` or `all`)"
            ))),
        }
    }
}

fn require_minimal(s: &PermSet) -> Result<Vec<Vec<OrderedPair>>> {
    if !is_complete(s) {
        return Err(Error::Precondition(format!(
            "set is not {}-complete",
            s.mode
        )));
    }
    let crit = all_critical_elements(s);
    if crit.iter().any(|c| c.is_empty()) {
        return Err(Error::Precondition(format!(
            "set is not minimally {}-complete",
            s.mode
        )));
    }
    Ok(crit)
}

/// The selection graph choosing each member's smallest critical pair.
pub fn selection_graph_lex_min(s: &PermSet) -> Result<CriticalSelectionGraph> {
    let crit = require_minimal(s)?;
    Ok(CriticalSelectionGraph {
        n: s.n,
        mode: s.mode,
        edges: s
            .members
            .iter()
            .zip(&crit)
            .map(|(m, c)| SelectionEdge::new(m.clone(), c[0]))
            .collect(),
    })
}

/// Every selection graph of `s`, lazily; the number of graphs is the product
/// of the members' critical-list lengths.
pub fn selection_graphs_all(s: &PermSet) -> Result<SelectionGraphs> {
    let crit = require_minimal(s)?;
    Ok(SelectionGraphs {
        n: s.n,
        mode: s.mode,
        members: s.members.clone(),
        digits: vec![0; crit.len()],
        crit,
        done: false,
    })
}

/// Graphs for either strategy, materialized.
pub fn build_selection_graph(
    s: &PermSet,
    strategy: SelectionStrategy,
) -> Result<Vec<CriticalSelectionGraph>> {
    match strategy {
        SelectionStrategy::LexMin => Ok(vec![selection_graph_lex_min(s)?]),
        SelectionStrategy::All => Ok(selection_graphs_all(s)?.collect()),
    }
}

/// Odometer over the Cartesian product of per-member critical lists; the
/// last member varies fastest.
pub struct SelectionGraphs {
    n: usize,
    mode: Mode,
    members: Vec<Permutation>,
    crit: Vec<Vec<OrderedPair>>,
    digits: Vec<usize>,
    done: bool,
}

impl SelectionGraphs {
    /// Total number of graphs the iterator yields from the start.
    pub fn total(&self) -> u128 {
        self.crit.iter().map(|c| c.len() as u128).product()
    }
}

impl Iterator for SelectionGraphs {
    type Item = CriticalSelectionGraph;

    fn next(&mut self) -> Option<CriticalSelectionGraph> {
        if self.done {
            return None;
        }
        let graph = CriticalSelectionGraph {
            n: self.n,
            mode: self.mode,
            edges: self
                .members
                .iter()
                .zip(&self.crit)
                .zip(&self.digits)
                .map(|((m, c), &d)| SelectionEdge::new(m.clone(), c[d]))
                .collect(),
        };
        self.done = true;
        for k in (0..self.digits.len()).rev() {
            self.digits[k] += 1;
            if self.digits[k] < self.crit[k].len() {
                self.done = false;
                break;
            }
            self.digits[k] = 0;
        }
        Some(graph)
    }
}

/// The lex-min selection graph of a minimally pair-complete set with at
/// least three members, as a digraph.
pub fn build_selection_digraph(s: &PermSet) -> Result<Digraph> {
    if s.mode != Mode::Pair {
        return Err(Error::Precondition(
            "selection digraph requires a pair-mode set".into(),
        ));
    }
    if s.len() < 3 {
        return Err(Error::Precondition(format!(
            "selection digraph requires at least 3 members, got {}",
            s.len()
        )));
    }
    Ok(selection_graph_lex_min(s)?.digraph())
}
