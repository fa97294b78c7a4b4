//! Permutations of `[n] = {1, ..., n}` in one-line notation and the cover
//! relation on ordered pairs.
//!
//! Positions and values are 1-based at every public entry point. A
//! permutation `p` *covers* the ordered pair `(a, b)` when `a` appears
//! before `b` in its one-line notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` accepted by constructive operations.
pub const MAX_N: usize = 20;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidSize { n, max: MAX_N })
    }
}

/// A bijection of `[n]`, stored as its one-line image together with the
/// inverse (position) table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    // image[k] = p(k + 1)
    image: Vec<u8>,
    // pos[v - 1] = 0-based position of value v
    pos: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line image `p(1), ..., p(n)`.
    pub fn new(image: &[usize]) -> Result<Self> {
        let n = image.len();
        check_size(n)?;
        let mut pos = vec![u8::MAX; n];
        for (k, &v) in image.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("value {v} at position {} is outside 1..={n}", k + 1),
                });
            }
            if pos[v - 1] != u8::MAX {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("value {v} appears more than once"),
                });
            }
            pos[v - 1] = k as u8;
        }
        Ok(Permutation {
            image: image.iter().map(|&v| v as u8).collect(),
            pos,
        })
    }

    fn from_raw(image: Vec<u8>) -> Self {
        let mut pos = vec![0u8; image.len()];
        for (k, &v) in image.iter().enumerate() {
            pos[v as usize - 1] = k as u8;
        }
        Permutation { image, pos }
    }

    /// `id_n = 12...n`.
    pub fn identity(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_raw((1..=n as u8).collect()))
    }

    /// `rev_n = n(n-1)...1`.
    pub fn reverse(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_raw((1..=n as u8).rev().collect()))
    }

    /// The forward circular shift `s(i) = (i mod n) + 1`.
    pub fn circular_shift(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_raw(
            (1..=n).map(|i| ((i % n) + 1) as u8).collect(),
        ))
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `p(k)` for a 1-based position `k`.
    pub fn apply(&self, k: usize) -> Result<usize> {
        self.check_index(k)?;
        Ok(self.image[k - 1] as usize)
    }

    /// 1-based position of value `v`, i.e. `p^-1(v)`.
    pub fn position_of(&self, v: usize) -> Result<usize> {
        self.check_index(v)?;
        Ok(self.pos[v - 1] as usize + 1)
    }

    /// The one-line image as 1-based values.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw_image(&self) -> &[u8] {
        &self.image
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(Error::OutOfRange {
                index: k,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// `(outer . inner)(k) = outer(inner(k))`: `outer` relabels the values of
    /// `inner`, so `inner` covers `(a, b)` iff the composite covers
    /// `(outer(a), outer(b))`.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        if self.n() != inner.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: inner.n(),
            });
        }
        Ok(Self::from_raw(
            inner
                .image
                .iter()
                .map(|&v| self.image[v as usize - 1])
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            image: self.pos.iter().map(|&k| k + 1).collect(),
            pos: self.image.iter().map(|&v| v - 1).collect(),
        }
    }

    /// True iff `pair.first` appears before `pair.second`.
    pub fn covers(&self, pair: OrderedPair) -> Result<bool> {
        self.check_index(pair.first)?;
        self.check_index(pair.second)?;
        Ok(self.covers_unchecked(pair.first, pair.second))
    }

    #[inline]
    pub(crate) fn covers_unchecked(&self, a: usize, b: usize) -> bool {
        self.pos[a - 1] < self.pos[b - 1]
    }

    /// Number of inversions `(j, i)`, `j > i`, covered by this permutation.
    pub fn inversion_count(&self) -> usize {
        let n = self.image.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.image[a] > self.image[b])
            .count()
    }

    /// All `n!` permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Result<LexPermutations> {
        check_size(n)?;
        Ok(LexPermutations {
            next: Some((1..=n as u8).collect()),
        })
    }

    /// The lexicographic successor, or `None` for `rev_n`.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut image = self.image.clone();
        next_permutation(&mut image).then(|| Self::from_raw(image))
    }

    pub(crate) fn from_trusted(image: Vec<u8>) -> Self {
        Self::from_raw(image)
    }
}

/// Rearranges `xs` into its lexicographic successor. Returns `false` (and
/// leaves `xs` sorted ascending) when `xs` was the last arrangement.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        xs.reverse();
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Iterator returned by [`Permutation::all`].
#[derive(Debug, Clone)]
pub struct LexPermutations {
    next: Option<Vec<u8>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_raw(current))
    }
}

impl fmt::Display for Permutation {
    /// Compact digits (`2314`) for `n <= 9`, space separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.image {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            for (k, v) in self.image.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact digits (`"2314"`, only meaningful for `n <= 9`) or
    /// values separated by whitespace and/or commas (`"2 3 1 4"`, `"2,3,1,4"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: String| Error::InvalidPermutation { n: 0, reason };
        let values: Vec<usize> = if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            s.bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| bad(format!("`{t}` is not a positive integer")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(&values)
    }
}

/// An ordered pair `(first, second)` of distinct elements of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPair {
    pub first: usize,
    pub second: usize,
}

impl OrderedPair {
    pub fn new(first: usize, second: usize) -> Result<Self> {
        if first == second {
            return Err(Error::DegeneratePair { first, second });
        }
        Ok(OrderedPair { first, second })
    }

    /// An inversion is a pair `(j, i)` with `j > i`.
    pub fn is_inversion(&self) -> bool {
        self.first > self.second
    }

    pub fn reversed(&self) -> OrderedPair {
        OrderedPair {
            first: self.second,
            second: self.first,
        }
    }
}

impl fmt::Display for OrderedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}
