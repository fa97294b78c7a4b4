//! The families `F_{i,c,j}` and their transversals.
//!
//! For `1 <= i <= c < j <= n`, `F_{i,c,j}` holds the permutations with
//! values from `[c] \ {i}` in positions `1..c`, then `j`, then `i`, then
//! values from `{c+1..n} \ {j}`. For a fixed `c` these `c(n-c)` sets are
//! pairwise disjoint, and every transversal of them is minimally
//! inversion-complete (the member of `F_{i,c,j}` is the only one covering
//! `(j, i)`).

use rand::seq::SliceRandom;
use rand::Rng;

use crate::completeness::{Mode, PermSet};
use crate::counting::{family_size, ExactCount};
use crate::error::{Error, Result};
use crate::perm::{check_size, next_permutation, Permutation};

/// The triple `(i, c, j)` naming `F_{i,c,j}` inside `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyDescriptor {
    n: usize,
    i: usize,
    c: usize,
    j: usize,
}

impl FamilyDescriptor {
    pub fn new(n: usize, i: usize, c: usize, j: usize) -> Result<Self> {
        check_size(n)?;
        if !(1 <= i && i <= c && c < j && j <= n) {
            return Err(Error::Precondition(format!(
                "family (i={i}, c={c}, j={j}) must satisfy 1 <= i <= c < j <= n={n}"
            )));
        }
        Ok(FamilyDescriptor { n, i, c, j })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// `(c-1)! (n-c-1)!`.
    pub fn member_count(&self) -> ExactCount {
        family_size(self.n, self.c).expect("validated descriptor")
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> FamilyMembers {
        FamilyMembers {
            cursor: FamilyCursor::new(self),
            done: false,
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.n() == self.n && family_of(p, self.c) == Some((self.i, self.j))
    }

    /// A uniformly random member.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut cursor = FamilyCursor::new(self);
        cursor.prefix.shuffle(rng);
        cursor.suffix.shuffle(rng);
        cursor.current()
    }
}

/// The `(i, j)` with `p` in `F_{i,c,j}`, if any.
pub fn family_of(p: &Permutation, c: usize) -> Option<(usize, usize)> {
    let n = p.n();
    if c == 0 || c >= n {
        return None;
    }
    let img = p.raw_image();
    let c8 = c as u8;
    let (j, i) = (img[c - 1], img[c]);
    let ok = i <= c8
        && j > c8
        && img[..c - 1].iter().all(|&v| v <= c8)
        && img[c + 1..].iter().all(|&v| v > c8);
    ok.then_some((i as usize, j as usize))
}

/// The `c(n-c)` descriptors `F_{i,c,j}` in lexicographic `(i, j)` order.
pub fn family_collection(n: usize, c: usize) -> Result<Vec<FamilyDescriptor>> {
    check_size(n)?;
    if c == 0 || c >= n {
        return Err(Error::Precondition(format!(
            "c={c} must satisfy 1 <= c < n={n}"
        )));
    }
    let mut out = Vec::with_capacity(c * (n - c));
    for i in 1..=c {
        for j in c + 1..=n {
            out.push(FamilyDescriptor { n, i, c, j });
        }
    }
    Ok(out)
}

/// True iff `s` holds exactly one member of each `F_{i,c,j}` and nothing
/// else.
pub fn is_transversal(s: &PermSet, c: usize) -> bool {
    let n = s.n();
    if c == 0 || c >= n || s.len() != c * (n - c) {
        return false;
    }
    let mut seen = vec![false; n * n];
    for p in s {
        match family_of(p, c) {
            Some((i, j)) if !seen[(i - 1) * n + j - 1] => seen[(i - 1) * n + j - 1] = true,
            _ => return false,
        }
    }
    true
}

/// A position inside one family: the free prefix and suffix arrangements.
#[derive(Debug, Clone)]
struct FamilyCursor {
    i: u8,
    j: u8,
    prefix: Vec<u8>,
    suffix: Vec<u8>,
}

impl FamilyCursor {
    fn new(f: &FamilyDescriptor) -> Self {
        let (i, c, j, n) = (f.i as u8, f.c as u8, f.j as u8, f.n as u8);
        FamilyCursor {
            i,
            j,
            prefix: (1..=c).filter(|&v| v != i).collect(),
            suffix: (c + 1..=n).filter(|&v| v != j).collect(),
        }
    }

    fn current(&self) -> Permutation {
        let mut image = Vec::with_capacity(self.prefix.len() + self.suffix.len() + 2);
        image.extend_from_slice(&self.prefix);
        image.push(self.j);
        image.push(self.i);
        image.extend_from_slice(&self.suffix);
        Permutation::from_trusted(image)
    }

    /// Steps to the lexicographic successor; on wrap-around returns `false`
    /// and resets to the first member.
    fn advance(&mut self) -> bool {
        next_permutation(&mut self.suffix) || next_permutation(&mut self.prefix)
    }
}

/// Iterator returned by [`FamilyDescriptor::members`].
#[derive(Debug, Clone)]
pub struct FamilyMembers {
    cursor: FamilyCursor,
    done: bool,
}

impl Iterator for FamilyMembers {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let p = self.cursor.current();
        self.done = !self.cursor.advance();
        Some(p)
    }
}

/// All transversals of `F_c`, as an odometer over the families in `(i, j)`
/// order (the last family varies fastest), each family's members in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Transversals {
    n: usize,
    cursors: Vec<FamilyCursor>,
    done: bool,
}

impl Transversals {
    pub fn new(n: usize, c: usize) -> Result<Self> {
        let cursors = family_collection(n, c)?
            .iter()
            .map(FamilyCursor::new)
            .collect();
        Ok(Transversals {
            n,
            cursors,
            done: false,
        })
    }
}

impl Iterator for Transversals {
    type Item = PermSet;

    fn next(&mut self) -> Option<PermSet> {
        if self.done {
            return None;
        }
        let mut members: Vec<Permutation> = self.cursors.iter().map(|c| c.current()).collect();
        members.sort_unstable();
        let set = PermSet::from_sorted_unchecked(self.n, Mode::Inversion, members);
        self.done = true;
        for cursor in self.cursors.iter_mut().rev() {
            if cursor.advance() {
                self.done = false;
                break;
            }
        }
        Some(set)
    }
}

/// A uniformly random transversal of `F_c`.
pub fn sample_transversal<R: Rng + ?Sized>(n: usize, c: usize, rng: &mut R) -> Result<PermSet> {
    let members: Vec<Permutation> = family_collection(n, c)?
        .iter()
        .map(|f| f.sample(rng))
        .collect();
    PermSet::new(n, Mode::Inversion, members)
}
