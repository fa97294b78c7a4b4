//! Exact closed-form counts over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact nonnegative count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(BigUint);

impl ExactCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        ExactCount(v)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

/// Values at sizes where the general formulas do not apply, as
/// `(n, |Q*_n|, |P*_n|)`.
///
/// - n = 2: `Q*_2 = {{21}}`, `P*_2 = {S_2}`.
/// - n = 3: `Q*_3 = {{132,231}, {213,312}, {231,312}}`; `P*_3` is the two
///   circular-shift orbits `{123,231,312}` and `{132,213,321}`.
/// - n = 4: `P*_4` is six shift orbits plus six relabelings of the unique
///   `Q*_4` (the parity formula for `|Q*_4|` already gives 1).
const SMALL_COUNTS: [(usize, Option<u64>, u64); 3] =
    [(2, Some(1), 1), (3, Some(3), 2), (4, None, 12)];

// counts are exact for any n >= 2; only memory bounds them
fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidSize { n, max: usize::MAX })
    } else {
        Ok(())
    }
}

fn check_c(n: usize, c: usize) -> Result<()> {
    check_n(n)?;
    if c == 0 || c >= n {
        Err(Error::Precondition(format!(
            "c={c} must satisfy 1 <= c < n={n}"
        )))
    } else {
        Ok(())
    }
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, x| acc * x)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    // C(n, m+1) = C(n, m) * (n - m) / (m + 1); every prefix is an integer
    (0..k as u64).fold(BigUint::one(), |acc, m| acc * (n as u64 - m) / (m + 1))
}

/// Maximum size of a minimal inversion-complete set: `floor(n^2 / 4)`.
pub fn gamma_i(n: usize) -> Result<ExactCount> {
    check_n(n)?;
    Ok(ExactCount(BigUint::from(n) * n / 4u32))
}

/// Maximum size of a minimal pair-complete set: `max(n, floor(n^2 / 4))`.
pub fn gamma_p(n: usize) -> Result<ExactCount> {
    let g = gamma_i(n)?;
    Ok(g.max(ExactCount::from(n as u64)))
}

/// `|F_{i,c,j}| = (c-1)! (n-c-1)!`, independent of `i` and `j`.
pub fn family_size(n: usize, c: usize) -> Result<ExactCount> {
    check_c(n, c)?;
    Ok(ExactCount(factorial(c - 1) * factorial(n - c - 1)))
}

/// Number of transversals of the `c(n-c)` families `F_{i,c,j}`:
/// `[(c-1)! (n-c-1)!]^{c(n-c)}`.
pub fn transversal_count(n: usize, c: usize) -> Result<ExactCount> {
    let size = family_size(n, c)?.0;
    Ok(ExactCount(Pow::pow(size, (c * (n - c)) as u32)))
}

/// `|Q*_n|`: `[(n/2 - 1)!]^{n^2/2}` for even `n >= 4`,
/// `2 [(m-1)! m!]^{floor(n^2/4)}` with `m = floor(n/2)` for odd `n >= 5`.
pub fn count_q_star(n: usize) -> Result<ExactCount> {
    check_n(n)?;
    if let Some(&(_, Some(q), _)) = SMALL_COUNTS.iter().find(|e| e.0 == n) {
        return Ok(ExactCount::from(q));
    }
    let m = n / 2;
    if n.is_multiple_of(2) {
        Ok(ExactCount(Pow::pow(factorial(m - 1), (n * n / 2) as u32)))
    } else {
        let base = factorial(m - 1) * factorial(m);
        Ok(ExactCount(Pow::pow(base, (n * n / 4) as u32) * 2u32))
    }
}

/// `|P*_n| = C(n, floor(n/2)) |Q*_n|` for `n >= 5`; tabulated below.
pub fn count_p_star(n: usize) -> Result<ExactCount> {
    check_n(n)?;
    if let Some(&(_, _, p)) = SMALL_COUNTS.iter().find(|e| e.0 == n) {
        return Ok(ExactCount::from(p));
    }
    Ok(ExactCount(binomial(n, n / 2) * count_q_star(n)?.0))
}
