//! Minimal complete sets of permutations.
//!
//! A permutation `p` of `[n]` *covers* the ordered pair `(a, b)` when `a`
//! appears before `b` in its one-line notation. A set of permutations is
//! *inversion-complete* when it covers every `(j, i)` with `j > i`, and
//! *pair-complete* when it covers every ordered pair. It is *minimal* when no
//! member can be dropped.
//!
//! The crate provides:
//!
//! * [`perm`]: permutations, composition and coverage.
//! * [`completeness`]: completeness and minimality checks, critical
//!   elements and critical selection graphs.
//! * [`construction`]: the family/transversal construction of every
//!   maximum minimal inversion-complete set, and the relabeling bijection to
//!   the pair-complete optimum.
//! * [`counting`]: exact maxima and exact counts of optimal sets.
//! * [`oracle`]: brute-force search for small `n`, independent of the
//!   constructions.
//!
//! ```
//! use permcover::{completeness::{is_minimal_complete, Mode, PermSet}, counting::gamma_i};
//!
//! let q = PermSet::parse(4, Mode::Inversion, &["2314", "2413", "1324", "1423"]).unwrap();
//! assert!(is_minimal_complete(&q));
//! assert_eq!(gamma_i(4).unwrap().to_u64(), Some(q.len() as u64));
//! ```

pub mod completeness;
pub mod construction;
pub mod counting;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod perm;

pub use completeness::{is_complete, is_minimal_complete, Mode, PermSet};
pub use error::{Error, Result};
pub use perm::{OrderedPair, Permutation, MAX_N};
