//! Rationality and Hasse-norm-principle invariants of norm-one tori, computed
//! at the level of finite group theory.
//!
//! The pipeline: a transitive permutation group `G` with point stabilizer `H`
//! determines the character lattice `J_{G/H}` of the norm-one torus of a
//! degree-`[G:H]` extension. The first cohomology of a flabby resolution of
//! that lattice decides weak approximation and the Hasse norm principle; the
//! Drakokhrust-Platonov diagram, evaluated on Schur covers and stem
//! extensions, pins down which decomposition groups kill the obstruction.
//!
//! Everything is exact integer arithmetic and deterministic: no randomized
//! algorithm is used anywhere.

pub mod abexact;
pub mod groups;
pub mod lattice;

pub mod cohom;

pub mod central;
pub mod norm1;
pub mod obstruction;

pub mod corpus;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    CapExceeded { what: &'static str, actual: usize, limit: usize },
    #[error("permutation degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps that keep every computation at desk scale. All entry points that can
/// blow up check against these before starting.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest group order for element enumeration (permutation or table).
    pub max_order: usize,
    /// Largest lattice rank accepted by the cohomology pipeline.
    pub max_rank: usize,
    /// Largest number of unknowns in a 2-cocycle solve.
    pub max_cocycle_unknowns: usize,
    /// Largest group order for the automorphism search.
    pub max_aut_order: usize,
    /// Largest group order for subgroup classification.
    pub max_subgroup_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 5000,
            max_rank: 1500,
            max_cocycle_unknowns: 16384,
            max_aut_order: 200,
            max_subgroup_order: 1000,
        }
    }
}

/// Exact reduced fraction, used for Tamagawa-number bookkeeping.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.max(1), den);
        Ratio { num: num / g, den: den / g }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
