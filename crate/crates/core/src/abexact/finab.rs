//! Finite abelian groups as invariant-factor lists, plus the subgroup and
//! quotient arithmetic used throughout the obstruction computations.
//!
//! A subgroup of `Z/d_1 x ... x Z/d_r` is handled through integer lifts: the
//! lattice spanned by the generator rows together with `diag(d)` describes the
//! subgroup exactly, so Hermite/Smith reductions answer membership, structure
//! and quotient questions.

use super::{cokernel_structure, hnf, kernel_basis, snf, IntMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Finite abelian group `Z/d_1 x ... x Z/d_r` with `d_i >= 2` and
/// `d_i | d_{i+1}`. The empty list is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAb {
    factors: Vec<u64>,
}

impl FinAb {
    pub fn new(factors: Vec<u64>) -> Self {
        assert!(factors.iter().all(|&d| d >= 2), "invariant factors must be >= 2");
        for w in factors.windows(2) {
            assert!(w[1] % w[0] == 0, "invariant factors must form a divisibility chain");
        }
        FinAb { factors }
    }

    pub fn trivial() -> Self {
        FinAb { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FinAb { factors: vec![n] }
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Combines per-prime invariant lists (each entry a prime power) into one
    /// invariant-factor chain.
    pub fn from_prime_power_parts(parts: &[Vec<u64>]) -> Self {
        let mut cols: Vec<Vec<u64>> = Vec::new();
        for part in parts {
            let mut sorted = part.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            cols.push(sorted);
        }
        let depth = cols.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut chain = Vec::new();
        for i in 0..depth {
            let mut d = 1u64;
            for c in &cols {
                if i < c.len() {
                    d *= c[i];
                }
            }
            if d >= 2 {
                chain.push(d);
            }
        }
        chain.reverse();
        FinAb::new(chain)
    }

    /// Reduces a coordinate vector modulo the factors.
    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        assert_eq!(v.len(), self.factors.len());
        v.iter().zip(&self.factors).map(|(x, d)| (x.rem_euclid(*d as i64)) as u64).collect()
    }
}

impl std::fmt::Debug for FinAb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.factors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "))
    }
}

impl std::fmt::Display for FinAb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            write!(f, "0")
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A subgroup of a finite abelian ambient group, kept as canonical generator
/// coordinates plus its own invariant factors.
#[derive(Clone, PartialEq, Eq)]
pub struct SubAb {
    pub ambient: FinAb,
    /// Adapted generators: `gens[i]` has order `structure.factors()[i]`.
    pub gens: Vec<Vec<u64>>,
    pub structure: FinAb,
}

impl SubAb {
    pub fn is_trivial(&self) -> bool {
        self.structure.is_trivial()
    }
}

impl std::fmt::Debug for SubAb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} in {:?} gens {:?}", self.structure, self.ambient, self.gens)
    }
}

fn gens_matrix(ambient: &FinAb, gens: &[Vec<i64>]) -> IntMatrix {
    let r = ambient.rank();
    let mut rows: Vec<Vec<i64>> = gens.to_vec();
    for (i, d) in ambient.factors().iter().enumerate() {
        let mut row = vec![0i64; r];
        row[i] = *d as i64;
        rows.push(row);
    }
    if rows.is_empty() {
        IntMatrix::zeros(0, r)
    } else {
        IntMatrix::from_rows(rows)
    }
}

/// Canonical form of the subgroup generated by `gens` inside `ambient`:
/// adapted generators and invariant factors.
pub fn subgroup(ambient: &FinAb, gens: &[Vec<i64>]) -> SubAb {
    let r = ambient.rank();
    for g in gens {
        assert_eq!(g.len(), r, "generator length must match ambient rank");
    }
    let s = gens.len();
    if s == 0 || r == 0 {
        return SubAb { ambient: ambient.clone(), gens: vec![], structure: FinAb::trivial() };
    }
    // Relations among the generator images: coefficient vectors c with
    // c*G = 0 in the ambient group, i.e. integral solutions of
    // c*G + y*diag(d) = 0.
    let g = IntMatrix::from_rows(gens.to_vec());
    let mut diag = IntMatrix::zeros(r, r);
    for (i, d) in ambient.factors().iter().enumerate() {
        diag.set_i64(i, i, *d as i64);
    }
    let stacked = g.vstack(&diag);
    let ker = kernel_basis(&stacked);
    // Project to the generator coefficients.
    let mut rel = IntMatrix::zeros(ker.rows(), s);
    for i in 0..ker.rows() {
        for j in 0..s {
            rel.set(i, j, ker.at(i, j));
        }
    }
    let dec = snf(&rel);
    let diag_s = dec.diagonal();
    // The subgroup is Z^s modulo the relation lattice; relations have full
    // rank because d_i * e_i is always a relation.
    assert_eq!(dec.rank(), s, "relation lattice must have full rank");
    let mut factors = Vec::new();
    let mut adapted = Vec::new();
    for (i, d) in diag_s.iter().enumerate() {
        let d = d.to_u64().expect("factor fits u64");
        if d >= 2 {
            // Generator mapping to e_i under x -> x*V: row i of V^{-1}.
            let mut coord = vec![0i64; r];
            for (k, item) in coord.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for j in 0..s {
                    acc += dec.v_inv.at(i, j) * BigInt::from(gens[j][k]);
                }
                let m = BigInt::from(ambient.factors()[k]);
                let mut red = acc % &m;
                if red.is_negative() {
                    red += &m;
                }
                *item = red.to_i64().expect("reduced coordinate fits i64");
            }
            factors.push(d);
            adapted.push(coord.iter().map(|&x| x as u64).collect());
        }
    }
    SubAb { ambient: ambient.clone(), gens: adapted, structure: FinAb::new(factors) }
}

/// Invariant factors of `span(top) / span(bottom)` inside `ambient`.
/// `span(bottom)` must be contained in `span(top)`.
pub fn quotient(ambient: &FinAb, top: &[Vec<i64>], bottom: &[Vec<i64>]) -> FinAb {
    let s = top.len();
    if s == 0 {
        return FinAb::trivial();
    }
    let r = ambient.rank();
    let mut rows = top.to_vec();
    rows.extend(bottom.to_vec());
    for (i, d) in ambient.factors().iter().enumerate() {
        let mut row = vec![0i64; r];
        row[i] = *d as i64;
        rows.push(row);
    }
    let stacked = IntMatrix::from_rows(rows);
    let ker = kernel_basis(&stacked);
    let mut rel = IntMatrix::zeros(ker.rows(), s);
    for i in 0..ker.rows() {
        for j in 0..s {
            rel.set(i, j, ker.at(i, j));
        }
    }
    let coker = cokernel_structure(&rel);
    assert_eq!(coker.free_rank, 0, "quotient of finite groups is finite");
    coker.finab
}

/// Membership of a coordinate vector in the subgroup spanned by `gens`.
pub fn contains(ambient: &FinAb, gens: &[Vec<i64>], v: &[u64]) -> bool {
    let m = gens_matrix(ambient, gens);
    let lifted: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    super::in_row_span(&m, &lifted)
}

/// Subgroup comparison via canonical Hermite forms of the lifted lattices.
pub fn same_subgroup(ambient: &FinAb, a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    canonical_lattice(ambient, a) == canonical_lattice(ambient, b)
}

pub fn subgroup_leq(ambient: &FinAb, a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let mb = gens_matrix(ambient, b);
    a.iter().all(|g| {
        let lifted: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
        super::in_row_span(&mb, &lifted)
    })
}

fn canonical_lattice(ambient: &FinAb, gens: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let m = gens_matrix(ambient, gens);
    let (h, _) = hnf(&m);
    let mut rows = Vec::new();
    for i in 0..h.rows() {
        let row: Vec<BigInt> = (0..h.cols()).map(|j| h.at(i, j)).collect();
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    rows
}

pub fn gens_as_i64(gens: &[Vec<u64>]) -> Vec<Vec<i64>> {
    gens.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect()
}
