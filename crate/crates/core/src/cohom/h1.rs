//! First cohomology of a G-lattice, by two independent exact routes.
//!
//! The presentation route solves for crossed homomorphisms on the designated
//! generators: `c(gh) = c(g) A_h + c(h)`, one block of equations per Cayley
//! relator, reduced in chunks so memory stays quadratic in the unknown count.
//! It also returns explicit cocycles, which the degree-3 restriction maps
//! need.
//!
//! The torsion route uses the exact sequence of `0 -> M -> M -> M/p^a -> 0`:
//! since `|G|` kills `H^1`, the p-part is `(M/p^a M)^G / image(M^G)` with
//! `p^a` the p-part of `|G|` -- fixed points only, no relator systems. This
//! is what makes rank-several-hundred lattices affordable.

use super::cayley_presentation;
use crate::abexact::modular::{left_kernel_modpk, quotient_modpk, ModMat};
use crate::abexact::{cokernel_structure, kernel_basis, CokernelStructure, FinAb, HnfSolver, IntMatrix};
use crate::lattice::GLattice;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Route dispatch: explicit cocycles below this unknown count, fixed-point
/// torsion arithmetic above it.
const PRESENTATION_UNKNOWN_LIMIT: usize = 400;
const PRESENTATION_ORDER_LIMIT: u64 = 200;

pub fn h1(m: &GLattice) -> FinAb {
    let d = m.group().gens().len();
    let n = m.rank();
    if d == 0 || n == 0 {
        return FinAb::trivial();
    }
    if d * n <= PRESENTATION_UNKNOWN_LIMIT && m.group().order() <= PRESENTATION_ORDER_LIMIT {
        h1_presentation(m).finab
    } else {
        h1_torsion(m)
    }
}

/// H^1 via p-primary fixed-point quotients.
pub fn h1_torsion(m: &GLattice) -> FinAb {
    let n = m.rank();
    let d = m.group().gens().len();
    if n == 0 || d == 0 {
        return FinAb::trivial();
    }
    let order = m.group().order();
    let fixed = m.fixed_sublattice();
    let mut parts: Vec<Vec<u64>> = Vec::new();
    let mut rest = order;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            let mut a = 0u32;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            let pk = p.pow(a);
            // Stacked (A_i - I) mod p^a; fixed points mod p^a are its left kernel.
            let mut b = ModMat::zeros(n, n * d, pk);
            for (i, act) in (0..d).map(|i| (i, m.action(i))) {
                for r in 0..n {
                    for c in 0..n {
                        let mut v = act.at(r, c);
                        if r == c {
                            v -= 1;
                        }
                        let v = v % BigInt::from(pk);
                        let v = if v.is_negative() { v + BigInt::from(pk) } else { v };
                        b.set(r, i * n + c, v.to_u64().unwrap());
                    }
                }
            }
            let kernel = left_kernel_modpk(&b, p, a);
            let top: Vec<Vec<u64>> = kernel.into_iter().map(|g| g.vec).collect();
            let bottom: Vec<Vec<u64>> = (0..fixed.rows())
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            let v = fixed.at(r, c) % BigInt::from(pk);
                            let v = if v.is_negative() { v + BigInt::from(pk) } else { v };
                            v.to_u64().unwrap()
                        })
                        .collect()
                })
                .collect();
            let invs = quotient_modpk(&top, &bottom, n, p, a);
            if !invs.is_empty() {
                parts.push(invs);
            }
        }
        p += 1;
    }
    FinAb::from_prime_power_parts(&parts)
}

/// H^1 with explicit cocycle representatives.
pub struct H1Cocycles {
    pub finab: FinAb,
    /// Saturated basis of the crossed-homomorphism lattice; each row is the
    /// concatenation of the generator values `c(s_1) | ... | c(s_d)`.
    pub z1: IntMatrix,
    z1_solver: HnfSolver,
    coker: CokernelStructure,
}

impl H1Cocycles {
    /// Coordinates of a cocycle's class in the invariant-factor basis.
    pub fn class_coords(&self, cocycle: &[BigInt]) -> Vec<u64> {
        let mut b = IntMatrix::zeros(1, cocycle.len());
        for (j, x) in cocycle.iter().enumerate() {
            b.set(0, j, x.clone());
        }
        let y = self.z1_solver.solve(&b).expect("vector is a cocycle");
        let rank = self.finab.rank();
        let mut acc = vec![BigInt::zero(); rank];
        for i in 0..y.cols() {
            let c = y.at(0, i);
            if c.is_zero() {
                continue;
            }
            for (k, w) in self.coker.witness[i].iter().take(rank).enumerate() {
                acc[k] += w * &c;
            }
        }
        acc.iter()
            .zip(self.finab.factors())
            .map(|(x, d)| {
                let m = BigInt::from(*d);
                let mut r = x % &m;
                if r.is_negative() {
                    r += &m;
                }
                r.to_u64().unwrap()
            })
            .collect()
    }

    /// Cocycle representatives of the adapted generators of H^1.
    pub fn class_generator_cocycles(&self) -> Vec<Vec<BigInt>> {
        let cols = self.z1.cols();
        self.coker
            .adapted_lifts
            .iter()
            .map(|lift| {
                let mut acc = vec![BigInt::zero(); cols];
                for (i, c) in lift.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, slot) in acc.iter_mut().enumerate() {
                        *slot += self.z1.at(i, j) * c;
                    }
                }
                acc
            })
            .collect()
    }
}

pub fn h1_presentation(m: &GLattice) -> H1Cocycles {
    let g = m.group().clone();
    let d = g.gens().len();
    let n = m.rank();
    assert!(d > 0 && n > 0, "presentation route needs generators and positive rank");
    let pres = cayley_presentation(&g);
    let unknowns = d * n;
    let ident = IntMatrix::identity(n);

    // Accumulate relator equations, compressing by HNF in chunks.
    let mut echelon = IntMatrix::zeros(0, unknowns);
    let mut pending = IntMatrix::zeros(0, unknowns);
    for rel in pres.relators() {
        // Walk the word from the right, keeping S = action(suffix).
        let mut blocks = vec![IntMatrix::zeros(n, n); d];
        let mut suffix = ident.clone();
        for &s in rel.iter().rev() {
            let gi = s.unsigned_abs() as usize - 1;
            if s > 0 {
                blocks[gi] = add(&blocks[gi], &suffix);
                suffix = m.action(gi).mul(&suffix);
            } else {
                let term = m.action_inv(gi).mul(&suffix);
                blocks[gi] = sub(&blocks[gi], &term);
                suffix = term;
            }
        }
        // The n equation rows are the columns of vstack(blocks).
        let mut rows = IntMatrix::zeros(n, unknowns);
        for (i, b) in blocks.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    rows.set(c, i * n + r, b.at(r, c));
                }
            }
        }
        pending = pending.vstack(&rows);
        if pending.rows() >= 4 * unknowns.max(64) {
            echelon = compress(&echelon.vstack(&pending));
            pending = IntMatrix::zeros(0, unknowns);
        }
    }
    echelon = compress(&echelon.vstack(&pending));

    let z1 = kernel_basis(&echelon.transpose());
    // Principal crossed homomorphisms c_v(s_i) = v (A_i - 1).
    let mut b1 = IntMatrix::zeros(n, unknowns);
    for (i, a) in (0..d).map(|i| (i, m.action(i))) {
        for r in 0..n {
            for c in 0..n {
                let mut v = a.at(r, c);
                if r == c {
                    v -= 1;
                }
                b1.set(r, i * n + c, v);
            }
        }
    }
    let z1_solver = HnfSolver::new(&z1);
    let x = z1_solver.solve(&b1).expect("principal maps are cocycles");
    let coker = cokernel_structure(&x);
    assert_eq!(coker.free_rank, 0, "H^1 of a lattice is finite");
    H1Cocycles { finab: coker.finab.clone(), z1, z1_solver, coker }
}

fn compress(a: &IntMatrix) -> IntMatrix {
    let (h, _) = crate::abexact::hnf(a);
    let mut rows = Vec::new();
    for i in 0..h.rows() {
        if (0..h.cols()).any(|j| !h.at(i, j).is_zero()) {
            rows.push(i);
        }
    }
    let mut out = IntMatrix::zeros(rows.len(), a.cols());
    for (r, &i) in rows.iter().enumerate() {
        for j in 0..a.cols() {
            out.set(r, j, h.at(i, j));
        }
    }
    out
}

fn add(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.at(i, j) + b.at(i, j));
        }
    }
    out
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.at(i, j) - b.at(i, j));
        }
    }
    out
}

/// Evaluates a cocycle (given by generator values) on an arbitrary word in the
/// designated generators: `c(w t) = c(w) A_t + c(t)`.
pub fn evaluate_cocycle(m: &GLattice, cocycle: &[BigInt], word: &[u32]) -> Vec<BigInt> {
    let n = m.rank();
    let mut acc = vec![BigInt::zero(); n];
    for &gi in word {
        // acc = acc * A_gi + c(s_gi)
        let mut next = vec![BigInt::zero(); n];
        let a = m.action(gi as usize);
        for r in 0..n {
            if acc[r].is_zero() {
                continue;
            }
            for c in 0..n {
                let v = a.at(r, c);
                if !v.is_zero() {
                    next[c] += &acc[r] * v;
                }
            }
        }
        for c in 0..n {
            next[c] += &cocycle[gi as usize * n + c];
        }
        acc = next;
    }
    acc
}
