//! G-lattices: finitely generated free Z-modules with a group acting by
//! unimodular integer matrices.
//!
//! Convention: everything is a right module with row vectors, `m -> m * A_g`,
//! matching the left-to-right composition of the group engine; the assignment
//! `g -> A_g` is then a homomorphism, `A_g A_h = A_{gh}`. Cosets are right
//! cosets `Hx` acted on by right multiplication.

use crate::abexact::{hnf, kernel_basis, solve_left, IntMatrix};
use crate::groups::{El, FiniteGroup};
use crate::{Error, Result};
use num_traits::Zero;

#[derive(Clone)]
pub struct GLattice {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntMatrix>,
    action_inv: Vec<IntMatrix>,
}

impl GLattice {
    pub fn new(group: FiniteGroup, rank: usize, action: Vec<IntMatrix>, action_inv: Vec<IntMatrix>) -> Self {
        assert_eq!(action.len(), group.gens().len());
        assert_eq!(action_inv.len(), action.len());
        for (a, ai) in action.iter().zip(&action_inv) {
            assert_eq!(a.rows(), rank);
            assert_eq!(a.cols(), rank);
            assert_eq!(a.mul(ai), IntMatrix::identity(rank), "action matrices must be inverse pairs");
        }
        GLattice { group, rank, action, action_inv }
    }

    pub fn trivial(group: FiniteGroup, rank: usize) -> Self {
        let d = group.gens().len();
        let action = vec![IntMatrix::identity(rank); d];
        GLattice { group, rank, action: action.clone(), action_inv: action }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, gen: usize) -> &IntMatrix {
        &self.action[gen]
    }

    pub fn action_inv(&self, gen: usize) -> &IntMatrix {
        &self.action_inv[gen]
    }

    /// Action matrix of an arbitrary group element (product along its
    /// generator word).
    pub fn matrix_of(&self, el: &El) -> IntMatrix {
        let id = self.group.index_of(el).expect("element of the acting group");
        let mut acc = IntMatrix::identity(self.rank);
        for g in self.group.word_of(id) {
            acc = acc.mul(&self.action[g as usize]);
        }
        acc
    }

    pub fn matrix_of_inv(&self, el: &El) -> IntMatrix {
        let id = self.group.index_of(el).expect("element of the acting group");
        let mut acc = IntMatrix::identity(self.rank);
        for g in self.group.word_of(id).into_iter().rev() {
            acc = acc.mul(&self.action_inv[g as usize]);
        }
        acc
    }

    /// Checks that every Cayley relator acts as the identity.
    pub fn verify_action(&self) -> bool {
        let pres = crate::cohom::cayley_presentation(&self.group);
        for rel in pres.relators() {
            let mut acc = IntMatrix::identity(self.rank);
            for &s in rel {
                let m = if s > 0 {
                    &self.action[(s - 1) as usize]
                } else {
                    &self.action_inv[(-s - 1) as usize]
                };
                acc = acc.mul(m);
            }
            if acc != IntMatrix::identity(self.rank) {
                return false;
            }
        }
        true
    }

    /// Dual lattice: `g` acts by the transpose of the inverse action.
    pub fn dual(&self) -> GLattice {
        let action: Vec<IntMatrix> = self.action_inv.iter().map(|a| a.transpose()).collect();
        let action_inv: Vec<IntMatrix> = self.action.iter().map(|a| a.transpose()).collect();
        GLattice { group: self.group.clone(), rank: self.rank, action, action_inv }
    }

    pub fn direct_sum(&self, other: &GLattice) -> GLattice {
        assert!(self.group.same_universe(&other.group));
        let rank = self.rank + other.rank;
        let block = |a: &IntMatrix, b: &IntMatrix| {
            let mut m = IntMatrix::zeros(rank, rank);
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m.set(i, j, a.at(i, j));
                }
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(self.rank + i, self.rank + j, b.at(i, j));
                }
            }
            m
        };
        let action: Vec<IntMatrix> =
            self.action.iter().zip(&other.action).map(|(a, b)| block(a, b)).collect();
        let action_inv: Vec<IntMatrix> =
            self.action_inv.iter().zip(&other.action_inv).map(|(a, b)| block(a, b)).collect();
        GLattice { group: self.group.clone(), rank, action, action_inv }
    }

    /// Restriction to a subgroup, acting through its canonical generators.
    pub fn restrict(&self, u: &FiniteGroup) -> Result<GLattice> {
        crate::groups::subgroups::assert_subgroup(&self.group, u)?;
        let gens = u.canonical_gens();
        let sub = self.group.subgroup(gens.clone());
        let action: Vec<IntMatrix> = gens.iter().map(|e| self.matrix_of(e)).collect();
        let action_inv: Vec<IntMatrix> = gens.iter().map(|e| self.matrix_of_inv(e)).collect();
        Ok(GLattice { group: sub, rank: self.rank, action, action_inv })
    }

    /// Saturated basis of the fixed sublattice `M^G` (rows).
    pub fn fixed_sublattice(&self) -> IntMatrix {
        if self.action.is_empty() {
            return IntMatrix::identity(self.rank);
        }
        let mut stacked: Option<IntMatrix> = None;
        for a in &self.action {
            let diff = a.sub(&IntMatrix::identity(self.rank));
            stacked = Some(match stacked {
                None => diff,
                Some(s) => s.hstack(&diff),
            });
        }
        kernel_basis(&stacked.unwrap())
    }

    /// The norm element `N = sum_{g in G} A_g`. Quadratic memory in the rank;
    /// guarded for desk scale.
    pub fn norm_matrix(&self) -> Result<IntMatrix> {
        let order = self.group.order() as usize;
        if order * self.rank * self.rank > 200_000_000 {
            return Err(Error::CapExceeded {
                what: "norm matrix work",
                actual: order * self.rank * self.rank,
                limit: 200_000_000,
            });
        }
        let els = self.group.elements();
        // matrices[i] for BFS element i, built from the BFS predecessor.
        let mut mats: Vec<IntMatrix> = Vec::with_capacity(els.len());
        mats.push(IntMatrix::identity(self.rank));
        let mut acc = IntMatrix::identity(self.rank);
        for id in 1..els.len() as u32 {
            let word = self.group.word_of(id);
            let (last, prefix) = word.split_last().unwrap();
            // BFS guarantees the prefix is an earlier element's word.
            let mut prev_el = self.group.id();
            for &g in prefix {
                prev_el = self.group.mul(&prev_el, &self.group.gens()[g as usize]);
            }
            let prev_id = self.group.index_of(&prev_el).unwrap();
            let m = mats[prev_id as usize].mul(&self.action[*last as usize]);
            acc = acc.add(&m);
            mats.push(m);
        }
        Ok(acc)
    }

    /// Row-space basis of `N_G(M)` inside `M` (image of the norm).
    pub fn norm_image(&self) -> Result<IntMatrix> {
        let n = self.norm_matrix()?;
        let (h, _) = hnf(&n);
        let mut rows = Vec::new();
        for i in 0..h.rows() {
            if (0..h.cols()).any(|j| !h.at(i, j).is_zero()) {
                rows.push(i);
            }
        }
        let mut out = IntMatrix::zeros(rows.len(), self.rank);
        for (r, &i) in rows.iter().enumerate() {
            for j in 0..self.rank {
                out.set(r, j, h.at(i, j));
            }
        }
        Ok(out)
    }

    /// Span of `{ m (A_g - 1) }` over the generators (the augmentation-ideal
    /// image), as stacked rows.
    pub fn augmentation_image_rows(&self) -> IntMatrix {
        let mut rows = IntMatrix::zeros(0, self.rank);
        for a in &self.action {
            rows = rows.vstack(&a.sub(&IntMatrix::identity(self.rank)));
        }
        rows
    }
}

impl IntMatrix {
    fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows() == other.rows() && self.cols() == other.cols());
        let mut out = IntMatrix::zeros(self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, self.at(i, j) + other.at(i, j));
            }
        }
        out
    }
}

/// Right-coset table of `H` in `G`: coset index per group element, plus a
/// representative element id per coset. Coset 0 is `H` itself.
pub struct CosetTable {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

pub fn coset_table(g: &FiniteGroup, h: &FiniteGroup) -> Result<CosetTable> {
    crate::groups::subgroups::assert_subgroup(g, h)?;
    let h_ids = crate::groups::subgroups::member_ids(g, h);
    let n = g.elements().len();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    // BFS over cosets from H, applying generators on the right.
    let mut queue = vec![0u32];
    let c0 = 0u32;
    reps.push(0);
    for &m in &h_ids {
        coset_of[m as usize] = c0;
    }
    let mut head = 0;
    while head < queue.len() {
        let rep = queue[head];
        head += 1;
        for gi in 0..g.gens().len() {
            let gid = g.index_of(&g.gens()[gi]).unwrap();
            let t = g.mul_ids(rep, gid);
            if coset_of[t as usize] == u32::MAX {
                let c = reps.len() as u32;
                reps.push(t);
                queue.push(t);
                for &m in &h_ids {
                    coset_of[g.mul_ids(m, t) as usize] = c;
                }
            }
        }
    }
    assert!(coset_of.iter().all(|&c| c != u32::MAX), "cosets cover the group");
    Ok(CosetTable { coset_of, reps })
}

/// Permutation lattice `Z[G/H]` on the right cosets of `H`.
pub fn coset_lattice(g: &FiniteGroup, h: &FiniteGroup) -> Result<(GLattice, CosetTable)> {
    let table = coset_table(g, h)?;
    let n = table.reps.len();
    let mut action = Vec::new();
    let mut action_inv = Vec::new();
    for gi in 0..g.gens().len() {
        let gid = g.index_of(&g.gens()[gi]).unwrap();
        let mut a = IntMatrix::zeros(n, n);
        let mut ai = IntMatrix::zeros(n, n);
        for (j, &rep) in table.reps.iter().enumerate() {
            let img = table.coset_of[g.mul_ids(rep, gid) as usize] as usize;
            a.set_i64(j, img, 1);
            ai.set_i64(img, j, 1);
        }
        action.push(a);
        action_inv.push(ai);
    }
    Ok((GLattice::new(g.clone(), n, action, action_inv), table))
}

/// The coset permutation (as images of coset indices) of an arbitrary element.
pub fn coset_perm_of(g: &FiniteGroup, table: &CosetTable, el: &El) -> Vec<u32> {
    let eid = g.index_of(el).expect("element of g");
    table
        .reps
        .iter()
        .map(|&rep| table.coset_of[g.mul_ids(rep, eid) as usize])
        .collect()
}

/// Chevalley module `J_{G/H}`: the dual of the augmentation kernel of
/// `Z[G/H]`. Rank `[G:H] - 1`.
pub fn chevalley_module(g: &FiniteGroup, h: &FiniteGroup) -> Result<GLattice> {
    let (_, table) = coset_lattice(g, h)?;
    let n = table.reps.len();
    if n == 1 {
        return Ok(GLattice::trivial(g.clone(), 0));
    }
    // Augmentation kernel basis b_i = e_i - e_0 (i = 1..n-1); the action is
    // b_i -> b_{s(i)} - b_{s(0)} with b_0 = 0.
    let i_action = |perm: &[u32]| {
        let mut m = IntMatrix::zeros(n - 1, n - 1);
        for i in 1..n {
            let si = perm[i] as usize;
            let s0 = perm[0] as usize;
            if si != 0 {
                m.set_i64(i - 1, si - 1, 1);
            }
            if s0 != 0 {
                let cur = m.at_i64(i - 1, s0 - 1).unwrap();
                m.set_i64(i - 1, s0 - 1, cur - 1);
            }
        }
        m
    };
    let mut action = Vec::new();
    let mut action_inv = Vec::new();
    for gi in 0..g.gens().len() {
        let el = g.gens()[gi].clone();
        let perm = coset_perm_of(g, &table, &el);
        let perm_inv = coset_perm_of(g, &table, &g.inv(&el));
        // J = dual of I: A^J_g = (A^I_{g^-1})^T.
        action.push(i_action(&perm_inv).transpose());
        action_inv.push(i_action(&perm).transpose());
    }
    Ok(GLattice::new(g.clone(), n - 1, action, action_inv))
}

/// Coordinates of lattice rows in a saturated basis; `None` when a row is not
/// in the span.
pub fn coords_in_basis(basis: &IntMatrix, rows: &IntMatrix) -> Option<IntMatrix> {
    solve_left(basis, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn coset_lattice_shapes() {
        let g = corpus::t16_178();
        let h = g.stabilizer_of_point(0);
        assert_eq!(h.order(), 5);
        let (lat, _) = coset_lattice(&g, &h).unwrap();
        assert_eq!(lat.rank(), 16);
        assert!(lat.verify_action());

        // H = G: rank 1 trivial action; H = 1: regular lattice.
        let (lat, _) = coset_lattice(&g, &g).unwrap();
        assert_eq!(lat.rank(), 1);
        let s4 = corpus::symmetric(4);
        let (lat, _) = coset_lattice(&s4, &s4.subgroup(vec![])).unwrap();
        assert_eq!(lat.rank(), 24);
    }

    #[test]
    fn chevalley_rank_and_sign_case() {
        let c2 = corpus::cyclic(2);
        let h = c2.subgroup(vec![]);
        let j = chevalley_module(&c2, &h).unwrap();
        assert_eq!(j.rank(), 1);
        assert_eq!(j.action(0).at_i64(0, 0), Some(-1));

        let g = corpus::t16_178();
        let j = chevalley_module(&g, &g.stabilizer_of_point(0)).unwrap();
        assert_eq!(j.rank(), 15);
        assert!(j.verify_action());
    }

    #[test]
    fn dual_is_involutive() {
        let g = corpus::symmetric(4);
        let h = g.stabilizer_of_point(0);
        let j = chevalley_module(&g, &h).unwrap();
        let dd = j.dual().dual();
        for i in 0..g.gens().len() {
            assert_eq!(dd.action(i), j.action(i));
        }
        // Permutation lattices are self-dual.
        let (p, _) = coset_lattice(&g, &h).unwrap();
        let pd = p.dual();
        for i in 0..g.gens().len() {
            assert_eq!(pd.action(i), p.action(i));
        }
    }

    #[test]
    fn fixed_and_norm() {
        // Z[G] for S3: fixed rank 1 (sum of basis), norm image = that line.
        let g = corpus::symmetric(3);
        let (reg, _) = coset_lattice(&g, &g.subgroup(vec![])).unwrap();
        let fixed = reg.fixed_sublattice();
        assert_eq!(fixed.rows(), 1);
        let norm = reg.norm_image().unwrap();
        assert_eq!(norm.rows(), 1);

        // Chevalley module of a transitive group has no invariants.
        let j = chevalley_module(&g, &g.stabilizer_of_point(0)).unwrap();
        assert_eq!(j.fixed_sublattice().rows(), 0);

        // Restriction to the trivial subgroup fixes everything.
        let triv = g.subgroup(vec![]);
        let r = j.restrict(&triv).unwrap();
        assert_eq!(r.fixed_sublattice().rows(), j.rank());
    }

    #[test]
    fn restriction_matches_words() {
        let g = corpus::symmetric(4);
        let h = g.stabilizer_of_point(0);
        let j = chevalley_module(&g, &h).unwrap();
        let syl = g.sylow_subgroup(2).unwrap();
        let r = j.restrict(&syl).unwrap();
        assert_eq!(r.rank(), j.rank());
        assert!(r.verify_action());
        // Restricting to the full group reproduces the designated action.
        let rg = j.restrict(&g).unwrap();
        assert!(rg.verify_action());
    }
}
