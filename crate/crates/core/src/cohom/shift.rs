//! Degree-3 dimension shift: a single lattice `N` with
//! `H^1(U, N|_U) = H^3(U, Z)` for every subgroup `U`.
//!
//! `N` is the dual of the relation module `R` in
//! `0 -> R -> Z[G]^d -> I_G -> 0` (the map sends the i-th block basis vector
//! `e_x` to `(s_i - 1) x`). Both middle terms of
//! `0 -> J_G -> Z[G]^d -> N -> 0` and `0 -> Z -> Z[G] -> J_G -> 0` are free,
//! and free modules restrict to free modules, so the shift works for
//! subgroups as well; that is what the kernel-of-restriction computation
//! needs.

use crate::abexact::{kernel_basis, HnfSolver, IntMatrix};
use crate::groups::FiniteGroup;
use crate::lattice::GLattice;
use crate::{Caps, Error, Result};
use num_bigint::BigInt;

pub fn h3_shift_lattice(g: &FiniteGroup, caps: &Caps) -> Result<GLattice> {
    let d = g.gens().len();
    let order = g.elements().len();
    if d == 0 {
        return Ok(GLattice::trivial(g.clone(), 0));
    }
    let rank = order * (d - 1) + 1;
    if rank > caps.max_rank {
        return Err(Error::CapExceeded { what: "shift lattice rank", actual: rank, limit: caps.max_rank });
    }

    // Relation matrix B: row (i, x) is e_{s_i x} - e_x.
    let mut b = IntMatrix::zeros(d * order, order);
    for i in 0..d {
        let gid = g.index_of(&g.gens()[i]).unwrap();
        for x in 0..order as u32 {
            let sx = g.mul_ids(gid, x);
            let r = i * order + x as usize;
            b.set_i64(r, sx as usize, 1);
            let cur = b.at(r, x as usize) - 1;
            b.set(r, x as usize, cur);
        }
    }
    let k = kernel_basis(&b);
    assert_eq!(k.rows(), rank, "relation module rank");

    // Right-regular action permutes each block: position (i, x) -> (i, x s).
    let solver = HnfSolver::new(&k);
    let mut r_action = Vec::new();
    let mut r_action_inv = Vec::new();
    for gi in 0..d {
        let gid = g.index_of(&g.gens()[gi]).unwrap();
        let move_cols = |invert: bool| {
            let mut out = IntMatrix::zeros(k.rows(), k.cols());
            for x in 0..order as u32 {
                let xs = if invert {
                    g.mul_ids(x, g.inv_id(gid))
                } else {
                    g.mul_ids(x, gid)
                };
                for i in 0..d {
                    let from = i * order + x as usize;
                    let to = i * order + xs as usize;
                    for r in 0..k.rows() {
                        let v = k.at(r, from);
                        if v != BigInt::from(0) {
                            out.set(r, to, v);
                        }
                    }
                }
            }
            out
        };
        let a = solver.solve(&move_cols(false)).expect("relation module is G-stable");
        let ai = solver.solve(&move_cols(true)).expect("relation module is G-stable");
        r_action.push(a);
        r_action_inv.push(ai);
    }
    let relation_module = GLattice::new(g.clone(), rank, r_action, r_action_inv);
    Ok(relation_module.dual())
}
