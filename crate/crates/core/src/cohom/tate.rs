//! Tate cohomology in degrees -1 and 0, straight from the definitions:
//! `H^-1 = ker(N) / I_G M` and `H^0 = M^G / N(M)` with `N` the norm element.

use crate::abexact::{cokernel_structure, kernel_basis, FinAb, HnfSolver};
use crate::lattice::GLattice;
use crate::Result;

pub fn tate_h_minus1(m: &GLattice) -> Result<FinAb> {
    if m.rank() == 0 {
        return Ok(FinAb::trivial());
    }
    let norm = m.norm_matrix()?;
    let ker = kernel_basis(&norm);
    if ker.rows() == 0 {
        return Ok(FinAb::trivial());
    }
    let aug = m.augmentation_image_rows();
    let solver = HnfSolver::new(&ker);
    let x = solver.solve(&aug).expect("augmentation image lies in ker(N)");
    let coker = cokernel_structure(&x);
    assert_eq!(coker.free_rank, 0, "Tate H^-1 of a lattice is finite");
    Ok(coker.finab)
}

pub fn tate_h0(m: &GLattice) -> Result<FinAb> {
    if m.rank() == 0 {
        return Ok(FinAb::trivial());
    }
    let fixed = m.fixed_sublattice();
    if fixed.rows() == 0 {
        return Ok(FinAb::trivial());
    }
    let norm = m.norm_matrix()?;
    let solver = HnfSolver::new(&fixed);
    let x = solver.solve(&norm).expect("norm image lies in the fixed sublattice");
    let coker = cokernel_structure(&x);
    assert_eq!(coker.free_rank, 0, "Tate H^0 of a lattice is finite");
    Ok(coker.finab)
}
