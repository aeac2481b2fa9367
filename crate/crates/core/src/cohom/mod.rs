//! Group cohomology of G-lattices: Cayley presentations, H^1 by two exact
//! routes, Tate cohomology in degrees -1 and 0, flabby/coflabby predicates,
//! flabby resolutions, and the degree-3 dimension shift.

mod flabby;
mod h1;
mod shift;
mod tate;

pub use flabby::{flabby_resolution, is_coflabby, is_flabby, FlabbyResolution, ResolutionStrategy};
pub use h1::{evaluate_cocycle, h1, h1_presentation, h1_torsion, H1Cocycles};
pub use shift::h3_shift_lattice;
pub use tate::{tate_h0, tate_h_minus1};

use crate::groups::FiniteGroup;

/// A finite presentation read off the Cayley graph: one relator per non-tree
/// edge of the BFS spanning tree, hence `|G| (d - 1) + 1` relators on `d`
/// generators. The normal closure of the relators is the full kernel of the
/// free group onto `G`.
pub struct Presentation {
    num_gens: usize,
    relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    /// Relators as words of signed 1-based generator indices.
    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }
}

pub fn cayley_presentation(g: &FiniteGroup) -> Presentation {
    let d = g.gens().len();
    let n = g.elements().len();
    let mut relators = Vec::new();
    for e in 0..n as u32 {
        let we = g.word_of(e);
        for gi in 0..d {
            let gid = g.index_of(&g.gens()[gi]).unwrap();
            let t = g.mul_ids(e, gid);
            let wt = g.word_of(t);
            // Skip spanning-tree edges.
            if wt.len() == we.len() + 1 && wt[..we.len()] == we[..] && wt[we.len()] == gi as u32 {
                continue;
            }
            let mut rel: Vec<i32> = we.iter().map(|&x| x as i32 + 1).collect();
            rel.push(gi as i32 + 1);
            for &x in wt.iter().rev() {
                rel.push(-(x as i32 + 1));
            }
            relators.push(rel);
        }
    }
    Presentation { num_gens: d, relators }
}

#[cfg(test)]
mod tests;
