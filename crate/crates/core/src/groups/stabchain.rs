//! Deterministic Schreier-Sims stabilizer chain. No random sifting: base
//! points are the smallest moved points, orbits are explored in point order,
//! and Schreier generators are processed in generation order, so the chain
//! (and everything derived from it) is reproducible.

use super::perm::Perm;

pub struct StabChain {
    levels: Vec<Level>,
    degree: usize,
}

struct Level {
    base: u32,
    gens: Vec<Perm>,
    /// transversal[p] = Some(g) with base^g = p.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(Perm::identity(degree));
        Level { base, gens: Vec::new(), transversal, orbit: vec![base] }
    }

    fn recompute_orbit(&mut self) {
        let degree = self.transversal.len();
        let mut transversal: Vec<Option<Perm>> = vec![None; degree];
        transversal[self.base as usize] = Some(Perm::identity(degree));
        let mut orbit = vec![self.base];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            i += 1;
            let rep = transversal[p as usize].clone().unwrap();
            for g in &self.gens {
                let q = g.apply(p);
                if transversal[q as usize].is_none() {
                    transversal[q as usize] = Some(rep.mul(g));
                    orbit.push(q);
                }
            }
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain { levels: Vec::new(), degree };
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.sift(p).is_identity()
    }

    /// Reduces `p` through the chain; identity result means membership.
    fn sift(&self, p: &Perm) -> Perm {
        let mut cur = p.clone();
        for level in &self.levels {
            let img = cur.apply(level.base);
            match &level.transversal[img as usize] {
                None => return cur,
                Some(rep) => cur = cur.mul(&rep.inv()),
            }
        }
        cur
    }

    fn extend(&mut self, p: &Perm) {
        self.extend_at(0, p);
    }

    /// True when `p` sifts to the identity through levels `depth..`.
    fn member_from(&self, depth: usize, p: &Perm) -> bool {
        let mut cur = p.clone();
        for level in &self.levels[depth..] {
            if cur.is_identity() {
                return true;
            }
            let img = cur.apply(level.base);
            match &level.transversal[img as usize] {
                None => return false,
                Some(rep) => cur = cur.mul(&rep.inv()),
            }
        }
        cur.is_identity()
    }

    /// Adds an element known to fix the bases above `depth` as a generator of
    /// level `depth`, then re-verifies that level's Schreier generators
    /// (pushing failures deeper). Keeps the invariant that level k+1's
    /// generators lie in the stabilizer generated at level k.
    fn extend_at(&mut self, depth: usize, p: &Perm) {
        if p.is_identity() || self.member_from(depth, p) {
            return;
        }
        if depth == self.levels.len() {
            let base = (0..self.degree as u32)
                .find(|&x| p.apply(x) != x)
                .expect("non-identity perm moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        self.levels[depth].gens.push(p.clone());
        self.levels[depth].recompute_orbit();
        let orbit = self.levels[depth].orbit.clone();
        for q in orbit {
            let rep = self.levels[depth].transversal[q as usize].clone().unwrap();
            for gi in 0..self.levels[depth].gens.len() {
                let g = self.levels[depth].gens[gi].clone();
                let to = g.apply(q);
                let rep_to = self.levels[depth].transversal[to as usize].clone().unwrap();
                let schreier = rep.mul(&g).mul(&rep_to.inv());
                if !schreier.is_identity() {
                    self.extend_at(depth + 1, &schreier);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_order() {
        let gens =
            vec![Perm::parse_cycles(5, "(1,2)").unwrap(), Perm::parse_cycles(5, "(1,2,3,4,5)").unwrap()];
        let chain = StabChain::new(5, &gens);
        assert_eq!(chain.order(), 120);
        assert!(chain.contains(&Perm::parse_cycles(5, "(1,3)(2,4)").unwrap()));
    }

    #[test]
    fn alternating_membership() {
        let gens = vec![
            Perm::parse_cycles(5, "(1,2,3)").unwrap(),
            Perm::parse_cycles(5, "(3,4,5)").unwrap(),
        ];
        let chain = StabChain::new(5, &gens);
        assert_eq!(chain.order(), 60);
        assert!(!chain.contains(&Perm::parse_cycles(5, "(1,2)").unwrap()));
        assert!(chain.contains(&Perm::parse_cycles(5, "(1,2)(3,4)").unwrap()));
    }
}
