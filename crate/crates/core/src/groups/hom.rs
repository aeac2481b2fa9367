//! Group homomorphisms with full element maps, and the brute-force
//! automorphism search.

use super::subgroups::member_ids;
use super::{El, FiniteGroup};
use crate::{Error, Result};
use std::collections::HashSet;

/// A homomorphism with its value tabulated on every source element.
#[derive(Clone)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    map: Vec<El>,
}

impl GroupHom {
    /// Builds from a complete element map (indexed by source element id) and
    /// verifies multiplicativity against the source generators.
    pub fn from_full_map(source: FiniteGroup, target: FiniteGroup, map: Vec<El>) -> Result<Self> {
        assert_eq!(map.len(), source.elements().len());
        let hom = GroupHom { source, target, map };
        if !hom.verify() {
            return Err(Error::Invalid("map is not a homomorphism".into()));
        }
        Ok(hom)
    }

    /// Extends generator images along the BFS tree of the source, then
    /// verifies multiplicativity. Fails when the images satisfy no compatible
    /// extension.
    pub fn from_gen_images(source: FiniteGroup, target: FiniteGroup, images: Vec<El>) -> Result<Self> {
        assert_eq!(images.len(), source.gens().len());
        let n = source.elements().len();
        let mut map = vec![target.id(); n];
        for id in 1..n as u32 {
            let word = source.word_of(id);
            let mut acc = target.id();
            for g in word {
                acc = target.mul(&acc, &images[g as usize]);
            }
            map[id as usize] = acc;
        }
        Self::from_full_map(source, target, map)
    }

    fn verify(&self) -> bool {
        let n = self.source.elements().len();
        for a in 0..n as u32 {
            for g in self.source.gens() {
                let gid = self.source.index_of(g).unwrap();
                let prod = self.source.mul_ids(a, gid);
                let lhs = &self.map[prod as usize];
                let rhs = self
                    .target
                    .mul(&self.map[a as usize], &self.map[gid as usize]);
                if *lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, el: &El) -> El {
        let id = self.source.index_of(el).expect("element of the source group");
        self.map[id as usize].clone()
    }

    pub fn apply_id(&self, id: u32) -> &El {
        &self.map[id as usize]
    }

    pub fn kernel(&self) -> FiniteGroup {
        let tid = self.target.id();
        let els: Vec<El> = self
            .source
            .elements()
            .iter()
            .zip(&self.map)
            .filter(|(_, img)| **img == tid)
            .map(|(e, _)| e.clone())
            .filter(|e| *e != self.source.id())
            .collect();
        self.source.subgroup(els)
    }

    pub fn image(&self) -> FiniteGroup {
        let imgs: Vec<El> = self.source.gens().iter().map(|g| self.apply(g)).collect();
        self.target.subgroup(imgs)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &FiniteGroup) -> FiniteGroup {
        let members: HashSet<u32> = member_ids(&self.target, sub).into_iter().collect();
        let els: Vec<El> = self
            .source
            .elements()
            .iter()
            .zip(&self.map)
            .filter(|(_, img)| {
                members.contains(&self.target.index_of(img).expect("image in target"))
            })
            .map(|(e, _)| e.clone())
            .filter(|e| *e != self.source.id())
            .collect();
        self.source.subgroup(els)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_surjective() && self.source.order() == self.target.order()
    }
}

/// All automorphisms, by brute-force assignment of images for a minimal
/// generating set, filtered by element order and conjugacy class size and
/// verified on the Cayley relators.
pub fn automorphisms(g: &FiniteGroup, max_order: usize) -> Result<Vec<GroupHom>> {
    let order = g.order() as usize;
    if order > max_order {
        return Err(Error::CapExceeded { what: "automorphism search order", actual: order, limit: max_order });
    }
    let mgens = g.minimal_generating_els();
    if mgens.is_empty() {
        let trivial = GroupHom::from_full_map(g.clone(), g.clone(), vec![g.id()])?;
        return Ok(vec![trivial]);
    }
    if mgens.len() > 4 {
        return Err(Error::CapExceeded {
            what: "designated generators for automorphism search",
            actual: mgens.len(),
            limit: 4,
        });
    }
    let gp = g.subgroup(mgens.clone());
    assert_eq!(gp.order(), g.order());
    let pres = crate::cohom::cayley_presentation(&gp);

    // Invariants of each element: (order, conjugacy class size).
    let classes = gp.conjugacy_classes();
    let mut class_size = vec![0usize; gp.elements().len()];
    for c in &classes {
        for &i in c {
            class_size[i as usize] = c.len();
        }
    }
    let keys: Vec<(u64, usize)> = (0..gp.elements().len() as u32)
        .map(|i| (gp.el_order(gp.el(i)), class_size[i as usize]))
        .collect();

    let slots: Vec<Vec<u32>> = mgens
        .iter()
        .map(|m| {
            let mid = gp.index_of(m).unwrap();
            (0..gp.elements().len() as u32).filter(|&i| keys[i as usize] == keys[mid as usize]).collect()
        })
        .collect();
    let space: usize = slots.iter().map(|s| s.len()).product();
    if space > 4_000_000 {
        return Err(Error::CapExceeded {
            what: "automorphism candidate space",
            actual: space,
            limit: 4_000_000,
        });
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; slots.len()];
    'outer: loop {
        let imgs: Vec<u32> = choice.iter().zip(&slots).map(|(&c, s)| s[c]).collect();
        if relators_hold(&gp, &pres, &imgs) {
            let img_els: Vec<El> = imgs.iter().map(|&i| gp.el(i).clone()).collect();
            if gp.subgroup(img_els.clone()).order() == gp.order() {
                if let Ok(hom) = GroupHom::from_gen_images(gp.clone(), gp.clone(), img_els) {
                    out.push(hom);
                }
            }
        }
        // Next tuple.
        let mut i = 0;
        loop {
            if i == choice.len() {
                break 'outer;
            }
            choice[i] += 1;
            if choice[i] < slots[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    Ok(out)
}

fn relators_hold(g: &FiniteGroup, pres: &crate::cohom::Presentation, imgs: &[u32]) -> bool {
    for rel in pres.relators() {
        let mut acc = g.id();
        for &s in rel {
            let gi = s.unsigned_abs() as usize - 1;
            let el = g.el(imgs[gi]).clone();
            let el = if s > 0 { el } else { g.inv(&el) };
            acc = g.mul(&acc, &el);
        }
        if acc != g.id() {
            return false;
        }
    }
    true
}

/// Is the given set of subgroup classes permuted into itself by every
/// automorphism? `subset` indexes into `list.classes`.
pub fn is_invariant_under_aut(
    g: &FiniteGroup,
    auts: &[GroupHom],
    list: &super::SubgroupClassList,
    subset: &[usize],
) -> bool {
    let subset_set: HashSet<usize> = subset.iter().copied().collect();
    for aut in auts {
        for &i in subset {
            let rep = &list.classes[i].rep;
            let img_gens: Vec<El> = rep.gens().iter().map(|e| aut.apply(e)).collect();
            let img = g.subgroup(img_gens);
            match list.class_of(g, &img) {
                Some(j) if subset_set.contains(&j) => {}
                _ => return false,
            }
        }
    }
    true
}
