//! Subgroup machinery on top of element enumeration: normalizers,
//! intersections, double cosets, quotients, and the classification of
//! subgroups up to conjugacy.
//!
//! Classification works by closure: starting from the trivial and cyclic
//! classes, each class representative `U` is extended by generators `x`
//! ranging over `U\G/U` double-coset representatives (since `<U, uxv> =
//! <U, x>`), and the result is reduced to a canonical conjugate. Every
//! subgroup of `G` is reachable this way, including non-solvable ones.

use super::{El, FiniteGroup, GroupHom, MulTable};
use crate::{Error, Result};
use std::collections::{HashSet, VecDeque};

/// Sorted ambient element ids of a subgroup. Panics if `u` is not contained
/// in `g` (use `is_subgroup_of` to check first).
pub fn member_ids(g: &FiniteGroup, u: &FiniteGroup) -> Vec<u32> {
    debug_assert!(g.same_universe(u));
    let mut ids: Vec<u32> = u
        .elements()
        .iter()
        .map(|e| g.index_of(e).expect("subgroup element lies in the ambient group"))
        .collect();
    ids.sort_unstable();
    ids
}

pub fn is_subgroup_of(g: &FiniteGroup, u: &FiniteGroup) -> bool {
    g.same_universe(u) && u.gens().iter().all(|e| g.contains_el(e))
}

pub fn subgroup_from_ids(g: &FiniteGroup, ids: &[u32]) -> FiniteGroup {
    let els: Vec<El> =
        ids.iter().filter(|&&i| i != 0).map(|&i| g.el(i).clone()).collect();
    g.subgroup(els)
}

pub fn conjugate_ids(g: &FiniteGroup, ids: &[u32], by: u32) -> Vec<u32> {
    let inv = g.inv_id(by);
    let mut out: Vec<u32> =
        ids.iter().map(|&u| g.mul_ids(g.mul_ids(inv, u), by)).collect();
    out.sort_unstable();
    out
}

/// Canonical conjugate of a subgroup (lexicographically least sorted id list
/// over all conjugates) plus the number of distinct conjugates.
pub fn canonical_conjugate(g: &FiniteGroup, ids: &[u32]) -> (Vec<u32>, usize) {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    let mut best = sorted.clone();
    let mut distinct: HashSet<Vec<u32>> = HashSet::new();
    for x in 0..g.elements().len() as u32 {
        let c = conjugate_ids(g, &sorted, x);
        if c < best {
            best = c.clone();
        }
        distinct.insert(c);
    }
    (best, distinct.len())
}

pub fn normalizer(g: &FiniteGroup, u: &FiniteGroup) -> FiniteGroup {
    let members: HashSet<u32> = member_ids(g, u).into_iter().collect();
    let gen_ids: Vec<u32> =
        u.gens().iter().map(|e| g.index_of(e).expect("subgroup element")).collect();
    let mut els = Vec::new();
    for x in 0..g.elements().len() as u32 {
        let xin = g.inv_id(x);
        if gen_ids.iter().all(|&ug| members.contains(&g.mul_ids(g.mul_ids(xin, ug), x))) {
            els.push(g.el(x).clone());
        }
    }
    g.subgroup(els)
}

pub fn intersection(g: &FiniteGroup, u: &FiniteGroup, v: &FiniteGroup) -> FiniteGroup {
    let vset: HashSet<u32> = member_ids(g, v).into_iter().collect();
    let els: Vec<El> = member_ids(g, u)
        .into_iter()
        .filter(|i| *i != 0 && vset.contains(i))
        .map(|i| g.el(i).clone())
        .collect();
    g.subgroup(els)
}

pub fn is_normal(g: &FiniteGroup, n: &FiniteGroup) -> bool {
    let members: HashSet<u32> = member_ids(g, n).into_iter().collect();
    let gen_ids: Vec<u32> = n.gens().iter().map(|e| g.index_of(e).unwrap()).collect();
    g.gens().iter().all(|x| {
        let xid = g.index_of(x).unwrap();
        let xin = g.inv_id(xid);
        gen_ids.iter().all(|&ng| members.contains(&g.mul_ids(g.mul_ids(xin, ng), xid)))
    })
}

/// Representatives and sizes of the double cosets `H x K`, in ascending order
/// of the smallest element id of each coset.
pub fn double_coset_reps(
    g: &FiniteGroup,
    h: &FiniteGroup,
    k: &FiniteGroup,
) -> Result<Vec<(u32, usize)>> {
    if !is_subgroup_of(g, h) || !is_subgroup_of(g, k) {
        return Err(Error::NotSubgroup);
    }
    let h_gens: Vec<u32> = member_ids(g, h);
    let k_gens: Vec<u32> = member_ids(g, k);
    let n = g.elements().len();
    let mut covered = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if covered[x as usize] {
            continue;
        }
        // BFS of H x K under left H- and right K-multiplication.
        let mut orbit = vec![x];
        covered[x as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &hg in &h_gens {
                let z = g.mul_ids(hg, y);
                if !covered[z as usize] {
                    covered[z as usize] = true;
                    orbit.push(z);
                }
            }
            for &kg in &k_gens {
                let z = g.mul_ids(y, kg);
                if !covered[z as usize] {
                    covered[z as usize] = true;
                    orbit.push(z);
                }
            }
        }
        out.push((x, orbit.len()));
    }
    Ok(out)
}

/// One conjugacy class of subgroups.
pub struct SubgroupClass {
    /// Representative with the canonical (lexicographically least) member set.
    pub rep: FiniteGroup,
    /// Sorted ambient ids of the representative.
    pub members: Vec<u32>,
    /// Number of conjugates in the class.
    pub size: usize,
}

pub struct SubgroupClassList {
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupClassList {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing (a conjugate of) the given subgroup.
    pub fn class_of(&self, g: &FiniteGroup, u: &FiniteGroup) -> Option<usize> {
        let ids = member_ids(g, u);
        let (canon, _) = canonical_conjugate(g, &ids);
        self.classes.iter().position(|c| c.members == canon)
    }
}

/// All conjugacy classes of subgroups, deterministically ordered by
/// (order, orbit signature, canonical member list).
pub fn subgroup_classes(g: &FiniteGroup, cap: usize) -> Result<SubgroupClassList> {
    let order = g.order() as usize;
    if order > cap {
        return Err(Error::CapExceeded { what: "subgroup classification order", actual: order, limit: cap });
    }
    let n = g.elements().len();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut classes: Vec<(Vec<u32>, usize)> = Vec::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();

    let admit = |ids: &[u32],
                     seen: &mut HashSet<Vec<u32>>,
                     classes: &mut Vec<(Vec<u32>, usize)>,
                     queue: &mut VecDeque<Vec<u32>>| {
        let (canon, csize) = canonical_conjugate(g, ids);
        if seen.insert(canon.clone()) {
            classes.push((canon.clone(), csize));
            queue.push_back(canon);
        }
    };

    admit(&[0], &mut seen, &mut classes, &mut queue);
    for e in 1..n as u32 {
        let cyc = member_ids(g, &g.subgroup(vec![g.el(e).clone()]));
        admit(&cyc, &mut seen, &mut classes, &mut queue);
    }

    while let Some(u_ids) = queue.pop_front() {
        if u_ids.len() == n {
            continue;
        }
        let uset: HashSet<u32> = u_ids.iter().copied().collect();
        // Double-coset representatives of U\G/U: extending by any element of
        // U x U yields the same subgroup as extending by x.
        let mut covered = vec![false; n];
        for &u in &u_ids {
            covered[u as usize] = true;
        }
        for x in 0..n as u32 {
            if covered[x as usize] {
                continue;
            }
            let mut orbit = vec![x];
            covered[x as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for &ug in &u_ids {
                    for z in [g.mul_ids(ug, y), g.mul_ids(y, ug)] {
                        if !covered[z as usize] {
                            covered[z as usize] = true;
                            orbit.push(z);
                        }
                    }
                }
            }
            let mut gens: Vec<El> =
                u_ids.iter().filter(|&&i| i != 0).map(|&i| g.el(i).clone()).collect();
            gens.push(g.el(x).clone());
            let bigger = g.subgroup(gens);
            let ids = member_ids(g, &bigger);
            if ids.len() > uset.len() {
                admit(&ids, &mut seen, &mut classes, &mut queue);
            }
        }
    }

    let mut entries: Vec<SubgroupClass> = classes
        .into_iter()
        .map(|(members, size)| {
            let rep = subgroup_from_ids(g, &members);
            SubgroupClass { rep, members, size }
        })
        .collect();
    entries.sort_by(|a, b| {
        let ka = (a.members.len(), a.rep.orbit_signature(), a.members.clone());
        let kb = (b.members.len(), b.rep.orbit_signature(), b.members.clone());
        ka.cmp(&kb)
    });
    Ok(SubgroupClassList { classes: entries })
}

/// Exhaustive subgroup enumeration (no conjugacy reduction); test oracle for
/// the classification.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Vec<u32>> {
    let n = g.elements().len();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    seen.insert(vec![0]);
    queue.push_back(vec![0]);
    for e in 1..n as u32 {
        let cyc = member_ids(g, &g.subgroup(vec![g.el(e).clone()]));
        if seen.insert(cyc.clone()) {
            queue.push_back(cyc);
        }
    }
    while let Some(u_ids) = queue.pop_front() {
        if u_ids.len() == n {
            continue;
        }
        let mut covered = vec![false; n];
        for &u in &u_ids {
            covered[u as usize] = true;
        }
        for x in 0..n as u32 {
            if covered[x as usize] {
                continue;
            }
            let mut orbit = vec![x];
            covered[x as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for &ug in &u_ids {
                    for z in [g.mul_ids(ug, y), g.mul_ids(y, ug)] {
                        if !covered[z as usize] {
                            covered[z as usize] = true;
                            orbit.push(z);
                        }
                    }
                }
            }
            let mut gens: Vec<El> =
                u_ids.iter().filter(|&&i| i != 0).map(|&i| g.el(i).clone()).collect();
            gens.push(g.el(x).clone());
            let ids = member_ids(g, &g.subgroup(gens));
            if seen.insert(ids.clone()) {
                queue.push_back(ids);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort();
    out
}

/// Does some conjugate of `small` lie inside `big`?
pub fn is_subconjugate(g: &FiniteGroup, small: &FiniteGroup, big: &FiniteGroup) -> bool {
    let big_set: HashSet<u32> = member_ids(g, big).into_iter().collect();
    let small_gens: Vec<u32> = small.gens().iter().map(|e| g.index_of(e).unwrap()).collect();
    if small_gens.is_empty() {
        return true;
    }
    for x in 0..g.elements().len() as u32 {
        let xin = g.inv_id(x);
        if small_gens.iter().all(|&s| big_set.contains(&g.mul_ids(g.mul_ids(xin, s), x))) {
            return true;
        }
    }
    false
}

/// Indices (into `subset`) of the classes minimal under subconjugacy among the
/// given subset of classes.
pub fn minimal_classes(g: &FiniteGroup, list: &SubgroupClassList, subset: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &i in subset {
        let u = &list.classes[i];
        let mut minimal = true;
        for &j in subset {
            if i == j {
                continue;
            }
            let v = &list.classes[j];
            if v.members.len() < u.members.len()
                && u.members.len() % v.members.len() == 0
                && is_subconjugate(g, &v.rep, &u.rep)
            {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(i);
        }
    }
    out
}

/// Quotient by a normal subgroup, as a table-backed group with the natural
/// epimorphism.
pub fn quotient_with_epi(g: &FiniteGroup, n: &FiniteGroup) -> Result<(FiniteGroup, GroupHom)> {
    if !is_subgroup_of(g, n) {
        return Err(Error::NotSubgroup);
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let n_ids = member_ids(g, n);
    let total = g.elements().len();
    let mut coset_of = vec![u32::MAX; total];
    let mut reps = Vec::new();
    for e in 0..total as u32 {
        if coset_of[e as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(e);
        for &m in &n_ids {
            coset_of[g.mul_ids(m, e) as usize] = c;
        }
    }
    let q = reps.len();
    let mut mul = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            mul[a * q + b] = coset_of[g.mul_ids(reps[a], reps[b]) as usize];
        }
    }
    let table = MulTable::new(q, mul);
    let gen_imgs: Vec<u32> =
        g.gens().iter().map(|x| coset_of[g.index_of(x).unwrap() as usize]).collect();
    let quotient = FiniteGroup::from_table(table, gen_imgs);
    let map: Vec<El> = coset_of.iter().map(|&c| El::Idx(c)).collect();
    let epi = GroupHom::from_full_map(g.clone(), quotient.clone(), map)?;
    Ok((quotient, epi))
}

/// Restriction check used by callers that received a subgroup from elsewhere.
pub fn assert_subgroup(g: &FiniteGroup, u: &FiniteGroup) -> Result<()> {
    if is_subgroup_of(g, u) {
        Ok(())
    } else {
        Err(Error::NotSubgroup)
    }
}

/// Kept groups sometimes carry an identity generator or duplicates; this
/// produces a reduced generating set, preferring earlier elements.
pub fn reduced_gens(g: &FiniteGroup) -> Vec<El> {
    let mut acc: Vec<El> = Vec::new();
    let target = g.order();
    for cand in g.gens() {
        if *cand == g.id() || acc.contains(cand) {
            continue;
        }
        acc.push(cand.clone());
        if g.subgroup(acc.clone()).order() == target {
            break;
        }
    }
    acc
}

impl FiniteGroup {
    /// Canonical generators of a subgroup: drawn from its own BFS enumeration,
    /// so restricted lattices built from them are reproducible.
    pub fn canonical_gens(&self) -> Vec<El> {
        let mut acc: Vec<El> = Vec::new();
        let target = self.order();
        if target == 1 {
            return acc;
        }
        for el in self.elements().iter().skip(1) {
            acc.push(el.clone());
            let sub = self.subgroup(acc.clone());
            if sub.order() == target {
                return acc;
            }
            // Keep the element only if it enlarged the span.
            let kept = sub.order();
            let without = self.subgroup(acc[..acc.len() - 1].to_vec()).order();
            if kept == without {
                acc.pop();
            }
        }
        acc
    }

    /// The index [G : U] of a subgroup.
    pub fn index_of_subgroup(&self, u: &FiniteGroup) -> u64 {
        self.order() / u.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn double_cosets_partition() {
        let g = corpus::symmetric(4);
        let h = g.stabilizer_of_point(0);
        let reps = double_coset_reps(&g, &h, &h).unwrap();
        let total: usize = reps.iter().map(|(_, s)| s).sum();
        assert_eq!(total, 24);
        // Full group: one coset; trivial: |G| cosets.
        let triv = g.subgroup(vec![]);
        assert_eq!(double_coset_reps(&g, &g, &g).unwrap().len(), 1);
        assert_eq!(double_coset_reps(&g, &triv, &triv).unwrap().len(), 24);
    }

    #[test]
    fn normalizer_and_intersection() {
        let g = corpus::symmetric(4);
        let v4 = g.subgroup(vec![
            El::Perm(Perm::parse_cycles(4, "(1,2)(3,4)").unwrap()),
            El::Perm(Perm::parse_cycles(4, "(1,3)(2,4)").unwrap()),
        ]);
        // The Klein four group is normal in S4.
        assert_eq!(normalizer(&g, &v4).order(), 24);
        assert!(is_normal(&g, &v4));
        let s3 = g.stabilizer_of_point(3);
        let meet = intersection(&g, &v4, &s3);
        assert_eq!(meet.order(), 1);
        let same = intersection(&g, &v4, &v4);
        assert_eq!(member_ids(&g, &same), member_ids(&g, &v4));
    }

    use super::super::Perm;
}
