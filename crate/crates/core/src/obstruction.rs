//! The first-obstruction machinery: `Ker psi_1 / phi_1(Ker psi_2)` for the
//! norm-map diagram of a pair `H <= G` with a family of decomposition
//! subgroups, the unramified part via commutators `[h, x]` with
//! `h in H n xHx^-1`, and the classification driver that evaluates every
//! subgroup class of decomposition groups at a central-extension level.

use crate::abexact::finab::{self, gens_as_i64, SubAb};
use crate::abexact::{kernel_basis, FinAb, IntMatrix};
use crate::groups::subgroups::{
    self, double_coset_reps, member_ids, minimal_classes, SubgroupClassList,
};
use crate::groups::{El, FiniteGroup, GroupHom};
use crate::{Caps, Result};
use std::collections::HashSet;

/// `Ker psi_1 = (H n [G,G]) / [H,H]` as a subgroup of `H^ab`.
pub struct KerPsi1 {
    pub h_ab: FinAb,
    pub kernel: SubAb,
}

pub fn ker_psi1(g: &FiniteGroup, h: &FiniteGroup) -> Result<KerPsi1> {
    subgroups::assert_subgroup(g, h)?;
    let derived = g.derived_subgroup();
    let meet = subgroups::intersection(g, h, &derived);
    let hab = h.abelianization();
    let gens: Vec<Vec<i64>> = meet
        .elements()
        .iter()
        .map(|e| hab.coords_of(h, e).iter().map(|&x| x as i64).collect())
        .collect();
    let kernel = finab::subgroup(&hab.group, &gens);
    Ok(KerPsi1 { h_ab: hab.group.clone(), kernel })
}

/// `Phi^G(H)/[H,H]`: the image in `H^ab` of the subgroup generated by the
/// commutators `[h, x]` with `h in H n xHx^-1`. Iterates `x` over coset
/// representatives of `G/H`, a safe superset of what is needed.
pub fn phi_unramified(g: &FiniteGroup, h: &FiniteGroup) -> Result<SubAb> {
    subgroups::assert_subgroup(g, h)?;
    let h_ids: Vec<u32> = member_ids(g, h);
    let h_set: HashSet<u32> = h_ids.iter().copied().collect();
    let table = crate::lattice::coset_table(g, h)?;
    let hab = h.abelianization();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for &x in &table.reps {
        let xin = g.inv_id(x);
        for &hh in &h_ids {
            // h in H n xHx^-1 means x^-1 h x in H.
            let conj = g.mul_ids(g.mul_ids(xin, hh), x);
            if !h_set.contains(&conj) {
                continue;
            }
            // [h, x] = h^-1 (x^-1 h x) lies in H.
            let com = g.mul_ids(g.inv_id(hh), conj);
            let el = g.el(com).clone();
            debug_assert!(h.contains_el(&el));
            gens.push(hab.coords_of(h, &el).iter().map(|&x| x as i64).collect());
        }
    }
    Ok(finab::subgroup(&hab.group, &gens))
}

/// The places over one decomposition group: double cosets `H x G_v` and the
/// local pairs `H_w = H n x G_v x^-1`.
pub struct DecompositionScenario {
    pub gv: FiniteGroup,
    pub reps: Vec<u32>,
    pub coset_sizes: Vec<usize>,
    pub local_groups: Vec<FiniteGroup>,
}

pub fn decomposition_scenario(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gv: &FiniteGroup,
) -> Result<DecompositionScenario> {
    subgroups::assert_subgroup(g, gv)?;
    let cosets = double_coset_reps(g, h, gv)?;
    let gv_ids = member_ids(g, gv);
    let h_set: HashSet<u32> = member_ids(g, h).into_iter().collect();
    let mut reps = Vec::new();
    let mut coset_sizes = Vec::new();
    let mut local_groups = Vec::new();
    for (x, size) in cosets {
        let xin = g.inv_id(x);
        let members: Vec<El> = gv_ids
            .iter()
            .map(|&v| g.mul_ids(g.mul_ids(x, v), xin))
            .filter(|m| *m != 0 && h_set.contains(m))
            .map(|m| g.el(m).clone())
            .collect();
        local_groups.push(g.subgroup(members));
        reps.push(x);
        coset_sizes.push(size);
    }
    let total: usize = coset_sizes.iter().sum();
    assert_eq!(total, g.elements().len(), "double cosets partition G");
    Ok(DecompositionScenario { gv: gv.clone(), reps, coset_sizes, local_groups })
}

/// `phi_1(Ker psi_2^v)` for one decomposition group: the kernel of
/// `(+)_w H_w^ab -> G_v^ab`, `h |-> x^-1 h x`, pushed into `H^ab`.
pub fn psi2_kernel_image(g: &FiniteGroup, h: &FiniteGroup, gv: &FiniteGroup) -> Result<SubAb> {
    let scenario = decomposition_scenario(g, h, gv)?;
    let hab = h.abelianization();
    let gv_ab = scenario.gv.abelianization();
    // Adapted generators of each H_w^ab, their images in G_v^ab, and their
    // pushforwards into H^ab.
    let mut domain_moduli: Vec<u64> = Vec::new();
    let mut to_gv: Vec<Vec<i64>> = Vec::new();
    let mut to_h: Vec<Vec<i64>> = Vec::new();
    for (w, hw) in scenario.local_groups.iter().enumerate() {
        let x = scenario.reps[w];
        let xin = g.inv_id(x);
        let hw_ab = hw.abelianization();
        for (k, d) in hw_ab.group.factors().iter().enumerate() {
            let el = &hw_ab.adapted_elements[k];
            domain_moduli.push(*d);
            let eid = g.index_of(el).expect("local element");
            let conj = g.mul_ids(g.mul_ids(xin, eid), x);
            let conj_el = g.el(conj).clone();
            debug_assert!(scenario.gv.contains_el(&conj_el));
            to_gv.push(
                gv_ab.coords_of(&scenario.gv, &conj_el).iter().map(|&c| c as i64).collect(),
            );
            to_h.push(hab.coords_of(h, el).iter().map(|&c| c as i64).collect());
        }
    }
    if domain_moduli.is_empty() {
        return Ok(finab::subgroup(&hab.group, &[]));
    }
    // Kernel of psi_2: integer solutions of c * M = 0 modulo the target
    // moduli, with the domain moduli folded in.
    let s = domain_moduli.len();
    let t = gv_ab.group.rank();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for v in &to_gv {
        rows.push(v.clone());
    }
    for (i, e) in gv_ab.group.factors().iter().enumerate() {
        let mut row = vec![0i64; t];
        row[i] = *e as i64;
        rows.push(row);
        let _ = i;
    }
    let stacked = if t == 0 {
        IntMatrix::zeros(s, 0)
    } else {
        IntMatrix::from_rows(rows)
    };
    let ker = kernel_basis(&stacked);
    // Each kernel row gives coefficients for the domain generators; also fold
    // in the domain moduli themselves (d_i e_i is always in the kernel).
    let mut image_gens: Vec<Vec<i64>> = Vec::new();
    let push_combination = |coefs: &[i64], out: &mut Vec<Vec<i64>>| {
        let mut acc = vec![0i64; hab.group.rank()];
        for (i, c) in coefs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (k, v) in to_h[i].iter().enumerate() {
                acc[k] += c * v;
            }
        }
        out.push(acc);
    };
    for r in 0..ker.rows() {
        let coefs: Vec<i64> = (0..s)
            .map(|i| {
                use num_traits::ToPrimitive;
                ker.at(r, i).to_i64().expect("small kernel coefficient")
            })
            .collect();
        push_combination(&coefs, &mut image_gens);
    }
    for (i, d) in domain_moduli.iter().enumerate() {
        let mut coefs = vec![0i64; s];
        coefs[i] = *d as i64;
        push_combination(&coefs, &mut image_gens);
    }
    Ok(finab::subgroup(&hab.group, &image_gens))
}

/// The assembled report for one run of the first-obstruction computation.
pub struct ObstructionReport {
    pub h_ab: FinAb,
    pub ker: SubAb,
    pub image: SubAb,
    pub quotient: FinAb,
}

/// Quotient of `Ker psi_1` by the subgroup generated by the unramified part
/// (when included) and the per-scenario kernels.
pub fn obs1(
    g: &FiniteGroup,
    h: &FiniteGroup,
    scenarios: &[FiniteGroup],
    include_unramified: bool,
) -> Result<ObstructionReport> {
    let kp1 = ker_psi1(g, h)?;
    let mut image_gens: Vec<Vec<i64>> = Vec::new();
    if include_unramified {
        let dnr = phi_unramified(g, h)?;
        image_gens.extend(gens_as_i64(&dnr.gens));
    }
    for gv in scenarios {
        let part = psi2_kernel_image(g, h, gv)?;
        image_gens.extend(gens_as_i64(&part.gens));
    }
    let image = finab::subgroup(&kp1.h_ab, &image_gens);
    // The image always lies inside Ker psi_1.
    assert!(
        finab::subgroup_leq(&kp1.h_ab, &gens_as_i64(&image.gens), &gens_as_i64(&kp1.kernel.gens)),
        "phi_1(Ker psi_2) must lie inside Ker psi_1"
    );
    let quotient =
        finab::quotient(&kp1.h_ab, &gens_as_i64(&kp1.kernel.gens), &gens_as_i64(&image.gens));
    assert_eq!(
        quotient.order() * image.structure.order(),
        kp1.kernel.structure.order(),
        "quotient and image orders must multiply to the kernel order"
    );
    Ok(ObstructionReport { h_ab: kp1.h_ab, ker: kp1.kernel, image, quotient })
}

/// Verdict for one subgroup class of decomposition groups at a chosen
/// central-extension level.
pub struct VerdictRow {
    pub class_index: usize,
    pub class_order: usize,
    pub orbit_signature: Vec<usize>,
    /// Distinct killed subgroups over the orbit representatives, each as the
    /// canonical generator list inside the lifted `H^ab`.
    pub verdicts: Vec<Vec<Vec<u64>>>,
    /// Whether every orbit representative kills the whole kernel.
    pub kills_all: bool,
    /// Whether some orbit representative kills nothing.
    pub kills_nothing: bool,
}

pub struct VerdictTable {
    pub h_ab: FinAb,
    pub ker_gens: Vec<Vec<u64>>,
    pub ker_structure: FinAb,
    pub rows: Vec<VerdictRow>,
    /// Indices (into `rows`) of classes minimal under subconjugacy among the
    /// fully-killing ones.
    pub minimal_killing: Vec<usize>,
}

impl VerdictTable {
    /// Multiset of verdict signatures over the classes, as (signature, count)
    /// sorted by signature.
    pub fn collected(&self) -> Vec<(Vec<Vec<Vec<u64>>>, usize)> {
        let mut counts: Vec<(Vec<Vec<Vec<u64>>>, usize)> = Vec::new();
        for row in &self.rows {
            let key = row.verdicts.clone();
            match counts.iter_mut().find(|(k, _)| *k == key) {
                Some((_, c)) => *c += 1,
                None => counts.push((key, 1)),
            }
        }
        counts.sort();
        counts
    }
}

/// Evaluates every class of decomposition subgroups of the base group at the
/// level of a central extension `cover -> base`: each class is reduced to
/// orbit representatives under `N_G(H)`-conjugation (the obstruction only
/// depends on that orbit), lifted through the epimorphism, and the killed
/// part of `Ker psi_1` of the lifted pair is recorded.
pub fn classify_scenarios(
    cover: &FiniteGroup,
    epi: &GroupHom,
    h: &FiniteGroup,
    classes: &SubgroupClassList,
    _caps: &Caps,
) -> Result<VerdictTable> {
    let g = &epi.target;
    subgroups::assert_subgroup(g, h)?;
    let h_cover = epi.preimage(h);
    let kp1 = ker_psi1(cover, &h_cover)?;
    let ker_lattice_gens = gens_as_i64(&kp1.kernel.gens);

    let n_gh = subgroups::normalizer(g, h);
    let n_ids = member_ids(g, &n_gh);

    let mut rows = Vec::new();
    for (ci, class) in classes.classes.iter().enumerate() {
        // All conjugates of the representative, as sorted member lists.
        let mut conjugates: Vec<Vec<u32>> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for x in 0..g.elements().len() as u32 {
            let c = subgroups::conjugate_ids(g, &class.members, x);
            if seen.insert(c.clone()) {
                conjugates.push(c);
            }
        }
        // Orbits under conjugation by N_G(H).
        let mut orbit_rep: Vec<Vec<u32>> = Vec::new();
        let mut assigned: HashSet<Vec<u32>> = HashSet::new();
        for c in &conjugates {
            if assigned.contains(c) {
                continue;
            }
            let mut orbit = vec![c.clone()];
            assigned.insert(c.clone());
            let mut head = 0;
            while head < orbit.len() {
                let cur = orbit[head].clone();
                head += 1;
                for &x in &n_ids {
                    let img = subgroups::conjugate_ids(g, &cur, x);
                    if assigned.insert(img.clone()) {
                        orbit.push(img);
                    }
                }
            }
            orbit_rep.push(orbit.into_iter().min().unwrap());
        }
        orbit_rep.sort();

        let mut verdicts: Vec<Vec<Vec<u64>>> = Vec::new();
        for rep_ids in &orbit_rep {
            let gv = subgroups::subgroup_from_ids(g, rep_ids);
            let gv_cover = epi.preimage(&gv);
            let image = psi2_kernel_image(cover, &h_cover, &gv_cover)?;
            let sig = image.gens.clone();
            if !verdicts.contains(&sig) {
                verdicts.push(sig);
            }
        }
        verdicts.sort();
        let kills_all = verdicts.iter().all(|v| {
            finab::subgroup_leq(&kp1.h_ab, &ker_lattice_gens, &gens_as_i64(v))
        });
        let kills_nothing = verdicts.iter().any(|v| v.is_empty());
        rows.push(VerdictRow {
            class_index: ci,
            class_order: class.members.len(),
            orbit_signature: class.rep.orbit_signature(),
            verdicts,
            kills_all,
            kills_nothing,
        });
    }

    let killing: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.kills_all)
        .map(|(i, _)| rows[i].class_index)
        .collect();
    let g_for_min = g.clone();
    let minimal_killing = minimal_classes(&g_for_min, classes, &killing);

    Ok(VerdictTable {
        h_ab: kp1.h_ab,
        ker_gens: kp1.kernel.gens.clone(),
        ker_structure: kp1.kernel.structure.clone(),
        rows,
        minimal_killing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::groups::subgroups::subgroup_classes;

    #[test]
    fn ker_psi1_examples() {
        // Abelian ambient group: [G,G] = 1, kernel trivial.
        let g = corpus::cyclic(12);
        let h = g.subgroup(vec![g.el(6).clone()]);
        let kp = ker_psi1(&g, &h).unwrap();
        assert!(kp.kernel.structure.is_trivial());

        // 16T178 base pair: H^ab = Z/5, trivial kernel.
        let g = corpus::t16_178();
        let h = g.stabilizer_of_point(0);
        let kp = ker_psi1(&g, &h).unwrap();
        assert_eq!(kp.h_ab.factors(), &[5]);
        assert!(kp.kernel.structure.is_trivial());

        // 16T708 base pair: H^ab = Z/6, trivial kernel.
        let g = corpus::t16_708();
        let h = g.stabilizer_of_point(0);
        let kp = ker_psi1(&g, &h).unwrap();
        assert_eq!(kp.h_ab.factors(), &[6]);
        assert!(kp.kernel.structure.is_trivial());
    }

    #[test]
    fn phi_unramified_full_group_case() {
        // H = G: Phi^G(G)/[G,G]... the commutators [h,x] with x in G generate
        // [G,G] itself, so the image equals Ker psi_1 and the quotient dies.
        let g = corpus::symmetric(4);
        let r = obs1(&g, &g, &[], true).unwrap();
        assert!(r.quotient.is_trivial());
        assert_eq!(r.image.structure, r.ker.structure);
    }

    #[test]
    fn psi2_trivial_and_full_scenarios() {
        let g = corpus::symmetric(4);
        let h = g.stabilizer_of_point(0);
        // Gv = 1: all local groups trivial, image trivial.
        let triv = g.subgroup(vec![]);
        let img = psi2_kernel_image(&g, &h, &triv).unwrap();
        assert!(img.structure.is_trivial());
        // Gv = G: one double coset, psi_2 = psi_1, image = full kernel.
        let r = obs1(&g, &h, &[g.clone()], false).unwrap();
        assert!(r.quotient.is_trivial());
    }

    #[test]
    fn monotonicity_on_a_nested_pair() {
        let g = corpus::symmetric(4);
        let h = g.stabilizer_of_point(0);
        let syl = g.sylow_subgroup(2).unwrap();
        let sub = syl.subgroup(vec![syl.elements()[1].clone()]);
        let small = psi2_kernel_image(&g, &h, &sub).unwrap();
        let big = psi2_kernel_image(&g, &h, &syl).unwrap();
        assert!(finab::subgroup_leq(
            &small.ambient,
            &gens_as_i64(&small.gens),
            &gens_as_i64(&big.gens)
        ));
    }

    #[test]
    fn unramified_equals_cyclic_closure_smoke() {
        // Prop-style check on one group: the cyclic-scenario closure equals
        // the commutator description of the unramified part.
        let g = corpus::alternating(4);
        let h = g.stabilizer_of_point(0);
        let classes = subgroup_classes(&g, 1000).unwrap();
        let mut cyclic_gens: Vec<Vec<i64>> = Vec::new();
        let hab_ambient = ker_psi1(&g, &h).unwrap().h_ab;
        for class in &classes.classes {
            if !class.rep.is_abelian() || class.rep.minimal_generating_els().len() > 1 {
                continue;
            }
            let img = psi2_kernel_image(&g, &h, &class.rep).unwrap();
            cyclic_gens.extend(gens_as_i64(&img.gens));
        }
        let closure = finab::subgroup(&hab_ambient, &cyclic_gens);
        let dnr = phi_unramified(&g, &h).unwrap();
        assert!(finab::same_subgroup(
            &hab_ambient,
            &gens_as_i64(&closure.gens),
            &gens_as_i64(&dnr.gens)
        ));
    }
}
