//! The norm-one-torus pipeline: from a transitive permutation group to
//! `H^1(G, [J_{G/H}]^fl)` with `H` the stabilizer of the first point, plus the
//! Sylow fast path and the Tamagawa-number bookkeeping.

use crate::abexact::FinAb;
use crate::cohom::{flabby_resolution, h1, ResolutionStrategy};
use crate::groups::subgroups::subgroup_classes;
use crate::groups::FiniteGroup;
use crate::lattice::chevalley_module;
use crate::{Caps, Error, Ratio, Result};

/// Everything the CLI prints for one group.
pub struct Norm1Report {
    pub label: String,
    pub order: u64,
    pub degree: usize,
    pub transitive: bool,
    pub primitive: bool,
    pub h1_flabby: FinAb,
    pub h1_j: FinAb,
    pub sylow_path_used: bool,
    /// `H^1 = 0` certifies weak approximation and the Hasse norm principle.
    pub hnp_certified: bool,
    pub tamagawa: Option<Ratio>,
}

/// `H^1(G, [J_{G/H}]^fl)` for `H = Stab_1(G)`.
pub fn h1_norm1(g: &FiniteGroup, caps: &Caps) -> Result<FinAb> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let order = g.order() as usize;
    if order > caps.max_order {
        return Err(Error::CapExceeded { what: "group order", actual: order, limit: caps.max_order });
    }
    let h = g.stabilizer_of_point(0);
    let j = chevalley_module(g, &h)?;
    let classes = subgroup_classes(g, caps.max_subgroup_order)?;
    let res = flabby_resolution(&j, &classes, ResolutionStrategy::GreedyMinimal, caps)?;
    Ok(h1(&res.f))
}

/// Lemma-backed early exit: on prime-power degree `p^d` the Sylow p-subgroup
/// is transitive, and vanishing of `H^1` over every Sylow subgroup of the
/// degree's prime divisors forces vanishing over `G`. Returns `Some(0)` on
/// certified vanishing, `None` when the fast path defers to the full group.
pub fn sylow_fast_path(g: &FiniteGroup, caps: &Caps) -> Result<Option<FinAb>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let degree = g.degree().expect("permutation group") as u64;
    let mut primes = Vec::new();
    let mut rest = degree;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    let h = g.stabilizer_of_point(0);
    let j = chevalley_module(g, &h)?;
    for p in primes {
        let syl = g.sylow_subgroup(p)?;
        let mut d = degree;
        while d % p == 0 {
            d /= p;
        }
        if d == 1 {
            // On prime-power degree the Sylow p-subgroup acts transitively.
            assert!(syl.is_transitive(), "Sylow subgroup must be transitive on p-power degree");
        }
        let jp = j.restrict(&syl)?;
        let syl_classes = subgroup_classes(&syl, caps.max_subgroup_order)?;
        let res = flabby_resolution(&jp, &syl_classes, ResolutionStrategy::GreedyMinimal, caps)?;
        if !h1(&res.f).is_trivial() {
            return Ok(None);
        }
    }
    Ok(Some(FinAb::trivial()))
}

/// `H^1(G, J_{G/H})` directly from the Chevalley module.
pub fn h1_chevalley(g: &FiniteGroup, h: &FiniteGroup, _caps: &Caps) -> Result<FinAb> {
    crate::groups::subgroups::assert_subgroup(g, h)?;
    let j = chevalley_module(g, h)?;
    Ok(h1(&j))
}

/// Independent route for the same value: the kernel of the restriction
/// `Hom(G, Q/Z) -> Hom(H, Q/Z)` is dual to `G^ab / image(H^ab)`.
pub fn h1_chevalley_via_abelianizations(g: &FiniteGroup, h: &FiniteGroup) -> Result<FinAb> {
    crate::groups::subgroups::assert_subgroup(g, h)?;
    let gab = g.abelianization();
    let ambient = gab.group.clone();
    if ambient.is_trivial() {
        return Ok(FinAb::trivial());
    }
    let full: Vec<Vec<i64>> = (0..ambient.rank())
        .map(|i| {
            let mut v = vec![0i64; ambient.rank()];
            v[i] = 1;
            v
        })
        .collect();
    let image: Vec<Vec<i64>> = h
        .gens()
        .iter()
        .map(|e| gab.coords_of(g, e).iter().map(|&x| x as i64).collect())
        .collect();
    Ok(crate::abexact::finab::quotient(&ambient, &full, &image))
}

/// Ono's formula: `tau(T) = |H^1(G, J_{G/H})| / |Sha(T)|` as an exact ratio.
pub fn tamagawa_reciprocal(h1_j: &FinAb, sha_order: u64) -> Result<Ratio> {
    if sha_order == 0 {
        return Err(Error::Invalid("Sha order must be positive".into()));
    }
    Ok(Ratio::new(h1_j.order(), sha_order))
}

pub fn norm1_report(
    label: &str,
    g: &FiniteGroup,
    caps: &Caps,
    sha_order: Option<u64>,
) -> Result<Norm1Report> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let fast = sylow_fast_path(g, caps)?;
    let sylow_path_used = fast.is_some();
    let h1_flabby = match fast {
        Some(zero) => zero,
        None => h1_norm1(g, caps)?,
    };
    let h = g.stabilizer_of_point(0);
    let h1_j = h1_chevalley(g, &h, caps)?;
    let tamagawa = match sha_order {
        Some(s) => Some(tamagawa_reciprocal(&h1_j, s)?),
        None => None,
    };
    Ok(Norm1Report {
        label: label.to_string(),
        order: g.order(),
        degree: g.degree().unwrap_or(0),
        transitive: true,
        primitive: g.is_primitive(),
        hnp_certified: h1_flabby.is_trivial(),
        h1_flabby,
        h1_j,
        sylow_path_used,
        tamagawa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn prime_degree_groups_vanish() {
        let caps = Caps::default();
        for g in [corpus::symmetric(3), corpus::cyclic(5), corpus::dihedral(5), corpus::f20()] {
            assert!(h1_norm1(&g, &caps).unwrap().is_trivial());
        }
        let intransitive =
            crate::groups::FiniteGroup::from_generators(4, vec![]).unwrap();
        assert!(matches!(h1_norm1(&intransitive, &caps), Err(Error::NotTransitive)));
    }

    #[test]
    fn chevalley_h1_examples() {
        let caps = Caps::default();
        // H = 1: G^ab; G = H: 0.
        let c6 = corpus::cyclic(6);
        let triv = c6.subgroup(vec![]);
        assert_eq!(h1_chevalley(&c6, &triv, &caps).unwrap().factors(), &[6]);
        assert!(h1_chevalley(&c6, &c6, &caps).unwrap().is_trivial());

        // The two routes agree.
        let s4 = corpus::symmetric(4);
        for h in [s4.stabilizer_of_point(0), s4.sylow_subgroup(2).unwrap(), s4.subgroup(vec![])] {
            assert_eq!(
                h1_chevalley(&s4, &h, &caps).unwrap(),
                h1_chevalley_via_abelianizations(&s4, &h).unwrap()
            );
        }
    }

    #[test]
    fn tamagawa_values() {
        let zero = FinAb::trivial();
        assert_eq!(tamagawa_reciprocal(&zero, 4).unwrap().to_string(), "1/4");
        assert_eq!(tamagawa_reciprocal(&zero, 2).unwrap().to_string(), "1/2");
        assert_eq!(tamagawa_reciprocal(&zero, 1).unwrap().to_string(), "1");
        let z2 = FinAb::cyclic(2);
        assert_eq!(tamagawa_reciprocal(&z2, 1).unwrap().to_string(), "2");
        assert!(tamagawa_reciprocal(&zero, 0).is_err());
    }

    #[test]
    fn fast_path_agrees_with_direct_computation() {
        let caps = Caps::default();
        // (C2)^3 on 8 points: Sylow 2 = G, so the fast path is the full
        // computation and must agree with the direct route.
        let g = corpus::abelian_regular(&[2, 2, 2]);
        let fast = sylow_fast_path(&g, &caps).unwrap();
        let direct = h1_norm1(&g, &caps).unwrap();
        match fast {
            Some(z) => assert_eq!(z, direct),
            None => assert!(!direct.is_trivial()),
        }
        // D4 on 4 points likewise.
        let d4 = corpus::dihedral(4);
        let fast = sylow_fast_path(&d4, &caps).unwrap();
        let direct = h1_norm1(&d4, &caps).unwrap();
        match fast {
            Some(z) => assert_eq!(z, direct),
            None => assert!(!direct.is_trivial()),
        }
    }
}
