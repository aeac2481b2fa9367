//! Schur multipliers, explicit 2-cocycles, central extensions, Schur covers,
//! stem extensions, and the kernel of restriction on degree-3 cohomology.
//!
//! The multiplier itself is `H^1(G, N)` for the dimension-shift lattice `N`
//! (see `cohom::h3_shift_lattice`); cocycle tables come in only where an
//! actual group extension has to be constructed.

use crate::abexact::finab::{self};
use crate::abexact::modular::{left_kernel_modpk, BitRow, Gf2Echelon, ModMat, ModPkEchelon};
use crate::abexact::{cokernel_structure, kernel_basis, FinAb, HnfSolver, IntMatrix};
use crate::cohom::{self, cayley_presentation, h3_shift_lattice};
use crate::groups::subgroups::{self};
use crate::groups::{El, FiniteGroup, GroupHom, MulTable};
use crate::lattice::chevalley_module;
use crate::{Caps, Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// A normalized 2-cocycle on `G` with values in `Z/m`, tabulated on element
/// ids: `f(1, .) = f(., 1) = 0` and
/// `f(g,h) + f(gh,k) = f(h,k) + f(g,hk)`.
#[derive(Clone)]
pub struct Cocycle2 {
    pub modulus: u64,
    n: usize,
    table: Vec<u64>,
}

impl Cocycle2 {
    pub fn value(&self, a: u32, b: u32) -> u64 {
        self.table[a as usize * self.n + b as usize]
    }

    fn zero(n: usize, modulus: u64) -> Self {
        Cocycle2 { modulus, n, table: vec![0; n * n] }
    }

    /// Spot check of the cocycle identity on all triples.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        let n = self.n as u32;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul_ids(a, b);
                for c in 0..n {
                    let bc = g.mul_ids(b, c);
                    let lhs = (self.value(a, b) + self.value(ab, c)) % self.modulus;
                    let rhs = (self.value(b, c) + self.value(a, bc)) % self.modulus;
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn unknown_index(n: usize, a: u32, b: u32) -> usize {
    debug_assert!(a >= 1 && b >= 1);
    (a as usize - 1) * (n - 1) + (b as usize - 1)
}

/// A basis of `H^2(G, Z/p^k)`: independent classes with their additive
/// orders, represented by explicit normalized cocycle tables.
fn two_cocycle_basis_prime_power(
    g: &FiniteGroup,
    p: u64,
    k: u32,
    caps: &Caps,
) -> Result<Vec<(Cocycle2, u64)>> {
    let n = g.elements().len();
    if n == 1 {
        return Ok(vec![]);
    }
    let m = p.pow(k);
    let unknowns = (n - 1) * (n - 1);
    let cap = if m == 2 { caps.max_cocycle_unknowns } else { caps.max_cocycle_unknowns.min(2600) };
    if unknowns > cap {
        return Err(Error::CapExceeded { what: "cocycle unknowns", actual: unknowns, limit: cap });
    }

    // Solve the cocycle identity over all non-identity triples.
    let z_gens: Vec<Vec<u64>> = if m == 2 {
        let mut ech = Gf2Echelon::new(unknowns);
        for a in 1..n as u32 {
            for b in 1..n as u32 {
                let ab = g.mul_ids(a, b);
                for c in 1..n as u32 {
                    let bc = g.mul_ids(b, c);
                    let mut row = BitRow::zeros(unknowns);
                    let mut flip = |x: u32, y: u32| {
                        if x != 0 && y != 0 {
                            let i = unknown_index(n, x, y);
                            row.set(i, !row.get(i));
                        }
                    };
                    flip(a, b);
                    flip(ab, c);
                    flip(b, c);
                    flip(a, bc);
                    if !row.is_zero() {
                        ech.insert(row);
                    }
                }
            }
        }
        ech.nullspace()
            .into_iter()
            .map(|bits| (0..unknowns).map(|i| bits.get(i) as u64).collect())
            .collect()
    } else {
        let mut ech = ModPkEchelon::new(unknowns, p, k);
        for a in 1..n as u32 {
            for b in 1..n as u32 {
                let ab = g.mul_ids(a, b);
                for c in 1..n as u32 {
                    let bc = g.mul_ids(b, c);
                    let mut row = vec![0u64; unknowns];
                    let mut bump = |x: u32, y: u32, sgn: i64| {
                        if x != 0 && y != 0 {
                            let i = unknown_index(n, x, y);
                            row[i] = (row[i] as i64 + sgn).rem_euclid(m as i64) as u64;
                        }
                    };
                    bump(a, b, 1);
                    bump(ab, c, 1);
                    bump(b, c, -1);
                    bump(a, bc, -1);
                    if row.iter().any(|&x| x != 0) {
                        ech.insert(row);
                    }
                }
            }
        }
        // Solutions f with R f = 0: left kernel of R^T.
        let rows = ech.rows();
        let mut rt = ModMat::zeros(unknowns, rows.len(), m);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                rt.set(j, i, x);
            }
        }
        left_kernel_modpk(&rt, p, k).into_iter().map(|gen| gen.vec).collect()
    };

    // Coboundaries: delta_e(g, h) = [g = e] + [h = e] - [gh = e].
    let mut b_gens: Vec<Vec<u64>> = Vec::new();
    for e in 1..n as u32 {
        let mut row = vec![0i64; unknowns];
        for a in 1..n as u32 {
            for b in 1..n as u32 {
                let mut v = 0i64;
                if a == e {
                    v += 1;
                }
                if b == e {
                    v += 1;
                }
                if g.mul_ids(a, b) == e {
                    v -= 1;
                }
                row[unknown_index(n, a, b)] = v;
            }
        }
        b_gens.push(row.into_iter().map(|x| x.rem_euclid(m as i64) as u64).collect());
    }

    // H^2 = span(Z) / span(B): relations on the Z-coefficients, then an
    // integer Smith form for adapted class generators.
    let s = z_gens.len();
    if s == 0 {
        return Ok(vec![]);
    }
    let total = s + b_gens.len();
    let mut stacked = ModMat::zeros(total, unknowns, m);
    for (i, r) in z_gens.iter().chain(b_gens.iter()).enumerate() {
        for (j, &x) in r.iter().enumerate() {
            stacked.set(i, j, x);
        }
    }
    let rels = left_kernel_modpk(&stacked, p, k);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for gen in &rels {
        rows.push(gen.vec[..s].iter().map(|&x| x as i64).collect());
    }
    for i in 0..s {
        let mut row = vec![0i64; s];
        row[i] = m as i64;
        rows.push(row);
    }
    let coker = cokernel_structure(&IntMatrix::from_rows(rows));
    assert_eq!(coker.free_rank, 0);
    let mut out = Vec::new();
    for (fi, d) in coker.finab.factors().iter().enumerate() {
        let lift = &coker.adapted_lifts[fi];
        let mut table = vec![0u64; n * n];
        for (i, c) in lift.iter().enumerate() {
            let c = c.to_i64().expect("small lift coefficient").rem_euclid(m as i64) as u64;
            if c == 0 {
                continue;
            }
            for a in 1..n {
                for b in 1..n {
                    let idx = unknown_index(n, a as u32, b as u32);
                    table[a * n + b] =
                        (table[a * n + b] + c * z_gens[i][idx]) % m;
                }
            }
        }
        out.push((Cocycle2 { modulus: m, n, table }, *d));
    }
    Ok(out)
}

/// Basis of `H^2(G, Z/m)` for any modulus, by prime-power parts embedded into
/// `Z/m` (a class mod `p^k` scales by `m/p^k`).
pub fn two_cocycle_basis(g: &FiniteGroup, m: u64, caps: &Caps) -> Result<Vec<(Cocycle2, u64)>> {
    assert!(m >= 2);
    let n = g.elements().len();
    let mut out = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            let mut k = 0u32;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            let part = two_cocycle_basis_prime_power(g, p, k, caps)?;
            let scale = m / p.pow(k);
            for (coc, ord) in part {
                let table = coc.table.iter().map(|&x| (x * scale) % m).collect();
                out.push((Cocycle2 { modulus: m, n, table }, ord));
            }
        }
        p += 1;
    }
    Ok(out)
}

/// A group of pairs `(g, a)` built from cocycles, with its projection onto
/// the base.
pub struct CentralExtensionGroup {
    pub base: FiniteGroup,
    pub kernel: FinAb,
    pub group: FiniteGroup,
    pub epi: GroupHom,
    /// Elements of the kernel `{(1, a)}`, adapted generators first.
    pub kernel_gens: Vec<El>,
    pub stem: bool,
}

fn a_index(factors: &[u64], coords: &[u64]) -> u32 {
    let mut acc = 0u64;
    for (c, d) in coords.iter().zip(factors) {
        acc = acc * d + c;
    }
    acc as u32
}

/// Builds the extension group on pairs. The cocycle list must match the
/// invariant factors of `a` (one cocycle per factor, same modulus).
pub fn central_extension(
    g: &FiniteGroup,
    a: &FinAb,
    cocycles: &[Cocycle2],
    caps: &Caps,
) -> Result<CentralExtensionGroup> {
    let r = a.rank();
    if cocycles.len() != r {
        return Err(Error::Invalid("one cocycle per invariant factor required".into()));
    }
    for (c, d) in cocycles.iter().zip(a.factors()) {
        if c.modulus != *d {
            return Err(Error::Invalid(format!(
                "cocycle modulus {} does not match invariant factor {d}",
                c.modulus
            )));
        }
    }
    let n = g.elements().len();
    let asize = a.order() as usize;
    let total = n * asize;
    if total > caps.max_order {
        return Err(Error::CapExceeded { what: "extension order", actual: total, limit: caps.max_order });
    }
    let factors = a.factors().to_vec();
    let mut mul = vec![0u32; total * total];
    let mut coords = vec![vec![0u64; r]; asize];
    {
        let mut cur = vec![0u64; r];
        for slot in coords.iter_mut() {
            *slot = cur.clone();
            for d in (0..r).rev() {
                cur[d] += 1;
                if cur[d] < factors[d] {
                    break;
                }
                cur[d] = 0;
            }
        }
    }
    for g1 in 0..n as u32 {
        for (a1, ca) in coords.iter().enumerate() {
            let e1 = g1 as usize * asize + a1;
            for g2 in 0..n as u32 {
                let g3 = g.mul_ids(g1, g2);
                let f: Vec<u64> = cocycles.iter().map(|c| c.value(g1, g2)).collect();
                for (a2, cb) in coords.iter().enumerate() {
                    let e2 = g2 as usize * asize + a2;
                    let c3: Vec<u64> = ca
                        .iter()
                        .zip(cb)
                        .zip(&f)
                        .zip(&factors)
                        .map(|(((x, y), z), d)| (x + y + z) % d)
                        .collect();
                    let e3 = g3 as usize * asize + a_index(&factors, &c3) as usize;
                    mul[e1 * total + e2] = e3 as u32;
                }
            }
        }
    }
    let table = MulTable::new(total, mul);
    // Generators: lifts of the base generators plus the kernel generators.
    let mut gen_ids: Vec<u32> = g
        .gens()
        .iter()
        .map(|x| g.index_of(x).unwrap() * asize as u32)
        .collect();
    let mut kernel_gens = Vec::new();
    for i in 0..r {
        let mut c = vec![0u64; r];
        c[i] = 1;
        let idx = a_index(&factors, &c);
        gen_ids.push(idx);
        kernel_gens.push(El::Idx(idx));
    }
    let group = FiniteGroup::from_table(table, gen_ids);
    assert_eq!(group.order() as usize, total, "lifts and kernel generate the extension");
    // The element map is indexed by the BFS enumeration of the source.
    let map: Vec<El> = group
        .elements()
        .iter()
        .map(|el| match el {
            El::Idx(t) => g.el(t / asize as u32).clone(),
            El::Perm(_) => unreachable!("extension groups are table-backed"),
        })
        .collect();
    let epi = GroupHom::from_full_map(group.clone(), g.clone(), map)?;
    let derived = group.derived_subgroup();
    let stem = kernel_gens.iter().all(|k| derived.contains_el(k));
    Ok(CentralExtensionGroup { base: g.clone(), kernel: a.clone(), group, epi, kernel_gens, stem })
}

/// Would the extension by these cocycles be stem? Decided on the abelianized
/// lifted presentation (relator tails), without building the group.
fn stem_precheck(g: &FiniteGroup, factors: &[u64], cocycles: &[Cocycle2]) -> bool {
    let r = factors.len();
    let pres = cayley_presentation(g);
    let d = g.gens().len();
    // Multiply lifted letters (g, a) along each relator; the tail tau(rel)
    // lands in A. Lift of s is (s, 0), of s^-1 is (s^-1, -f(s, s^-1)).
    let gen_ids: Vec<u32> = g.gens().iter().map(|x| g.index_of(x).unwrap()).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for rel in pres.relators() {
        let mut cur_g = 0u32;
        let mut cur_a = vec![0i64; r];
        for &s in rel {
            let gi = s.unsigned_abs() as usize - 1;
            let (lg, la): (u32, Vec<i64>) = if s > 0 {
                (gen_ids[gi], vec![0; r])
            } else {
                let ginv = g.inv_id(gen_ids[gi]);
                let la = cocycles
                    .iter()
                    .map(|c| -(c.value(gen_ids[gi], ginv) as i64))
                    .collect();
                (ginv, la)
            };
            // (cur_g, cur_a) * (lg, la)
            let f: Vec<i64> = cocycles.iter().map(|c| c.value(cur_g, lg) as i64).collect();
            for i in 0..r {
                cur_a[i] += la[i] + f[i];
            }
            cur_g = g.mul_ids(cur_g, lg);
        }
        debug_assert_eq!(cur_g, 0);
        // Abelianized relator row: generator exponents then the tail.
        let mut row = vec![0i64; d + r];
        for &s in rel {
            let gi = s.unsigned_abs() as usize - 1;
            row[gi] += s.signum() as i64;
        }
        for i in 0..r {
            row[d + i] = cur_a[i];
        }
        rows.push(row);
    }
    for (i, dfac) in factors.iter().enumerate() {
        let mut row = vec![0i64; d + r];
        row[d + i] = *dfac as i64;
        rows.push(row);
    }
    // A lies in the derived subgroup iff every kernel generator dies in the
    // abelianization of the extension.
    let rel_mat = IntMatrix::from_rows(rows);
    let solver = HnfSolver::new(&rel_mat);
    (0..r).all(|i| {
        let mut v = vec![BigInt::from(0); d + r];
        v[d + i] = BigInt::from(1);
        solver.contains_row(&v)
    })
}

/// `M(G) = H^3(G, Z)`, computed as `H^1(G, N)` for the shift lattice.
pub fn schur_multiplier(g: &FiniteGroup, caps: &Caps) -> Result<FinAb> {
    let n = h3_shift_lattice(g, caps)?;
    Ok(cohom::h1(&n))
}

/// Cross-check route: `H^1(G, [J_G]^fl)` through an explicit flabby
/// resolution of the Chevalley module of the regular action.
pub fn schur_multiplier_via_flabby(g: &FiniteGroup, caps: &Caps) -> Result<FinAb> {
    let j = chevalley_module(g, &g.subgroup(vec![]))?;
    let classes = subgroups::subgroup_classes(g, caps.max_subgroup_order)?;
    let res =
        cohom::flabby_resolution(&j, &classes, cohom::ResolutionStrategy::GreedyMinimal, caps)?;
    Ok(cohom::h1(&res.f))
}

/// First stem extension with kernel of full multiplier size, under a
/// deterministic enumeration of class tuples.
pub fn schur_cover(g: &FiniteGroup, caps: &Caps) -> Result<CentralExtensionGroup> {
    let mg = schur_multiplier(g, caps)?;
    if mg.is_trivial() {
        return central_extension(g, &FinAb::trivial(), &[], caps);
    }
    let n = g.elements().len();
    // Candidate classes per invariant factor: elements of H^2(G, Z/d) of
    // order exactly d (a cover never has a lower-order component).
    let mut slot_candidates: Vec<Vec<Cocycle2>> = Vec::new();
    for &d in mg.factors() {
        let basis = two_cocycle_basis(g, d, caps)?;
        let mut cands = Vec::new();
        let orders: Vec<u64> = basis.iter().map(|(_, o)| *o).collect();
        let mut coef = vec![0u64; basis.len()];
        loop {
            // Order of the combination in the adapted basis.
            let mut ord = 1u64;
            for (c, o) in coef.iter().zip(&orders) {
                let t = o / num_integer::gcd(*o, *c);
                ord = num_integer::lcm(ord, t);
            }
            if ord == d {
                let mut table = vec![0u64; n * n];
                for (ci, z) in coef.iter().zip(&basis) {
                    if *ci == 0 {
                        continue;
                    }
                    for (slot, v) in table.iter_mut().zip(&z.0.table) {
                        *slot = (*slot + ci * v) % d;
                    }
                }
                cands.push(Cocycle2 { modulus: d, n, table });
            }
            // Next coefficient tuple.
            let mut i = 0;
            loop {
                if i == coef.len() {
                    break;
                }
                coef[i] += 1;
                if coef[i] < orders[i] {
                    break;
                }
                coef[i] = 0;
                i += 1;
            }
            if i == coef.len() {
                break;
            }
        }
        slot_candidates.push(cands);
    }
    let space: usize = slot_candidates.iter().map(|c| c.len()).product();
    if space > 500_000 {
        return Err(Error::CapExceeded { what: "cover candidate tuples", actual: space, limit: 500_000 });
    }
    let factors = mg.factors().to_vec();
    let r = factors.len();
    let mut choice = vec![0usize; r];
    loop {
        // Skip unordered duplicates among equal moduli.
        let mut canonical = true;
        for i in 1..r {
            if factors[i] == factors[i - 1] && choice[i] < choice[i - 1] {
                canonical = false;
                break;
            }
        }
        if canonical {
            let tuple: Vec<Cocycle2> =
                choice.iter().enumerate().map(|(i, &c)| slot_candidates[i][c].clone()).collect();
            if stem_precheck(g, &factors, &tuple) {
                let ext = central_extension(g, &mg, &tuple, caps)?;
                assert!(ext.stem, "precheck and built extension must agree");
                assert_eq!(ext.epi.kernel().order(), mg.order());
                return Ok(ext);
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return Err(Error::Invalid(
                    "no stem extension of full multiplier size found; this is a bug".into(),
                ));
            }
            choice[i] += 1;
            if choice[i] < slot_candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// One stem extension `G~ / A'` of the base group.
pub struct StemExtension {
    pub group: FiniteGroup,
    pub epi: GroupHom,
    /// |A / A'|: the order of the stem kernel of this extension.
    pub kernel_order: u64,
}

/// All stem extensions provided by the Schur cover: one per subgroup `A'` of
/// the cover kernel, in deterministic subgroup order.
pub fn stem_extensions(g: &FiniteGroup, caps: &Caps) -> Result<Vec<StemExtension>> {
    let cover = schur_cover(g, caps)?;
    stem_extensions_of_cover(&cover)
}

pub fn stem_extensions_of_cover(cover: &CentralExtensionGroup) -> Result<Vec<StemExtension>> {
    let tg = &cover.group;
    let kernel_sub = cover.epi.kernel();
    let kernel_group = tg.subgroup(kernel_sub.elements().iter().skip(1).cloned().collect());
    let subgroups_of_a = subgroups::all_subgroups(&kernel_group);
    let mut out = Vec::new();
    for ids in &subgroups_of_a {
        let els: Vec<El> =
            ids.iter().filter(|&&i| i != 0).map(|&i| kernel_group.el(i).clone()).collect();
        let a_prime = tg.subgroup(els);
        let (quotient, q_epi) = subgroups::quotient_with_epi(tg, &a_prime)?;
        // Induced epimorphism onto the base.
        let mut map = vec![cover.base.id(); quotient.elements().len()];
        let mut seen = vec![false; quotient.elements().len()];
        for (src, img) in (0..tg.elements().len() as u32).map(|i| (i, q_epi.apply_id(i))) {
            let qid = quotient.index_of(img).unwrap() as usize;
            if !seen[qid] {
                seen[qid] = true;
                map[qid] = cover.epi.apply_id(src).clone();
            }
        }
        let epi = GroupHom::from_full_map(quotient.clone(), cover.base.clone(), map)?;
        let kernel_order = cover.kernel.order() / a_prime.order();
        // Stem conditions on the quotient kernel.
        let qk = epi.kernel();
        let center = quotient.center();
        let derived = quotient.derived_subgroup();
        for e in qk.elements() {
            assert!(center.contains_el(e), "stem kernel must be central");
            assert!(derived.contains_el(e), "stem kernel must lie in the derived subgroup");
        }
        out.push(StemExtension { group: quotient, epi, kernel_order });
    }
    Ok(out)
}

/// Stem extensions with `A'` maximal proper, i.e. stem kernel of prime order.
pub fn minimal_stem_extensions(g: &FiniteGroup, caps: &Caps) -> Result<Vec<StemExtension>> {
    let all = stem_extensions(g, caps)?;
    Ok(all
        .into_iter()
        .filter(|s| {
            let k = s.kernel_order;
            k > 1 && (2..k).all(|d| k % d != 0)
        })
        .collect())
}

/// `Ker(H^3(G, Z) -> (+) H^3(U_i, Z))` over a family of subgroups, realized
/// through the shift lattice and literal restriction of crossed
/// homomorphisms.
pub fn ker_res_h3(g: &FiniteGroup, family: &[FiniteGroup], caps: &Caps) -> Result<FinAb> {
    let nlat = h3_shift_lattice(g, caps)?;
    let d = g.gens().len();
    if d == 0 {
        return Ok(FinAb::trivial());
    }
    if d * nlat.rank() > 600 {
        return Err(Error::CapExceeded {
            what: "shift-lattice cocycle unknowns",
            actual: d * nlat.rank(),
            limit: 600,
        });
    }
    let data = cohom::h1_presentation(&nlat);
    let domain = data.finab.clone();
    if domain.is_trivial() {
        return Ok(FinAb::trivial());
    }
    let gens = data.class_generator_cocycles();

    // Image coordinates of each domain generator under all restrictions.
    let mut img_cols: Vec<u64> = Vec::new();
    let mut img_rows: Vec<Vec<i64>> = vec![Vec::new(); gens.len()];
    for u in family {
        subgroups::assert_subgroup(g, u)?;
        let restricted = nlat.restrict(u)?;
        if restricted.group().gens().is_empty() {
            continue;
        }
        let udata = cohom::h1_presentation(&restricted);
        let words: Vec<Vec<u32>> = restricted
            .group()
            .gens()
            .iter()
            .map(|e| g.word_of(g.index_of(e).unwrap()))
            .collect();
        for (gi, z) in gens.iter().enumerate() {
            let mut restricted_cocycle: Vec<BigInt> = Vec::new();
            for w in &words {
                restricted_cocycle.extend(cohom::evaluate_cocycle(&nlat, z, w));
            }
            let coords = udata.class_coords(&restricted_cocycle);
            img_rows[gi].extend(coords.iter().map(|&c| c as i64));
        }
        img_cols.extend(udata.finab.factors().iter().copied());
    }
    if img_cols.is_empty() {
        return Ok(domain);
    }
    // Kernel of the induced map between finite abelian groups.
    let s = gens.len();
    let mut rows: Vec<Vec<i64>> = img_rows;
    for (i, e) in img_cols.iter().enumerate() {
        let mut row = vec![0i64; img_cols.len()];
        row[i] = *e as i64;
        rows.push(row);
    }
    let stacked = IntMatrix::from_rows(rows);
    let ker = kernel_basis(&stacked);
    let mut kernel_gens: Vec<Vec<i64>> = Vec::new();
    for r in 0..ker.rows() {
        let coefs: Vec<i64> =
            (0..s).map(|i| ker.at(r, i).to_i64().expect("small coefficient")).collect();
        kernel_gens.push(coefs);
    }
    Ok(finab::subgroup(&domain, &kernel_gens).structure)
}

/// Default restriction family: `<H, c>` for `c` over conjugacy class
/// representatives of `G`.
pub fn default_h3_family(g: &FiniteGroup, h: &FiniteGroup) -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for class in g.conjugacy_classes() {
        let rep = class[0];
        let mut gens = h.gens().to_vec();
        gens.push(g.el(rep).clone());
        out.push(g.subgroup(gens));
    }
    out
}

/// Convenience: the cover-level first obstruction of a pair `H <= G`, used by
/// the CLI to report the total obstruction for Galois-closed data.
pub fn obs1_at_cover(
    g: &FiniteGroup,
    h: &FiniteGroup,
    scenarios: &[FiniteGroup],
    include_unramified: bool,
    caps: &Caps,
) -> Result<(crate::obstruction::ObstructionReport, CentralExtensionGroup)> {
    let cover = schur_cover(g, caps)?;
    let h_cover = cover.epi.preimage(h);
    let lifted: Vec<FiniteGroup> = scenarios.iter().map(|s| cover.epi.preimage(s)).collect();
    let report =
        crate::obstruction::obs1(&cover.group, &h_cover, &lifted, include_unramified)?;
    Ok((report, cover))
}
