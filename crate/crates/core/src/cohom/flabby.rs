//! Flabby/coflabby predicates and the flabby resolution
//! `0 -> M -> P -> F -> 0` with `P` a sum of coset lattices and `F` flabby.
//!
//! Construction: work with the dual `M*`. Walk the subgroup classes `U` in
//! decreasing order, growing a permutation lattice `P* = (+) Z[G/U]` and a map
//! `rho: P* -> M*` sending the distinguished coset of each summand to a chosen
//! `U`-fixed vector, until the `U`-fixed part of the image spans `(M*)^U` for
//! every class (the last class is the trivial subgroup, giving surjectivity).
//! Then `F` is the dual of `ker rho`; surjectivity of every `rho^U` makes the
//! kernel coflabby, hence its dual flabby.

use crate::abexact::{kernel_basis, snf, FinAb, HnfSolver, IntMatrix};
use crate::groups::subgroups::SubgroupClassList;
use crate::groups::FiniteGroup;
use crate::lattice::{coset_lattice, coset_perm_of, coset_table, CosetTable, GLattice};
use crate::{Caps, Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

pub fn is_flabby(m: &GLattice, classes: &SubgroupClassList) -> Result<bool> {
    let results: Vec<Result<FinAb>> = classes
        .classes
        .par_iter()
        .map(|class| super::tate_h_minus1(&m.restrict(&class.rep)?))
        .collect();
    for r in results {
        if !r?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_coflabby(m: &GLattice, classes: &SubgroupClassList) -> Result<bool> {
    let results: Vec<Result<FinAb>> = classes
        .classes
        .par_iter()
        .map(|class| Ok(super::h1(&m.restrict(&class.rep)?)))
        .collect();
    for r in results {
        if !r?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic summand-selection strategies; both produce a valid flabby
/// resolution and must give the same `H^1(G, F)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ResolutionStrategy {
    /// Add fixed-basis vectors only while the image is short of `(M*)^U`.
    GreedyMinimal,
    /// Add a summand for every fixed-basis vector of every class.
    AllFixedGenerators,
}

pub struct FlabbyResolution {
    pub m: GLattice,
    pub p: GLattice,
    pub f: GLattice,
    /// `M -> P` as a row-vector map (rank(M) x rank(P)).
    pub embedding: IntMatrix,
    /// `P -> F` as a row-vector map (rank(P) x rank(F)).
    pub projection: IntMatrix,
    /// Class index and chosen fixed vector per summand.
    pub summands: Vec<(usize, Vec<BigInt>)>,
}

struct Summand {
    class_idx: usize,
    /// Image rows of the coset basis vectors under rho (cosets x rank(M*)).
    rows: IntMatrix,
    /// Coset permutations per designated generator of G, and their inverses.
    perms: Vec<Vec<u32>>,
    perms_inv: Vec<Vec<u32>>,
    w: Vec<BigInt>,
}

/// Images of the `U`-fixed orbit-sum basis of the current `P*` under rho.
fn u_fixed_image(
    g: &FiniteGroup,
    _md: &GLattice,
    u_gens: &[crate::groups::El],
    summands: &[Summand],
    tables: &[Option<CosetTable>],
    n: usize,
) -> IntMatrix {
    let mut img = IntMatrix::zeros(0, n);
    for s in summands {
        let table = tables[s.class_idx].as_ref().unwrap();
        let cosets = table.reps.len();
        let perms: Vec<Vec<u32>> = u_gens.iter().map(|e| coset_perm_of(g, table, e)).collect();
        let mut seen = vec![false; cosets];
        for start in 0..cosets {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for p in &perms {
                    let y = p[x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            let mut row = IntMatrix::zeros(1, n);
            for &j in &orbit {
                for c in 0..n {
                    row.set(0, c, row.at(0, c) + s.rows.at(j, c));
                }
            }
            img = img.vstack(&row);
        }
    }
    img
}

#[allow(clippy::too_many_arguments)]
fn add_summand(
    g: &FiniteGroup,
    md: &GLattice,
    classes: &SubgroupClassList,
    ci: usize,
    w: Vec<BigInt>,
    summands: &mut Vec<Summand>,
    tables: &mut [Option<CosetTable>],
    total_rank: &mut usize,
    caps: &Caps,
) -> Result<()> {
    let n = md.rank();
    let d = g.gens().len();
    if tables[ci].is_none() {
        tables[ci] = Some(coset_table(g, &classes.classes[ci].rep)?);
    }
    let table = tables[ci].as_ref().unwrap();
    let cosets = table.reps.len();
    *total_rank += cosets;
    if *total_rank > caps.max_rank {
        return Err(Error::CapExceeded {
            what: "flabby resolution rank",
            actual: *total_rank,
            limit: caps.max_rank,
        });
    }
    // rows[j] = w * action(rep_j), built along the coset BFS.
    let mut rows = IntMatrix::zeros(cosets, n);
    for (c, val) in w.iter().enumerate() {
        rows.set(0, c, val.clone());
    }
    let mut done = vec![false; cosets];
    done[0] = true;
    let mut frontier = vec![0usize];
    while let Some(j) = frontier.pop() {
        for gi in 0..d {
            let gid = g.index_of(&g.gens()[gi]).unwrap();
            let t = g.mul_ids(table.reps[j], gid);
            let cj = table.coset_of[t as usize] as usize;
            if !done[cj] {
                done[cj] = true;
                let mut row = vec![BigInt::from(0); n];
                let act = md.action(gi);
                for r in 0..n {
                    let v = rows.at(j, r);
                    if v == BigInt::from(0) {
                        continue;
                    }
                    for (c, slot) in row.iter_mut().enumerate() {
                        let a = act.at(r, c);
                        if a != BigInt::from(0) {
                            *slot += &v * a;
                        }
                    }
                }
                for (c, val) in row.into_iter().enumerate() {
                    rows.set(cj, c, val);
                }
                frontier.push(cj);
            }
        }
    }
    let perms: Vec<Vec<u32>> = g.gens().iter().map(|e| coset_perm_of(g, table, e)).collect();
    let perms_inv: Vec<Vec<u32>> =
        g.gens().iter().map(|e| coset_perm_of(g, table, &g.inv(e))).collect();
    summands.push(Summand { class_idx: ci, rows, perms, perms_inv, w });
    Ok(())
}

pub fn flabby_resolution(
    m: &GLattice,
    classes: &SubgroupClassList,
    strategy: ResolutionStrategy,
    caps: &Caps,
) -> Result<FlabbyResolution> {
    let g = m.group().clone();
    let n = m.rank();
    let d = g.gens().len();
    if n == 0 {
        let f = GLattice::trivial(g.clone(), 0);
        return Ok(FlabbyResolution {
            m: m.clone(),
            p: GLattice::trivial(g, 0),
            f,
            embedding: IntMatrix::zeros(0, 0),
            projection: IntMatrix::zeros(0, 0),
            summands: vec![],
        });
    }
    let md = m.dual();

    // Classes in decreasing order of subgroup size (ties keep list order, so
    // the trivial class comes last).
    let mut order: Vec<usize> = (0..classes.classes.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(classes.classes[i].members.len()));

    // Coset tables and restricted fixed bases, cached per class.
    let mut tables: Vec<Option<CosetTable>> = (0..classes.classes.len()).map(|_| None).collect();
    let mut summands: Vec<Summand> = Vec::new();
    let mut total_rank = 0usize;

    for &ci in &order {
        let u = &classes.classes[ci].rep;
        let restricted = md.restrict(u)?;
        let fixed = restricted.fixed_sublattice();
        if fixed.rows() == 0 {
            continue;
        }
        let u_gens = u.canonical_gens();
        match strategy {
            ResolutionStrategy::AllFixedGenerators => {
                for r in 0..fixed.rows() {
                    let w: Vec<BigInt> = (0..n).map(|c| fixed.at(r, c)).collect();
                    add_summand(&g, &md, classes, ci, w, &mut summands, &mut tables, &mut total_rank, caps)?;
                }
            }
            ResolutionStrategy::GreedyMinimal => loop {
                let img = u_fixed_image(&g, &md, &u_gens, &summands, &tables, n);
                let solver = HnfSolver::new(&img);
                let missing = (0..fixed.rows()).find(|&r| {
                    let row: Vec<BigInt> = (0..n).map(|c| fixed.at(r, c)).collect();
                    !solver.contains_row(&row)
                });
                match missing {
                    None => break,
                    Some(r) => {
                        let w: Vec<BigInt> = (0..n).map(|c| fixed.at(r, c)).collect();
                        add_summand(&g, &md, classes, ci, w, &mut summands, &mut tables, &mut total_rank, caps)?;
                    }
                }
            },
        }
    }

    // Assemble rho as a matrix P* -> M*.
    let p_rank = total_rank;
    let mut rho = IntMatrix::zeros(0, n);
    for s in &summands {
        rho = rho.vstack(&s.rows);
    }
    debug_assert_eq!(rho.rows(), p_rank);

    // Exactness: rho is surjective with saturated kernel.
    {
        let dec = snf(&rho);
        let diag = dec.diagonal();
        assert_eq!(dec.rank(), n, "rho must be surjective");
        assert!(diag.iter().take(n).all(|x| x == &BigInt::one()), "rho must be a lattice surjection");
    }

    let k = kernel_basis(&rho);
    let f_rank = k.rows();
    debug_assert_eq!(f_rank, p_rank - n);

    // F* action: solve A_s from K sigma(s) = A_s K, where sigma permutes the
    // coset columns blockwise.
    let move_columns = |k: &IntMatrix, which: &dyn Fn(&Summand) -> &Vec<Vec<u32>>, gi: usize| {
        let mut out = IntMatrix::zeros(k.rows(), k.cols());
        let mut offset = 0usize;
        for s in &summands {
            let perm = &which(s)[gi];
            for (j, &img) in perm.iter().enumerate() {
                for r in 0..k.rows() {
                    let v = k.at(r, offset + j);
                    if v != BigInt::from(0) {
                        out.set(r, offset + img as usize, v);
                    }
                }
            }
            offset += perm.len();
        }
        out
    };

    let ksolver = HnfSolver::new(&k);
    let mut fdual_action = Vec::new();
    let mut fdual_action_inv = Vec::new();
    for gi in 0..d {
        let moved = move_columns(&k, &|s: &Summand| &s.perms, gi);
        let a = ksolver.solve(&moved).expect("kernel is G-stable");
        let moved_inv = move_columns(&k, &|s: &Summand| &s.perms_inv, gi);
        let ainv = ksolver.solve(&moved_inv).expect("kernel is G-stable");
        fdual_action.push(a);
        fdual_action_inv.push(ainv);
    }
    let fdual = GLattice::new(g.clone(), f_rank, fdual_action, fdual_action_inv);
    let f = fdual.dual();

    // P as a direct sum of coset lattices (self-dual).
    let mut p: Option<GLattice> = None;
    for s in &summands {
        let (lat, _) = coset_lattice(&g, &classes.classes[s.class_idx].rep)?;
        p = Some(match p {
            None => lat,
            Some(acc) => acc.direct_sum(&lat),
        });
    }
    let p = p.unwrap_or_else(|| GLattice::trivial(g.clone(), 0));

    let embedding = rho.transpose();
    let projection = k.transpose();
    debug_assert!(embedding.mul(&projection).is_zero());

    let summand_info: Vec<(usize, Vec<BigInt>)> =
        summands.iter().map(|s| (s.class_idx, s.w.clone())).collect();
    Ok(FlabbyResolution { m: m.clone(), p, f, embedding, projection, summands: summand_info })
}
