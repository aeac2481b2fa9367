//! Deterministic finite-group engine.
//!
//! A group lives in one of two universes: permutations of a fixed degree, or
//! an explicit multiplication table (used for quotients and the groups built
//! from 2-cocycles, which are not born as permutation groups). Subgroups stay
//! in the ambient universe, so intersections, normalizers and double cosets
//! are plain element arithmetic.
//!
//! Element enumeration is breadth-first from the identity over the designated
//! generators; nothing here is randomized.

mod perm;
mod stabchain;
pub mod subgroups;
pub mod hom;

pub use hom::GroupHom;
pub use perm::Perm;
pub use stabchain::StabChain;
pub use subgroups::{SubgroupClass, SubgroupClassList};

use crate::abexact::{cokernel_structure, IntMatrix};
use crate::abexact::FinAb;
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;
use std::sync::OnceLock;

/// Hard safety limit on element enumeration; pipeline-level caps are far
/// lower, so hitting this is a bug.
const ENUM_LIMIT: usize = 200_000;

/// Multiplication table universe. Index 0 is always the identity.
pub struct MulTable {
    pub n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl MulTable {
    pub fn new(n: usize, mul: Vec<u32>) -> Arc<MulTable> {
        assert_eq!(mul.len(), n * n);
        for i in 0..n {
            assert_eq!(mul[i], i as u32, "index 0 must be a left identity");
            assert_eq!(mul[i * n], i as u32, "index 0 must be a right identity");
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        assert!(inv.iter().all(|&x| x != u32::MAX), "table has a non-invertible element");
        Arc::new(MulTable { n, mul, inv })
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
}

#[derive(Clone)]
pub enum Universe {
    Perms { degree: usize },
    Table(Arc<MulTable>),
}

impl Universe {
    fn same_as(&self, other: &Universe) -> bool {
        match (self, other) {
            (Universe::Perms { degree: a }, Universe::Perms { degree: b }) => a == b,
            (Universe::Table(a), Universe::Table(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

/// A group element: a permutation, or an index into a multiplication table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum El {
    Perm(Perm),
    Idx(u32),
}

impl std::fmt::Debug for El {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            El::Perm(p) => write!(f, "{p:?}"),
            El::Idx(i) => write!(f, "#{i}"),
        }
    }
}

struct EnumData {
    elems: Vec<El>,
    index: HashMap<El, u32>,
    /// BFS tree: for non-identity element i, (generator index, predecessor id)
    /// with elems[i] = elems[pred] * gens[gen].
    parent: Vec<Option<(u32, u32)>>,
}

struct Inner {
    universe: Universe,
    gens: Vec<El>,
    data: OnceLock<EnumData>,
    perm_order: OnceLock<u64>,
}

/// A finite group with deterministic element machinery. Cloning is cheap and
/// shares the enumeration.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<FiniteGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(Inner {
                universe: Universe::Perms { degree },
                gens: gens.into_iter().map(El::Perm).collect(),
                data: OnceLock::new(),
                perm_order: OnceLock::new(),
            }),
        })
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup::from_generators(degree, vec![]).unwrap()
    }

    pub fn from_table(table: Arc<MulTable>, gens: Vec<u32>) -> FiniteGroup {
        FiniteGroup {
            inner: Arc::new(Inner {
                universe: Universe::Table(table),
                gens: gens.into_iter().map(El::Idx).collect(),
                data: OnceLock::new(),
                perm_order: OnceLock::new(),
            }),
        }
    }

    /// Subgroup of the same universe generated by the given elements.
    pub fn subgroup(&self, gens: Vec<El>) -> FiniteGroup {
        FiniteGroup {
            inner: Arc::new(Inner {
                universe: self.inner.universe.clone(),
                gens,
                data: OnceLock::new(),
                perm_order: OnceLock::new(),
            }),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.inner.universe
    }

    pub fn same_universe(&self, other: &FiniteGroup) -> bool {
        self.inner.universe.same_as(&other.inner.universe)
    }

    pub fn gens(&self) -> &[El] {
        &self.inner.gens
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.inner.universe {
            Universe::Perms { degree } => Some(*degree),
            Universe::Table(_) => None,
        }
    }

    pub fn id(&self) -> El {
        match &self.inner.universe {
            Universe::Perms { degree } => El::Perm(Perm::identity(*degree)),
            Universe::Table(_) => El::Idx(0),
        }
    }

    pub fn mul(&self, a: &El, b: &El) -> El {
        match (&self.inner.universe, a, b) {
            (Universe::Perms { .. }, El::Perm(x), El::Perm(y)) => El::Perm(x.mul(y)),
            (Universe::Table(t), El::Idx(x), El::Idx(y)) => El::Idx(t.mul(*x, *y)),
            _ => panic!("element/universe mismatch"),
        }
    }

    pub fn inv(&self, a: &El) -> El {
        match (&self.inner.universe, a) {
            (Universe::Perms { .. }, El::Perm(x)) => El::Perm(x.inv()),
            (Universe::Table(t), El::Idx(x)) => El::Idx(t.inv(*x)),
            _ => panic!("element/universe mismatch"),
        }
    }

    pub fn conj(&self, x: &El, by: &El) -> El {
        self.mul(&self.mul(&self.inv(by), x), by)
    }

    pub fn commutator(&self, a: &El, b: &El) -> El {
        // [a, b] = a^-1 b^-1 a b
        self.mul(&self.mul(&self.mul(&self.inv(a), &self.inv(b)), a), b)
    }

    pub fn el_order(&self, a: &El) -> u64 {
        if let El::Perm(p) = a {
            return p.order();
        }
        let mut o = 1;
        let mut cur = a.clone();
        let id = self.id();
        while cur != id {
            cur = self.mul(&cur, a);
            o += 1;
        }
        o
    }

    fn data(&self) -> &EnumData {
        self.inner.data.get_or_init(|| {
            let id = self.id();
            let mut elems = vec![id.clone()];
            let mut index = HashMap::new();
            index.insert(id, 0u32);
            let mut parent = vec![None];
            let mut head = 0;
            while head < elems.len() {
                let cur = elems[head].clone();
                for (gi, g) in self.inner.gens.iter().enumerate() {
                    let nxt = self.mul(&cur, g);
                    if !index.contains_key(&nxt) {
                        let id = elems.len() as u32;
                        index.insert(nxt.clone(), id);
                        elems.push(nxt);
                        parent.push(Some((gi as u32, head as u32)));
                        assert!(elems.len() <= ENUM_LIMIT, "group enumeration exceeded hard limit");
                    }
                }
                head += 1;
            }
            EnumData { elems, index, parent }
        })
    }

    /// Elements in BFS order (identity first).
    pub fn elements(&self) -> &[El] {
        &self.data().elems
    }

    pub fn order(&self) -> u64 {
        // A permutation group can report its order from the stabilizer chain
        // without enumerating; do so when the enumeration is not yet built.
        if self.inner.data.get().is_none() {
            if let Universe::Perms { degree } = &self.inner.universe {
                return *self.inner.perm_order.get_or_init(|| {
                    let gens: Vec<Perm> = self
                        .inner
                        .gens
                        .iter()
                        .map(|e| match e {
                            El::Perm(p) => p.clone(),
                            _ => unreachable!(),
                        })
                        .collect();
                    StabChain::new(*degree, &gens).order()
                });
            }
        }
        self.data().elems.len() as u64
    }

    /// Order recomputed from a fresh stabilizer chain (permutation groups).
    pub fn stabilizer_chain_order(&self) -> Option<u64> {
        match &self.inner.universe {
            Universe::Perms { degree } => {
                let gens: Vec<Perm> = self
                    .inner
                    .gens
                    .iter()
                    .map(|e| match e {
                        El::Perm(p) => p.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                Some(StabChain::new(*degree, &gens).order())
            }
            Universe::Table(_) => None,
        }
    }

    pub fn index_of(&self, el: &El) -> Option<u32> {
        self.data().index.get(el).copied()
    }

    pub fn contains_el(&self, el: &El) -> bool {
        self.index_of(el).is_some()
    }

    pub fn el(&self, id: u32) -> &El {
        &self.data().elems[id as usize]
    }

    /// Generator word for an element along the BFS tree (indices into
    /// `gens()`, multiplied left to right).
    pub fn word_of(&self, mut id: u32) -> Vec<u32> {
        let data = self.data();
        let mut rev = Vec::new();
        while let Some((g, p)) = data.parent[id as usize] {
            rev.push(g);
            id = p;
        }
        rev.reverse();
        rev
    }

    pub fn mul_ids(&self, a: u32, b: u32) -> u32 {
        let r = self.mul(self.el(a), self.el(b));
        self.index_of(&r).expect("product stays in the group")
    }

    pub fn inv_id(&self, a: u32) -> u32 {
        let r = self.inv(self.el(a));
        self.index_of(&r).expect("inverse stays in the group")
    }

    // ---- permutation-action queries -------------------------------------

    pub fn orbit_of_point(&self, point: u32) -> Vec<u32> {
        let Universe::Perms { degree } = &self.inner.universe else {
            panic!("orbit_of_point needs a permutation group");
        };
        assert!((point as usize) < *degree);
        let mut seen = vec![false; *degree];
        seen[point as usize] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.inner.gens {
                let El::Perm(g) = g else { unreachable!() };
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        match &self.inner.universe {
            Universe::Perms { degree } => *degree > 0 && self.orbit_of_point(0).len() == *degree,
            Universe::Table(_) => false,
        }
    }

    /// Primitivity via minimal block systems.
    pub fn is_primitive(&self) -> bool {
        let Universe::Perms { degree } = &self.inner.universe else {
            return false;
        };
        if !self.is_transitive() {
            return false;
        }
        let n = *degree;
        if n == 1 {
            return true;
        }
        for beta in 1..n as u32 {
            if minimal_block_size(self, 0, beta) != n {
                return false;
            }
        }
        true
    }

    /// Sorted multiset of orbit lengths on the points.
    pub fn orbit_signature(&self) -> Vec<usize> {
        let Universe::Perms { degree } = &self.inner.universe else {
            return vec![];
        };
        let mut seen = vec![false; *degree];
        let mut sig = Vec::new();
        for p in 0..*degree as u32 {
            if seen[p as usize] {
                continue;
            }
            let orbit = self.orbit_of_point(p);
            for &q in &orbit {
                seen[q as usize] = true;
            }
            sig.push(orbit.len());
        }
        sig.sort_unstable();
        sig
    }

    /// Point stabilizer via orbit transversal and Schreier generators.
    pub fn stabilizer_of_point(&self, point: u32) -> FiniteGroup {
        let Universe::Perms { degree } = &self.inner.universe else {
            panic!("stabilizer_of_point needs a permutation group");
        };
        assert!((point as usize) < *degree, "point out of range");
        let gens: Vec<Perm> = self
            .inner
            .gens
            .iter()
            .map(|e| match e {
                El::Perm(p) => p.clone(),
                _ => unreachable!(),
            })
            .collect();
        let mut transversal: Vec<Option<Perm>> = vec![None; *degree];
        transversal[point as usize] = Some(Perm::identity(*degree));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            let rep = transversal[p as usize].clone().unwrap();
            for g in &gens {
                let q = g.apply(p);
                if transversal[q as usize].is_none() {
                    transversal[q as usize] = Some(rep.mul(g));
                    orbit.push(q);
                }
            }
        }
        let mut sgens = Vec::new();
        for &p in &orbit {
            let rep = transversal[p as usize].clone().unwrap();
            for g in &gens {
                let to = g.apply(p);
                let rep_to = transversal[to as usize].clone().unwrap();
                let s = rep.mul(g).mul(&rep_to.inv());
                if !s.is_identity() && !sgens.contains(&s) {
                    sgens.push(s);
                }
            }
        }
        self.subgroup(sgens.into_iter().map(El::Perm).collect())
    }

    // ---- structural subgroups -------------------------------------------

    pub fn derived_subgroup(&self) -> FiniteGroup {
        let mut seeds = Vec::new();
        for a in &self.inner.gens {
            for b in &self.inner.gens {
                let c = self.commutator(a, b);
                if c != self.id() && !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(seeds)
    }

    /// Normal closure of the subgroup generated by `seeds`.
    pub fn normal_closure(&self, seeds: Vec<El>) -> FiniteGroup {
        let mut gens: Vec<El> = Vec::new();
        let mut queue = seeds;
        // Closure of the generating set under conjugation by group generators;
        // membership is tested in the currently generated subgroup.
        while let Some(x) = queue.pop() {
            let current = self.subgroup(gens.clone());
            if current.contains_el(&x) {
                continue;
            }
            for g in &self.inner.gens {
                queue.push(self.conj(&x, g));
            }
            gens.push(x);
        }
        self.subgroup(gens)
    }

    pub fn center(&self) -> FiniteGroup {
        let els: Vec<El> = self
            .elements()
            .iter()
            .filter(|x| self.inner.gens.iter().all(|g| self.mul(x, g) == self.mul(g, x)))
            .cloned()
            .collect();
        let nontrivial: Vec<El> = els.into_iter().filter(|x| *x != self.id()).collect();
        self.subgroup(nontrivial)
    }

    pub fn is_abelian(&self) -> bool {
        self.inner
            .gens
            .iter()
            .all(|a| self.inner.gens.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A Sylow p-subgroup, grown through normalizers: while |P| is below the
    /// full p-part, some element of p-power order in N_G(P) \ P extends P.
    pub fn sylow_subgroup(&self, p: u64) -> Result<FiniteGroup> {
        let order = self.order();
        if order % p != 0 {
            return Err(Error::Invalid(format!("{p} does not divide the group order {order}")));
        }
        let mut target = 1u64;
        let mut rest = order;
        while rest % p == 0 {
            rest /= p;
            target *= p;
        }
        let mut current = self.subgroup(vec![]);
        while current.order() < target {
            let norm = subgroups::normalizer(self, &current);
            let mut extended = false;
            for x in norm.elements() {
                let o = self.el_order(x);
                if o == 1 || o % p != 0 || !is_prime_power(o, p) || current.contains_el(x) {
                    continue;
                }
                let mut gens = current.gens().to_vec();
                gens.push(x.clone());
                let bigger = self.subgroup(gens);
                if is_prime_power(bigger.order(), p) && bigger.order() > current.order() {
                    current = bigger;
                    extended = true;
                    break;
                }
            }
            assert!(extended, "Sylow growth must succeed below the full p-part");
        }
        Ok(current)
    }

    /// Element conjugacy classes as lists of element ids, each sorted, classes
    /// ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.elements().len();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n as u32 {
            if assigned[start as usize] {
                continue;
            }
            let mut class = vec![start];
            assigned[start as usize] = true;
            let mut head = 0;
            while head < class.len() {
                let x = class[head];
                head += 1;
                for g in &self.inner.gens {
                    let y = self.conj(self.el(x), g);
                    let yid = self.index_of(&y).unwrap();
                    if !assigned[yid as usize] {
                        assigned[yid as usize] = true;
                        class.push(yid);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Smallest generating tuple found by deterministic search (singletons,
    /// then pairs, then triples, ... by element id).
    pub fn minimal_generating_els(&self) -> Vec<El> {
        let n = self.elements().len() as u32;
        if n == 1 {
            return vec![];
        }
        let order = self.order();
        for a in 1..n {
            if self.subgroup(vec![self.el(a).clone()]).order() == order {
                return vec![self.el(a).clone()];
            }
        }
        for a in 1..n {
            for b in a + 1..n {
                let g = self.subgroup(vec![self.el(a).clone(), self.el(b).clone()]);
                if g.order() == order {
                    return vec![self.el(a).clone(), self.el(b).clone()];
                }
            }
        }
        for a in 1..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let g = self.subgroup(vec![
                        self.el(a).clone(),
                        self.el(b).clone(),
                        self.el(c).clone(),
                    ]);
                    if g.order() == order {
                        return vec![self.el(a).clone(), self.el(b).clone(), self.el(c).clone()];
                    }
                }
            }
        }
        // Fall back to the designated generators.
        self.inner.gens.clone()
    }

    /// Abelianization with coordinates for every element.
    pub fn abelianization(&self) -> Abelianization {
        let d = self.inner.gens.len();
        if d == 0 {
            return Abelianization {
                group: FinAb::trivial(),
                gen_coords: vec![],
                adapted_elements: vec![],
            };
        }
        let pres = crate::cohom::cayley_presentation(self);
        let mut rows = Vec::new();
        for rel in pres.relators() {
            let mut row = vec![0i64; d];
            for &s in rel {
                if s > 0 {
                    row[(s - 1) as usize] += 1;
                } else {
                    row[(-s - 1) as usize] -= 1;
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            rows.push(vec![0i64; d]);
        }
        let coker = cokernel_structure(&IntMatrix::from_rows(rows));
        assert_eq!(coker.free_rank, 0, "abelianization of a finite group is finite");
        let finab = coker.finab.clone();
        use num_traits::ToPrimitive;
        let gen_coords: Vec<Vec<i64>> = coker
            .witness
            .iter()
            .map(|w| w.iter().map(|x| x.to_i64().expect("coordinate fits i64")).collect())
            .collect();
        // Realize each adapted generator as a group element.
        let mut adapted_elements = Vec::new();
        for lift in &coker.adapted_lifts {
            let mut el = self.id();
            for (i, c) in lift.iter().enumerate() {
                let c = c.to_i64().expect("lift coefficient fits i64");
                let base = if c >= 0 {
                    self.inner.gens[i].clone()
                } else {
                    self.inv(&self.inner.gens[i])
                };
                for _ in 0..c.unsigned_abs() {
                    el = self.mul(&el, &base);
                }
            }
            adapted_elements.push(el);
        }
        Abelianization { group: finab, gen_coords, adapted_elements }
    }

    /// Faithful permutation representation by right multiplication on the
    /// element list.
    pub fn regular_representation(&self) -> FiniteGroup {
        let n = self.elements().len();
        let gens: Vec<Perm> = self
            .inner
            .gens
            .iter()
            .map(|g| {
                let images: Vec<u32> =
                    (0..n as u32).map(|i| self.mul_ids(i, self.index_of(g).unwrap())).collect();
                Perm::from_images(images).unwrap()
            })
            .collect();
        FiniteGroup::from_generators(n, gens).unwrap()
    }
}

fn is_prime_power(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Size of the minimal block containing {alpha, beta} for a transitive group.
fn minimal_block_size(g: &FiniteGroup, alpha: u32, beta: u32) -> usize {
    let Universe::Perms { degree } = &g.inner.universe else { unreachable!() };
    let n = *degree;
    // Union-find with path compression.
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut queue = vec![(alpha, beta)];
    let (ra, rb) = (find(&mut parent, alpha), find(&mut parent, beta));
    parent[ra as usize] = rb;
    while let Some((a, b)) = queue.pop() {
        for gel in &g.inner.gens {
            let El::Perm(p) = gel else { unreachable!() };
            let (ia, ib) = (p.apply(a), p.apply(b));
            let (fa, fb) = (find(&mut parent, ia), find(&mut parent, ib));
            if fa != fb {
                parent[fa as usize] = fb;
                queue.push((ia, ib));
            }
        }
    }
    let root = find(&mut parent, alpha);
    (0..n as u32).filter(|&x| find(&mut parent, x) == root).count()
}

/// Abelianization `G / [G,G]` with a coordinate map.
pub struct Abelianization {
    pub group: FinAb,
    /// Coordinates of the designated generators of `G`.
    pub gen_coords: Vec<Vec<i64>>,
    /// For each invariant factor, a group element realizing that generator.
    pub adapted_elements: Vec<El>,
}

impl Abelianization {
    /// Coordinates of an arbitrary element, via its generator word.
    pub fn coords_of(&self, group: &FiniteGroup, el: &El) -> Vec<u64> {
        let id = group.index_of(el).expect("element of the group");
        let word = group.word_of(id);
        let rank = self.group.rank();
        let mut acc = vec![0i64; rank];
        for g in word {
            for (i, c) in self.gen_coords[g as usize].iter().enumerate() {
                acc[i] += *c;
            }
        }
        self.group.reduce(&acc)
    }
}

#[cfg(test)]
mod tests;
