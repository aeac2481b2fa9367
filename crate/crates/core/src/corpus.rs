//! Named groups used by the test corpus and the bundled data files: classical
//! families, regular representations of small abstract groups, and the two
//! degree-16 primitive groups whose generators we carry verbatim.

use crate::groups::{El, FiniteGroup, MulTable, Perm};

fn perm(degree: usize, s: &str) -> Perm {
    Perm::parse_cycles(degree, s).expect("valid cycle string")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    FiniteGroup::from_generators(n, vec![Perm::from_images(images).unwrap()]).unwrap()
}

pub fn symmetric(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    let mut gens = vec![perm(n, "(1,2)")];
    if n > 2 {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        gens.push(Perm::from_images(cycle).unwrap());
    }
    FiniteGroup::from_generators(n, gens).unwrap()
}

pub fn alternating(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let mut gens = vec![perm(n, "(1,2,3)")];
    if n > 3 {
        // (3,4,...,n) when that cycle is even, (1,2)(3,4,...,n) otherwise.
        let tail_len = n - 2;
        let mut images: Vec<u32> = (0..n as u32).collect();
        for i in 2..n {
            images[i] = if i + 1 < n { i as u32 + 1 } else { 2 };
        }
        if tail_len % 2 == 0 {
            images.swap(0, 1);
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    FiniteGroup::from_generators(n, gens).unwrap()
}

/// Dihedral group of order 2n acting on n points.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    // Reflection fixing point 1: i -> n + 2 - i (1-based).
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    FiniteGroup::from_generators(
        n,
        vec![Perm::from_images(rot).unwrap(), Perm::from_images(refl).unwrap()],
    )
    .unwrap()
}

/// The Klein four group in its transitive degree-4 action.
pub fn v4() -> FiniteGroup {
    FiniteGroup::from_generators(4, vec![perm(4, "(1,2)(3,4)"), perm(4, "(1,3)(2,4)")]).unwrap()
}

/// Frobenius group of order 20 on 5 points.
pub fn f20() -> FiniteGroup {
    FiniteGroup::from_generators(5, vec![perm(5, "(1,2,3,4,5)"), perm(5, "(2,3,5,4)")]).unwrap()
}

/// Frobenius group of order 21 on 7 points.
pub fn f21() -> FiniteGroup {
    FiniteGroup::from_generators(7, vec![perm(7, "(1,2,3,4,5,6,7)"), perm(7, "(2,3,5)(4,7,6)")])
        .unwrap()
}

/// Regular representation of a direct sum of cyclic groups, on
/// `prod(factors)` points.
pub fn abelian_regular(factors: &[u64]) -> FiniteGroup {
    let n: u64 = factors.iter().product();
    assert!(n >= 1);
    let idx = |coords: &[u64]| -> u32 {
        let mut acc = 0u64;
        for (c, f) in coords.iter().zip(factors) {
            acc = acc * f + c;
        }
        acc as u32
    };
    let mut gens = Vec::new();
    for gi in 0..factors.len() {
        let mut images = vec![0u32; n as usize];
        let mut coords = vec![0u64; factors.len()];
        for _ in 0..n {
            let mut shifted = coords.clone();
            shifted[gi] = (shifted[gi] + 1) % factors[gi];
            images[idx(&coords) as usize] = idx(&shifted);
            for d in (0..factors.len()).rev() {
                coords[d] += 1;
                if coords[d] < factors[d] {
                    break;
                }
                coords[d] = 0;
            }
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    FiniteGroup::from_generators(n as usize, gens).unwrap()
}

/// Quaternion group of order 8 (elements `{±1, ±i, ±j, ±k}`), exposed through
/// its regular representation.
pub fn quaternion() -> FiniteGroup {
    // Encoding: index = axis*2 + (sign < 0), axes 0=1, 1=i, 2=j, 3=k.
    fn mul(a: usize, b: usize) -> usize {
        let (sa, xa) = (a % 2 == 1, a / 2);
        let (sb, xb) = (b % 2 == 1, b / 2);
        let (xs, neg) = match (xa, xb) {
            (0, y) => (y, false),
            (x, 0) => (x, false),
            (1, 1) | (2, 2) | (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        };
        let sign = (sa ^ sb) ^ neg;
        xs * 2 + sign as usize
    }
    let mut table = vec![0u32; 64];
    for a in 0..8 {
        for b in 0..8 {
            table[a * 8 + b] = mul(a, b) as u32;
        }
    }
    let t = MulTable::new(8, table);
    let g = FiniteGroup::from_table(t, vec![2, 4]); // i and j
    g.regular_representation()
}

/// `16T178`, the degree-16 primitive group of order 80.
pub fn t16_178() -> FiniteGroup {
    FiniteGroup::from_generators(
        16,
        vec![
            perm(16, "(2,7,11,10,5)(3,8,12,15,9)(4,13,16,14,6)"),
            perm(16, "(1,11)(2,8)(3,9)(4,14)(5,15)(6,12)(7,13)(10,16)"),
        ],
    )
    .unwrap()
}

/// `16T708`, the degree-16 primitive group of order 288.
pub fn t16_708() -> FiniteGroup {
    FiniteGroup::from_generators(
        16,
        vec![
            perm(16, "(3,16)(4,11)(5,9)(6,10)(7,8)(12,15)"),
            perm(16, "(2,3,16)(4,14,11)(5,13,9)(6,15,8)(7,12,10)"),
            perm(16, "(2,13,14)(3,9,11)(4,16,5)(6,8,15)(7,12,10)"),
            perm(16, "(1,11)(2,8)(3,9)(4,14)(5,15)(6,12)(7,13)(10,16)"),
        ],
    )
    .unwrap()
}

/// Deterministic corpus of transitive groups of degree <= 8 used by the
/// property suite.
pub fn transitive_corpus_deg_le8() -> Vec<(String, FiniteGroup)> {
    vec![
        ("C2".into(), cyclic(2)),
        ("C3".into(), cyclic(3)),
        ("S3".into(), symmetric(3)),
        ("C4".into(), cyclic(4)),
        ("V4".into(), v4()),
        ("D4".into(), dihedral(4)),
        ("A4".into(), alternating(4)),
        ("S4".into(), symmetric(4)),
        ("C5".into(), cyclic(5)),
        ("D5".into(), dihedral(5)),
        ("F20".into(), f20()),
        ("A5".into(), alternating(5)),
        ("C6".into(), cyclic(6)),
        ("D6".into(), dihedral(6)),
        ("S3reg".into(), symmetric(3).regular_representation()),
        ("C7".into(), cyclic(7)),
        ("D7".into(), dihedral(7)),
        ("F21".into(), f21()),
        ("C8".into(), cyclic(8)),
        ("D8".into(), dihedral(8)),
        ("C2xC2xC2".into(), abelian_regular(&[2, 2, 2])),
        ("C4xC2".into(), abelian_regular(&[4, 2])),
        ("Q8".into(), quaternion()),
        ("D4reg".into(), dihedral(4).regular_representation()),
    ]
}

/// Cycle strings of a permutation group's generators (for bundling).
pub fn generator_strings(g: &FiniteGroup) -> Vec<String> {
    g.gens()
        .iter()
        .map(|e| match e {
            El::Perm(p) => p.cycle_string(),
            El::Idx(_) => panic!("only permutation groups can be bundled"),
        })
        .collect()
}
