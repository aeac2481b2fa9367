use super::modular::{left_kernel_modpk, quotient_modpk, BitRow, Gf2Echelon, ModMat};
use super::*;
use num_traits::One;
use proptest::prelude::*;

fn mat(rows: Vec<Vec<i64>>) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

// --- independent oracles ---------------------------------------------------

/// gcd of all k x k minors (0 when all vanish).
fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
    use num_integer::Integer;
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }
    let mut g = BigInt::from(0);
    for rs in combos(a.rows(), k) {
        for cs in combos(a.cols(), k) {
            let mut sub = IntMatrix::zeros(k, k);
            for (i, &r) in rs.iter().enumerate() {
                for (j, &c) in cs.iter().enumerate() {
                    sub.set(i, j, a.at(r, c));
                }
            }
            g = g.gcd(&sub.det());
        }
    }
    g
}

/// Elementary divisors from minor gcds: d_k = g_k / g_{k-1}.
fn elementary_divisor_oracle(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows().min(a.cols());
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=n {
        let g = minor_gcd(a, k);
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Size of the subgroup of (Z/m)^n generated by the rows of `a`, by closure.
fn span_size_mod(a: &IntMatrix, m: u64) -> u64 {
    use std::collections::HashSet;
    let n = a.cols();
    let rows: Vec<Vec<u64>> = (0..a.rows())
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = a.at(i, j) % BigInt::from(m);
                    let v = if v < BigInt::from(0) { v + BigInt::from(m) } else { v };
                    use num_traits::ToPrimitive;
                    v.to_u64().unwrap()
                })
                .collect()
        })
        .collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(vec![0; n]);
    let mut frontier = vec![vec![0; n]];
    while let Some(v) = frontier.pop() {
        for r in &rows {
            let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen.len() as u64
}

/// Brute-force oracle for finite cokernels. Uses the identity
/// `Z^n / L = (Z/e)^n / span(A mod e)` (valid because `e * Z^n` lies in `L`
/// when `e` is the exponent), then recovers the invariant factors by counting
/// elements killed by each prime power.
///
/// `e` must be a multiple of the exponent of the (finite) cokernel; the
/// determinantal elementary-divisor oracle supplies it independently.
fn cokernel_counting_oracle(a: &IntMatrix, e: u64) -> Vec<u64> {
    use num_traits::ToPrimitive;
    use std::collections::HashSet;
    let n = a.cols();
    let span = {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let rows: Vec<Vec<u64>> = (0..a.rows())
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = a.at(i, j) % BigInt::from(e);
                        if v < BigInt::from(0) {
                            v += BigInt::from(e);
                        }
                        v.to_u64().unwrap()
                    })
                    .collect()
            })
            .collect();
        seen.insert(vec![0; n]);
        let mut frontier = vec![vec![0u64; n]];
        while let Some(v) = frontier.pop() {
            for r in &rows {
                let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % e).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen
    };
    // Enumerate (Z/e)^n once; count for each prime power p^j how many cosets
    // are killed by it: #{v : p^j v in span} / |span|.
    let mut primes = Vec::new();
    let mut rest = e;
    for p in 2..=e {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
    }
    let mut all: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(all.len() * e as usize);
        for v in &all {
            for x in 0..e {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        all = next;
    }
    let mut parts: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut counts = Vec::new(); // c_j = log_p #(elements killed by p^j)
        let mut j = 0u32;
        loop {
            j += 1;
            let pj = p.pow(j);
            let killed = all
                .iter()
                .filter(|v| {
                    let w: Vec<u64> = v.iter().map(|x| (x * pj) % e).collect();
                    span.contains(&w)
                })
                .count() as u64
                / span.len() as u64;
            let mut log = 0u32;
            let mut q = killed;
            while q > 1 {
                assert!(q % p == 0);
                q /= p;
                log += 1;
            }
            counts.push(log);
            let prev = if j == 1 { 0 } else { counts[(j - 2) as usize] };
            if log == prev {
                break;
            }
        }
        // #factors with v_p >= j is c_j - c_{j-1}; the i-th largest valuation
        // is the number of levels j whose count exceeds i.
        let mut ns: Vec<u32> = Vec::new();
        for j in 1..=counts.len() {
            let c_j = counts[j - 1];
            let c_prev = if j == 1 { 0 } else { counts[j - 2] };
            ns.push(c_j - c_prev);
        }
        let total = ns.first().copied().unwrap_or(0);
        let vals: Vec<u32> =
            (0..total).map(|i| ns.iter().filter(|&&n| n > i).count() as u32).collect();
        let powers: Vec<u64> = vals.iter().filter(|v| **v > 0).map(|v| p.pow(*v)).collect();
        if !powers.is_empty() {
            parts.push(powers);
        }
    }
    // Combine into an invariant chain: align descending prime powers.
    let mut cols: Vec<Vec<u64>> = parts
        .iter()
        .map(|part| {
            let mut s = part.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            s
        })
        .collect();
    let depth = cols.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut chain = Vec::new();
    for i in 0..depth {
        let mut d = 1;
        for c in &mut cols {
            if i < c.len() {
                d *= c[i];
            }
        }
        if d >= 2 {
            chain.push(d);
        }
    }
    chain.reverse();
    chain
}

// --- frozen examples --------------------------------------------------------

#[test]
fn hnf_identity() {
    let a = IntMatrix::identity(2);
    let (h, u) = hnf(&a);
    assert_eq!(h, IntMatrix::identity(2));
    assert_eq!(u, IntMatrix::identity(2));
}

#[test]
fn hnf_worked_example() {
    // Hand reduction: swap rows, clear below, giving [[1,3],[0,2]]; our
    // convention also reduces the entry above the pivot 2, giving [[1,1],[0,2]].
    // Both span the same lattice.
    let a = mat(vec![vec![2, 4], vec![1, 3]]);
    let (h, u) = hnf(&a);
    assert_eq!(h, mat(vec![vec![1, 1], vec![0, 2]]));
    assert_eq!(u.mul(&a), h);
    let d = u.det();
    assert!(d == BigInt::one() || d == -BigInt::one());
    // Same row lattice as the hand-derived form.
    let hand = mat(vec![vec![1, 3], vec![0, 2]]);
    assert!(in_row_span(&h, &[hand.at(0, 0), hand.at(0, 1)]));
    assert!(in_row_span(&h, &[hand.at(1, 0), hand.at(1, 1)]));
    assert!(in_row_span(&hand, &[h.at(0, 0), h.at(0, 1)]));
    assert!(in_row_span(&hand, &[h.at(1, 0), h.at(1, 1)]));
}

#[test]
fn hnf_zero() {
    let a = IntMatrix::zeros(2, 3);
    let (h, u) = hnf(&a);
    assert!(h.is_zero());
    assert_eq!(u, IntMatrix::identity(2));
}

#[test]
fn snf_diag_6_4() {
    // Elementary divisors: gcd of entries is 2, product of 2x2 minors is 24.
    let a = mat(vec![vec![6, 0], vec![0, 4]]);
    let dec = snf(&a);
    assert_eq!(dec.diagonal(), vec![BigInt::from(2), BigInt::from(12)]);
    assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.s);
    assert_eq!(elementary_divisor_oracle(&a), vec![BigInt::from(2), BigInt::from(12)]);
}

#[test]
fn snf_identity_and_zero() {
    let dec = snf(&IntMatrix::identity(3));
    assert_eq!(dec.diagonal(), vec![BigInt::one(); 3]);
    let dec = snf(&mat(vec![vec![0]]));
    assert_eq!(dec.diagonal(), vec![BigInt::from(0)]);
}

#[test]
fn kernel_examples() {
    // Two rows, one column: kernel spanned by (1, -1).
    let a = mat(vec![vec![1], vec![1]]);
    let k = kernel_basis(&a);
    assert_eq!(k.rows(), 1);
    assert!(k.mul(&a).is_zero());
    let r = k.row_i64(0).unwrap();
    assert!(r == vec![1, -1] || r == vec![-1, 1]);

    assert_eq!(kernel_basis(&IntMatrix::identity(3)).rows(), 0);
    assert_eq!(kernel_basis(&mat(vec![vec![2, 4]])).rows(), 0);
}

#[test]
fn cokernel_examples() {
    let c = cokernel_structure(&mat(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]));
    assert_eq!(c.finab.factors(), &[2, 2, 2]);
    assert_eq!(c.free_rank, 0);

    let c = cokernel_structure(&mat(vec![vec![2, 0], vec![0, 1]]));
    assert_eq!(c.finab.factors(), &[2]);

    // 2 * identity_6: the shape of the largest elementary-abelian answer.
    let mut a = IntMatrix::zeros(6, 6);
    for i in 0..6 {
        a.set_i64(i, i, 2);
    }
    let c = cokernel_structure(&a);
    assert_eq!(c.finab.factors(), &[2, 2, 2, 2, 2, 2]);
}

#[test]
fn cokernel_witness_coordinates() {
    // Z^2 / <(2,0),(0,1)>: e_0 maps to the generator of Z/2, e_1 to 0.
    let c = cokernel_structure(&mat(vec![vec![2, 0], vec![0, 1]]));
    assert_eq!(c.witness.len(), 2);
    let w0 = &c.witness[0];
    let w1 = &c.witness[1];
    assert_eq!(w0.len(), 1);
    assert!(w0[0] == BigInt::one());
    assert!(w1[0].is_zero());
}

#[test]
fn solve_left_membership() {
    let a = mat(vec![vec![2, 0], vec![0, 3]]);
    let b = mat(vec![vec![4, 3]]);
    let x = solve_left(&a, &b).unwrap();
    assert_eq!(x.mul(&a), b);
    assert!(solve_left(&a, &mat(vec![vec![1, 0]])).is_none());
}

#[test]
fn finab_basics() {
    assert_eq!(FinAb::trivial().order(), 1);
    assert_eq!(FinAb::new(vec![2, 10]).order(), 20);
    let combined = FinAb::from_prime_power_parts(&[vec![2, 2], vec![5]]);
    assert_eq!(combined.factors(), &[2, 10]);
    let combined = FinAb::from_prime_power_parts(&[vec![4, 2], vec![3], vec![5]]);
    assert_eq!(combined.factors(), &[2, 60]);
}

#[test]
fn finab_subgroup_and_quotient() {
    // <(1,0),(0,5)> inside Z/2 x Z/10 is (Z/2)^2.
    let ambient = FinAb::new(vec![2, 10]);
    let s = finab::subgroup(&ambient, &[vec![1, 0], vec![0, 5]]);
    assert_eq!(s.structure.factors(), &[2, 2]);

    // Quotient of the full group by that subgroup: order 20/4 = 5.
    let full = vec![vec![1, 0], vec![0, 1]];
    let q = finab::quotient(&ambient, &full, &[vec![1, 0], vec![0, 5]]);
    assert_eq!(q.factors(), &[5]);

    assert!(finab::contains(&ambient, &[vec![1, 0], vec![0, 5]], &[1, 5]));
    assert!(!finab::contains(&ambient, &[vec![0, 5]], &[1, 0]));
    assert!(finab::subgroup_leq(&ambient, &[vec![0, 5]], &[vec![1, 0], vec![0, 5]]));
    assert!(finab::same_subgroup(&ambient, &[vec![1, 5]], &[vec![1, 5], vec![0, 0]]));
}

// --- modular ----------------------------------------------------------------

#[test]
fn gf2_echelon_nullspace() {
    // x0 + x1 = 0, x1 + x2 = 0 over GF(2): nullspace = {(1,1,1)}.
    let mut e = Gf2Echelon::new(3);
    let mut r1 = BitRow::zeros(3);
    r1.set(0, true);
    r1.set(1, true);
    let mut r2 = BitRow::zeros(3);
    r2.set(1, true);
    r2.set(2, true);
    assert!(e.insert(r1));
    assert!(e.insert(r2));
    let ns = e.nullspace();
    assert_eq!(ns.len(), 1);
    assert!(ns[0].get(0) && ns[0].get(1) && ns[0].get(2));
}

#[test]
fn modpk_kernel() {
    // x * [2] = 0 mod 4: solutions 2Z/4, one generator of order 2.
    let mut b = ModMat::zeros(1, 1, 4);
    b.set(0, 0, 2);
    let gens = left_kernel_modpk(&b, 2, 2);
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].order, 2);
    assert_eq!(gens[0].vec[0] % 4, 2);
}

#[test]
fn modpk_quotient() {
    // span{(1,0),(0,2)} / span{(0,2)} in (Z/4)^2 = Z/4.
    let q = quotient_modpk(&[vec![1, 0], vec![0, 2]], &[vec![0, 2]], 2, 2, 2);
    assert_eq!(q, vec![4]);
    // span{(2,0)} / 0 in (Z/4)^2 = Z/2.
    let q = quotient_modpk(&[vec![2, 0]], &[], 2, 2, 2);
    assert_eq!(q, vec![2]);
}

// --- properties ---------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_properties(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i64 - 5
        };
        let data: Vec<i64> = (0..rows*cols).map(|_| next()).collect();
        let a = IntMatrix::from_flat(rows, cols, data);
        let dec = snf(&a);
        prop_assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.s.clone());
        let du = dec.u.det();
        let dv = dec.v.det();
        prop_assert!(du == BigInt::one() || du == -BigInt::one());
        prop_assert!(dv == BigInt::one() || dv == -BigInt::one());
        prop_assert_eq!(dec.v.mul(&dec.v_inv), IntMatrix::identity(cols));
        let d = dec.diagonal();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        // Elementary divisor oracle agreement on the nonzero diagonal.
        let oracle = elementary_divisor_oracle(&a);
        let nonzero: Vec<BigInt> = d.iter().filter(|x| !x.is_zero()).cloned().collect();
        prop_assert_eq!(nonzero, oracle);
    }

    #[test]
    fn kernel_is_saturated(rows in 1usize..6, cols in 1usize..5, seed in any::<u64>()) {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        let data: Vec<i64> = (0..rows*cols).map(|_| next()).collect();
        let a = IntMatrix::from_flat(rows, cols, data);
        let k = kernel_basis(&a);
        prop_assert!(k.mul(&a).is_zero());
        if k.rows() > 0 {
            let dec = snf(&k);
            for d in dec.diagonal() {
                prop_assert_eq!(d, BigInt::one());
            }
        }
    }

    #[test]
    fn cokernel_matches_counting_oracle(rows in 1usize..4, cols in 1usize..4, seed in any::<u64>()) {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 9) as i64 - 4
        };
        let data: Vec<i64> = (0..rows*cols).map(|_| next()).collect();
        let a = IntMatrix::from_flat(rows, cols, data);
        let c = cokernel_structure(&a);

        // Free rank against the determinantal rank.
        let mut rank = 0;
        for k in 1..=rows.min(cols) {
            if !minor_gcd(&a, k).is_zero() {
                rank = k;
            }
        }
        prop_assert_eq!(c.free_rank, cols - rank);

        // Torsion against the counting oracle, in its enumerable regime.
        if c.free_rank == 0 && rank == cols {
            let divisors = elementary_divisor_oracle(&a);
            let e = divisors.last().cloned().unwrap_or_else(BigInt::one);
            use num_traits::ToPrimitive;
            if let Some(e) = e.to_u64() {
                if e >= 1 && e <= 36 {
                    let chain = cokernel_counting_oracle(&a, e.max(1));
                    prop_assert_eq!(c.finab.factors().to_vec(), chain);
                }
            }
        }
    }

    #[test]
    fn hnf_properties(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i64 - 5
        };
        let data: Vec<i64> = (0..rows*cols).map(|_| next()).collect();
        let a = IntMatrix::from_flat(rows, cols, data);
        let (h, u) = hnf(&a);
        prop_assert_eq!(u.mul(&a), h.clone());
        let du = u.det();
        prop_assert!(du == BigInt::one() || du == -BigInt::one());
        // Echelon with positive pivots and reduced columns above.
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h.at(i, j).is_zero());
            if let Some(j) = lead {
                if let Some(lp) = last_pivot {
                    prop_assert!(j > lp);
                }
                prop_assert!(h.at(i, j) > BigInt::from(0));
                for r in 0..i {
                    let v = h.at(r, j);
                    prop_assert!(v >= BigInt::from(0) && v < h.at(i, j));
                }
                last_pivot = Some(j);
            } else {
                // all-zero rows come last
                for r in i..h.rows() {
                    prop_assert!((0..h.cols()).all(|j| h.at(r, j).is_zero()));
                }
                break;
            }
        }
    }
}
