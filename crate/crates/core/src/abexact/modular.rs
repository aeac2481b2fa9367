//! Modular linear algebra: a bit-packed GF(2) eliminator for the large
//! cocycle systems and a valuation-pivot eliminator over Z/p^k.
//!
//! Over the local ring Z/p^k a pivot of minimal p-valuation has an invertible
//! unit part, so Gaussian elimination with both-sided transforms produces a
//! diagonal of prime powers, from which kernels and quotient structures are
//! read off exactly.

/// Bit-packed row over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitRow {
    pub words: Vec<u64>,
    pub nbits: usize,
}

impl BitRow {
    pub fn zeros(nbits: usize) -> Self {
        BitRow { words: vec![0; nbits.div_ceil(64)], nbits }
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_set(&self) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
}

/// Incremental GF(2) echelon: rows are inserted one at a time, reduced against
/// the current echelon, and kept when they contribute a new pivot. Pivot is
/// always the lowest set bit.
pub struct Gf2Echelon {
    nbits: usize,
    /// pivot bit -> row index
    pivot_of: Vec<Option<usize>>,
    rows: Vec<BitRow>,
}

impl Gf2Echelon {
    pub fn new(nbits: usize) -> Self {
        Gf2Echelon { nbits, pivot_of: vec![None; nbits], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the echelon; inserts it if nonzero. Returns true
    /// when the row added a new pivot.
    pub fn insert(&mut self, mut row: BitRow) -> bool {
        loop {
            match row.first_set() {
                None => return false,
                Some(p) => match self.pivot_of[p] {
                    Some(r) => row.xor_assign(&self.rows[r].clone()),
                    None => {
                        self.pivot_of[p] = Some(self.rows.len());
                        self.rows.push(row);
                        return true;
                    }
                },
            }
        }
    }

    /// Basis of the solution space `{x : E x = 0}` by free-variable
    /// back-substitution. One basis vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<BitRow> {
        // Fully reduce the echelon so each pivot column is cleared elsewhere.
        let mut rows = self.rows.clone();
        let mut order: Vec<(usize, usize)> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.first_set().expect("echelon rows are nonzero"), i))
            .collect();
        order.sort_unstable();
        for idx in (0..order.len()).rev() {
            let (p, i) = order[idx];
            for &(_, j) in order.iter().take(idx) {
                if rows[j].get(p) {
                    let src = rows[i].clone();
                    rows[j].xor_assign(&src);
                }
            }
        }
        let mut is_pivot = vec![false; self.nbits];
        for &(p, _) in &order {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.nbits {
            if is_pivot[f] {
                continue;
            }
            let mut v = BitRow::zeros(self.nbits);
            v.set(f, true);
            for &(p, i) in &order {
                if rows[i].get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn pow_u64(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("p^k fits u64")
}

fn val_p(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, m: u64) -> u64 {
    // Extended Euclid; a must be a unit mod m.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r == 1, "not a unit mod m");
    (old_s.rem_euclid(m as i128)) as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Dense matrix over Z/p^k.
#[derive(Clone)]
pub struct ModMat {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub data: Vec<u64>,
}

impl ModMat {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        ModMat { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: u64) {
        if q == 0 {
            return;
        }
        let m = self.modulus;
        for j in 0..self.cols {
            let t = mul_mod(q, self.at(src, j), m);
            let v = (self.at(dst, j) + m - t) % m;
            self.data[dst * self.cols + j] = v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: u64) {
        if q == 0 {
            return;
        }
        let m = self.modulus;
        for i in 0..self.rows {
            let t = mul_mod(q, self.at(i, src), m);
            let v = (self.at(i, dst) + m - t) % m;
            self.data[i * self.cols + dst] = v;
        }
    }

    fn scale_row(&mut self, r: usize, c: u64) {
        let m = self.modulus;
        for j in 0..self.cols {
            self.data[r * self.cols + j] = mul_mod(self.data[r * self.cols + j], c, m);
        }
    }
}

/// A generator of a solution module over Z/p^k together with its additive
/// order (a power of p).
#[derive(Clone, Debug)]
pub struct ModGen {
    pub vec: Vec<u64>,
    pub order: u64,
}

/// Generators of the left kernel `{x in (Z/p^k)^rows : x * B = 0 mod p^k}`.
///
/// Returned generators are independent in the sense that the kernel is the
/// direct sum of the cyclic modules they generate.
pub fn left_kernel_modpk(b: &ModMat, p: u64, k: u32) -> Vec<ModGen> {
    let m = pow_u64(p, k);
    assert_eq!(b.modulus, m);
    // Work on the transpose: right kernel of B^T with column transform V.
    let mut w = ModMat::zeros(b.cols, b.rows, m);
    for i in 0..b.rows {
        for j in 0..b.cols {
            w.set(j, i, b.at(i, j));
        }
    }
    let n = w.cols; // = b.rows, the solution dimension
    let mut v = ModMat::zeros(n, n, m);
    for i in 0..n {
        v.set(i, i, 1);
    }
    let lim = w.rows.min(w.cols);
    let mut t = 0;
    let mut diag_vals = Vec::new();
    while t < lim {
        // Minimal valuation pivot, ties by (row, col).
        let mut piv: Option<(u32, usize, usize)> = None;
        for i in t..w.rows {
            for j in t..w.cols {
                let x = w.at(i, j);
                if x == 0 {
                    continue;
                }
                let val = val_p(x, p);
                match piv {
                    None => piv = Some((val, i, j)),
                    Some((bv, _, _)) if val < bv => piv = Some((val, i, j)),
                    _ => {}
                }
            }
        }
        let Some((val, pi, pj)) = piv else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        v.swap_cols(t, pj);
        // Normalize pivot to exactly p^val.
        let unit = w.at(t, t) / pow_u64(p, val);
        let unit_inv = inv_mod(unit % m, m);
        w.scale_row(t, unit_inv);
        let pv = pow_u64(p, val);
        debug_assert_eq!(w.at(t, t), pv % m);
        // Clear the column below/above (row ops, untracked) and the row
        // (column ops, tracked in v). Divisions are exact because the pivot
        // has minimal valuation.
        for i in 0..w.rows {
            if i == t || w.at(i, t) == 0 {
                continue;
            }
            let q = w.at(i, t) / pv;
            w.row_axpy(i, t, q);
            debug_assert_eq!(w.at(i, t), 0);
        }
        for j in 0..w.cols {
            if j == t || w.at(t, j) == 0 {
                continue;
            }
            let q = w.at(t, j) / pv;
            w.col_axpy(j, t, q);
            v.col_axpy(j, t, q);
            debug_assert_eq!(w.at(t, j), 0);
        }
        diag_vals.push(val);
        t += 1;
    }
    // Solutions: diag entry p^val at position i allows y_i in p^{k-val} Z/p^k
    // (order p^val); positions beyond the diagonal are free of order p^k.
    let mut gens = Vec::new();
    for (i, &val) in diag_vals.iter().enumerate() {
        if val == 0 {
            continue;
        }
        let scale = pow_u64(p, k - val);
        let col: Vec<u64> = (0..n).map(|r| mul_mod(v.at(r, i), scale, m)).collect();
        gens.push(ModGen { vec: col, order: pow_u64(p, val) });
    }
    for i in diag_vals.len()..n {
        let col: Vec<u64> = (0..n).map(|r| v.at(r, i)).collect();
        gens.push(ModGen { vec: col, order: m });
    }
    gens
}

/// Incremental row echelon over Z/p^k with valuation pivots. Inserting a row
/// whose leading entry has smaller valuation than the standing pivot swaps
/// them and re-inserts the old pivot, so the row module is preserved exactly.
pub struct ModPkEchelon {
    p: u64,
    modulus: u64,
    ncols: usize,
    /// pivot column -> row storage index
    pivot_of: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
}

impl ModPkEchelon {
    pub fn new(ncols: usize, p: u64, k: u32) -> Self {
        ModPkEchelon { p, modulus: pow_u64(p, k), ncols, pivot_of: vec![None; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, row: Vec<u64>) {
        let mut queue = vec![row];
        while let Some(mut r) = queue.pop() {
            debug_assert_eq!(r.len(), self.ncols);
            loop {
                let Some(c) = r.iter().position(|&x| x % self.modulus != 0) else {
                    break;
                };
                let rv = r[c] % self.modulus;
                match self.pivot_of[c] {
                    None => {
                        let idx = self.rows.len();
                        self.rows.push(r.iter().map(|&x| x % self.modulus).collect());
                        self.pivot_of[c] = Some(idx);
                        break;
                    }
                    Some(idx) => {
                        let pv = self.rows[idx][c];
                        let (vr, vp) = (val_p(rv, self.p), val_p(pv, self.p));
                        if vr < vp {
                            // The incoming row is a better pivot; swap.
                            let old = std::mem::replace(
                                &mut self.rows[idx],
                                r.iter().map(|&x| x % self.modulus).collect(),
                            );
                            queue.push(old);
                            break;
                        }
                        // Eliminate: q = (rv / p^vp) * unit(pv)^-1.
                        let unit_inv = inv_mod(pv / pow_u64(self.p, vp), self.modulus);
                        let q = mul_mod(rv / pow_u64(self.p, vp), unit_inv, self.modulus);
                        let m = self.modulus;
                        let piv_row = self.rows[idx].clone();
                        for (a, b) in r.iter_mut().zip(&piv_row) {
                            let t = mul_mod(q, *b, m);
                            *a = (*a % m + m - t) % m;
                        }
                        debug_assert_eq!(r[c] % m, 0);
                    }
                }
            }
        }
    }

    /// The echelon rows (spanning the same row module as everything inserted).
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Invariant factors (powers of p) of `span(top) / span(bottom)` inside
/// `(Z/p^k)^n`, where both spans are Z/p^k-submodules generated by the given
/// rows and `span(bottom)` is contained in `span(top)`.
pub fn quotient_modpk(top: &[Vec<u64>], bottom: &[Vec<u64>], n: usize, p: u64, k: u32) -> Vec<u64> {
    let m = pow_u64(p, k);
    let s = top.len();
    if s == 0 {
        return vec![];
    }
    let total = s + bottom.len();
    let mut stacked = ModMat::zeros(total, n, m);
    for (i, r) in top.iter().chain(bottom.iter()).enumerate() {
        assert_eq!(r.len(), n);
        for (j, &x) in r.iter().enumerate() {
            stacked.set(i, j, x);
        }
    }
    let rels = left_kernel_modpk(&stacked, p, k);
    // Integer relation lattice on the top coefficients: lifted relation
    // projections plus p^k times the identity.
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for g in &rels {
        rows.push(g.vec[..s].iter().map(|&x| x as i64).collect());
    }
    for i in 0..s {
        let mut row = vec![0i64; s];
        row[i] = m as i64;
        rows.push(row);
    }
    let rel = super::IntMatrix::from_rows(rows);
    let coker = super::cokernel_structure(&rel);
    assert_eq!(coker.free_rank, 0, "modular quotient must be finite");
    coker.finab.factors().to_vec()
}
