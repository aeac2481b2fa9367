//! Exact integer linear algebra: Hermite and Smith normal forms, saturated
//! kernels, cokernel structure, and finite abelian group bookkeeping.
//!
//! All public operations are exact. Matrices start in a machine-word
//! representation and transparently promote to arbitrary precision when an
//! intermediate value would overflow, so results never wrap. Pivot choice is
//! the minimal-absolute-value nonzero entry, ties broken by lowest (row, col),
//! which keeps coefficient growth modest and makes every run reproducible.

mod engine;
pub mod finab;
pub mod modular;

pub use finab::FinAb;

use engine::Mat;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Dense row-major integer matrix. The storage is `i64` until an operation
/// would overflow, at which point it promotes to `BigInt`.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Data,
}

#[derive(Clone)]
enum Data {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: Data::Small(vec![0; rows * cols]) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set_i64(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: Data::Small(rows.into_iter().flatten().collect()) }
    }

    /// Builds an `r x c` matrix from a flat row-major entry list.
    pub fn from_flat(rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix { rows, cols, data: Data::Small(entries) }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols);
        match &self.data {
            Data::Small(v) => BigInt::from(v[i * self.cols + j]),
            Data::Big(v) => v[i * self.cols + j].clone(),
        }
    }

    pub fn at_i64(&self, i: usize, j: usize) -> Option<i64> {
        match &self.data {
            Data::Small(v) => Some(v[i * self.cols + j]),
            Data::Big(v) => v[i * self.cols + j].to_i64(),
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, val: i64) {
        let idx = i * self.cols + j;
        match &mut self.data {
            Data::Small(v) => v[idx] = val,
            Data::Big(v) => v[idx] = BigInt::from(val),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, val: BigInt) {
        let idx = i * self.cols + j;
        match &mut self.data {
            Data::Small(v) => match val.to_i64() {
                Some(x) => v[idx] = x,
                None => {
                    self.promote();
                    if let Data::Big(v) = &mut self.data {
                        v[idx] = val;
                    }
                }
            },
            Data::Big(v) => v[idx] = val,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Small(v) => v.iter().all(|x| *x == 0),
            Data::Big(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    pub fn row_i64(&self, i: usize) -> Option<Vec<i64>> {
        (0..self.cols).map(|j| self.at_i64(i, j)).collect()
    }

    fn promote(&mut self) {
        if let Data::Small(v) = &self.data {
            self.data = Data::Big(v.iter().map(|x| BigInt::from(*x)).collect());
        }
    }

    fn to_small(&self) -> Option<Mat<i64>> {
        match &self.data {
            Data::Small(v) => Some(Mat::new(self.rows, self.cols, v.clone())),
            Data::Big(v) => {
                let e: Option<Vec<i64>> = v.iter().map(|x| x.to_i64()).collect();
                e.map(|e| Mat::new(self.rows, self.cols, e))
            }
        }
    }

    fn to_big(&self) -> Mat<BigInt> {
        match &self.data {
            Data::Small(v) => {
                Mat::new(self.rows, self.cols, v.iter().map(|x| BigInt::from(*x)).collect())
            }
            Data::Big(v) => Mat::new(self.rows, self.cols, v.clone()),
        }
    }

    fn from_small(m: Mat<i64>) -> Self {
        IntMatrix { rows: m.rows, cols: m.cols, data: Data::Small(m.data) }
    }

    fn from_big(m: Mat<BigInt>) -> Self {
        // Shrink back to i64 when possible so later operations stay fast.
        let small: Option<Vec<i64>> = m.data.iter().map(|x| x.to_i64()).collect();
        match small {
            Some(v) => IntMatrix { rows: m.rows, cols: m.cols, data: Data::Small(v) },
            None => IntMatrix { rows: m.rows, cols: m.cols, data: Data::Big(m.data) },
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        if let (Data::Small(v), Data::Small(tv)) = (&self.data, &mut t.data) {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    tv[j * self.rows + i] = v[i * self.cols + j];
                }
            }
            return t;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = IntMatrix::zeros(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.at(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        if let (Some(a), Some(b)) = (self.to_small(), other.to_small()) {
            if let Some(c) = engine::mul_small(&a, &b) {
                return IntMatrix::from_small(c);
            }
        }
        IntMatrix::from_big(engine::mul_big(&self.to_big(), &other.to_big()))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j) - other.at(i, j));
            }
        }
        out
    }

    /// Row of `self` times `other`; returns a 1 x cols matrix as a Vec.
    pub fn row_mul(&self, row: &[i64]) -> Vec<BigInt> {
        assert_eq!(row.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, &ri) in row.iter().enumerate() {
            if ri == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] += self.at(i, j) * ri;
            }
        }
        out
    }

    /// Determinant by fraction-free elimination. Intended for test-sized
    /// matrices (unimodularity checks).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        engine::det_bareiss(&self.to_big())
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == other.at(i, j)))
    }
}
impl Eq for IntMatrix {}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = S` with `S` diagonal, nonnegative, each entry dividing the
/// next, and `U`, `V` unimodular.
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, tracked during elimination (needed to express adapted
    /// generators of quotients in the original basis).
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.at(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U * A = H`, `U` unimodular
/// and `H` in row echelon form with positive pivots and reduced entries above.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    if let Some(m) = a.to_small() {
        if let Some((h, u)) = engine::hnf_engine::<i64>(&m) {
            return (IntMatrix::from_small(h), IntMatrix::from_small(u));
        }
    }
    let (h, u) = engine::hnf_engine::<BigInt>(&a.to_big()).expect("BigInt HNF cannot overflow");
    (IntMatrix::from_big(h), IntMatrix::from_big(u))
}

/// Smith normal form of `A`.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    if let Some(m) = a.to_small() {
        if let Some(r) = engine::snf_engine::<i64>(&m) {
            return SmithDecomposition {
                s: IntMatrix::from_small(r.0),
                u: IntMatrix::from_small(r.1),
                v: IntMatrix::from_small(r.2),
                v_inv: IntMatrix::from_small(r.3),
            };
        }
    }
    let r = engine::snf_engine::<BigInt>(&a.to_big()).expect("BigInt SNF cannot overflow");
    SmithDecomposition {
        s: IntMatrix::from_big(r.0),
        u: IntMatrix::from_big(r.1),
        v: IntMatrix::from_big(r.2),
        v_inv: IntMatrix::from_big(r.3),
    }
}

/// Basis of the left kernel `{x : x * A = 0}` as matrix rows. The returned
/// lattice is saturated: every integer solution is an integer combination of
/// the basis rows.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(a);
    let mut zero_rows = Vec::new();
    for i in 0..h.rows() {
        let all_zero = (0..h.cols()).all(|j| h.at(i, j).is_zero());
        if all_zero {
            zero_rows.push(i);
        }
    }
    let mut k = IntMatrix::zeros(zero_rows.len(), a.rows());
    for (r, &i) in zero_rows.iter().enumerate() {
        for j in 0..a.rows() {
            k.set(r, j, u.at(i, j));
        }
    }
    k
}

/// Structure of `Z^cols / rowspan(A)`.
pub struct CokernelStructure {
    /// Invariant factors of the torsion part (each >= 2, dividing the next).
    pub finab: FinAb,
    pub free_rank: usize,
    /// Coordinates of the ambient standard basis vectors: torsion coordinates
    /// (mod the invariant factors) followed by free coordinates.
    pub witness: Vec<Vec<BigInt>>,
    /// For each torsion factor, an ambient vector mapping to that adapted
    /// generator of the quotient.
    pub adapted_lifts: Vec<Vec<BigInt>>,
}

pub fn cokernel_structure(a: &IntMatrix) -> CokernelStructure {
    // Compress the relations first; row operations do not change the row span.
    let (h, _) = hnf(a);
    let mut nonzero = 0;
    for i in 0..h.rows() {
        if (0..h.cols()).any(|j| !h.at(i, j).is_zero()) {
            nonzero = i + 1;
        }
    }
    let mut compressed = IntMatrix::zeros(nonzero, h.cols());
    for i in 0..nonzero {
        for j in 0..h.cols() {
            compressed.set(i, j, h.at(i, j));
        }
    }
    let dec = snf(&compressed);
    let n = a.cols();
    let diag = dec.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let mut torsion_pos = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_zero() && *d != BigInt::from(1) {
            torsion_pos.push((i, d.clone()));
        }
    }
    let factors: Vec<u64> = torsion_pos
        .iter()
        .map(|(_, d)| d.to_u64().expect("invariant factor beyond u64 range"))
        .collect();
    let free_rank = n - rank;
    // Coordinates of e_j are row j of V, split into torsion and free parts.
    let mut witness = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = Vec::new();
        for (i, d) in &torsion_pos {
            let mut c = dec.v.at(j, *i) % d;
            if c.is_negative() {
                c += d;
            }
            w.push(c);
        }
        for i in rank..n {
            w.push(dec.v.at(j, i));
        }
        witness.push(w);
    }
    let adapted_lifts: Vec<Vec<BigInt>> = torsion_pos
        .iter()
        .map(|(i, _)| (0..n).map(|j| dec.v_inv.at(*i, j)).collect())
        .collect();
    CokernelStructure { finab: FinAb::new(factors), free_rank, witness, adapted_lifts }
}

/// Solves `X * A = B` over the integers. Returns `None` when some row of `B`
/// is not in the row span of `A`.
pub fn solve_left(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.cols(), b.cols());
    let (h, u) = hnf(a);
    // Pivot columns of h.
    let mut pivots = Vec::new();
    for i in 0..h.rows() {
        if let Some(j) = (0..h.cols()).find(|&j| !h.at(i, j).is_zero()) {
            pivots.push((i, j));
        }
    }
    let mut coef = IntMatrix::zeros(b.rows(), h.rows());
    for r in 0..b.rows() {
        let mut rem: Vec<BigInt> = (0..b.cols()).map(|j| b.at(r, j)).collect();
        for &(i, j) in &pivots {
            if rem[j].is_zero() {
                continue;
            }
            let p = h.at(i, j);
            let (q, m) = num_integer::Integer::div_rem(&rem[j], &p);
            if !m.is_zero() {
                return None;
            }
            for c in 0..h.cols() {
                let v = h.at(i, c) * &q;
                rem[c] -= v;
            }
            coef.set(r, i, q);
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    Some(coef.mul(&u))
}

/// Reusable solver for `X * A = B` against a fixed `A` (one Hermite reduction,
/// many right-hand sides).
pub struct HnfSolver {
    h: IntMatrix,
    u: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

impl HnfSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let (h, u) = hnf(a);
        let mut pivots = Vec::new();
        for i in 0..h.rows() {
            if let Some(j) = (0..h.cols()).find(|&j| !h.at(i, j).is_zero()) {
                pivots.push((i, j));
            }
        }
        HnfSolver { h, u, pivots }
    }

    pub fn solve(&self, b: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.h.cols(), b.cols());
        let mut coef = IntMatrix::zeros(b.rows(), self.h.rows());
        for r in 0..b.rows() {
            let mut rem: Vec<BigInt> = (0..b.cols()).map(|j| b.at(r, j)).collect();
            for &(i, j) in &self.pivots {
                if rem[j].is_zero() {
                    continue;
                }
                let p = self.h.at(i, j);
                let (q, m) = num_integer::Integer::div_rem(&rem[j], &p);
                if !m.is_zero() {
                    return None;
                }
                for c in 0..self.h.cols() {
                    let v = self.h.at(i, c) * &q;
                    rem[c] -= v;
                }
                coef.set(r, i, q);
            }
            if rem.iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        Some(coef.mul(&self.u))
    }

    pub fn contains_row(&self, v: &[BigInt]) -> bool {
        let mut b = IntMatrix::zeros(1, v.len());
        for (j, x) in v.iter().enumerate() {
            b.set(0, j, x.clone());
        }
        self.solve(&b).is_some()
    }
}

/// Membership of a single row vector in the row lattice of `A`.
pub fn in_row_span(a: &IntMatrix, v: &[BigInt]) -> bool {
    let mut b = IntMatrix::zeros(1, v.len());
    for (j, x) in v.iter().enumerate() {
        b.set(0, j, x.clone());
    }
    solve_left(a, &b).is_some()
}

#[cfg(test)]
mod tests;
