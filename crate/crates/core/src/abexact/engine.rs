//! Elimination kernels, generic over the coefficient type. The `i64`
//! instance reports overflow through `None`, letting the caller re-run the
//! same deterministic algorithm over `BigInt`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

pub(crate) trait Int: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn cadd(&self, o: &Self) -> Option<Self>;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cmul(&self, o: &Self) -> Option<Self>;
    fn cneg(&self) -> Option<Self>;
    fn abs_cmp(&self, o: &Self) -> Ordering;
    /// Quotient with symmetric remainder: `self - q*d` lies in
    /// `(-|d|/2, |d|/2]`.
    fn sym_quot(&self, d: &Self) -> Option<Self>;
    /// Floor quotient: remainder in `[0, |d|)` for positive `d`.
    fn floor_quot(&self, d: &Self) -> Option<Self>;
}

impl Int for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn cadd(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn cneg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
    fn sym_quot(&self, d: &Self) -> Option<Self> {
        debug_assert!(*d != 0);
        let q = self.checked_div(*d)?;
        let r = self - q * d;
        let half = d.unsigned_abs() / 2;
        let adj = if r.unsigned_abs() > half || (r.unsigned_abs() == half && r < 0 && d % 2 == 0) {
            // Push the remainder into the symmetric range.
            if (r < 0) == (*d < 0) {
                1
            } else {
                -1
            }
        } else {
            0
        };
        q.checked_add(adj)
    }
    fn floor_quot(&self, d: &Self) -> Option<Self> {
        debug_assert!(*d != 0);
        Some(num_integer::Integer::div_floor(self, d))
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn cadd(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn cneg(&self) -> Option<Self> {
        Some(-self)
    }
    fn abs_cmp(&self, o: &Self) -> Ordering {
        self.abs().cmp(&o.abs())
    }
    fn sym_quot(&self, d: &Self) -> Option<Self> {
        let (mut q, r) = num_integer::Integer::div_rem(self, d);
        let two_r = &r + &r;
        let da = d.abs();
        if two_r.abs() > da || (two_r.abs() == da && r.is_negative()) {
            if r.is_negative() == d.is_negative() {
                q += 1;
            } else {
                q -= 1;
            }
        }
        Some(q)
    }
    fn floor_quot(&self, d: &Self) -> Option<Self> {
        Some(num_integer::Integer::div_floor(self, d))
    }
}

#[derive(Clone)]
pub(crate) struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Int> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Mat { rows: n, cols: n, data }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
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

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.at(r, j).cneg()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }


    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let t = q.cmul(self.at(src, j))?;
            let v = self.at(dst, j).csub(&t)?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for i in 0..self.rows {
            let t = q.cmul(self.at(i, src))?;
            let v = self.at(i, dst).csub(&t)?;
            self.data[i * self.cols + dst] = v;
        }
        Some(())
    }

    /// row[dst] += q * row[src]
    fn row_axpy_add(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let t = q.cmul(self.at(src, j))?;
            let v = self.at(dst, j).cadd(&t)?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }
}

pub(crate) fn mul_small(a: &Mat<i64>, b: &Mat<i64>) -> Option<Mat<i64>> {
    assert_eq!(a.cols, b.rows);
    let mut out = vec![0i64; a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let av = a.data[i * a.cols + k];
            if av == 0 {
                continue;
            }
            let av = av as i128;
            for j in 0..b.cols {
                let bv = b.data[k * b.cols + j];
                if bv == 0 {
                    continue;
                }
                // i64*i64 fits in i128; check the running sum instead.
                let cur = out[i * b.cols + j] as i128 + av * bv as i128;
                out[i * b.cols + j] = i64::try_from(cur).ok()?;
            }
        }
    }
    Some(Mat::new(a.rows, b.cols, out))
}

pub(crate) fn mul_big(a: &Mat<BigInt>, b: &Mat<BigInt>) -> Mat<BigInt> {
    assert_eq!(a.cols, b.rows);
    let mut out = vec![<BigInt as Zero>::zero(); a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let av = &a.data[i * a.cols + k];
            if Zero::is_zero(av) {
                continue;
            }
            for j in 0..b.cols {
                let bv = &b.data[k * b.cols + j];
                if Zero::is_zero(bv) {
                    continue;
                }
                out[i * b.cols + j] += av * bv;
            }
        }
    }
    Mat::new(a.rows, b.cols, out)
}

/// Row Hermite normal form. Returns `(H, U)` with `U*A = H`.
pub(crate) fn hnf_engine<T: Int>(a: &Mat<T>) -> Option<(Mat<T>, Mat<T>)> {
    let mut h = a.clone();
    let mut u = Mat::<T>::identity(a.rows);
    let mut r = 0;
    for c in 0..h.cols {
        if r >= h.rows {
            break;
        }
        loop {
            // Minimal |entry| pivot among rows r.., ties by lowest row.
            let mut piv: Option<usize> = None;
            for i in r..h.rows {
                if h.at(i, c).is_zero() {
                    continue;
                }
                match piv {
                    None => piv = Some(i),
                    Some(p) => {
                        if h.at(i, c).abs_cmp(h.at(p, c)) == Ordering::Less {
                            piv = Some(i);
                        }
                    }
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut any_left = false;
            for i in r + 1..h.rows {
                if h.at(i, c).is_zero() {
                    continue;
                }
                let q = h.at(i, c).sym_quot(h.at(r, c))?;
                h.row_axpy(i, r, &q)?;
                u.row_axpy(i, r, &q)?;
                if !h.at(i, c).is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                if h.at(r, c).is_neg() {
                    h.negate_row(r)?;
                    u.negate_row(r)?;
                }
                for i in 0..r {
                    if h.at(i, c).is_zero() {
                        continue;
                    }
                    let q = h.at(i, c).floor_quot(h.at(r, c))?;
                    h.row_axpy(i, r, &q)?;
                    u.row_axpy(i, r, &q)?;
                }
                r += 1;
                break;
            }
        }
    }
    Some((h, u))
}

/// Smith normal form with transforms: `U*A*V = S`. Also returns `V^{ -1 }`.
#[allow(clippy::type_complexity)]
pub(crate) fn snf_engine<T: Int>(a: &Mat<T>) -> Option<(Mat<T>, Mat<T>, Mat<T>, Mat<T>)> {
    let mut s = a.clone();
    let mut u = Mat::<T>::identity(a.rows);
    let mut v = Mat::<T>::identity(a.cols);
    let mut vi = Mat::<T>::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // Minimal |entry| pivot in the trailing submatrix.
        let mut piv: Option<(usize, usize)> = None;
        for i in t..s.rows {
            for j in t..s.cols {
                if s.at(i, j).is_zero() {
                    continue;
                }
                match &piv {
                    None => piv = Some((i, j)),
                    Some((pi, pj)) => {
                        if s.at(i, j).abs_cmp(s.at(*pi, *pj)) == Ordering::Less {
                            piv = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vi.swap_rows(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..s.rows {
                if s.at(i, t).is_zero() {
                    continue;
                }
                let q = s.at(i, t).sym_quot(s.at(t, t))?;
                s.row_axpy(i, t, &q)?;
                u.row_axpy(i, t, &q)?;
                if !s.at(i, t).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Bring the smallest entry of the column back to the corner.
                let mut best = t;
                for i in t..s.rows {
                    if s.at(i, t).is_zero() {
                        continue;
                    }
                    if s.at(best, t).is_zero()
                        || s.at(i, t).abs_cmp(s.at(best, t)) == Ordering::Less
                    {
                        best = i;
                    }
                }
                s.swap_rows(t, best);
                u.swap_rows(t, best);
                continue;
            }
            let mut col_clean = true;
            for j in t + 1..s.cols {
                if s.at(t, j).is_zero() {
                    continue;
                }
                let q = s.at(t, j).sym_quot(s.at(t, t))?;
                s.col_axpy(j, t, &q)?;
                v.col_axpy(j, t, &q)?;
                vi.row_axpy_add(t, j, &q)?;
                if !s.at(t, j).is_zero() {
                    col_clean = false;
                }
            }
            if !col_clean {
                let mut best = t;
                for j in t..s.cols {
                    if s.at(t, j).is_zero() {
                        continue;
                    }
                    if s.at(t, best).is_zero()
                        || s.at(t, j).abs_cmp(s.at(t, best)) == Ordering::Less
                    {
                        best = j;
                    }
                }
                s.swap_cols(t, best);
                v.swap_cols(t, best);
                vi.swap_rows(t, best);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let mut offender: Option<(usize, usize)> = None;
            'scan: for i in t + 1..s.rows {
                for j in t + 1..s.cols {
                    if s.at(i, j).is_zero() {
                        continue;
                    }
                    let q = s.at(i, j).sym_quot(s.at(t, t))?;
                    let rem = s.at(i, j).csub(&q.cmul(s.at(t, t))?)?;
                    if !rem.is_zero() {
                        offender = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match offender {
                None => break,
                Some((i, _)) => {
                    // Fold the offending row into row t and keep reducing.
                    let one = T::one();
                    s.row_axpy_add(t, i, &one)?;
                    u.row_axpy_add(t, i, &one)?;
                }
            }
        }
        if s.at(t, t).is_neg() {
            s.negate_row(t)?;
            u.negate_row(t)?;
        }
        t += 1;
    }
    Some((s, u, v, vi))
}

/// Fraction-free determinant (Bareiss).
pub(crate) fn det_bareiss(a: &Mat<BigInt>) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| a.at(i, j).clone()).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if Zero::is_zero(&m[k][k]) {
            let Some(swap) = (k + 1..n).find(|&i| !Zero::is_zero(&m[i][k])) else {
                return <BigInt as Zero>::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}
