//! Integer matrices, Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// First `k` rows.
    pub fn top(&self, k: usize) -> IntMatrix {
        IntMatrix {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each diagonal entry dividing the next. `v_inv` is `V^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.m.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.m.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        // V' = V E with E = I + k e_src e_dst^T, so V'^{-1} = E^{-1} V^{-1}:
        // row[src] -= k * row[dst].
        self.v_inv.add_row(src, dst, &-k);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_negate(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work {
        m: m.clone(),
        u: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    for t in 0..r.min(c) {
        // Smallest nonzero entry of the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &w.m[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.m[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..r {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let q = w.m[(i, t)].div_floor(&w.m[(t, t)]);
                w.row_add(i, t, &-q);
                if !w.m[(i, t)].is_zero() {
                    w.row_swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..c {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let q = w.m[(t, j)].div_floor(&w.m[(t, t)]);
                w.col_add(j, t, &-q);
                if !w.m[(t, j)].is_zero() {
                    w.col_swap(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !w.m[(i, j)].is_multiple_of(&w.m[(t, t)]));
            match bad {
                Some((i, _)) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m[(t, t)].is_negative() {
            w.row_negate(t);
        }
    }
    Snf {
        u: w.u,
        d: w.m,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows; zero
/// rows are dropped. Pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut pivot_row = 0;
    for j in 0..c {
        if pivot_row == r {
            break;
        }
        loop {
            let best = (pivot_row..r)
                .filter(|&i| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[(x, j)].abs().cmp(&a[(y, j)].abs()));
            let Some(bi) = best else { break };
            a.swap_rows(pivot_row, bi);
            let mut done = true;
            for i in pivot_row + 1..r {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = a[(i, j)].div_floor(&a[(pivot_row, j)]);
                a.add_row(i, pivot_row, &-q);
                if !a[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(pivot_row, j)].is_zero() {
            continue;
        }
        if a[(pivot_row, j)].is_negative() {
            a.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = a[(i, j)].div_floor(&a[(pivot_row, j)]);
            a.add_row(i, pivot_row, &-q);
        }
        pivot_row += 1;
    }
    a.top(pivot_row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let f = s.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn examples() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!((s.u, s.d, s.v), (id.clone(), id.clone(), id));
        let m = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntMatrix::from_i64(&[vec![2, 0], vec![0, 4]]));
        check(&m);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).d, z);
    }

    #[test]
    fn rectangular_and_divisibility() {
        check(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
        check(&IntMatrix::from_i64(&[vec![4, 6, 10], vec![6, 9, 15]]));
        check(&IntMatrix::from_i64(&[vec![0, 0, 5], vec![0, 0, 0], vec![7, 0, 0], vec![1, 1, 1]]));
        let s = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_i64(&[vec![2, 2], vec![2, -2]]);
        let b = IntMatrix::from_i64(&[vec![4, 0], vec![2, 2]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(hermite_normal_form(&a), IntMatrix::from_i64(&[vec![2, 2], vec![0, 4]]));
        let dep = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(hermite_normal_form(&dep), IntMatrix::from_i64(&[vec![1, 2]]));
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(18));
        let m = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
    }
}
