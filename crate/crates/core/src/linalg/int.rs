//! Dense integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense `rows × cols` matrix of arbitrary-precision integers, row-major.
///
/// Matrices act on column vectors: a map `C → C'` has `rows = dim C'`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from row vectors. All rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_slice(&self, start: usize, end: usize) -> IntMatrix {
        Self::from_fn(self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + j, i * self.cols + k);
        }
    }

    /// row_i += c · row_k
    fn add_row(&mut self, i: usize, k: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[k * self.cols + j] * c;
            if !v.is_zero() {
                self.data[i * self.cols + j] += v;
            }
        }
    }

    /// col_j += c · col_k
    fn add_col(&mut self, j: usize, k: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + k] * c;
            if !v.is_zero() {
                self.data[i * self.cols + j] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `left · original · right = diagonal`, with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_r`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inverse: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The diagonal matrix with the shape of the original input.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, k);
            t.u_inv.swap_cols(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(j, k);
            t.v_inv.swap_rows(j, k);
        }
    }

    fn add_row(&mut self, i: usize, k: usize, c: &BigInt) {
        self.a.add_row(i, k, c);
        if let Some(t) = &mut self.t {
            t.u.add_row(i, k, c);
            t.u_inv.add_col(k, i, &-c);
        }
    }

    fn add_col(&mut self, j: usize, k: usize, c: &BigInt) {
        self.a.add_col(j, k, c);
        if let Some(t) = &mut self.t {
            t.v.add_col(j, k, c);
            t.v_inv.add_row(k, j, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }

    /// Smallest nonzero |entry| in the submatrix `[t.., t..]`, ties to the lowest (row, col).
    fn global_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row t / column t beyond the pivot.
    fn cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a.get(t, t).abs();
        let mut consider = |i: usize, j: usize, v: &BigInt| {
            if !v.is_zero() && (best_abs.is_zero() || v.abs() < best_abs) {
                best = (i, j);
                best_abs = v.abs();
            }
        };
        for i in t + 1..self.a.rows() {
            consider(i, t, self.a.get(i, t));
        }
        for j in t + 1..self.a.cols() {
            consider(t, j, self.a.get(t, j));
        }
        best
    }

    fn run(mut self) -> (Vec<BigInt>, Option<Transforms>) {
        let rows = self.a.rows();
        let cols = self.a.cols();
        let mut factors = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.global_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t and row t
                loop {
                    let mut clean = true;
                    for i in t + 1..rows {
                        if self.a.get(i, t).is_zero() {
                            continue;
                        }
                        let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                        self.add_row(i, t, &-q);
                        if !self.a.get(i, t).is_zero() {
                            clean = false;
                        }
                    }
                    for j in t + 1..cols {
                        if self.a.get(t, j).is_zero() {
                            continue;
                        }
                        let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                        self.add_col(j, t, &-q);
                        if !self.a.get(t, j).is_zero() {
                            clean = false;
                        }
                    }
                    if clean {
                        break;
                    }
                    let (i, j) = self.cross_pivot(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                }
                // divisibility of the remaining block by the pivot
                let pivot = self.a.get(t, t).clone();
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a.get(t, t).clone());
            t += 1;
        }
        (factors, self.t)
    }
}

/// Smith normal form with unimodular transforms and their inverses.
///
/// Pivots are chosen deterministically: smallest absolute value, then lowest
/// (row, column) index.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let reducer = Reducer {
        a: m.clone(),
        t: Some(Transforms {
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        }),
    };
    let (invariant_factors, t) = reducer.run();
    let t = t.expect("transforms tracked");
    SnfDecomposition {
        invariant_factors,
        left: t.u,
        left_inverse: t.u_inv,
        right: t.v,
        right_inverse: t.v_inv,
    }
}

/// Invariant factors only; skips transform bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    Reducer { a: m.clone(), t: None }.run().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> SnfDecomposition {
        let d = snf(m);
        assert_eq!(d.left.mul(m).mul(&d.right), d.diagonal());
        assert_eq!(d.left.mul(&d.left_inverse), IntMatrix::identity(m.rows()));
        assert_eq!(d.right.mul(&d.right_inverse), IntMatrix::identity(m.cols()));
        assert_eq!(d.left.determinant().abs(), BigInt::one());
        assert_eq!(d.right.determinant().abs(), BigInt::one());
        for w in d.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        d
    }

    #[test]
    fn identity_and_scalar() {
        assert_eq!(check(&IntMatrix::identity(2)).invariant_factors, big(&[1, 1]));
        assert_eq!(check(&IntMatrix::from_rows(&[vec![6]])).invariant_factors, big(&[6]));
    }

    #[test]
    fn two_by_two() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(check(&m).invariant_factors, big(&[2, 4]));
        assert_eq!(invariant_factors(&m), big(&[2, 4]));
    }

    #[test]
    fn rectangular_and_empty() {
        let m = IntMatrix::from_rows(&[vec![0, 3, 0], vec![0, 0, 5]]);
        assert_eq!(check(&m).invariant_factors, big(&[1, 15]));
        let e = IntMatrix::zeros(0, 3);
        assert!(check(&e).invariant_factors.is_empty());
        let z = IntMatrix::zeros(2, 2);
        assert!(check(&z).invariant_factors.is_empty());
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_rows(&[vec![4, -6, 2], vec![10, 3, 7], vec![-8, 12, -4]]);
        let a = snf(&m);
        let b = snf(&m);
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
    }
}
