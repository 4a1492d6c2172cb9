//! Dense matrices over the prime field 𝔽_p and Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;

/// Modular inverse in 𝔽_p via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn reduce_big(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

pub fn reduce_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon data: `pivots[r]` is the pivot column of row `r`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        assert!(p >= 2 && p < (1 << 31), "prime out of range");
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let mut out = Self::zeros(p, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.data[i * m.cols() + j] = reduce_big(m.get(i, j), p);
            }
        }
        out
    }

    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut out = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                out.data[i * out.cols + j] = v % p;
            }
        }
        out
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
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
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let k = i * self.cols + j;
        self.data[k] = (self.data[k] + v % self.p) % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let drow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in drow.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = (*d + a * b) % p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    /// Reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in c..m.cols {
                let k = r * m.cols + j;
                m.data[k] = m.data[k] * inv % p;
            }
            let (before, rest) = m.data.split_at_mut(r * m.cols);
            let (pivot_row, after) = rest.split_at_mut(m.cols);
            let cols = m.cols;
            let eliminate = |row: &mut [u64]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let nf = p - f;
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        row[j] = (row[j] + nf * pivot_row[j]) % p;
                    }
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let e = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in e.pivots.iter().enumerate() {
                let x = e.matrix.get(r, free);
                v[pc] = (p - x) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % self.p;
        }
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.matrix.get(r, self.cols);
        }
        Some(x)
    }
}
