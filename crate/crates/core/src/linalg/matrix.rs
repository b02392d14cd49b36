use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::elimination::{eliminate_units, rank_mod_sparse, SPARSE_THRESHOLD};
use super::ring::Ring;

/// Integer matrix stored by columns; each column lists its nonzero entries
/// in increasing row order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
    zero: BigInt,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, columns: vec![Vec::new(); cols], zero: BigInt::zero() }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Matrix {
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(rows.len(), c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, x) in row.iter().enumerate() {
                let x: BigInt = x.clone().into();
                if !x.is_zero() {
                    m.columns[j].push((i, x));
                }
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        let dense: Vec<Vec<i64>> = entries.chunks(cols.max(1)).map(<[i64]>::to_vec).take(rows).collect();
        if cols == 0 {
            return Matrix::zeros(rows, 0);
        }
        Matrix::from_rows(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn find(&self, i: usize, j: usize) -> std::result::Result<usize, usize> {
        assert!(i < self.rows && j < self.cols, "matrix index ({i}, {j}) out of range");
        self.columns[j].binary_search_by_key(&i, |e| e.0)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        match self.find(i, j) {
            Ok(k) => &self.columns[j][k].1,
            Err(_) => &self.zero,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        match (self.find(i, j), v.is_zero()) {
            (Ok(k), true) => {
                self.columns[j].remove(k);
            }
            (Ok(k), false) => self.columns[j][k].1 = v,
            (Err(_), true) => {}
            (Err(k), false) => self.columns[j].insert(k, (i, v)),
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        if v == 0 {
            return;
        }
        match self.find(i, j) {
            Ok(k) => {
                self.columns[j][k].1 += v;
                if self.columns[j][k].1.is_zero() {
                    self.columns[j].remove(k);
                }
            }
            Err(k) => self.columns[j].insert(k, (i, BigInt::from(v))),
        }
    }

    /// Nonzero entries of column `j` as `(row, value)`, by increasing row.
    pub fn column_entries(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    /// Number of stored nonzero entries.
    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Row `i` as a dense vector.
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    /// All rows as dense vectors.
    pub fn dense_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, x) in &self.columns[j] {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn is_zero_in(&self, ring: Ring) -> bool {
        self.columns.iter().flatten().all(|(_, x)| ring.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                t.columns[*i].push((j, x.clone()));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        let mut acc = vec![BigInt::zero(); self.rows];
        for (j, col) in other.columns.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    acc[*i] += a * b;
                }
            }
            for (i, x) in acc.iter_mut().enumerate() {
                if !x.is_zero() {
                    out.columns[j].push((i, std::mem::take(x)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![BigInt::zero(); self.rows];
        for (col, b) in self.columns.iter().zip(v) {
            if b.is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] += a * b;
            }
        }
        out
    }

    /// Submatrix on the given row range and column range.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (oj, j) in cols.enumerate() {
            out.columns[oj] = self.columns[j]
                .iter()
                .filter(|(i, _)| rows.contains(i))
                .map(|(i, x)| (i - rows.start, x.clone()))
                .collect();
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.dense_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Rank over the given ring's fraction field (ℚ for integers) or over F_p.
    pub fn rank(&self, ring: Ring) -> usize {
        if self.rows * self.cols >= SPARSE_THRESHOLD {
            let sparse = match ring {
                Ring::PrimeField(p) => rank_mod_sparse(self, p),
                _ => eliminate_units(self).map(|r| r.pivots + r.core.rank_dense(ring)),
            };
            if let Some(r) = sparse {
                return r;
            }
        }
        self.rank_dense(ring)
    }

    pub(crate) fn rank_dense(&self, ring: Ring) -> usize {
        match ring {
            Ring::PrimeField(p) => self.rank_mod(p),
            _ => self.rank_rational(),
        }
    }

    fn rank_rational(&self) -> usize {
        let mut a = self.dense_rows();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, rank);
            let pivot_row = a[rank].clone();
            for row in a.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let g = row[c].gcd(&pivot_row[c]);
                let f_row = &pivot_row[c] / &g;
                let f_piv = &row[c] / &g;
                for j in c..self.cols {
                    let v = &row[j] * &f_row - &pivot_row[j] * &f_piv;
                    row[j] = v;
                }
                let content = row[c..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                if content > BigInt::one() {
                    for x in row[c..].iter_mut() {
                        *x = &*x / &content;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn rank_mod(&self, p: u64) -> usize {
        let ring = Ring::PrimeField(p);
        let mut a = vec![vec![0u64; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                a[*i][j] = ring.reduce_u64(x);
            }
        }
        rank_mod_rows(&mut a, self.cols, p)
    }
}

/// Rank of a dense matrix over F_p; destroys its input.
pub(crate) fn rank_mod_rows(a: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = mod_inverse(a[rank][c], p);
        for x in a[rank][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = (row[j] + (p - f) * pivot_row[j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = a.transpose();
        let c = a.mul(&b);
        assert_eq!(c, Matrix::from_i64(2, 2, &[14, 32, 32, 77]));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(Matrix::from_i64(2, 2, &[2, 4, 6, 8]).determinant(), BigInt::from(-8));
        assert_eq!(Matrix::identity(4).determinant(), BigInt::one());
        let sing = Matrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert!(sing.determinant().is_zero());
        let m = Matrix::from_i64(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8]);
        assert_eq!(m.determinant(), BigInt::from(-2));
    }

    #[test]
    fn ranks() {
        let m = Matrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(m.rank(Ring::Rationals), 2);
        let two = Matrix::from_i64(2, 2, &[2, 0, 0, 2]);
        assert_eq!(two.rank(Ring::Integers), 2);
        assert_eq!(two.rank(Ring::PrimeField(2)), 0);
        assert_eq!(two.rank(Ring::PrimeField(3)), 2);
    }
}
