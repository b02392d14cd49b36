//! Smith normal form over ℤ with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elimination::{eliminate_units, SPARSE_THRESHOLD};
use super::matrix::Matrix;

/// `u · m · v = d` with `u`, `v` unimodular; the inverses are kept alongside
/// because homology needs coordinates in the new bases.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub u_inv: Matrix,
    pub v_inv: Matrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, all positive, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal(&self.d)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn diagonal(d: &Matrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

type Rows = Vec<Vec<BigInt>>;

fn to_rows(m: &Matrix) -> Rows {
    m.dense_rows()
}

fn from_rows(rows: Rows, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows.len(), cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Elementary operations applied to the working matrix and mirrored into the
/// transforms when tracking is on.
struct Reducer {
    a: Rows,
    rows: usize,
    cols: usize,
    track: Option<Transforms>,
}

struct Transforms {
    u: Rows,
    u_inv: Rows,
    v: Rows,
    v_inv: Rows,
}

fn axpy_row(m: &mut Rows, dst: usize, src: usize, c: &BigInt) {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn axpy_col(m: &mut Rows, dst: usize, src: usize, c: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let add = c * &row[src];
            row[dst] += add;
        }
    }
}

fn swap_cols(m: &mut Rows, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl Reducer {
    /// row_dst += c · row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        axpy_row(&mut self.a, dst, src, c);
        if let Some(t) = &mut self.track {
            axpy_row(&mut t.u, dst, src, c);
            axpy_col(&mut t.u_inv, src, dst, &-c);
        }
    }

    /// col_dst += c · col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        axpy_col(&mut self.a, dst, src, c);
        if let Some(t) = &mut self.track {
            axpy_col(&mut t.v, dst, src, c);
            axpy_row(&mut t.v_inv, src, dst, &-c);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(t) = &mut self.track {
            t.u.swap(i, j);
            swap_cols(&mut t.u_inv, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(t) = &mut self.track {
            swap_cols(&mut t.v, i, j);
            t.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(t) = &mut self.track {
            for x in t.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in t.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block from `t`; ties by (row, col).
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row `t` and column `t` (from index `t`).
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[t][t].abs();
        for i in t + 1..self.rows {
            let x = &self.a[i][t];
            if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
                best = (i, t);
                best_abs = x.abs();
            }
        }
        for j in t + 1..self.cols {
            let x = &self.a[t][j];
            if !x.is_zero() && (best_abs.is_zero() || x.abs() < best_abs) {
                best = (t, j);
                best_abs = x.abs();
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                let mut remainder = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&p);
                    self.add_row(i, t, &-q);
                    remainder |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&p);
                    self.add_col(j, t, &-q);
                    remainder |= !self.a[t][j].is_zero();
                }
                if remainder {
                    let (i, j) = self.min_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // Cross is clear; enforce divisibility of the trailing block.
                let offender = (t + 1..self.rows).find(|&i| {
                    self.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form of an integer matrix, with unimodular `u`, `v` such that
/// `u · m · v = d`.
pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut red = Reducer {
        a: to_rows(m),
        rows: r,
        cols: c,
        track: Some(Transforms {
            u: identity_rows(r),
            u_inv: identity_rows(r),
            v: identity_rows(c),
            v_inv: identity_rows(c),
        }),
    };
    red.run();
    let t = red.track.take().unwrap();
    SmithForm {
        d: from_rows(red.a, c),
        u: from_rows(t.u, r),
        u_inv: from_rows(t.u_inv, r),
        v: from_rows(t.v, c),
        v_inv: from_rows(t.v_inv, c),
    }
}

/// Invariant factors only; skips transform bookkeeping.
pub fn invariant_factors(m: &Matrix) -> Vec<BigInt> {
    if m.rows() * m.cols() >= SPARSE_THRESHOLD {
        if let Some(r) = eliminate_units(m) {
            let mut out = vec![BigInt::one(); r.pivots];
            out.extend(invariant_factors_dense(&r.core));
            return out;
        }
    }
    invariant_factors_dense(m)
}

pub(crate) fn invariant_factors_dense(m: &Matrix) -> Vec<BigInt> {
    let mut red = Reducer { a: to_rows(m), rows: m.rows(), cols: m.cols(), track: None };
    red.run();
    diagonal(&from_rows(red.a, m.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(m.cols()));
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j || i >= f.len() {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(invariant_factors(m), f);
        s
    }

    #[test]
    fn two_by_two() {
        let s = check(&Matrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = Matrix::zeros(2, 3);
        assert_eq!(check(&z).d, z);
        let id = Matrix::identity(3);
        assert_eq!(check(&id).d, id);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not in Smith form.
        let s = check(&Matrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let m = Matrix::from_i64(3, 4, &[4, 6, 0, 2, -8, 2, 10, 0, 12, 0, 3, 9]);
        check(&m);
        check(&m.transpose());
    }
}
