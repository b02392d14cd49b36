//! Sparse elimination ahead of the dense algorithms.
//!
//! Over ℤ a pivot entry of ±1 can be cleared from its row by column
//! operations and then from its column by row operations; deleting its row
//! and column leaves a core whose invariant factors, together with one
//! factor 1 per pivot, are those of the input. Over F_p every nonzero entry
//! is such a pivot and the core ends up empty.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::matrix::{mod_inverse, Matrix};

/// Matrices with fewer cells than this go straight to the dense code.
pub(crate) const SPARSE_THRESHOLD: usize = 4096;

pub(crate) struct Reduced {
    /// Pivots eliminated; each contributes an invariant factor 1.
    pub pivots: usize,
    /// What remains, with empty rows and columns dropped.
    pub core: Matrix,
}

struct Work {
    cols: Vec<Vec<(usize, i64)>>,
    row_cols: Vec<HashSet<usize>>,
    modulus: Option<i64>,
}

impl Work {
    fn new(m: &Matrix, modulus: Option<i64>) -> Option<Work> {
        let mut cols = Vec::with_capacity(m.cols());
        let mut row_cols = vec![HashSet::new(); m.rows()];
        for j in 0..m.cols() {
            let mut col = Vec::with_capacity(m.column_entries(j).len());
            for (i, x) in m.column_entries(j) {
                let v = match modulus {
                    Some(p) => {
                        let r = x % BigInt::from(p);
                        (r.to_i64()? + p) % p
                    }
                    None => x.to_i64()?,
                };
                if v != 0 {
                    col.push((*i, v));
                    row_cols[*i].insert(j);
                }
            }
            cols.push(col);
        }
        Some(Work { cols, row_cols, modulus })
    }

    fn is_pivot(&self, v: i64) -> bool {
        match self.modulus {
            Some(_) => v != 0,
            None => v == 1 || v == -1,
        }
    }

    fn inverse(&self, v: i64) -> i64 {
        match self.modulus {
            Some(p) => mod_inverse(v as u64, p as u64) as i64,
            None => v,
        }
    }

    fn normalize(&self, x: i128) -> Option<i64> {
        match self.modulus {
            Some(p) => Some(x.rem_euclid(p as i128) as i64),
            None => i64::try_from(x).ok(),
        }
    }

    /// `a − f·b` on sorted sparse columns; `None` on overflow.
    fn combine(&self, a: &[(usize, i64)], f: i64, b: &[(usize, i64)]) -> Option<Vec<(usize, i64)>> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let take_a = y == b.len() || (x < a.len() && a[x].0 < b[y].0);
            let take_b = x == a.len() || (y < b.len() && b[y].0 < a[x].0);
            let (row, value) = if take_a {
                x += 1;
                (a[x - 1].0, a[x - 1].1 as i128)
            } else if take_b {
                y += 1;
                (b[y - 1].0, -(f as i128) * b[y - 1].1 as i128)
            } else {
                x += 1;
                y += 1;
                (a[x - 1].0, a[x - 1].1 as i128 - (f as i128) * b[y - 1].1 as i128)
            };
            let v = self.normalize(value)?;
            if v != 0 {
                out.push((row, v));
            }
        }
        Some(out)
    }

    /// Eliminates the pivot at `(i, j)`. Leaves the state untouched and
    /// returns `false` if an entry would overflow.
    fn pivot(&mut self, i: usize, j: usize, v: i64) -> bool {
        let inv = self.inverse(v);
        let others: Vec<usize> = self.row_cols[i].iter().copied().filter(|&k| k != j).collect();
        let mut updates = Vec::with_capacity(others.len());
        for &k in &others {
            let a = self.cols[k].iter().find(|e| e.0 == i).map_or(0, |e| e.1);
            let Some(f) = self.normalize(a as i128 * inv as i128) else { return false };
            match self.combine(&self.cols[k], f, &self.cols[j]) {
                Some(c) => updates.push((k, c)),
                None => return false,
            }
        }
        for (k, new) in updates {
            for (r, _) in &self.cols[k] {
                self.row_cols[*r].remove(&k);
            }
            for (r, _) in &new {
                self.row_cols[*r].insert(k);
            }
            self.cols[k] = new;
        }
        for (r, _) in std::mem::take(&mut self.cols[j]) {
            self.row_cols[r].remove(&j);
        }
        true
    }

    fn run(&mut self) -> usize {
        let mut pivots = 0;
        loop {
            let mut order: Vec<usize> = (0..self.cols.len()).filter(|&j| !self.cols[j].is_empty()).collect();
            order.sort_by_key(|&j| (self.cols[j].len(), j));
            let mut progress = false;
            for j in order {
                let best = self.cols[j]
                    .iter()
                    .filter(|(_, v)| self.is_pivot(*v))
                    .min_by_key(|(i, _)| (self.row_cols[*i].len(), *i))
                    .copied();
                let Some((i, v)) = best else { continue };
                if !self.pivot(i, j, v) {
                    return pivots;
                }
                pivots += 1;
                progress = true;
            }
            if !progress {
                return pivots;
            }
        }
    }

    fn core(&self) -> Matrix {
        let live_rows: Vec<usize> = (0..self.row_cols.len()).filter(|&i| !self.row_cols[i].is_empty()).collect();
        let mut row_index = vec![usize::MAX; self.row_cols.len()];
        for (k, &i) in live_rows.iter().enumerate() {
            row_index[i] = k;
        }
        let live_cols: Vec<&Vec<(usize, i64)>> = self.cols.iter().filter(|c| !c.is_empty()).collect();
        let mut m = Matrix::zeros(live_rows.len(), live_cols.len());
        for (j, col) in live_cols.into_iter().enumerate() {
            for &(i, v) in col {
                m.set(row_index[i], j, BigInt::from(v));
            }
        }
        m
    }
}

/// Removes ±1 pivots exactly over ℤ. `None` if an entry does not fit in
/// an `i64`; elimination stops early (leaving a larger core) if one would
/// overflow later.
pub(crate) fn eliminate_units(m: &Matrix) -> Option<Reduced> {
    let mut w = Work::new(m, None)?;
    let pivots = w.run();
    Some(Reduced { pivots, core: w.core() })
}

/// Rank over F_p by sparse elimination; `None` if `p` is too large for
/// word arithmetic.
pub(crate) fn rank_mod_sparse(m: &Matrix, p: u64) -> Option<usize> {
    let p = i64::try_from(p).ok().filter(|&p| p < (1 << 31))?;
    let mut w = Work::new(m, Some(p))?;
    let pivots = w.run();
    debug_assert!(w.cols.iter().all(Vec::is_empty));
    Some(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::snf::invariant_factors_dense;
    use crate::linalg::Ring;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        let mut m = Matrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                if rng.gen_bool(0.3) {
                    m.add_to(i, j, rng.gen_range(-3..=3));
                }
            }
        }
        m
    }

    #[test]
    fn matches_dense_algorithms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(0..9), rng.gen_range(0..9));
            let m = random_matrix(&mut rng, r, c);
            let red = eliminate_units(&m).unwrap();
            let mut factors = vec![BigInt::from(1); red.pivots];
            factors.extend(invariant_factors_dense(&red.core));
            assert_eq!(factors, invariant_factors_dense(&m), "{m:?}");
            for p in [2, 3, 5] {
                assert_eq!(rank_mod_sparse(&m, p).unwrap(), m.rank_dense(Ring::PrimeField(p)), "{m:?} mod {p}");
            }
        }
    }
}
