use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::matrix::Matrix;
use super::ring::Ring;
use super::snf::{invariant_factors, smith_normal_form};
use crate::error::{Error, Result};

/// Free chain complex concentrated in degrees `0..=top`.
///
/// `boundary(n)` is the matrix of ∂ₙ: Cₙ → Cₙ₋₁ with `rank(n-1)` rows and
/// `rank(n)` columns; ∂₀ is the zero map to nothing.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Ring,
    bases: Vec<Vec<String>>,
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    /// Validates shapes and ∂∂ = 0 (read in `ring`).
    pub fn new(ring: Ring, bases: Vec<Vec<String>>, boundaries: Vec<Matrix>) -> Result<Self> {
        if bases.len() != boundaries.len() {
            return Err(Error::Invalid(format!(
                "{} basis degrees but {} boundary matrices",
                bases.len(),
                boundaries.len()
            )));
        }
        for (n, d) in boundaries.iter().enumerate() {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            if d.rows() != rows || d.cols() != bases[n].len() {
                return Err(Error::Invalid(format!(
                    "boundary in degree {n} is {}x{}, expected {rows}x{}",
                    d.rows(),
                    d.cols(),
                    bases[n].len()
                )));
            }
        }
        for n in 2..boundaries.len() {
            if !boundaries[n - 1].mul(&boundaries[n]).is_zero_in(ring) {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        Ok(ChainComplex { ring, bases, boundaries })
    }

    /// Same complex, coefficients read in another ring.
    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        ChainComplex::new(ring, self.bases.clone(), self.boundaries.clone())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Highest degree with a stored basis, or `None` for the zero complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, n: usize) -> &[String] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    /// ∂ₙ; the zero matrix outside the stored range.
    pub fn boundary(&self, n: usize) -> Matrix {
        match self.boundaries.get(n) {
            Some(d) => d.clone(),
            None => Matrix::zeros(self.rank(n.wrapping_sub(1)), self.rank(n)),
        }
    }

    fn boundary_ref(&self, n: usize) -> Option<&Matrix> {
        self.boundaries.get(n)
    }
}

/// Homology of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub ring: Ring,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Keep degrees `0..=max` only.
    pub fn truncated(mut self, max: usize) -> Self {
        self.degrees.truncate(max + 1);
        self
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  betti  torsion   (over {})", self.ring)?;
        for d in &self.degrees {
            let tors: Vec<String> = d.torsion.iter().map(|t| format!("Z/{t}")).collect();
            writeln!(f, "{:>6}  {:>5}  {}", d.degree, d.betti, tors.join(" + "))?;
        }
        Ok(())
    }
}

/// Homology in every stored degree. The top degree treats ∂_{top+1} as zero;
/// callers that truncate a larger complex should build it one degree higher
/// and drop the last entry.
pub fn homology(c: &ChainComplex) -> HomologyReport {
    let top = match c.top_degree() {
        Some(t) => t,
        None => return HomologyReport { ring: c.ring, degrees: vec![] },
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|n| c.boundary_ref(n).map_or(0, |d| d.rank(c.ring)))
        .collect();
    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let kernel = c.rank(n) - ranks[n];
        match c.ring {
            Ring::Integers => {
                let (betti, torsion) = match c.boundary_ref(n + 1) {
                    Some(d) => {
                        let f = invariant_factors(d);
                        let torsion: Vec<BigInt> =
                            f.iter().filter(|x| **x > BigInt::one()).cloned().collect();
                        (kernel - f.len(), torsion)
                    }
                    None => (kernel, vec![]),
                };
                degrees.push(DegreeHomology { degree: n, betti, torsion });
            }
            _ => degrees.push(DegreeHomology {
                degree: n,
                betti: kernel - ranks[n + 1],
                torsion: vec![],
            }),
        }
    }
    HomologyReport { ring: c.ring, degrees }
}

/// Integral homology of one degree with explicit cycle representatives.
///
/// Generators are ordered torsion first (matching `orders`), then free.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    /// Order of each torsion generator (> 1).
    pub orders: Vec<BigInt>,
    pub free_rank: usize,
    /// One cycle per generator, in chain coordinates.
    pub representatives: Vec<Vec<BigInt>>,
    boundary_rank: usize,
    v_inv: Matrix,
    image_u: Matrix,
    image_factors: Vec<BigInt>,
}

impl HomologyBasis {
    pub fn generators(&self) -> usize {
        self.orders.len() + self.free_rank
    }

    /// Coordinates of the class of `z`, torsion parts reduced mod their
    /// order. Returns `None` when `z` is not a cycle.
    pub fn class_of(&self, z: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.v_inv.mul_vec(z);
        if y[..self.boundary_rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let kappa = &y[self.boundary_rank..];
        let h = self.image_u.mul_vec(kappa);
        let skip = self.image_factors.iter().take_while(|x| x.is_one()).count();
        let mut out = Vec::with_capacity(self.generators());
        for (i, x) in h.iter().enumerate().skip(skip) {
            match self.image_factors.get(i) {
                Some(d) => out.push(x.mod_floor(d)),
                None => out.push(x.clone()),
            }
        }
        Some(out)
    }

    /// Whether `z` is a boundary (the zero class).
    pub fn is_boundary(&self, z: &[BigInt]) -> bool {
        self.class_of(z).is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

/// Integral homology basis in degree `n`, with cycle representatives.
pub fn homology_basis(c: &ChainComplex, n: usize) -> HomologyBasis {
    let dim = c.rank(n);
    let d_n = c.boundary(n);
    let s = smith_normal_form(&d_n);
    let r = s.rank();
    let k = dim - r;
    let kernel = s.v.block(0..dim, r..dim);
    let d_next = c.boundary(n + 1);
    // Image of ∂ₙ₊₁ in kernel coordinates.
    let image = s.v_inv.mul(&d_next).block(r..dim, 0..d_next.cols());
    let si = smith_normal_form(&image);
    let factors = si.invariant_factors();
    let skip = factors.iter().take_while(|x| x.is_one()).count();
    let gens = kernel.mul(&si.u_inv);
    let representatives = (skip..k).map(|j| gens.column(j)).collect();
    HomologyBasis {
        degree: n,
        orders: factors[skip..].to_vec(),
        free_rank: k - factors.len(),
        representatives,
        boundary_rank: r,
        v_inv: s.v_inv,
        image_u: si.u,
        image_factors: factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize, p: &str) -> Vec<String> {
        (0..n).map(|i| format!("{p}{i}")).collect()
    }

    #[test]
    fn circle_and_point() {
        let c = ChainComplex::new(
            Ring::Integers,
            vec![labels(1, "v"), labels(1, "e")],
            vec![Matrix::zeros(0, 1), Matrix::zeros(1, 1)],
        )
        .unwrap();
        assert_eq!(homology(&c).betti(), vec![1, 1]);
        let p = ChainComplex::new(Ring::Integers, vec![labels(1, "v")], vec![Matrix::zeros(0, 1)])
            .unwrap();
        assert_eq!(homology(&p).betti(), vec![1]);
    }

    fn triangle() -> ChainComplex {
        // Vertices 0,1,2; edges 01,02,12; face 012.
        let d1 = Matrix::from_i64(3, 3, &[-1, -1, 0, 1, 0, -1, 0, 1, 1]);
        let d2 = Matrix::from_i64(3, 1, &[1, -1, 1]);
        ChainComplex::new(
            Ring::Integers,
            vec![labels(3, "v"), labels(3, "e"), labels(1, "f")],
            vec![Matrix::zeros(0, 3), d1, d2],
        )
        .unwrap()
    }

    #[test]
    fn standard_triangle() {
        assert_eq!(homology(&triangle()).betti(), vec![1, 0, 0]);
        assert_eq!(homology(&triangle().with_ring(Ring::PrimeField(2)).unwrap()).betti(), vec![1, 0, 0]);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = Matrix::from_i64(1, 1, &[1]);
        let d2 = Matrix::from_i64(1, 1, &[1]);
        let err = ChainComplex::new(
            Ring::Integers,
            vec![labels(1, "a"), labels(1, "b"), labels(1, "c")],
            vec![Matrix::zeros(0, 1), d1, d2],
        );
        assert_eq!(err.unwrap_err(), Error::NotAComplex { degree: 2 });
    }

    fn projective_plane() -> ChainComplex {
        // One vertex, one edge a, one 2-cell with ∂ = 2a.
        ChainComplex::new(
            Ring::Integers,
            vec![labels(1, "x"), labels(1, "a"), labels(1, "c")],
            vec![Matrix::zeros(0, 1), Matrix::zeros(1, 1), Matrix::from_i64(1, 1, &[2])],
        )
        .unwrap()
    }

    #[test]
    fn torsion_and_universal_coefficients() {
        let c = projective_plane();
        let hz = homology(&c);
        assert_eq!(hz.betti(), vec![1, 0, 0]);
        assert_eq!(hz.degrees[1].torsion, vec![BigInt::from(2)]);
        let h2 = homology(&c.with_ring(Ring::PrimeField(2)).unwrap());
        assert_eq!(h2.betti(), vec![1, 1, 1]);
        let h3 = homology(&c.with_ring(Ring::PrimeField(3)).unwrap());
        assert_eq!(h3.betti(), vec![1, 0, 0]);
        let hq = homology(&c.with_ring(Ring::Rationals).unwrap());
        assert_eq!(hq.betti(), vec![1, 0, 0]);
        assert!(hq.is_torsion_free());
    }

    #[test]
    fn class_coordinates() {
        let c = projective_plane();
        let b = homology_basis(&c, 1);
        assert_eq!(b.orders, vec![BigInt::from(2)]);
        assert_eq!(b.free_rank, 0);
        let three_a = vec![BigInt::from(3)];
        assert_eq!(b.class_of(&three_a), Some(vec![BigInt::one()]));
        assert!(b.is_boundary(&[BigInt::from(4)]));

        let t = triangle();
        let b1 = homology_basis(&t, 1);
        assert_eq!(b1.generators(), 0);
        let cycle: Vec<BigInt> = [1, -1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(b1.is_boundary(&cycle));
        let not_cycle: Vec<BigInt> = [1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(b1.class_of(&not_cycle), None);
        let b0 = homology_basis(&t, 0);
        assert_eq!(b0.free_rank, 1);
        let v1: Vec<BigInt> = [0, 1, 0].iter().map(|&x| BigInt::from(x)).collect();
        let v2: Vec<BigInt> = [0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(b0.class_of(&v1), b0.class_of(&v2));
    }
}
