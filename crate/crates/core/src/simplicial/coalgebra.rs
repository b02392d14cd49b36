use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::set::{SimplexRef, SimplicialSet};
use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, Matrix, Ring};

/// Finite-basis dg coalgebra with integer structure constants.
///
/// Basis elements are indexed globally; `boundary`, `coproduct` and `counit`
/// are stored sparsely per element.
#[derive(Clone, Debug)]
pub struct DGCoalgebra {
    labels: Vec<String>,
    degrees: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    boundary: Vec<Vec<(usize, i64)>>,
    coproduct: Vec<Vec<(usize, usize, i64)>>,
    counit: Vec<i64>,
    index: HashMap<String, usize>,
    /// Source simplex of each basis element, when built from a simplicial set.
    simplices: Option<Vec<usize>>,
}

/// One basis element of a coalgebra under construction.
#[derive(Clone, Debug)]
pub struct CoalgebraElement {
    pub label: String,
    pub degree: usize,
    pub boundary: Vec<(usize, i64)>,
    pub coproduct: Vec<(usize, usize, i64)>,
    pub counit: i64,
}

impl DGCoalgebra {
    /// Assembles a coalgebra from raw structure constants; indices in
    /// `boundary` and `coproduct` refer to positions in `elements`.
    pub fn from_elements(elements: Vec<CoalgebraElement>) -> Result<Self> {
        let mut c = DGCoalgebra {
            labels: Vec::new(),
            degrees: Vec::new(),
            by_degree: Vec::new(),
            boundary: Vec::new(),
            coproduct: Vec::new(),
            counit: Vec::new(),
            index: HashMap::new(),
            simplices: None,
        };
        let n = elements.len();
        for (i, e) in elements.into_iter().enumerate() {
            if c.index.insert(e.label.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis label `{}`", e.label)));
            }
            if e.boundary.iter().any(|&(j, _)| j >= n)
                || e.coproduct.iter().any(|&(a, b, _)| a >= n || b >= n)
            {
                return Err(Error::Invalid(format!("element `{}` references an unknown index", e.label)));
            }
            if c.by_degree.len() <= e.degree {
                c.by_degree.resize(e.degree + 1, Vec::new());
            }
            c.by_degree[e.degree].push(i);
            c.labels.push(e.label);
            c.degrees.push(e.degree);
            c.boundary.push(collect_terms(e.boundary.into_iter()));
            c.coproduct.push(
                collect_terms(e.coproduct.into_iter().map(|(a, b, x)| ((a, b), x)))
                    .into_iter()
                    .map(|((a, b), x)| (a, b, x))
                    .collect(),
            );
            c.counit.push(e.counit);
        }
        for i in 0..n {
            for &(j, _) in &c.boundary[i] {
                if c.degrees[j] + 1 != c.degrees[i] {
                    return Err(Error::Invalid(format!("boundary of `{}` has the wrong degree", c.labels[i])));
                }
            }
            for &(a, b, _) in &c.coproduct[i] {
                if c.degrees[a] + c.degrees[b] != c.degrees[i] {
                    return Err(Error::Invalid(format!("coproduct of `{}` has the wrong degree", c.labels[i])));
                }
            }
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len().saturating_sub(1)
    }

    pub fn basis(&self, n: usize) -> &[usize] {
        self.by_degree.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, i: usize) -> &[(usize, i64)] {
        &self.boundary[i]
    }

    pub fn coproduct(&self, i: usize) -> &[(usize, usize, i64)] {
        &self.coproduct[i]
    }

    pub fn counit(&self, i: usize) -> i64 {
        self.counit[i]
    }

    /// Simplex id behind basis element `i`, for coalgebras of chains.
    pub fn simplex_of(&self, i: usize) -> Option<usize> {
        self.simplices.as_ref().map(|s| s[i])
    }

    /// Degree 0 has rank one.
    pub fn is_connected(&self) -> bool {
        self.basis(0).len() == 1
    }

    /// The degree-0 basis element of a connected coalgebra.
    pub fn unit(&self) -> Option<usize> {
        if self.is_connected() {
            Some(self.basis(0)[0])
        } else {
            None
        }
    }

    /// Δ′ = Δ − 1⊗c − c⊗1: the coproduct terms with both factors in
    /// positive degree. Meaningful for connected coalgebras.
    pub fn reduced_coproduct(&self, i: usize) -> Vec<(usize, usize, i64)> {
        self.coproduct[i]
            .iter()
            .filter(|&&(a, b, _)| self.degrees[a] > 0 && self.degrees[b] > 0)
            .copied()
            .collect()
    }

    /// Normalized chain complex in degrees `0..=max_degree`.
    pub fn chain_complex(&self, ring: Ring, max_degree: usize) -> Result<ChainComplex> {
        let mut pos = vec![0usize; self.len()];
        let mut bases = Vec::new();
        for n in 0..=max_degree {
            let b = self.basis(n);
            for (k, &i) in b.iter().enumerate() {
                pos[i] = k;
            }
            bases.push(b.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>());
        }
        let mut boundaries = vec![Matrix::zeros(0, bases[0].len())];
        for n in 1..=max_degree {
            let mut d = Matrix::zeros(bases[n - 1].len(), bases[n].len());
            for (col, &i) in self.basis(n).iter().enumerate() {
                for &(j, x) in &self.boundary[i] {
                    d.add_to(pos[j], col, x);
                }
            }
            boundaries.push(d);
        }
        ChainComplex::new(ring, bases, boundaries)
    }

    /// ∂∂ = 0 on every basis element.
    pub fn check_d_squared(&self) -> std::result::Result<(), String> {
        for i in 0..self.len() {
            let mut acc = BTreeMap::new();
            for &(j, x) in &self.boundary[i] {
                for &(k, y) in &self.boundary[j] {
                    *acc.entry(k).or_insert(0i64) += x * y;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(format!("dd({}) != 0", self.labels[i]));
            }
        }
        Ok(())
    }

    /// (Δ⊗id)Δ = (id⊗Δ)Δ on every basis element.
    pub fn check_coassociative(&self) -> std::result::Result<(), String> {
        for i in 0..self.len() {
            let mut acc: BTreeMap<(usize, usize, usize), i64> = BTreeMap::new();
            for &(a, b, x) in &self.coproduct[i] {
                for &(a1, a2, y) in &self.coproduct[a] {
                    *acc.entry((a1, a2, b)).or_insert(0) += x * y;
                }
                for &(b1, b2, y) in &self.coproduct[b] {
                    *acc.entry((a, b1, b2)).or_insert(0) -= x * y;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(format!("coassociativity fails on {}", self.labels[i]));
            }
        }
        Ok(())
    }

    /// (ε⊗id)Δ = id = (id⊗ε)Δ.
    pub fn check_counit(&self) -> std::result::Result<(), String> {
        for i in 0..self.len() {
            let mut left: BTreeMap<usize, i64> = BTreeMap::new();
            let mut right: BTreeMap<usize, i64> = BTreeMap::new();
            for &(a, b, x) in &self.coproduct[i] {
                *left.entry(b).or_insert(0) += x * self.counit[a];
                *right.entry(a).or_insert(0) += x * self.counit[b];
            }
            for side in [left, right] {
                for (&k, &v) in &side {
                    let expected = i64::from(k == i);
                    if v != expected {
                        return Err(format!("counit law fails on {}", self.labels[i]));
                    }
                }
                if side.get(&i).copied().unwrap_or(0) != 1 {
                    return Err(format!("counit law fails on {}", self.labels[i]));
                }
            }
        }
        Ok(())
    }

    /// Δ∂ = (∂⊗1 + 1⊗∂)Δ with the Koszul sign on the second term.
    pub fn check_coproduct_chain_map(&self) -> std::result::Result<(), String> {
        for i in 0..self.len() {
            let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for &(j, x) in &self.boundary[i] {
                for &(a, b, y) in &self.coproduct[j] {
                    *acc.entry((a, b)).or_insert(0) += x * y;
                }
            }
            for &(a, b, x) in &self.coproduct[i] {
                for &(a2, y) in &self.boundary[a] {
                    *acc.entry((a2, b)).or_insert(0) -= x * y;
                }
                let sign = if self.degrees[a].is_multiple_of(2) { 1 } else { -1 };
                for &(b2, y) in &self.boundary[b] {
                    *acc.entry((a, b2)).or_insert(0) -= sign * x * y;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(format!("coproduct is not a chain map on {}", self.labels[i]));
            }
        }
        Ok(())
    }

    /// All structural checks; the first failure wins.
    pub fn check_all(&self) -> std::result::Result<(), String> {
        self.check_d_squared()?;
        self.check_coassociative()?;
        self.check_counit()?;
        self.check_coproduct_chain_map()
    }

    /// Boundary as big integers in the degree-`n` basis order.
    pub fn boundary_column(&self, i: usize) -> Vec<BigInt> {
        let n = self.degrees[i];
        let target = if n == 0 { &[][..] } else { self.basis(n - 1) };
        let mut col = vec![BigInt::from(0); target.len()];
        for &(j, x) in &self.boundary[i] {
            let p = target.iter().position(|&t| t == j).unwrap();
            col[p] += x;
        }
        col
    }
}

fn collect_terms<K: Ord>(terms: impl Iterator<Item = (K, i64)>) -> Vec<(K, i64)> {
    let mut acc = BTreeMap::new();
    for (k, x) in terms {
        *acc.entry(k).or_insert(0) += x;
    }
    acc.into_iter().filter(|(_, x)| *x != 0).collect()
}

/// Normalized chains of `s` in degrees ≤ `max_degree` with the
/// Alexander–Whitney coproduct.
pub fn aw_coalgebra(s: &SimplicialSet, max_degree: usize) -> Result<DGCoalgebra> {
    s.validate(max_degree + 1)?;
    let mut ids = Vec::new();
    for n in 0..=max_degree.min(s.max_dim()) {
        ids.extend_from_slice(s.of_dim(n));
    }
    let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let nondeg = |r: &SimplexRef| if r.is_degenerate() { None } else { pos.get(&r.base).copied() };
    let elements = ids
        .iter()
        .map(|&id| {
            let n = s.dim(id);
            let me = SimplexRef::nondegenerate(id);
            let boundary = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .filter_map(|i| nondeg(s.face(id, i)).map(|j| (j, if i % 2 == 0 { 1 } else { -1 })))
                    .collect()
            };
            let coproduct = (0..=n)
                .filter_map(|p| {
                    let f = nondeg(&s.front(&me, p))?;
                    let l = nondeg(&s.back(&me, n - p))?;
                    Some((f, l, 1))
                })
                .collect();
            CoalgebraElement {
                label: s.name_of(id).to_string(),
                degree: n,
                boundary,
                coproduct,
                counit: i64::from(n == 0),
            }
        })
        .collect();
    let mut c = DGCoalgebra::from_elements(elements)?;
    c.simplices = Some(ids);
    Ok(c)
}

/// Normalized chain complex of `s` in degrees ≤ `max_degree`.
pub fn normalized_chains(s: &SimplicialSet, ring: Ring, max_degree: usize) -> Result<ChainComplex> {
    aw_coalgebra(s, max_degree)?.chain_complex(ring, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::homology;
    use crate::simplicial::{nerve_monoid, sphere, standard_simplex, Monoid};

    #[test]
    fn interval() {
        let d1 = standard_simplex(1);
        let c = aw_coalgebra(&d1, 1).unwrap();
        let e = c.index_of("01").unwrap();
        let x0 = c.index_of("0").unwrap();
        let x1 = c.index_of("1").unwrap();
        let mut b = c.boundary(e).to_vec();
        b.sort();
        assert_eq!(b, vec![(x0, -1), (x1, 1)]);
        let mut d = c.coproduct(e).to_vec();
        d.sort();
        assert_eq!(d, vec![(x0, e, 1), (e, x1, 1)]);
        assert!(!c.is_connected());
        c.check_all().unwrap();
    }

    #[test]
    fn sphere_coalgebra() {
        let c = aw_coalgebra(&sphere(2), 2).unwrap();
        assert_eq!(c.len(), 2);
        let top = c.basis(2)[0];
        assert!(c.boundary(top).is_empty());
        assert!(c.reduced_coproduct(top).is_empty());
        assert!(c.is_connected());
        c.check_all().unwrap();
    }

    #[test]
    fn point_coalgebra() {
        let c = aw_coalgebra(&standard_simplex(0), 3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.coproduct(0), &[(0, 0, 1)]);
    }

    #[test]
    fn homology_of_models() {
        let h = homology(&normalized_chains(&standard_simplex(2), Ring::Integers, 2).unwrap());
        assert_eq!(h.betti(), vec![1, 0, 0]);
        let h = homology(&normalized_chains(&sphere(1), Ring::Integers, 1).unwrap());
        assert_eq!(h.betti(), vec![1, 1]);
        // BZ/2 through degree 3: H = Z, Z/2, 0, (Z/2 in degree 3 needs degree 4).
        let bz2 = nerve_monoid(&Monoid::cyclic(2), 4);
        let h = homology(&normalized_chains(&bz2, Ring::Integers, 4).unwrap()).truncated(3);
        assert_eq!(h.betti(), vec![1, 0, 0, 0]);
        assert_eq!(h.degrees[1].torsion, vec![BigInt::from(2)]);
        assert!(h.degrees[2].torsion.is_empty());
        assert_eq!(h.degrees[3].torsion, vec![BigInt::from(2)]);
        let h2 = homology(&normalized_chains(&bz2, Ring::PrimeField(2), 4).unwrap()).truncated(3);
        assert_eq!(h2.betti(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn nerve_coalgebra_is_valid() {
        let c = aw_coalgebra(&nerve_monoid(&Monoid::symmetric3(), 3), 3).unwrap();
        c.check_all().unwrap();
    }
}
