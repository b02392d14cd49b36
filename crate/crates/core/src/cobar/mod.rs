//! The cobar construction on connected dg coalgebras, its comparison with the
//! rigidification mapping complex, loop-space homology with Pontryagin
//! products, and degree-zero algebra presentations.

mod algebra;
mod iso;
mod presentation;

use std::collections::HashMap;

pub use algebra::{word_homology_algebra, ClassProduct, HomologyAlgebra};
pub use iso::{theorem71_iso, IsoReport};
pub use presentation::{h0_presentation, AlgebraPresentation, DimensionProbe, Relation};

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, Matrix, Ring};
use crate::simplicial::DGCoalgebra;
use crate::tensor::{Element, Word};

/// Free graded algebra on labeled generators with a differential given on
/// generators and extended as a derivation, plus enumeration cutoffs.
#[derive(Clone, Debug)]
pub struct PresentedDga {
    labels: Vec<String>,
    degrees: Vec<usize>,
    differential: Vec<Element>,
    /// The coalgebra basis element each generator desuspends, if any.
    origin: Vec<Option<usize>>,
    max_degree: usize,
    max_length: Option<usize>,
}

impl PresentedDga {
    /// Checks that each `D g` has degree `|g| − 1` and refers to known
    /// generators. `D² = 0` is checked separately by [`PresentedDga::check_d_squared`].
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<usize>,
        differential: Vec<Element>,
        max_degree: usize,
        max_length: Option<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if degrees.len() != n || differential.len() != n {
            return Err(Error::Invalid("generator labels, degrees and differentials differ in length".into()));
        }
        let a = PresentedDga { labels, degrees, differential, origin: vec![None; n], max_degree, max_length };
        for g in 0..n {
            for (w, _) in a.differential[g].terms() {
                if w.iter().any(|&l| l >= n) {
                    return Err(Error::Invalid(format!("D({}) uses an unknown generator", a.labels[g])));
                }
                if a.degrees[g] == 0 || a.word_degree(w) + 1 != a.degrees[g] {
                    return Err(Error::Invalid(format!("D({}) is not of degree one less", a.labels[g])));
                }
            }
        }
        Ok(a)
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, g: usize) -> usize {
        self.degrees[g]
    }

    pub fn origin(&self, g: usize) -> Option<usize> {
        self.origin[g]
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn max_length(&self) -> Option<usize> {
        self.max_length
    }

    pub fn generator_differential(&self, g: usize) -> &Element {
        &self.differential[g]
    }

    pub fn word_degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.degrees[g]).sum()
    }

    /// `D(g₁⋯g_k) = Σᵢ (−1)^{|g₁⋯g_{i−1}|} g₁⋯(D gᵢ)⋯g_k`.
    pub fn d_word(&self, w: &[usize]) -> Element {
        let mut out = Element::zero();
        let mut before = 0usize;
        for (i, &g) in w.iter().enumerate() {
            let sign = if before.is_multiple_of(2) { 1 } else { -1 };
            for (mid, c) in self.differential[g].terms() {
                let mut x = w[..i].to_vec();
                x.extend_from_slice(mid);
                x.extend_from_slice(&w[i + 1..]);
                out.add_term(x, sign * c);
            }
            before += self.degrees[g];
        }
        out
    }

    pub fn d(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.d_word(w), c);
        }
        out
    }

    pub fn has_degree_zero_generators(&self) -> bool {
        self.degrees.contains(&0)
    }

    /// `D(D g) = 0` for every generator; returns the first failure.
    pub fn check_d_squared(&self) -> std::result::Result<(), String> {
        for g in 0..self.generator_count() {
            let dd = self.d(&self.differential[g]);
            if !dd.is_zero() {
                return Err(format!("D²({}) = {}", self.labels[g], self.render(&dd)));
            }
        }
        Ok(())
    }

    /// Words of degree ≤ `max_degree` (and length ≤ `max_length`, or weight
    /// Σ(|gᵢ| + 1) ≤ `max_weight`), grouped by degree and sorted by
    /// (length, letters).
    pub fn enumerate_words(&self, max_degree: usize, max_length: Option<usize>, max_weight: Option<usize>) -> Result<Vec<Vec<Word>>> {
        if max_length.is_none() && max_weight.is_none() && self.has_degree_zero_generators() {
            return Err(Error::CutoffRequired("degree-0 generators give infinitely many words of each degree".into()));
        }
        let mut by_degree = vec![Vec::new(); max_degree + 1];
        let mut stack: Vec<(Word, usize, usize)> = vec![(Vec::new(), 0, 0)];
        while let Some((w, deg, weight)) = stack.pop() {
            if max_length.is_some_and(|l| w.len() >= l) {
                by_degree[deg].push(w);
                continue;
            }
            for g in 0..self.generator_count() {
                let (d2, wt2) = (deg + self.degrees[g], weight + self.degrees[g] + 1);
                if d2 > max_degree || max_weight.is_some_and(|b| wt2 > b) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(g);
                stack.push((w2, d2, wt2));
            }
            by_degree[deg].push(w);
        }
        for words in &mut by_degree {
            words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        }
        Ok(by_degree)
    }

    /// The truncated basis at the stored cutoffs.
    pub fn basis(&self) -> Result<Vec<Vec<Word>>> {
        self.enumerate_words(self.max_degree, self.max_length, None)
    }

    /// Chain complex for homology through `max_degree`, built one degree
    /// higher. With a length cutoff it is the subcomplex of words of weight
    /// Σ(|gᵢ| + 1) ≤ max_degree + max_length, which D never increases for a
    /// cobar construction.
    pub fn homology_complex(&self, ring: Ring) -> Result<(ChainComplex, Vec<Vec<Word>>)> {
        let weight = self.max_length.map(|l| self.max_degree + l);
        let basis = self.enumerate_words(self.max_degree + 1, None, weight)?;
        let labels = basis.iter().map(|ws| ws.iter().map(|w| self.word_label(w)).collect()).collect();
        let mut mats = vec![Matrix::zeros(0, basis[0].len())];
        for n in 1..basis.len() {
            let pos: HashMap<&Word, usize> = basis[n - 1].iter().enumerate().map(|(k, w)| (w, k)).collect();
            let mut d = Matrix::zeros(basis[n - 1].len(), basis[n].len());
            for (j, w) in basis[n].iter().enumerate() {
                for (t, c) in self.d_word(w).terms() {
                    match pos.get(t) {
                        Some(&i) => d.add_to(i, j, c),
                        None if weight.is_some() => {}
                        None => return Err(Error::Invalid(format!("D{} leaves the word basis", self.word_label(w)))),
                    }
                }
            }
            mats.push(d);
        }
        Ok((ChainComplex::new(ring, labels, mats)?, basis))
    }

    /// Homology with Pontryagin products of integral generators.
    pub fn homology_algebra(&self, ring: Ring) -> Result<HomologyAlgebra> {
        let (c, basis) = self.homology_complex(ring)?;
        word_homology_algebra(&c, &basis, self.max_degree, self.max_length.is_some(), |w| self.word_label(w))
    }

    pub fn word_label(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "1".into()
        } else {
            let names: Vec<&str> = w.iter().map(|&g| self.labels[g].as_str()).collect();
            format!("[{}]", names.join("|"))
        }
    }

    pub fn render(&self, e: &Element) -> String {
        e.display_with(|g| self.labels[g].clone())
    }
}

/// Ω C: generators `s c` for the positive-degree basis of `C` up to degree
/// `max_degree + 1`, of degree `|c| − 1`, with
/// `D(s c) = −s(∂c) + Σ (−1)^{|c′|} s c′ ⊗ s c″` over the reduced coproduct.
pub fn cobar(c: &DGCoalgebra, max_degree: usize, max_length: Option<usize>) -> Result<PresentedDga> {
    if !c.is_connected() {
        return Err(Error::NotConnected(c.basis(0).len()));
    }
    let mut source = Vec::new();
    for n in 1..=(max_degree + 1).min(c.max_degree()) {
        source.extend_from_slice(c.basis(n));
    }
    let gen_of: HashMap<usize, usize> = source.iter().enumerate().map(|(g, &i)| (i, g)).collect();
    let labels: Vec<String> = source.iter().map(|&i| format!("s{}", c.label(i))).collect();
    let degrees: Vec<usize> = source.iter().map(|&i| c.degree(i) - 1).collect();
    let mut differential = Vec::with_capacity(source.len());
    for &i in &source {
        let mut d = Element::zero();
        for &(j, x) in c.boundary(i) {
            if c.degree(j) > 0 {
                d.add_term(vec![gen_of[&j]], -x);
            }
        }
        for (a, b, x) in c.reduced_coproduct(i) {
            let sign = if c.degree(a).is_multiple_of(2) { 1 } else { -1 };
            d.add_term(vec![gen_of[&a], gen_of[&b]], sign * x);
        }
        differential.push(d);
    }
    let mut a = PresentedDga::new(labels, degrees, differential, max_degree, max_length)?;
    a.origin = source.into_iter().map(Some).collect();
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{aw_coalgebra, nerve_monoid, sphere, standard_simplex, Monoid, SimplicialSet};

    #[test]
    fn sphere_models() {
        let a = cobar(&aw_coalgebra(&sphere(2), 4).unwrap(), 3, None).unwrap();
        assert_eq!(a.generator_count(), 1);
        assert_eq!(a.degree(0), 1);
        assert!(a.generator_differential(0).is_zero());
        let h = a.homology_algebra(Ring::Integers).unwrap();
        assert_eq!(h.homology.betti(), vec![1, 1, 1, 1]);

        let b = cobar(&aw_coalgebra(&sphere(3), 8).unwrap(), 7, None).unwrap();
        assert_eq!(b.degree(0), 2);
        let h = b.homology_algebra(Ring::Integers).unwrap();
        assert_eq!(h.homology.betti(), vec![1, 0, 1, 0, 1, 0, 1, 0]);
        let square = h.products.iter().find(|p| p.left == (2, 0) && p.right == (2, 0)).unwrap();
        assert_eq!(square.degree, 4);
        assert_eq!(square.coordinates, vec!["1".to_string()]);
    }

    #[test]
    fn point_gives_ground_ring() {
        let mut s = SimplicialSet::new("pt");
        s.add_vertex("x").unwrap();
        let a = cobar(&aw_coalgebra(&s, 3).unwrap(), 3, None).unwrap();
        assert_eq!(a.generator_count(), 0);
        assert_eq!(a.homology_algebra(Ring::Integers).unwrap().homology.betti(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn disconnected_coalgebra_is_rejected() {
        let s = standard_simplex(1);
        assert_eq!(cobar(&aw_coalgebra(&s, 1).unwrap(), 1, None).unwrap_err(), Error::NotConnected(2));
    }

    #[test]
    fn z2_nerve_differential() {
        let s = nerve_monoid(&Monoid::cyclic(2), 3);
        let a = cobar(&aw_coalgebra(&s, 3).unwrap(), 2, Some(4)).unwrap();
        a.check_d_squared().unwrap();
        let g = a.labels().iter().position(|l| l == "s(g)").unwrap();
        let gg = a.labels().iter().position(|l| l == "s(g,g)").unwrap();
        // D s(g,g) = −s(∂(g,g)) − s(g)s(g), and ∂(g,g) = (g) − 0 + (g) in
        // normalized chains since d₁ is degenerate.
        let d = a.generator_differential(gg);
        assert_eq!(d.coefficient(&[g]), -2);
        assert_eq!(d.coefficient(&[g, g]), -1);
        assert!(matches!(a.enumerate_words(2, None, None), Err(Error::CutoffRequired(_))));
    }

    #[test]
    fn derivation_law() {
        let s = nerve_monoid(&Monoid::cyclic(3), 3);
        let a = cobar(&aw_coalgebra(&s, 3).unwrap(), 2, Some(3)).unwrap();
        let basis = a.basis().unwrap();
        let words: Vec<&Word> = basis.iter().flatten().collect();
        for u in &words {
            for v in &words {
                let mut uv = (*u).clone();
                uv.extend_from_slice(v);
                let lhs = a.d_word(&uv);
                let sign = if a.word_degree(u).is_multiple_of(2) { 1 } else { -1 };
                let mut rhs = a.d_word(u).mul(&Element::word((*v).clone()));
                rhs.add_scaled(&Element::word((*u).clone()).mul(&a.d_word(v)), sign);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
