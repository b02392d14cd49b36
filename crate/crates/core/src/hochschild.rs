//! Truncated Hochschild chains of a free dga and coHochschild chains of a
//! connected dg coalgebra, as finite chain complexes.
//!
//! Hochschild chains of `A = T(V)` have basis `a₀[a₁|…|a_n]` with `a₀` any
//! word, each `aᵢ` a nonempty word, and degree `|a₀| + Σ(|aᵢ| + 1)`. Writing
//! `εᵢ` for the degree of `a₀[a₁|…|aᵢ]`, the differential is
//!
//! ```text
//! b = D a₀[…] − Σᵢ (−1)^{ε_{i−1}} a₀[…|D aᵢ|…]
//!   + (−1)^{|a₀|} a₀a₁[a₂|…]
//!   + Σᵢ (−1)^{ε_{i−1} + |aᵢ| + 1} a₀[…|aᵢa_{i+1}|…]
//!   − (−1)^{(|a_n|+1) ε_{n−1}} a_n a₀[a₁|…|a_{n−1}]
//! ```
//!
//! CoHochschild chains of `C` have basis `c ⊗ w` with `w` a word in the
//! generators `s⁻¹c̄` of the cobar construction, and differential
//!
//! ```text
//! d(c ⊗ w) = ∂c ⊗ w + (−1)^{|c|} c ⊗ Dw
//!          − Σ_{Δc = c′⊗c″, |c″|>0} (−1)^{|c′|} c′ ⊗ (s⁻¹c″)·w
//!          + Σ_{Δc = c′⊗c″, |c′|>0} (−1)^{|c′|(|c″|+|w|) + |c″| + |w|} c″ ⊗ w·(s⁻¹c′)
//! ```
//!
//! Both square to zero (checked on construction) and their homologies agree
//! on simply connected examples.

use std::collections::HashMap;

use serde::Serialize;

use crate::cobar::{cobar, PresentedDga};
use crate::error::{Error, Result};
use crate::linalg::{homology, ChainComplex, HomologyReport, Matrix, Ring};
use crate::simplicial::DGCoalgebra;
use crate::tensor::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Hochschild,
    Cohochschild,
}

/// A (co)Hochschild complex built through degree `max_degree + 1`, so that
/// homology through `max_degree` is computed from the full boundary data.
#[derive(Clone, Debug)]
pub struct TruncatedComplexReport {
    pub kind: ComplexKind,
    pub max_degree: usize,
    pub max_length: Option<usize>,
    /// A weight cutoff was needed, so ranks are not final.
    pub truncated: bool,
    pub complex: ChainComplex,
}

impl TruncatedComplexReport {
    /// Homology in degrees `0..=max_degree`.
    pub fn homology(&self) -> HomologyReport {
        homology(&self.complex).truncated(self.max_degree)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.complex.ranks()
    }
}

type Terms<K> = HashMap<K, i64>;

fn add<K: std::hash::Hash + Eq>(t: &mut Terms<K>, k: K, c: i64) {
    if c != 0 {
        let e = t.entry(k).or_insert(0);
        *e += c;
    }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn word_weight(a: &PresentedDga, w: &[usize]) -> usize {
    a.word_degree(w) + w.len()
}

/// Assembles a chain complex from per-degree bases and a boundary function.
fn assemble<K: Clone + std::hash::Hash + Eq>(
    ring: Ring,
    basis: &[Vec<K>],
    label: impl Fn(&K) -> String,
    boundary: impl Fn(&K) -> Terms<K>,
    strict: bool,
) -> Result<ChainComplex> {
    let labels = basis.iter().map(|ks| ks.iter().map(&label).collect()).collect();
    let mut mats = vec![Matrix::zeros(0, basis[0].len())];
    for n in 1..basis.len() {
        let pos: HashMap<&K, usize> = basis[n - 1].iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut d = Matrix::zeros(basis[n - 1].len(), basis[n].len());
        for (j, k) in basis[n].iter().enumerate() {
            for (t, c) in boundary(k) {
                if c == 0 {
                    continue;
                }
                match pos.get(&t) {
                    Some(&i) => d.add_to(i, j, c),
                    None if !strict => {}
                    None => return Err(Error::Invalid(format!("boundary of {} leaves the basis", label(k)))),
                }
            }
        }
        mats.push(d);
    }
    ChainComplex::new(ring, labels, mats)
}

/// Hochschild boundary of `a₀[a₁|…|a_n]`.
pub fn hochschild_boundary(a: &PresentedDga, x: &[Word]) -> HashMap<Vec<Word>, i64> {
    let mut out = Terms::new();
    let n = x.len() - 1;
    let deg = |w: &Word| a.word_degree(w);
    let mut eps = vec![deg(&x[0])];
    for i in 1..=n {
        eps.push(eps[i - 1] + deg(&x[i]) + 1);
    }
    for (w, c) in a.d_word(&x[0]).terms() {
        let mut y = x.to_vec();
        y[0] = w.clone();
        add(&mut out, y, c);
    }
    for i in 1..=n {
        for (w, c) in a.d_word(&x[i]).terms() {
            if w.is_empty() {
                continue;
            }
            let mut y = x.to_vec();
            y[i] = w.clone();
            add(&mut out, y, -sign(eps[i - 1]) * c);
        }
    }
    if n >= 1 {
        let mut y = vec![[x[0].as_slice(), x[1].as_slice()].concat()];
        y.extend_from_slice(&x[2..]);
        add(&mut out, y, sign(deg(&x[0])));
        for i in 1..n {
            let mut y = x[..i].to_vec();
            y.push([x[i].as_slice(), x[i + 1].as_slice()].concat());
            y.extend_from_slice(&x[i + 2..]);
            add(&mut out, y, sign(eps[i - 1] + deg(&x[i]) + 1));
        }
        let mut y = vec![[x[n].as_slice(), x[0].as_slice()].concat()];
        y.extend_from_slice(&x[1..n]);
        add(&mut out, y, -sign((deg(&x[n]) + 1) * eps[n - 1]));
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Hochschild chains of `a` through degree `max_degree`. Generators of
/// degree 0 make each degree infinite; then `max_length` is required and the
/// complex is cut to total weight Σ(|g| + 1) ≤ max_degree + max_length.
pub fn hochschild(a: &PresentedDga, ring: Ring, max_degree: usize, max_length: Option<usize>) -> Result<TruncatedComplexReport> {
    for g in 0..a.generator_count() {
        if a.generator_differential(g).coefficient(&[]) != 0 {
            return Err(Error::Invalid(format!("D({}) has a constant term; the algebra is not augmented", a.label(g))));
        }
    }
    let weight_cap = if a.has_degree_zero_generators() {
        Some(max_degree + max_length.ok_or_else(|| Error::CutoffRequired("degree-0 generators".into()))?)
    } else {
        None
    };
    let top = max_degree + 1;
    let words = a.enumerate_words(top, None, weight_cap)?;
    let all: Vec<(&Word, usize, usize)> =
        words.iter().enumerate().flat_map(|(d, ws)| ws.iter().map(move |w| (w, d, 0))).map(|(w, d, _)| (w, d, word_weight(a, w))).collect();
    let mut basis: Vec<Vec<Vec<Word>>> = vec![Vec::new(); top + 1];
    fn extend(
        all: &[(&Word, usize, usize)],
        cur: &mut Vec<Word>,
        deg: usize,
        weight: usize,
        top: usize,
        cap: Option<usize>,
        basis: &mut Vec<Vec<Vec<Word>>>,
    ) {
        basis[deg].push(cur.clone());
        for &(w, d, wt) in all {
            if w.is_empty() || deg + d + 1 > top || cap.is_some_and(|c| weight + wt > c) {
                continue;
            }
            cur.push(w.clone());
            extend(all, cur, deg + d + 1, weight + wt, top, cap, basis);
            cur.pop();
        }
    }
    for &(w0, d0, wt0) in &all {
        let mut cur = vec![w0.clone()];
        extend(&all, &mut cur, d0, wt0, top, weight_cap, &mut basis);
    }
    for b in &mut basis {
        b.sort();
    }
    let label = |x: &Vec<Word>| {
        let bars: Vec<String> = x[1..].iter().map(|w| a.word_label(w)).collect();
        format!("{}⊗[{}]", a.word_label(&x[0]), bars.join("|"))
    };
    let complex = assemble(ring, &basis, label, |x| hochschild_boundary(a, x), weight_cap.is_none())?;
    Ok(TruncatedComplexReport { kind: ComplexKind::Hochschild, max_degree, max_length, truncated: weight_cap.is_some(), complex })
}

/// CoHochschild boundary of `c ⊗ w`; generator `g` of `omega` desuspends
/// coalgebra element `origin[g]`.
fn cohochschild_boundary(
    c: &DGCoalgebra,
    omega: &PresentedDga,
    generator_of: &HashMap<usize, usize>,
    x: &(usize, Word),
) -> Terms<(usize, Word)> {
    let (c0, w) = x;
    let mut out = Terms::new();
    let dc = c.degree(*c0);
    let dw = omega.word_degree(w);
    for &(j, k) in c.boundary(*c0) {
        add(&mut out, (j, w.clone()), k);
    }
    for (v, k) in omega.d_word(w).terms() {
        add(&mut out, (*c0, v.clone()), sign(dc) * k);
    }
    for &(a, b, k) in c.coproduct(*c0) {
        let (da, db) = (c.degree(a), c.degree(b));
        if db > 0 {
            let mut v = vec![generator_of[&b]];
            v.extend_from_slice(w);
            add(&mut out, (a, v), -sign(da) * k);
        }
        if da > 0 {
            let mut v = w.clone();
            v.push(generator_of[&a]);
            add(&mut out, (b, v), sign(da * (db + dw) + db + dw) * k);
        }
    }
    out.retain(|_, k| *k != 0);
    out
}

/// CoHochschild chains of a connected coalgebra through degree `max_degree`,
/// with the same weight cutoff rule as [`hochschild`].
pub fn cohochschild(c: &DGCoalgebra, ring: Ring, max_degree: usize, max_length: Option<usize>) -> Result<TruncatedComplexReport> {
    let top = max_degree + 1;
    let omega = cobar(c, top, max_length)?;
    let weight_cap = if omega.has_degree_zero_generators() {
        Some(max_degree + max_length.ok_or_else(|| Error::CutoffRequired("coalgebra has degree-1 elements".into()))?)
    } else {
        None
    };
    let generator_of: HashMap<usize, usize> =
        (0..omega.generator_count()).map(|g| (omega.origin(g).expect("cobar generator"), g)).collect();
    let words = omega.enumerate_words(top, None, weight_cap)?;
    let mut basis: Vec<Vec<(usize, Word)>> = vec![Vec::new(); top + 1];
    for c0 in 0..c.len() {
        let d0 = c.degree(c0);
        if d0 > top {
            continue;
        }
        for (d, ws) in words.iter().enumerate().take(top - d0 + 1) {
            for w in ws {
                if weight_cap.is_some_and(|cap| d0 + word_weight(&omega, w) > cap) {
                    continue;
                }
                basis[d0 + d].push((c0, w.clone()));
            }
        }
    }
    for b in &mut basis {
        b.sort();
    }
    let label = |x: &(usize, Word)| format!("{}⊗{}", c.label(x.0), omega.word_label(&x.1));
    let complex = assemble(
        ring,
        &basis,
        label,
        |x| cohochschild_boundary(c, &omega, &generator_of, x),
        weight_cap.is_none(),
    )?;
    Ok(TruncatedComplexReport { kind: ComplexKind::Cohochschild, max_degree, max_length, truncated: weight_cap.is_some(), complex })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{aw_coalgebra, nerve_monoid, sphere, Monoid, SimplicialSet};

    #[test]
    fn point_is_ground_ring() {
        let mut s = SimplicialSet::new("pt");
        s.add_vertex("x").unwrap();
        let c = aw_coalgebra(&s, 3).unwrap();
        let co = cohochschild(&c, Ring::Integers, 3, None).unwrap();
        assert_eq!(co.homology().betti(), vec![1, 0, 0, 0]);
        let h = hochschild(&cobar(&c, 4, None).unwrap(), Ring::Integers, 3, None).unwrap();
        assert_eq!(h.homology().betti(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn spheres_agree() {
        for (n, top) in [(2, 5), (3, 6)] {
            let c = aw_coalgebra(&sphere(n), top + 2).unwrap();
            let co = cohochschild(&c, Ring::Rationals, top, None).unwrap();
            let h = hochschild(&cobar(&c, top + 1, None).unwrap(), Ring::Rationals, top, None).unwrap();
            assert_eq!(co.homology().betti(), h.homology().betti(), "S^{n}");
        }
        let c = aw_coalgebra(&sphere(2), 6).unwrap();
        let h = hochschild(&cobar(&c, 5, None).unwrap(), Ring::Rationals, 4, None).unwrap();
        assert_eq!(h.homology().betti(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn integral_torsion_agrees_on_s2() {
        let c = aw_coalgebra(&sphere(2), 7).unwrap();
        let co = cohochschild(&c, Ring::Integers, 5, None).unwrap();
        let h = hochschild(&cobar(&c, 6, None).unwrap(), Ring::Integers, 5, None).unwrap();
        assert_eq!(co.homology(), h.homology());
    }

    #[test]
    fn truncated_nerve_is_a_complex() {
        let c = aw_coalgebra(&nerve_monoid(&Monoid::cyclic(2), 4), 4).unwrap();
        assert!(matches!(cohochschild(&c, Ring::Integers, 2, None), Err(Error::CutoffRequired(_))));
        let co = cohochschild(&c, Ring::Rationals, 2, Some(3)).unwrap();
        assert!(co.truncated);
        let h = hochschild(&cobar(&c, 3, Some(3)).unwrap(), Ring::Rationals, 2, Some(3)).unwrap();
        assert!(h.truncated);
    }
}
