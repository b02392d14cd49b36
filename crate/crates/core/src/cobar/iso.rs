use std::collections::HashMap;

use serde::Serialize;

use super::{cobar, PresentedDga};
use crate::error::{Error, Result};
use crate::rigidify::{mapping_complex, MappingComplex};
use crate::simplicial::{aw_coalgebra, SimplicialSet};
use crate::tensor::{Element, Word};

/// Outcome of comparing the loop mapping complex of a one-vertex simplicial
/// set with the cobar construction of its chains.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IsoReport {
    pub max_degree: usize,
    pub max_length: Option<usize>,
    pub mapping_words: usize,
    pub cobar_words: usize,
    pub product_pairs: usize,
    pub inverse_ok: bool,
    pub algebra_ok: bool,
    pub chain_ok: bool,
    /// First few violations, rendered.
    pub violations: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.inverse_ok && self.algebra_ok && self.chain_ok
    }
}

const MAX_REPORTED: usize = 20;

struct Maps<'a> {
    s: &'a SimplicialSet,
    generator_of: HashMap<usize, usize>,
    simplex_of: Vec<usize>,
}

impl Maps<'_> {
    /// φ[σ] = s σ̄ + 1 on edges and s σ̄ otherwise, extended multiplicatively.
    fn phi(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut acc = Element::term(Vec::new(), c);
            for &id in w {
                let mut f = Element::word(vec![self.generator_of[&id]]);
                if self.s.dim(id) == 1 {
                    f.add_term(Vec::new(), 1);
                }
                acc = acc.mul(&f);
            }
            out.add_scaled(&acc, 1);
        }
        out
    }

    /// ψ(s σ̄) = [σ] − 1 on edges and [σ] otherwise.
    fn psi(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut acc = Element::term(Vec::new(), c);
            for &g in w {
                let id = self.simplex_of[g];
                let mut f = Element::word(vec![id]);
                if self.s.dim(id) == 1 {
                    f.add_term(Vec::new(), -1);
                }
                acc = acc.mul(&f);
            }
            out.add_scaled(&acc, 1);
        }
        out
    }

    fn lambda_label(&self, w: &[usize]) -> String {
        crate::rigidify::word_label(self.s, w)
    }
}

/// Builds φ̃ from the loop mapping complex to Ω of the Alexander–Whitney
/// coalgebra and its inverse ψ, and verifies on every basis word within the
/// cutoffs that they are mutually inverse, multiplicative and commute with
/// the differentials. Violations are recorded rather than raised.
pub fn theorem71_iso(s: &SimplicialSet, max_degree: usize, max_length: Option<usize>) -> Result<IsoReport> {
    let vertices = s.vertices();
    if vertices.len() != 1 {
        return Err(Error::NotOneVertex(vertices.len()));
    }
    let x = vertices[0];
    let lambda: MappingComplex = mapping_complex(s, x, x, max_degree, max_length)?;
    let coalgebra = aw_coalgebra(s, max_degree + 1)?;
    let omega = cobar(&coalgebra, max_degree, max_length)?;
    let simplex_of: Vec<usize> = (0..omega.generator_count())
        .map(|g| coalgebra.simplex_of(omega.origin(g).expect("cobar generator")).expect("simplicial coalgebra"))
        .collect();
    compare(s, &lambda, &omega, simplex_of)
}

/// The checks behind [`theorem71_iso`], with generator `g` of `omega`
/// desuspending simplex `simplex_of[g]`.
fn compare(s: &SimplicialSet, lambda: &MappingComplex, omega: &PresentedDga, simplex_of: Vec<usize>) -> Result<IsoReport> {
    let (max_degree, max_length) = (lambda.max_degree(), lambda.max_length());
    let generator_of = simplex_of.iter().enumerate().map(|(g, &id)| (id, g)).collect();
    let maps = Maps { s, generator_of, simplex_of };

    let mut report = IsoReport {
        max_degree,
        max_length,
        inverse_ok: true,
        algebra_ok: true,
        chain_ok: true,
        ..Default::default()
    };
    let note = |report: &mut IsoReport, msg: String| {
        if report.violations.len() < MAX_REPORTED {
            report.violations.push(msg);
        }
    };

    let lambda_words: Vec<&Word> = (0..=max_degree).flat_map(|d| lambda.basis(d)).collect();
    let omega_basis = omega.basis()?;
    let omega_words: Vec<&Word> = omega_basis.iter().flatten().collect();
    report.mapping_words = lambda_words.len();
    report.cobar_words = omega_words.len();

    for &w in &lambda_words {
        let e = Element::word(w.clone());
        let image = maps.phi(&e);
        if maps.psi(&image) != e {
            report.inverse_ok = false;
            note(&mut report, format!("ψφ̃{} ≠ {}", maps.lambda_label(w), maps.lambda_label(w)));
        }
        let lhs = maps.phi(&lambda.differential(w));
        let rhs = omega.d(&image);
        if lhs != rhs {
            report.chain_ok = false;
            note(
                &mut report,
                format!("φ̃∂{} = {} but Dφ̃ = {}", maps.lambda_label(w), omega.render(&lhs), omega.render(&rhs)),
            );
        }
    }
    for &u in &omega_words {
        let e = Element::word(u.clone());
        let back = maps.psi(&e);
        if maps.phi(&back) != e {
            report.inverse_ok = false;
            note(&mut report, format!("φ̃ψ{} ≠ itself", omega.word_label(u)));
        }
        let lhs = maps.psi(&omega.d(&e));
        let rhs = crate::rigidify::differential(s, &back);
        if lhs != rhs {
            report.chain_ok = false;
            note(&mut report, format!("ψD{} ≠ ∂ψ", omega.word_label(u)));
        }
    }

    // Multiplicativity on pairs whose product stays inside the cutoffs.
    let fits = |a: &Word, b: &Word, deg: usize| max_length.is_none_or(|l| a.len() + b.len() <= l) && deg <= max_degree;
    for &a in &lambda_words {
        for &b in &lambda_words {
            let deg = crate::rigidify::word_degree(s, a) + crate::rigidify::word_degree(s, b);
            if !fits(a, b, deg) {
                continue;
            }
            report.product_pairs += 1;
            let (ea, eb) = (Element::word(a.clone()), Element::word(b.clone()));
            if maps.phi(&ea.mul(&eb)) != maps.phi(&ea).mul(&maps.phi(&eb)) {
                report.algebra_ok = false;
                note(&mut report, format!("φ̃ not multiplicative on {} · {}", maps.lambda_label(a), maps.lambda_label(b)));
            }
        }
    }
    for &a in &omega_words {
        for &b in &omega_words {
            if !fits(a, b, omega.word_degree(a) + omega.word_degree(b)) {
                continue;
            }
            report.product_pairs += 1;
            let (ea, eb) = (Element::word(a.clone()), Element::word(b.clone()));
            if maps.psi(&ea.mul(&eb)) != maps.psi(&ea).mul(&maps.psi(&eb)) {
                report.algebra_ok = false;
                note(&mut report, format!("ψ not multiplicative on {} · {}", omega.word_label(a), omega.word_label(b)));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{nerve_monoid, sphere, Monoid};

    #[test]
    fn spheres_and_small_nerves() {
        for s in [sphere(2), sphere(3)] {
            let r = theorem71_iso(&s, 5, None).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
        }
        let r = theorem71_iso(&nerve_monoid(&Monoid::cyclic(2), 4), 4, Some(5)).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let r = theorem71_iso(&nerve_monoid(&Monoid::cyclic(3), 3), 3, Some(3)).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn wrong_sign_is_detected() {
        // Negating D on the cobar side must break the chain-map check.
        let s = nerve_monoid(&Monoid::cyclic(2), 3);
        let good = theorem71_iso(&s, 2, Some(3)).unwrap();
        assert!(good.chain_ok);
        let coalgebra = aw_coalgebra(&s, 3).unwrap();
        let omega = cobar(&coalgebra, 2, Some(3)).unwrap();
        let flipped: Vec<Element> = (0..omega.generator_count()).map(|g| omega.generator_differential(g).scaled(-1)).collect();
        let bad = PresentedDga::new(omega.labels().to_vec(), (0..omega.generator_count()).map(|g| omega.degree(g)).collect(), flipped, 2, Some(3)).unwrap();
        let simplex_of = (0..omega.generator_count()).map(|g| coalgebra.simplex_of(omega.origin(g).unwrap()).unwrap()).collect();
        let lambda = mapping_complex(&s, 0, 0, 2, Some(3)).unwrap();
        let r = compare(&s, &lambda, &bad, simplex_of).unwrap();
        assert!(!r.chain_ok && r.inverse_ok && r.algebra_ok);
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn rejects_several_vertices() {
        let s = crate::simplicial::standard_simplex(1);
        assert_eq!(theorem71_iso(&s, 1, None).unwrap_err(), Error::NotOneVertex(2));
    }
}
