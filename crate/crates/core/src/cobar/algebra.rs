use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{homology, homology_basis, ChainComplex, HomologyReport};
use crate::tensor::{Element, Word};

/// Product of two integral homology generators under concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassProduct {
    /// `(degree, generator index)` of each factor.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub degree: usize,
    /// Coordinates of the product in the integral generators of its degree
    /// (torsion generators first, reduced mod their orders).
    pub coordinates: Vec<String>,
}

/// Homology of a word complex with its concatenation product.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyAlgebra {
    pub homology: HomologyReport,
    /// Whether a length cutoff made the computation approximate.
    pub truncated: bool,
    /// Integral generators per degree, as rendered cycles.
    pub generators: Vec<Vec<String>>,
    /// Torsion order of each generator, or `0` for a free one.
    pub orders: Vec<Vec<String>>,
    pub products: Vec<ClassProduct>,
}

fn to_element(basis: &[Word], v: &[BigInt]) -> Result<Element> {
    let mut e = Element::zero();
    for (w, x) in basis.iter().zip(v) {
        let c = x.to_i64().ok_or_else(|| Error::BoundExceeded("cycle coefficient exceeds 64 bits".into()))?;
        e.add_term(w.clone(), c);
    }
    Ok(e)
}

/// Homology of `c` (whose degree-`n` basis is `basis[n]`) through
/// `max_degree`, with products of integral generators whose degrees sum to at
/// most `max_degree`. Products with terms outside the basis are skipped.
pub fn word_homology_algebra(
    c: &ChainComplex,
    basis: &[Vec<Word>],
    max_degree: usize,
    truncated: bool,
    label: impl Fn(&[usize]) -> String,
) -> Result<HomologyAlgebra> {
    let report = homology(c).truncated(max_degree);
    let top = max_degree.min(basis.len().saturating_sub(1));
    let bases: Vec<_> = (0..=top).map(|n| homology_basis(c, n)).collect();
    let mut reps: Vec<Vec<Element>> = Vec::new();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (n, hb) in bases.iter().enumerate() {
        let es = hb.representatives.iter().map(|v| to_element(&basis[n], v)).collect::<Result<Vec<_>>>()?;
        generators.push(es.iter().map(|e| render(e, &label)).collect());
        reps.push(es);
        let mut ord: Vec<String> = hb.orders.iter().map(|o| o.to_string()).collect();
        ord.extend(std::iter::repeat_n("0".to_string(), hb.free_rank));
        orders.push(ord);
    }
    let index: Vec<HashMap<&Word, usize>> =
        basis.iter().map(|ws| ws.iter().enumerate().map(|(k, w)| (w, k)).collect()).collect();
    let mut products = Vec::new();
    for a in 0..=top {
        for b in 0..=top - a {
            for (i, x) in reps[a].iter().enumerate() {
                for (j, y) in reps[b].iter().enumerate() {
                    let xy = x.mul(y);
                    let mut v = vec![BigInt::zero(); basis[a + b].len()];
                    let mut inside = true;
                    for (w, k) in xy.terms() {
                        match index[a + b].get(w) {
                            Some(&p) => v[p] += k,
                            None => inside = false,
                        }
                    }
                    if !inside {
                        continue;
                    }
                    let Some(coords) = bases[a + b].class_of(&v) else {
                        return Err(Error::Invalid(format!("product of cycles in degrees {a}, {b} is not a cycle")));
                    };
                    products.push(ClassProduct {
                        left: (a, i),
                        right: (b, j),
                        degree: a + b,
                        coordinates: coords.iter().map(|c| c.to_string()).collect(),
                    });
                }
            }
        }
    }
    Ok(HomologyAlgebra { homology: report, truncated, generators, orders, products })
}

fn render(e: &Element, label: &impl Fn(&[usize]) -> String) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = e
        .terms()
        .map(|(w, c)| match c {
            1 => label(w),
            -1 => format!("-{}", label(w)),
            _ => format!("{c}{}", label(w)),
        })
        .collect();
    parts.join(" + ").replace("+ -", "- ")
}
