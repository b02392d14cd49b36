use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::category::{DGCategory, Vector};
use super::nerve::{dg_nerve_simplices, elements, ends, enumerate_families, families_order, pull_simplex, DGNerveSimplex, DEFAULT_SIMPLEX_LIMIT};
use crate::error::{Error, Result};
use crate::rigidify::{normalize_bead, word_differential, Bead};
use crate::simplicial::{standard_simplex, SimplexRef, SimplicialSet};

/// A dg functor out of the rigidification of Δⁿ, recorded by its objects
/// and its values `F(σ_I)` on the one-bead generators. Stored in the same
/// shape as a nerve simplex.
pub type DgFunctor = DGNerveSimplex;

/// Δⁿ with the bitmask of each simplex's vertex set.
struct SimplexData {
    s: SimplicialSet,
    mask_of: Vec<u32>,
    id_of: HashMap<u32, usize>,
}

impl SimplexData {
    fn new(n: usize) -> Result<Self> {
        let s = standard_simplex(n);
        let mut mask_of = Vec::with_capacity(s.len());
        for id in 0..s.len() {
            let r = SimplexRef::nondegenerate(id);
            let mut mask = 0u32;
            for k in 0..=s.dim(id) {
                let v = s.vertex(&r, k);
                let label: u32 = s.name_of(v).parse().map_err(|_| Error::Invalid("simplex vertex is not numbered".into()))?;
                mask |= 1 << label;
            }
            mask_of.push(mask);
        }
        let id_of = mask_of.iter().enumerate().map(|(id, &m)| (m, id)).collect();
        Ok(SimplexData { s, mask_of, id_of })
    }
}

/// Sign relating generator values to nerve families: `(−1)^{k(k+1)/2}` in
/// degree `k`.
fn theta_sign(c: &DGCategory, degree: usize) -> u64 {
    if (degree * (degree + 1) / 2).is_multiple_of(2) {
        1
    } else {
        c.prime() - 1
    }
}

/// `F` applied to a path-ordered word `[a₁|…|a_k]`: the composite
/// `F(a_k) ∘ ⋯ ∘ F(a₁)` with the Koszul sign `(−1)^{Σ_{i<j}|a_i||a_j|}`.
fn apply_to_word(c: &DGCategory, data: &SimplexData, objects: &[usize], f: &HashMap<u32, Vector>, word: &[usize]) -> Vector {
    let masks: Vec<u32> = word.iter().map(|&id| data.mask_of[id]).collect();
    let (first, _) = ends(masks[0]);
    let mut acc = c.identity(objects[first]);
    let mut at = first;
    let mut degree_so_far = 0usize;
    let mut sign_exp = 0usize;
    for &m in &masks {
        let (lo, hi) = ends(m);
        debug_assert_eq!(lo, at);
        let deg = m.count_ones() as usize - 2;
        sign_exp += degree_so_far * deg;
        acc = c.compose(objects[first], objects[lo], objects[hi], &f[&m], &acc);
        degree_so_far += deg;
        at = hi;
    }
    if sign_exp % 2 == 1 {
        acc.iter_mut().for_each(|x| *x = (c.prime() - *x) % c.prime());
    }
    acc
}

/// Required `d F(σ_I)`: `F` applied to the mapping-complex differential of
/// the one-bead word `[σ_I]`.
fn functor_rhs(c: &DGCategory, data: &SimplexData, objects: &[usize], f: &HashMap<u32, Vector>, mask: u32) -> Vector {
    let (lo, hi) = ends(mask);
    let mut out = c.zero(objects[lo], objects[hi]);
    for (word, coeff) in word_differential(&data.s, &[data.id_of[&mask]]).terms() {
        let v = apply_to_word(c, data, objects, f, word);
        c.axpy(&mut out, c.scalar(coeff), &v);
    }
    out
}

/// Every dg functor from the rigidification of Δⁿ to `c`.
pub fn dg_functors(c: &DGCategory, n: usize) -> Result<Vec<DgFunctor>> {
    let data = SimplexData::new(n)?;
    let rhs = |objects: &[usize], f: &HashMap<u32, Vector>, mask: u32| functor_rhs(c, &data, objects, f, mask);
    enumerate_families(c, n, DEFAULT_SIMPLEX_LIMIT, &rhs)
}

/// θ: the nerve simplex with `f_I = (−1)^{k(k+1)/2} F(σ_I)`, `k = |I| − 2`.
pub fn theta(c: &DGCategory, f: &DgFunctor) -> DGNerveSimplex {
    let families = f
        .families
        .iter()
        .map(|(mask, v)| {
            let s = theta_sign(c, mask.count_ones() as usize - 2);
            (*mask, v.iter().map(|&x| x * s % c.prime()).collect())
        })
        .collect();
    DGNerveSimplex { objects: f.objects.clone(), families }
}

/// `F ∘ Λ(α)` for monotone `α: [m] → [n]`: each generator `σ_J` goes to the
/// simplex `α(J)` of Δⁿ, normalized (a collapsed edge becomes an identity, a
/// collapsed higher simplex becomes zero).
pub fn precompose(c: &DGCategory, data_n: &SimplicialSet, f: &DgFunctor, alpha: &[usize]) -> Result<DgFunctor> {
    let m = alpha.len() - 1;
    let top = SimplexRef::nondegenerate(data_n.of_dim(data_n.max_dim())[0]);
    let objects: Vec<usize> = alpha.iter().map(|&a| f.objects[a]).collect();
    let mut families = Vec::new();
    for mask in families_order(m) {
        let js = elements(mask);
        let values: Vec<usize> = js.iter().map(|&j| alpha[j]).collect();
        let r = data_n.pull(&top, &values);
        let (lo, hi) = ends(mask);
        let v = match normalize_bead(data_n, &r) {
            Bead::Keep(id) => {
                let name = data_n.name_of(id);
                let image: u32 = name.chars().map(|ch| 1u32 << ch.to_digit(10).unwrap_or(0)).fold(0, |a, b| a | b);
                f.family(image).clone()
            }
            Bead::Drop => c.identity(objects[lo]),
            Bead::Kill => c.zero(objects[lo], objects[hi]),
        };
        families.push((mask, v));
    }
    Ok(DGNerveSimplex { objects, families })
}

/// Monotone maps `[m] → [n]`.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionCheck {
    pub dim: usize,
    pub functors: usize,
    pub simplices: usize,
    pub injective: bool,
    pub lands_in_nerve: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub category: String,
    pub prime: u64,
    pub dimensions: Vec<DimensionCheck>,
    pub naturality_squares: usize,
    pub naturality_failures: usize,
    /// `F ∘ Λ(α)` was itself found among the enumerated functors.
    pub precomposites_valid: bool,
    pub violations: Vec<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.naturality_failures == 0
            && self.precomposites_valid
            && self.dimensions.iter().all(|d| d.injective && d.lands_in_nerve && d.surjective)
    }
}

/// Verifies that θ is a bijection from dg functors out of the rigidified Δⁿ
/// to n-simplices of the dg nerve for `n ≤ max_dim`, and that θ commutes
/// with every monotone `α: [m] → [n]` for `m, n ≤ max_dim`.
pub fn adjunction_check(c: &DGCategory, max_dim: usize) -> Result<AdjunctionReport> {
    let mut report = AdjunctionReport {
        category: c.name().to_string(),
        prime: c.prime(),
        dimensions: Vec::new(),
        naturality_squares: 0,
        naturality_failures: 0,
        precomposites_valid: true,
        violations: Vec::new(),
    };
    let mut functors = Vec::new();
    let mut functor_sets = Vec::new();
    for n in 0..=max_dim {
        let fs = dg_functors(c, n)?;
        let nerve: HashSet<DGNerveSimplex> = dg_nerve_simplices(c, n)?.into_iter().collect();
        let images: Vec<DGNerveSimplex> = fs.iter().map(|f| theta(c, f)).collect();
        let distinct: HashSet<&DGNerveSimplex> = images.iter().collect();
        let injective = distinct.len() == images.len();
        let lands = images.iter().all(|x| nerve.contains(x));
        if !lands {
            report.violations.push(format!("dimension {n}: some θ(F) violates the nerve condition"));
        }
        report.dimensions.push(DimensionCheck {
            dim: n,
            functors: fs.len(),
            simplices: nerve.len(),
            injective,
            lands_in_nerve: lands,
            surjective: injective && lands && distinct.len() == nerve.len(),
        });
        functor_sets.push(fs.iter().cloned().collect::<HashSet<_>>());
        functors.push(fs);
    }
    for n in 0..=max_dim {
        let delta = standard_simplex(n);
        for m in 0..=max_dim {
            for alpha in monotone_maps(m, n) {
                for f in &functors[n] {
                    report.naturality_squares += 1;
                    let g = precompose(c, &delta, f, &alpha)?;
                    if !functor_sets[m].contains(&g) {
                        report.precomposites_valid = false;
                    }
                    if theta(c, &g) != pull_simplex(c, &theta(c, f), &alpha) {
                        report.naturality_failures += 1;
                        if report.violations.len() < 20 {
                            report.violations.push(format!("naturality fails for α = {alpha:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
