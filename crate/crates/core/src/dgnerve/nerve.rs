use std::collections::HashMap;

use super::category::{DGCategory, Vector};
use crate::error::{Error, Result};
use crate::simplicial::{SimplexRef, SimplicialSet};

/// Subsets of `[n]` with at least two elements, as bitmasks ordered by
/// (size, mask).
pub fn families_order(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0u32..1 << (n + 1)).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

pub(crate) fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub(crate) fn ends(mask: u32) -> (usize, usize) {
    (mask.trailing_zeros() as usize, 31 - mask.leading_zeros() as usize)
}

/// An n-simplex of the dg nerve: objects `X₀ … X_n` and, for every `I ⊆ [n]`
/// with `|I| ≥ 2`, a morphism `f_I: X_{min I} → X_{max I}` of degree
/// `|I| − 2`, listed in [`families_order`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DGNerveSimplex {
    pub objects: Vec<usize>,
    pub families: Vec<(u32, Vector)>,
}

impl DGNerveSimplex {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn family(&self, mask: u32) -> &Vector {
        &self.families.iter().find(|(m, _)| *m == mask).expect("subset of the simplex").1
    }
}

/// Right-hand side of the nerve condition for `I`:
/// `Σ_j (−1)^j (f_{I−{i_j}} − f_{i_j…i_+} ∘ f_{i_−…i_j})`, where the inner
/// vertices are numbered `i_1 > i_2 > … > i_m` from the top.
fn nerve_rhs(c: &DGCategory, objects: &[usize], f: &HashMap<u32, Vector>, mask: u32) -> Vector {
    let (lo, hi) = ends(mask);
    let (x, z) = (objects[lo], objects[hi]);
    let mut out = c.zero(x, z);
    let mut inner: Vec<usize> = elements(mask).into_iter().filter(|&v| v != lo && v != hi).collect();
    inner.reverse();
    for (k, &v) in inner.iter().enumerate() {
        let j = k + 1;
        let (plus, minus) = if j % 2 == 0 { (1, c.prime() - 1) } else { (c.prime() - 1, 1) };
        c.axpy(&mut out, plus, &f[&(mask & !(1 << v))]);
        let below = mask & ((2u32 << v) - 1);
        let above = mask & !((1u32 << v) - 1);
        let comp = c.compose(x, objects[v], z, &f[&above], &f[&below]);
        c.axpy(&mut out, minus, &comp);
    }
    out
}

/// Shared backtracking over families: `rhs` gives the required `d f_I`
/// from the already chosen smaller families.
pub(crate) fn enumerate_families(
    c: &DGCategory,
    n: usize,
    limit: usize,
    rhs: &dyn Fn(&[usize], &HashMap<u32, Vector>, u32) -> Vector,
) -> Result<Vec<DGNerveSimplex>> {
    let order = families_order(n);
    let objs = c.object_count();
    let mut out = Vec::new();
    let mut objects = vec![0usize; n + 1];
    let total = objs.checked_pow((n + 1) as u32).unwrap_or(usize::MAX);
    for code in 0..total {
        let mut k = code;
        for o in objects.iter_mut() {
            *o = k % objs;
            k /= objs;
        }
        let mut chosen = HashMap::new();
        search(c, &objects, &order, 0, &mut chosen, rhs, &mut out, limit)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    c: &DGCategory,
    objects: &[usize],
    order: &[u32],
    at: usize,
    chosen: &mut HashMap<u32, Vector>,
    rhs: &dyn Fn(&[usize], &HashMap<u32, Vector>, u32) -> Vector,
    out: &mut Vec<DGNerveSimplex>,
    limit: usize,
) -> Result<()> {
    if at == order.len() {
        if out.len() >= limit {
            return Err(Error::BoundExceeded(format!("more than {limit} simplices")));
        }
        let families = order.iter().map(|m| (*m, chosen[m].clone())).collect();
        out.push(DGNerveSimplex { objects: objects.to_vec(), families });
        return Ok(());
    }
    let mask = order[at];
    let (lo, hi) = ends(mask);
    let (x, y) = (objects[lo], objects[hi]);
    let target = rhs(objects, chosen, mask);
    for v in c.homogeneous(x, y, mask.count_ones() as usize - 2) {
        if c.d(x, y, &v) == target {
            chosen.insert(mask, v);
            search(c, objects, order, at + 1, chosen, rhs, out, limit)?;
        }
    }
    chosen.remove(&mask);
    Ok(())
}

/// Default cap on enumerated simplices per dimension.
pub const DEFAULT_SIMPLEX_LIMIT: usize = 1_000_000;

/// Every n-simplex of the dg nerve, by exhaustive search.
pub fn dg_nerve_simplices(c: &DGCategory, n: usize) -> Result<Vec<DGNerveSimplex>> {
    if n > 5 {
        return Err(Error::BoundExceeded(format!("nerve dimension {n} exceeds 5")));
    }
    let rhs = |objects: &[usize], f: &HashMap<u32, Vector>, mask: u32| nerve_rhs(c, objects, f, mask);
    enumerate_families(c, n, DEFAULT_SIMPLEX_LIMIT, &rhs)
}

/// `α^* x` for monotone `α: [m] → [n]` given by its values: objects
/// `X_{α(j)}`; `g_J = f_{α(J)}` when α is injective on `J`, the identity when
/// `J` is a pair collapsed by α, and zero otherwise.
pub fn pull_simplex(c: &DGCategory, x: &DGNerveSimplex, alpha: &[usize]) -> DGNerveSimplex {
    let m = alpha.len() - 1;
    let objects: Vec<usize> = alpha.iter().map(|&a| x.objects[a]).collect();
    let families = families_order(m)
        .into_iter()
        .map(|mask| {
            let js = elements(mask);
            let image: u32 = js.iter().fold(0, |acc, &j| acc | 1 << alpha[j]);
            let (lo, hi) = ends(mask);
            let v = if image.count_ones() as usize == js.len() {
                x.family(image).clone()
            } else if js.len() == 2 {
                c.identity(objects[lo])
            } else {
                c.zero(objects[lo], objects[hi])
            };
            (mask, v)
        })
        .collect();
    DGNerveSimplex { objects, families }
}

fn face_map(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&k| k != i).collect()
}

fn degeneracy_map(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect()
}

/// The dg nerve through dimension `max_dim` as a finite simplicial set:
/// nondegenerate simplices are the enumerated ones not of the form `s_j y`,
/// and faces come from the structure maps.
pub fn nerve_simplicial_set(c: &DGCategory, max_dim: usize) -> Result<SimplicialSet> {
    let mut s = SimplicialSet::new(format!("N_dg({})", c.name()));
    let mut ids: HashMap<DGNerveSimplex, usize> = HashMap::new();
    for n in 0..=max_dim {
        for (k, x) in dg_nerve_simplices(c, n)?.into_iter().enumerate() {
            if n > 0 && (0..n).any(|j| pull_simplex(c, &pull_simplex(c, &x, &face_map(n, j)), &degeneracy_map(n - 1, j)) == x) {
                continue;
            }
            let id = if n == 0 {
                s.add_vertex(c.objects()[x.objects[0]].to_string())?
            } else {
                let faces = (0..=n)
                    .map(|i| canonical_ref(c, &ids, &pull_simplex(c, &x, &face_map(n, i))))
                    .collect::<Result<Vec<_>>>()?;
                s.add_simplex(format!("x{n}_{k}"), faces)?
            };
            ids.insert(x, id);
        }
    }
    Ok(s)
}

/// `y = s_{j_r} ⋯ s_{j_1} z` with `z` nondegenerate, as a [`SimplexRef`].
fn canonical_ref(c: &DGCategory, ids: &HashMap<DGNerveSimplex, usize>, y: &DGNerveSimplex) -> Result<SimplexRef> {
    let n = y.dim();
    let word: Vec<usize> = (0..n)
        .filter(|&j| pull_simplex(c, &pull_simplex(c, y, &face_map(n, j)), &degeneracy_map(n - 1, j)) == *y)
        .collect();
    let mut z = y.clone();
    for &j in word.iter().rev() {
        z = pull_simplex(c, &z, &face_map(z.dim(), j));
    }
    let base = *ids.get(&z).ok_or_else(|| Error::DgCategory("face is not an enumerated nerve simplex".into()))?;
    Ok(SimplexRef { word, base })
}
