use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A possibly degenerate simplex: the degeneracy word `s_{j_r} ⋯ s_{j_1}`
/// (stored as the strictly increasing list `j_1 < … < j_r`) applied to a
/// nondegenerate `base`.
///
/// Equivalently, `word` lists the positions `i` where the collapsing
/// surjection `[n] → [dim base]` repeats, i.e. `η(i) = η(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub word: Vec<usize>,
    pub base: usize,
}

impl SimplexRef {
    pub fn nondegenerate(base: usize) -> Self {
        SimplexRef { word: Vec::new(), base }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

/// The surjection `[n] → [n − word.len()]` encoded by a degeneracy word.
pub(crate) fn surjection_from_word(word: &[usize], n: usize) -> Vec<usize> {
    let mut eta = Vec::with_capacity(n + 1);
    let mut v = 0;
    let mut w = word.iter().peekable();
    for i in 0..=n {
        eta.push(v);
        if w.peek() == Some(&&i) {
            w.next();
        } else {
            v += 1;
        }
    }
    eta
}

pub(crate) fn word_from_surjection(eta: &[usize]) -> Vec<usize> {
    (0..eta.len().saturating_sub(1)).filter(|&i| eta[i] == eta[i + 1]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub name: String,
    pub dim: usize,
    /// `d_0 … d_dim`; empty for vertices.
    pub faces: Vec<SimplexRef>,
}

/// Finitely presented simplicial set: nondegenerate simplices with their
/// faces in canonical degenerate form. Simplices are added after their faces,
/// so ids are a topological order.
#[derive(Clone, Debug, Default)]
pub struct SimplicialSet {
    name: String,
    simplices: Vec<Simplex>,
    by_dim: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    basepoint: Option<usize>,
}

impl SimplicialSet {
    pub fn new(name: impl Into<String>) -> Self {
        SimplicialSet { name: name.into(), ..Default::default() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        self.push(Simplex { name: name.into(), dim: 0, faces: Vec::new() })
    }

    /// Adds a nondegenerate simplex of dimension `faces.len() − 1`.
    pub fn add_simplex(&mut self, name: impl Into<String>, faces: Vec<SimplexRef>) -> Result<usize> {
        let name = name.into();
        if faces.len() < 2 {
            return Err(Error::Invalid(format!(
                "simplex `{name}` needs at least two faces (use add_vertex for vertices)"
            )));
        }
        let dim = faces.len() - 1;
        for (i, f) in faces.iter().enumerate() {
            if f.base >= self.simplices.len() {
                return Err(Error::UnknownId(format!("{name}: face {i} base #{}", f.base)));
            }
            if !f.word.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Invalid(format!(
                    "face {i} of `{name}` has a degeneracy word that is not strictly increasing"
                )));
            }
            if self.ref_dim(f) != dim - 1 {
                return Err(Error::Invalid(format!(
                    "face {i} of `{name}` has dimension {}, expected {}",
                    self.ref_dim(f),
                    dim - 1
                )));
            }
            if f.word.last().is_some_and(|&j| j >= dim - 1) {
                return Err(Error::Invalid(format!(
                    "face {i} of `{name}` has degeneracy index out of range"
                )));
            }
        }
        self.push(Simplex { name, dim, faces })
    }

    fn push(&mut self, s: Simplex) -> Result<usize> {
        if self.index.contains_key(&s.name) {
            return Err(Error::Invalid(format!("duplicate simplex id `{}`", s.name)));
        }
        let id = self.simplices.len();
        if self.by_dim.len() <= s.dim {
            self.by_dim.resize(s.dim + 1, Vec::new());
        }
        self.by_dim[s.dim].push(id);
        self.index.insert(s.name.clone(), id);
        self.simplices.push(s);
        Ok(id)
    }

    pub fn set_basepoint(&mut self, id: usize) -> Result<()> {
        if self.simplices.get(id).map(|s| s.dim) != Some(0) {
            return Err(Error::Invalid("basepoint must be a vertex".into()));
        }
        self.basepoint = Some(id);
        Ok(())
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownId(name.to_string()))
    }

    pub fn name_of(&self, id: usize) -> &str {
        &self.simplices[id].name
    }

    pub fn dim(&self, id: usize) -> usize {
        self.simplices[id].dim
    }

    /// Highest dimension with a nondegenerate simplex.
    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    /// Nondegenerate simplices of dimension `n`, in insertion order.
    pub fn of_dim(&self, n: usize) -> &[usize] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn vertices(&self) -> &[usize] {
        self.of_dim(0)
    }

    pub fn ref_dim(&self, r: &SimplexRef) -> usize {
        self.simplices[r.base].dim + r.word.len()
    }

    /// Stored face `d_i` of a nondegenerate simplex.
    pub fn face(&self, id: usize, i: usize) -> &SimplexRef {
        &self.simplices[id].faces[i]
    }

    /// `α^* r` for a monotone `α: [m] → [n]` given by its values.
    pub fn pull(&self, r: &SimplexRef, alpha: &[usize]) -> SimplexRef {
        let n = self.ref_dim(r);
        let eta = surjection_from_word(&r.word, n);
        let mut gamma: Vec<usize> = alpha.iter().map(|&a| eta[a]).collect();
        let mut base = r.base;
        loop {
            let k = self.simplices[base].dim;
            let mut hit = vec![false; k + 1];
            for &g in &gamma {
                hit[g] = true;
            }
            let Some(l) = (0..=k).rev().find(|&l| !hit[l]) else {
                return SimplexRef { word: word_from_surjection(&gamma), base };
            };
            let f = &self.simplices[base].faces[l];
            let eta2 = surjection_from_word(&f.word, k - 1);
            for g in gamma.iter_mut() {
                *g = eta2[if *g > l { *g - 1 } else { *g }];
            }
            base = f.base;
        }
    }

    /// `d_i r`.
    pub fn face_of(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let n = self.ref_dim(r);
        let alpha: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
        self.pull(r, &alpha)
    }

    /// Front `p`-face: the simplex on vertices `0..=p`.
    pub fn front(&self, r: &SimplexRef, p: usize) -> SimplexRef {
        let alpha: Vec<usize> = (0..=p).collect();
        self.pull(r, &alpha)
    }

    /// Back `q`-face: the simplex on the last `q + 1` vertices.
    pub fn back(&self, r: &SimplexRef, q: usize) -> SimplexRef {
        let n = self.ref_dim(r);
        let alpha: Vec<usize> = (n - q..=n).collect();
        self.pull(r, &alpha)
    }

    /// Vertex `k` of a simplex, as a vertex id.
    pub fn vertex(&self, r: &SimplexRef, k: usize) -> usize {
        self.pull(r, &[k]).base
    }

    pub fn first_vertex(&self, id: usize) -> usize {
        self.vertex(&SimplexRef::nondegenerate(id), 0)
    }

    pub fn last_vertex(&self, id: usize) -> usize {
        self.vertex(&SimplexRef::nondegenerate(id), self.dim(id))
    }

    /// Degeneracy `s_j r`, returned in canonical form.
    pub fn degeneracy(&self, r: &SimplexRef, j: usize) -> SimplexRef {
        let n = self.ref_dim(r);
        assert!(j <= n, "degeneracy index out of range");
        let eta = surjection_from_word(&r.word, n);
        // s_j composes with σ^j: [n+1] → [n], which repeats j.
        let sigma: Vec<usize> = (0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect();
        let gamma: Vec<usize> = sigma.iter().map(|&i| eta[i]).collect();
        SimplexRef { word: word_from_surjection(&gamma), base: r.base }
    }

    /// Checks `d_i d_j = d_{j−1} d_i` (i < j) on every nondegenerate simplex of
    /// dimension ≤ `max_dim`.
    pub fn validate(&self, max_dim: usize) -> Result<()> {
        for s in &self.simplices {
            if s.dim < 2 || s.dim > max_dim {
                continue;
            }
            for j in 1..=s.dim {
                for i in 0..j {
                    let lhs = self.face_of(&s.faces[j], i);
                    let rhs = self.face_of(&s.faces[i], j - 1);
                    if lhs != rhs {
                        return Err(Error::SimplicialIdentity {
                            simplex: s.name.clone(),
                            detail: format!(
                                "d{i} d{j} = {} but d{} d{i} = {}",
                                self.display_ref(&lhs),
                                j - 1,
                                self.display_ref(&rhs)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn display_ref(&self, r: &SimplexRef) -> String {
        let mut out = String::new();
        for j in r.word.iter().rev() {
            out.push_str(&format!("s{j} "));
        }
        out.push_str(&self.simplices[r.base].name);
        out
    }

    /// Ids of every simplex of dimension ≤ `d`.
    pub fn skeleton(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.dim(i) <= d).collect()
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (nondegenerate counts {:?})", self.name, self.counts())?;
        for s in &self.simplices {
            if s.dim == 0 {
                writeln!(f, "  {} : vertex", s.name)?;
            } else {
                let faces: Vec<String> = s.faces.iter().map(|r| self.display_ref(r)).collect();
                writeln!(f, "  {} : dim {}, faces [{}]", s.name, s.dim, faces.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_surjection_roundtrip() {
        assert_eq!(surjection_from_word(&[], 2), vec![0, 1, 2]);
        assert_eq!(surjection_from_word(&[0], 1), vec![0, 0]);
        assert_eq!(surjection_from_word(&[1, 2], 3), vec![0, 1, 1, 1]);
        for word in [vec![], vec![0], vec![1, 3], vec![0, 1, 2]] {
            let eta = surjection_from_word(&word, 4);
            assert_eq!(word_from_surjection(&eta), word);
        }
    }

    fn one_simplex() -> SimplicialSet {
        let mut s = SimplicialSet::new("D1");
        let a = s.add_vertex("0").unwrap();
        let b = s.add_vertex("1").unwrap();
        s.add_simplex("01", vec![SimplexRef::nondegenerate(b), SimplexRef::nondegenerate(a)])
            .unwrap();
        s
    }

    #[test]
    fn degenerate_faces() {
        let s = one_simplex();
        let e = SimplexRef::nondegenerate(2);
        let s0e = s.degeneracy(&e, 0);
        assert_eq!(s0e.word, vec![0]);
        // d0 s0 = id = d1 s0, d2 s0 = s0 d1.
        assert_eq!(s.face_of(&s0e, 0), e);
        assert_eq!(s.face_of(&s0e, 1), e);
        assert_eq!(s.face_of(&s0e, 2), SimplexRef { word: vec![0], base: 0 });
        let s1e = s.degeneracy(&e, 1);
        assert_eq!(s.face_of(&s1e, 0), SimplexRef { word: vec![0], base: 1 });
        assert_eq!(s.face_of(&s1e, 2), e);
        assert_eq!(s.vertex(&s1e, 2), 1);
    }

    #[test]
    fn rejects_bad_faces() {
        let mut s = one_simplex();
        let bad = s.add_simplex("x", vec![SimplexRef::nondegenerate(2), SimplexRef::nondegenerate(0)]);
        assert!(bad.is_err());
        assert!(s.add_vertex("0").is_err());
    }
}
