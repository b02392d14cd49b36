//! Chain-level cubical rigidification: mapping complexes of a simplicial set
//! whose basis is words of nondegenerate simplices glued end to start, with
//! the cubical differential read off the word's non-joint vertices.

use std::collections::{HashMap, HashSet};

use crate::cubical::{chains_cubical, standard_cube};
use crate::error::{Error, Result};
use crate::linalg::{homology, ChainComplex, HomologyReport, Matrix, Ring};
use crate::necklace::{Necklace, NecklaceMorphism};
use crate::simplicial::{standard_simplex, SimplexRef, SimplicialSet};
use crate::tensor::{Element, Word};

/// A word `[σ₁|…|σ_k]` of nondegenerate simplices of dimension ≥ 1 running
/// from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CobarWord {
    pub simplices: Word,
    pub source: usize,
    pub target: usize,
}

impl CobarWord {
    /// Checks dimensions and endpoint matching.
    pub fn new(s: &SimplicialSet, simplices: Word, source: usize, target: usize) -> Result<Self> {
        let mut at = source;
        for &id in &simplices {
            if id >= s.len() || s.dim(id) == 0 {
                return Err(Error::Invalid(format!("word letter {id} is not a positive-dimensional simplex")));
            }
            if s.first_vertex(id) != at {
                return Err(Error::EndpointMismatch(format!("`{}` does not start at `{}`", s.name_of(id), s.name_of(at))));
            }
            at = s.last_vertex(id);
        }
        if at != target {
            return Err(Error::EndpointMismatch(format!("word ends at `{}`, not `{}`", s.name_of(at), s.name_of(target))));
        }
        Ok(CobarWord { simplices, source, target })
    }

    pub fn unit(x: usize) -> Self {
        CobarWord { simplices: Vec::new(), source: x, target: x }
    }

    pub fn degree(&self, s: &SimplicialSet) -> usize {
        word_degree(s, &self.simplices)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// `u ∘ v`: the word of `v` (running x → y) followed by that of `u` (y → z).
pub fn compose(u: &CobarWord, v: &CobarWord) -> Result<CobarWord> {
    if v.target != u.source {
        return Err(Error::EndpointMismatch(format!("cannot compose: {} ≠ {}", v.target, u.source)));
    }
    let mut simplices = v.simplices.clone();
    simplices.extend_from_slice(&u.simplices);
    Ok(CobarWord { simplices, source: v.source, target: u.target })
}

/// Σ (dim σᵢ − 1).
pub fn word_degree(s: &SimplicialSet, w: &[usize]) -> usize {
    w.iter().map(|&id| s.dim(id) - 1).sum()
}

/// A bead after normalization: kept, deleted (a degenerate edge), or a
/// degenerate higher simplex that kills the whole term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bead {
    Keep(usize),
    Drop,
    Kill,
}

pub fn normalize_bead(s: &SimplicialSet, r: &SimplexRef) -> Bead {
    if !r.is_degenerate() {
        Bead::Keep(r.base)
    } else if s.ref_dim(r) == 1 {
        Bead::Drop
    } else {
        Bead::Kill
    }
}

/// Writes `prefix · beads · suffix` into `out` with coefficient `c`, unless a
/// bead kills the term.
fn emit(s: &SimplicialSet, out: &mut Element, prefix: &[usize], beads: &[SimplexRef], suffix: &[usize], c: i64) {
    let mut w = prefix.to_vec();
    for r in beads {
        match normalize_bead(s, r) {
            Bead::Keep(id) => w.push(id),
            Bead::Drop => {}
            Bead::Kill => return,
        }
    }
    w.extend_from_slice(suffix);
    out.add_term(w, c);
}

/// Differential of a single word. Inner vertices are numbered 1, 2, … across
/// the whole word; the inner vertex with global number `J` at local position
/// `t` of a bead σ contributes `(−1)^J ([front_t σ | back σ] − [d_t σ])`.
pub fn word_differential(s: &SimplicialSet, w: &[usize]) -> Element {
    let mut out = Element::zero();
    let mut global = 0usize;
    for (i, &id) in w.iter().enumerate() {
        let m = s.dim(id);
        let me = SimplexRef::nondegenerate(id);
        for t in 1..m {
            let sign = if (global + t).is_multiple_of(2) { 1 } else { -1 };
            let split = [s.front(&me, t), s.back(&me, m - t)];
            emit(s, &mut out, &w[..i], &split, &w[i + 1..], sign);
            emit(s, &mut out, &w[..i], &[s.face(id, t).clone()], &w[i + 1..], -sign);
        }
        global += m - 1;
    }
    out
}

/// Extends [`word_differential`] linearly.
pub fn differential(s: &SimplicialSet, e: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.terms() {
        out.add_scaled(&word_differential(s, w), c);
    }
    out
}

/// Limits on enumerated words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordBounds {
    pub max_degree: usize,
    pub max_length: Option<usize>,
    /// Bound on Σ dim σᵢ (length plus degree).
    pub max_weight: Option<usize>,
}

/// Positive-dimensional nondegenerate simplices grouped by first vertex.
fn outgoing(s: &SimplicialSet) -> HashMap<usize, Vec<usize>> {
    let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
    for id in 0..s.len() {
        if s.dim(id) > 0 {
            out.entry(s.first_vertex(id)).or_default().push(id);
        }
    }
    out
}

/// Whether words from `x` to `y` of bounded degree are infinite in number:
/// a directed cycle of edges that lies on some path from `x` to `y`.
pub fn needs_length_cutoff(s: &SimplicialSet, x: usize, y: usize) -> bool {
    let all: Vec<usize> = (0..s.len()).filter(|&id| s.dim(id) > 0).collect();
    let reach = |start: usize, forward: bool| {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &id in &all {
                let (a, b) = (s.first_vertex(id), s.last_vertex(id));
                let (from, to) = if forward { (a, b) } else { (b, a) };
                if from == v && seen.insert(to) {
                    stack.push(to);
                }
            }
        }
        seen
    };
    let fwd = reach(x, true);
    let bwd = reach(y, false);
    let live: HashSet<usize> = fwd.intersection(&bwd).copied().collect();
    let edges: Vec<(usize, usize)> = s
        .of_dim(1)
        .iter()
        .map(|&id| (s.first_vertex(id), s.last_vertex(id)))
        .filter(|(a, b)| live.contains(a) && live.contains(b))
        .collect();
    // Kahn's algorithm: a cycle remains iff some vertex never reaches in-degree 0.
    let mut indeg: HashMap<usize, usize> = live.iter().map(|&v| (v, 0)).collect();
    for &(_, b) in &edges {
        *indeg.get_mut(&b).unwrap() += 1;
    }
    let mut queue: Vec<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &(a, b) in &edges {
            if a == v {
                let d = indeg.get_mut(&b).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push(b);
                }
            }
        }
    }
    removed < live.len()
}

/// All words from `x` to `y` within `bounds`, grouped by degree and sorted by
/// (length, letters).
pub fn enumerate_words(s: &SimplicialSet, x: usize, y: usize, bounds: WordBounds) -> Result<Vec<Vec<Word>>> {
    if bounds.max_length.is_none() && bounds.max_weight.is_none() && needs_length_cutoff(s, x, y) {
        return Err(Error::CutoffRequired(format!(
            "edge cycles between `{}` and `{}` give infinitely many words of each degree",
            s.name_of(x),
            s.name_of(y)
        )));
    }
    let out_by_vertex = outgoing(s);
    let mut by_degree = vec![Vec::new(); bounds.max_degree + 1];
    let mut stack: Vec<(usize, Word, usize, usize)> = vec![(x, Vec::new(), 0, 0)];
    while let Some((v, w, deg, weight)) = stack.pop() {
        if v == y {
            by_degree[deg].push(w.clone());
        }
        if bounds.max_length.is_some_and(|l| w.len() >= l) {
            continue;
        }
        for &id in out_by_vertex.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let m = s.dim(id);
            let (d2, wt2) = (deg + m - 1, weight + m);
            if d2 > bounds.max_degree || bounds.max_weight.is_some_and(|b| wt2 > b) {
                continue;
            }
            let mut w2 = w.clone();
            w2.push(id);
            stack.push((s.last_vertex(id), w2, d2, wt2));
        }
    }
    for words in &mut by_degree {
        words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    }
    Ok(by_degree)
}

/// Human-readable word: `[a|b|c]`, or `1` for the empty word.
pub fn word_label(s: &SimplicialSet, w: &[usize]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        let names: Vec<&str> = w.iter().map(|&id| s.name_of(id)).collect();
        format!("[{}]", names.join("|"))
    }
}

/// The mapping complex from `x` to `y`, truncated at degree `max_degree` and
/// optionally at word length `max_length`.
#[derive(Clone, Debug)]
pub struct MappingComplex {
    set: SimplicialSet,
    source: usize,
    target: usize,
    max_degree: usize,
    max_length: Option<usize>,
    basis: Vec<Vec<Word>>,
    index: HashMap<Word, usize>,
}

/// Builds the mapping complex. A length cutoff is mandatory exactly when
/// edge cycles make the degree-wise basis infinite.
pub fn mapping_complex(s: &SimplicialSet, x: usize, y: usize, max_degree: usize, max_length: Option<usize>) -> Result<MappingComplex> {
    for v in [x, y] {
        if v >= s.len() || s.dim(v) != 0 {
            return Err(Error::UnknownId(format!("vertex {v}")));
        }
    }
    s.validate(max_degree + 2)?;
    let bounds = WordBounds { max_degree, max_length, max_weight: None };
    let basis = enumerate_words(s, x, y, bounds)?;
    let index = basis.iter().flat_map(|ws| ws.iter().enumerate().map(|(k, w)| (w.clone(), k))).collect();
    Ok(MappingComplex { set: s.clone(), source: x, target: y, max_degree, max_length, basis, index })
}

impl MappingComplex {
    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn max_length(&self) -> Option<usize> {
        self.max_length
    }

    /// Basis words of degree `n` (empty past the cutoff).
    pub fn basis(&self, n: usize) -> &[Word] {
        self.basis.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Position of a basis word within its degree.
    pub fn position(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn differential(&self, w: &[usize]) -> Element {
        word_differential(&self.set, w)
    }

    pub fn label(&self, w: &[usize]) -> String {
        word_label(&self.set, w)
    }

    pub fn is_loop_space(&self) -> bool {
        self.source == self.target
    }

    /// Matrix of ∂ from degree `n` to `n − 1` on the stored basis. Terms that
    /// leave the truncation are dropped.
    pub fn differential_matrix(&self, n: usize) -> Matrix {
        differential_matrix(&self.set, self.basis(n.saturating_sub(1)), self.basis(n), n == 0)
    }

    /// Products of basis words whose concatenation is again a basis word;
    /// entries are `(degree, position)` pairs for the two factors and result.
    pub fn product_table(&self) -> Vec<[(usize, usize); 3]> {
        let mut out = Vec::new();
        if !self.is_loop_space() {
            return out;
        }
        for (da, ws_a) in self.basis.iter().enumerate() {
            for (ia, a) in ws_a.iter().enumerate() {
                for (db, ws_b) in self.basis.iter().enumerate().take(self.max_degree + 1 - da) {
                    for (ib, b) in ws_b.iter().enumerate() {
                        let mut w = a.clone();
                        w.extend_from_slice(b);
                        if let Some(k) = self.position(&w) {
                            out.push([(da, ia), (db, ib), (da + db, k)]);
                        }
                    }
                }
            }
        }
        out
    }

    /// The chain complex used for homology through `max_degree`, built one
    /// degree higher. Without a length cutoff this is exact. With one, it is
    /// the subcomplex of words with Σ dim σᵢ ≤ max_degree + max_length; the
    /// differential never raises that weight, so the result is a genuine
    /// complex whose low-degree homology approximates the true one.
    pub fn homology_complex(&self, ring: Ring) -> Result<ChainComplex> {
        let bounds = WordBounds {
            max_degree: self.max_degree + 1,
            max_length: None,
            max_weight: self.max_length.map(|l| self.max_degree + l),
        };
        let basis = enumerate_words(&self.set, self.source, self.target, bounds)?;
        word_chain_complex(&self.set, ring, &basis)
    }

    /// Homology in degrees `0..=max_degree`, with a flag telling whether a
    /// length cutoff was involved.
    pub fn homology(&self, ring: Ring) -> Result<(HomologyReport, bool)> {
        let c = self.homology_complex(ring)?;
        Ok((homology(&c).truncated(self.max_degree), self.max_length.is_some()))
    }
}

fn differential_matrix(s: &SimplicialSet, rows: &[Word], cols: &[Word], degree_zero: bool) -> Matrix {
    if degree_zero {
        return Matrix::zeros(0, cols.len());
    }
    let pos: HashMap<&Word, usize> = rows.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut d = Matrix::zeros(rows.len(), cols.len());
    for (j, w) in cols.iter().enumerate() {
        for (t, c) in word_differential(s, w).terms() {
            if let Some(&i) = pos.get(t) {
                d.add_to(i, j, c);
            }
        }
    }
    d
}

/// Chain complex on the given per-degree word bases.
pub fn word_chain_complex(s: &SimplicialSet, ring: Ring, basis: &[Vec<Word>]) -> Result<ChainComplex> {
    let labels = basis.iter().map(|ws| ws.iter().map(|w| word_label(s, w)).collect()).collect();
    let mats = (0..basis.len())
        .map(|n| differential_matrix(s, if n == 0 { &[] } else { &basis[n - 1] }, &basis[n], n == 0))
        .collect();
    ChainComplex::new(ring, labels, mats)
}

/// The necklace of bead dimensions underlying a word.
pub fn word_necklace(s: &SimplicialSet, w: &[usize]) -> Result<Necklace> {
    Necklace::new(w.iter().map(|&id| s.dim(id)).collect())
}

/// For a word in the standard simplex Δⁿ (vertex names are their numbers),
/// the necklace map from the word's necklace into Δⁿ viewed as a one-bead
/// necklace.
pub fn word_to_simplex_map(s: &SimplicialSet, n: usize, w: &[usize]) -> Result<NecklaceMorphism> {
    let mut map = vec![0usize];
    for &id in w {
        let me = SimplexRef::nondegenerate(id);
        for k in 1..=s.dim(id) {
            let v = s.vertex(&me, k);
            let label: usize = s.name_of(v).parse().map_err(|_| Error::Invalid(format!("vertex name `{}` is not a number", s.name_of(v))))?;
            map.push(label);
        }
    }
    NecklaceMorphism::new(word_necklace(s, w)?, Necklace::simplex(n), map)
}

/// The cube pattern of a word in Δⁿ from 0 to n: for each inner vertex
/// 1..n−1, `1` if it is a joint of the word, `*` if it lies inside a bead,
/// `0` if the word skips it.
pub fn simplex_word_pattern(s: &SimplicialSet, n: usize, w: &[usize]) -> Result<String> {
    let f = word_to_simplex_map(s, n, w)?;
    let t = f.source();
    let mut pattern = vec!['0'; n.saturating_sub(1)];
    for (v, &image) in f.vertex_map().iter().enumerate() {
        if image > 0 && image < n {
            pattern[image - 1] = if t.is_joint(v) { '1' } else { '*' };
        }
    }
    Ok(pattern.into_iter().collect())
}

/// Checks that the mapping complex of Δⁿ from 0 to n is the normalized chain
/// complex of the (n−1)-cube, with bases matched by [`simplex_word_pattern`]
/// and differentials equal entry by entry.
pub fn check_simplex_against_cube(n: usize) -> std::result::Result<(), String> {
    if n == 0 {
        return Err("the standard simplex must have positive dimension".into());
    }
    let s = standard_simplex(n);
    let top = n - 1;
    let m = mapping_complex(&s, 0, s.id(&n.to_string()).map_err(|e| e.to_string())?, top, None).map_err(|e| e.to_string())?;
    let cube = chains_cubical(&standard_cube(top), Ring::Integers, top).map_err(|e| e.to_string())?;
    let mut perms = Vec::new();
    for d in 0..=top {
        if m.basis(d).len() != cube.rank(d) {
            return Err(format!("degree {d}: {} words but {} cube cells", m.basis(d).len(), cube.rank(d)));
        }
        let cells: HashMap<&str, usize> = cube.basis(d).iter().enumerate().map(|(k, c)| (c.as_str(), k)).collect();
        let mut perm = Vec::new();
        for w in m.basis(d) {
            let p = simplex_word_pattern(&s, n, w).map_err(|e| e.to_string())?;
            let &k = cells.get(p.as_str()).ok_or_else(|| format!("pattern {p} is not a cube cell of degree {d}"))?;
            perm.push(k);
        }
        let distinct: HashSet<usize> = perm.iter().copied().collect();
        if distinct.len() != perm.len() {
            return Err(format!("degree {d}: word-to-cell assignment is not injective"));
        }
        perms.push(perm);
    }
    for d in 1..=top {
        let dm = m.differential_matrix(d);
        let dc = cube.boundary(d);
        for (j, &cj) in perms[d].iter().enumerate() {
            for (i, &ci) in perms[d - 1].iter().enumerate() {
                if dm.get(i, j) != dc.get(ci, cj) {
                    return Err(format!(
                        "degree {d}: ∂ coefficient of {} in {} is {} but the cube has {}",
                        m.label(&m.basis(d - 1)[i]),
                        m.label(&m.basis(d)[j]),
                        dm.get(i, j),
                        dc.get(ci, cj)
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::{classify, factorize, GeneratorKind};
    use crate::simplicial::{nerve_monoid, sphere, Monoid};

    fn names(m: &MappingComplex, d: usize) -> Vec<String> {
        m.basis(d).iter().map(|w| m.label(w)).collect()
    }

    #[test]
    fn two_simplex_is_an_interval() {
        let s = standard_simplex(2);
        let m = mapping_complex(&s, 0, s.id("2").unwrap(), 1, None).unwrap();
        assert_eq!(names(&m, 0), vec!["[02]", "[01|12]"]);
        assert_eq!(names(&m, 1), vec!["[012]"]);
        let d = m.differential(&m.basis(1)[0]);
        let (e02, e01, e12) = (s.id("02").unwrap(), s.id("01").unwrap(), s.id("12").unwrap());
        assert_eq!(d.coefficient(&[e02]), 1);
        assert_eq!(d.coefficient(&[e01, e12]), -1);
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn sphere_words_have_zero_differential() {
        let s = sphere(2);
        let x = s.vertices()[0];
        let m = mapping_complex(&s, x, x, 4, None).unwrap();
        assert_eq!(m.ranks(), vec![1, 1, 1, 1, 1]);
        for d in 0..=4 {
            assert!(m.differential(&m.basis(d)[0]).is_zero());
        }
        let (h, truncated) = m.homology(Ring::Integers).unwrap();
        assert_eq!(h.betti(), vec![1; 5]);
        assert!(!truncated);
    }

    #[test]
    fn nerve_of_z2_relation() {
        let s = nerve_monoid(&Monoid::cyclic(2), 2);
        let x = s.vertices()[0];
        let gg = s.id("(g,g)").unwrap();
        let g = s.id("(g)").unwrap();
        let d = word_differential(&s, &[gg]);
        assert_eq!(d.coefficient(&[]), 1);
        assert_eq!(d.coefficient(&[g, g]), -1);
        assert_eq!(d.len(), 2);
        assert!(matches!(mapping_complex(&s, x, x, 2, None), Err(Error::CutoffRequired(_))));
        let m = mapping_complex(&s, x, x, 1, Some(6)).unwrap();
        let (h, truncated) = m.homology(Ring::Rationals).unwrap();
        assert!(truncated);
        assert_eq!(h.betti()[0], 2);
    }

    #[test]
    fn simplex_matches_cube() {
        for n in 1..=4 {
            check_simplex_against_cube(n).unwrap();
        }
    }

    #[test]
    fn simplex_words_do_not_factor_through_degeneracies() {
        let s = standard_simplex(3);
        let m = mapping_complex(&s, 0, s.id("3").unwrap(), 2, None).unwrap();
        for d in 0..=2 {
            for w in m.basis(d) {
                let f = word_to_simplex_map(&s, 3, w).unwrap();
                assert_eq!(f.source().dimension(), d);
                for g in factorize(&f).unwrap() {
                    assert!(matches!(classify(&g), None | Some(GeneratorKind::Injective)), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn compose_is_concatenation() {
        let s = standard_simplex(2);
        let (v0, v1, v2) = (s.id("0").unwrap(), s.id("1").unwrap(), s.id("2").unwrap());
        let a = CobarWord::new(&s, vec![s.id("01").unwrap()], v0, v1).unwrap();
        let b = CobarWord::new(&s, vec![s.id("12").unwrap()], v1, v2).unwrap();
        let ab = compose(&b, &a).unwrap();
        assert_eq!(ab.simplices, vec![a.simplices[0], b.simplices[0]]);
        assert!(compose(&a, &b).is_err());
        assert_eq!(compose(&a, &CobarWord::unit(v0)).unwrap(), a);
        assert!(CobarWord::new(&s, vec![s.id("12").unwrap()], v0, v2).is_err());
    }
}
