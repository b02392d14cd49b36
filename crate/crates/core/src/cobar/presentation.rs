use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};
use crate::simplicial::SimplicialSet;
use crate::tensor::Word;

/// `lhs = rhs` between words in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    /// What produced the relation (a 2-simplex name).
    pub origin: String,
}

/// An associative algebra presented by degree-0 generators and binomial
/// relations between words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

/// Bounded-length estimate of the dimension of a presented algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionProbe {
    pub bound: usize,
    /// Classes of words of length ≤ `bound` under relations applied inside
    /// that length.
    pub classes: usize,
    /// Classes that contain a word of length < `bound`.
    pub shorter_classes: usize,
    /// Every word of length `bound` is equivalent to a shorter one.
    pub stabilized: bool,
    /// Length used for the linear-algebra cross-check.
    pub rank_bound: usize,
    /// Dimension of the quotient of words of length ≤ `rank_bound` by the
    /// span of relation instances, computed over ℚ.
    pub rank_dimension: usize,
    /// Union-find class count at `rank_bound`; equals `rank_dimension` for
    /// binomial relations.
    pub rank_bound_classes: usize,
}

impl DimensionProbe {
    /// The dimension, when the probe stabilized.
    pub fn dimension(&self) -> Option<usize> {
        self.stabilized.then_some(self.classes)
    }
}

/// Largest word space handed to the dense rank computation.
const RANK_WORD_LIMIT: usize = 400;

struct WordSpace {
    letters: usize,
    bound: usize,
    offsets: Vec<usize>,
}

impl WordSpace {
    fn new(letters: usize, bound: usize) -> Result<Self> {
        let mut offsets = vec![0usize];
        let mut count = 1usize;
        for _ in 0..=bound {
            let last = *offsets.last().unwrap();
            offsets.push(last.checked_add(count).ok_or_else(|| Error::BoundExceeded("word space too large".into()))?);
            count = count.checked_mul(letters.max(1)).ok_or_else(|| Error::BoundExceeded("word space too large".into()))?;
            if letters == 0 {
                count = 0;
            }
        }
        if offsets[bound + 1] > 50_000_000 {
            return Err(Error::BoundExceeded(format!("{} words up to length {bound}", offsets[bound + 1])));
        }
        Ok(WordSpace { letters, bound, offsets })
    }

    fn len(&self) -> usize {
        self.offsets[self.bound + 1]
    }

    fn count_up_to(&self, len: usize) -> usize {
        self.offsets[len + 1]
    }

    fn id(&self, w: &[usize]) -> usize {
        let mut x = 0usize;
        for &l in w.iter().rev() {
            x = x * self.letters + l;
        }
        self.offsets[w.len()] + x
    }

    fn word(&self, id: usize) -> Word {
        let len = self.offsets.partition_point(|&o| o <= id) - 1;
        let mut x = id - self.offsets[len];
        (0..len)
            .map(|_| {
                let l = x % self.letters;
                x /= self.letters;
                l
            })
            .collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Every placement `u · lhs · v ↦ u · rhs · v` with both sides of length ≤
/// the space bound, as pairs of word ids.
fn relation_instances(space: &WordSpace, relations: &[(Word, Word)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for id in 0..space.len() {
        let w = space.word(id);
        for (lhs, rhs) in relations {
            if lhs.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - lhs.len() {
                if w[i..i + lhs.len()] == lhs[..] && w.len() - lhs.len() + rhs.len() <= space.bound {
                    let mut v = w[..i].to_vec();
                    v.extend_from_slice(rhs);
                    v.extend_from_slice(&w[i + lhs.len()..]);
                    out.push((id, space.id(&v)));
                }
            }
        }
    }
    out
}

impl AlgebraPresentation {
    /// Relations oriented so the left side is the longer word, trivial ones
    /// dropped.
    fn oriented(&self) -> Vec<(Word, Word)> {
        self.relations
            .iter()
            .filter(|r| r.lhs != r.rhs)
            .map(|r| if r.lhs.len() >= r.rhs.len() { (r.lhs.clone(), r.rhs.clone()) } else { (r.rhs.clone(), r.lhs.clone()) })
            .collect()
    }

    fn classes(&self, bound: usize) -> Result<(usize, usize)> {
        let space = WordSpace::new(self.generators.len(), bound)?;
        let mut parent: Vec<usize> = (0..space.len()).collect();
        for (a, b) in relation_instances(&space, &self.oriented()) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut roots = std::collections::HashSet::new();
        let mut short_roots = std::collections::HashSet::new();
        let shorter = if bound == 0 { 0 } else { space.count_up_to(bound - 1) };
        for id in 0..space.len() {
            let r = find(&mut parent, id);
            roots.insert(r);
            if id < shorter {
                short_roots.insert(r);
            }
        }
        Ok((roots.len(), short_roots.len()))
    }

    fn rank_dimension(&self, bound: usize) -> Result<usize> {
        let space = WordSpace::new(self.generators.len(), bound)?;
        let rows: Vec<Vec<i64>> = relation_instances(&space, &self.oriented())
            .into_iter()
            .map(|(a, b)| {
                let mut r = vec![0i64; space.len()];
                r[a] += 1;
                r[b] -= 1;
                r
            })
            .collect();
        if rows.is_empty() {
            return Ok(space.len());
        }
        let m = Matrix::from_rows(&rows);
        Ok(space.len() - m.rank(Ring::Rationals))
    }

    /// Counts word classes up to length `bound`, and cross-checks a smaller
    /// length against a rank computation over ℚ.
    pub fn probe_dimension(&self, bound: usize) -> Result<DimensionProbe> {
        let (classes, shorter_classes) = self.classes(bound)?;
        let mut rank_bound = 0;
        while rank_bound < bound && WordSpace::new(self.generators.len(), rank_bound + 1)?.len() <= RANK_WORD_LIMIT {
            rank_bound += 1;
        }
        let rank_dimension = self.rank_dimension(rank_bound)?;
        let (rank_bound_classes, _) = self.classes(rank_bound)?;
        Ok(DimensionProbe {
            bound,
            classes,
            shorter_classes,
            stabilized: bound > 0 && classes == shorter_classes,
            rank_bound,
            rank_dimension,
            rank_bound_classes,
        })
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[w[i]];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("·")
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> =
            self.relations.iter().map(|r| format!("{} = {}", self.render_word(&r.lhs), self.render_word(&r.rhs))).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

/// Presentation of degree-0 homology of the loop mapping complex of a
/// one-vertex simplicial set: one generator per nondegenerate edge and, for
/// each nondegenerate 2-simplex σ, the relation `[d₂σ|d₀σ] = [d₁σ]` with
/// degenerate edges deleted. Relations that reduce to `w = w` are omitted.
pub fn h0_presentation(s: &SimplicialSet) -> Result<AlgebraPresentation> {
    let vertices = s.vertices();
    if vertices.len() != 1 {
        return Err(Error::NotOneVertex(vertices.len()));
    }
    s.validate(2)?;
    let edges = s.of_dim(1);
    let generators = edges.iter().map(|&id| s.name_of(id).to_string()).collect();
    let letter = |r: &crate::simplicial::SimplexRef| -> Option<usize> {
        if r.is_degenerate() {
            None
        } else {
            edges.iter().position(|&e| e == r.base)
        }
    };
    let relations = s
        .of_dim(2)
        .iter()
        .map(|&id| {
            let lhs = [s.face(id, 2), s.face(id, 0)].into_iter().filter_map(letter).collect();
            let rhs = letter(s.face(id, 1)).into_iter().collect();
            Relation { lhs, rhs, origin: s.name_of(id).to_string() }
        })
        .filter(|r| r.lhs != r.rhs)
        .collect();
    Ok(AlgebraPresentation { generators, relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{nerve_monoid, quotient, sphere, standard_simplex, Monoid};

    #[test]
    fn cyclic_groups() {
        let p = h0_presentation(&nerve_monoid(&Monoid::cyclic(2), 2)).unwrap();
        assert_eq!(p.to_string(), "⟨(g) | (g)^2 = 1⟩");
        let probe = p.probe_dimension(3).unwrap();
        assert_eq!(probe.dimension(), Some(2));
        assert_eq!(probe.rank_dimension, probe.rank_bound_classes);

        let p = h0_presentation(&nerve_monoid(&Monoid::cyclic(3), 2)).unwrap();
        let probe = p.probe_dimension(4).unwrap();
        assert_eq!(probe.dimension(), Some(3));
        assert_eq!(probe.rank_dimension, probe.rank_bound_classes);
    }

    #[test]
    fn symmetric_group() {
        let p = h0_presentation(&nerve_monoid(&Monoid::symmetric3(), 2)).unwrap();
        assert_eq!(p.generators.len(), 5);
        let probe = p.probe_dimension(7).unwrap();
        assert_eq!(probe.dimension(), Some(6));
        assert_eq!(probe.rank_dimension, probe.rank_bound_classes);
    }

    #[test]
    fn circle_is_free() {
        let d1 = standard_simplex(1);
        let circle = quotient(&d1, &d1.skeleton(0)).unwrap();
        let p = h0_presentation(&circle).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relations.is_empty());
        let probe = p.probe_dimension(5).unwrap();
        assert_eq!(probe.classes, 6);
        assert!(!probe.stabilized);
        assert_eq!(probe.dimension(), None);
    }

    #[test]
    fn sphere_is_ground_ring() {
        let p = h0_presentation(&sphere(2)).unwrap();
        assert!(p.generators.is_empty() && p.relations.is_empty());
        assert_eq!(p.to_string(), "⟨ | ⟩");
        assert_eq!(p.probe_dimension(3).unwrap().dimension(), Some(1));
    }
}
