//! Necklaces (wedges of simplices glued end to end), their morphisms,
//! factorization into generating morphisms, and the functor to the box
//! category with connections.

mod boxmap;
mod factor;
mod p1;

use std::fmt;

use crate::error::{Error, Result};

pub use boxmap::{BoxGenerator, BoxMorphism, MAX_BOX_DIM};
pub use factor::{classify, composes_to, factorize, GeneratorKind};
pub use p1::{p1_direct, p1_of_generator, p1_of_morphism};

/// Default bound on vertex counts for enumeration.
pub const DEFAULT_VERTEX_BOUND: usize = 12;

/// `Δ^{n_1} ∨ … ∨ Δ^{n_k}` with every `n_i ≥ 1`; no beads is the point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    beads: Vec<usize>,
}

impl Necklace {
    pub fn new(beads: Vec<usize>) -> Result<Self> {
        if beads.contains(&0) {
            return Err(Error::Invalid("bead dimensions must be at least 1".into()));
        }
        Ok(Necklace { beads })
    }

    pub fn point() -> Self {
        Necklace { beads: Vec::new() }
    }

    /// Δⁿ as a one-bead necklace (the point for `n = 0`).
    pub fn simplex(n: usize) -> Self {
        if n == 0 {
            Necklace::point()
        } else {
            Necklace { beads: vec![n] }
        }
    }

    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    pub fn bead_count(&self) -> usize {
        self.beads.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.beads.iter().sum::<usize>() + 1
    }

    pub fn last_vertex(&self) -> usize {
        self.beads.iter().sum()
    }

    /// Joint positions: 0, n₁, n₁+n₂, …, the last vertex.
    pub fn joints(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut acc = 0;
        for &n in &self.beads {
            acc += n;
            out.push(acc);
        }
        out
    }

    pub fn is_joint(&self, v: usize) -> bool {
        let mut acc = 0;
        if v == 0 {
            return true;
        }
        for &n in &self.beads {
            acc += n;
            if acc == v {
                return true;
            }
            if acc > v {
                return false;
            }
        }
        false
    }

    pub fn non_joints(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.is_joint(v)).collect()
    }

    /// Number of non-joint vertices; the dimension of the associated cube.
    pub fn dimension(&self) -> usize {
        self.beads.iter().map(|n| n - 1).sum()
    }

    /// Vertex ranges `(first, last)` of each bead.
    pub fn bead_ranges(&self) -> Vec<(usize, usize)> {
        let j = self.joints();
        j.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Whether vertices `a ≤ b` lie in a common bead.
    pub fn same_bead(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        !self.joints().iter().any(|&j| a < j && j < b)
    }

    pub fn wedge(&self, other: &Necklace) -> Necklace {
        let mut beads = self.beads.clone();
        beads.extend_from_slice(&other.beads);
        Necklace { beads }
    }

    /// The sub-necklace `T(a, b)` spanned by vertices `a..=b`, with joints the
    /// joints of `T` in that range plus `a` and `b`.
    pub fn interval(&self, a: usize, b: usize) -> Necklace {
        let mut cuts: Vec<usize> = vec![a];
        cuts.extend(self.joints().into_iter().filter(|&j| a < j && j < b));
        if b > a {
            cuts.push(b);
        }
        Necklace { beads: cuts.windows(2).map(|w| w[1] - w[0]).collect() }
    }

    /// Necklace on a subset of this necklace's vertices with a chosen joint
    /// subset (which must contain the first and last chosen vertex).
    pub(crate) fn from_subset(vertices: &[usize], joints: &[usize]) -> Necklace {
        let pos: Vec<usize> = joints
            .iter()
            .map(|j| vertices.iter().position(|v| v == j).expect("joint outside vertex subset"))
            .collect();
        Necklace { beads: pos.windows(2).map(|w| w[1] - w[0]).collect() }
    }
}

impl fmt::Debug for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beads.is_empty() {
            return write!(f, "Δ^0");
        }
        let parts: Vec<String> = self.beads.iter().map(|n| format!("Δ^{n}")).collect();
        write!(f, "{}", parts.join("∨"))
    }
}

/// Map of necklaces, stored as its vertex map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NecklaceMorphism {
    source: Necklace,
    target: Necklace,
    map: Vec<usize>,
}

impl NecklaceMorphism {
    /// Checks monotonicity, endpoint preservation and that every source bead
    /// lands in a single target bead.
    pub fn new(source: Necklace, target: Necklace, map: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidMorphism(m));
        if map.len() != source.vertex_count() {
            return bad(format!("vertex map has {} entries, {source} has {} vertices", map.len(), source.vertex_count()));
        }
        if map.iter().any(|&v| v >= target.vertex_count()) {
            return bad("vertex image out of range".into());
        }
        if !map.windows(2).all(|w| w[0] <= w[1]) {
            return bad("vertex map is not monotone".into());
        }
        if map[0] != 0 || *map.last().unwrap() != target.last_vertex() {
            return bad("first and last vertices must be preserved".into());
        }
        for (a, b) in source.bead_ranges() {
            if !target.same_bead(map[a], map[b]) {
                return bad(format!("bead on vertices {a}..{b} does not land in one bead of {target}"));
            }
        }
        Ok(NecklaceMorphism { source, target, map })
    }

    pub fn identity(t: &Necklace) -> Self {
        NecklaceMorphism { source: t.clone(), target: t.clone(), map: (0..t.vertex_count()).collect() }
    }

    pub fn source(&self) -> &Necklace {
        &self.source
    }

    pub fn target(&self) -> &Necklace {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.map.windows(2).all(|w| w[0] < w[1])
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &NecklaceMorphism) -> Result<NecklaceMorphism> {
        if first.target != self.source {
            return Err(Error::InvalidMorphism(format!(
                "cannot compose: {} is not {}",
                first.target, self.source
            )));
        }
        Ok(NecklaceMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&v| self.map[v]).collect(),
        })
    }

    /// `self ∨ other`, glued at the last vertex of `self`.
    pub fn wedge(&self, other: &NecklaceMorphism) -> NecklaceMorphism {
        let shift = self.target.last_vertex();
        let mut map = self.map.clone();
        map.extend(other.map.iter().skip(1).map(|&v| v + shift));
        NecklaceMorphism {
            source: self.source.wedge(&other.source),
            target: self.target.wedge(&other.target),
            map,
        }
    }

    /// Composite of a list in composition order (`list[0]` applied last).
    pub fn compose_all(list: &[NecklaceMorphism]) -> Option<NecklaceMorphism> {
        let mut iter = list.iter().rev();
        let mut acc = iter.next()?.clone();
        for g in iter {
            acc = g.after(&acc).ok()?;
        }
        Some(acc)
    }
}

impl fmt::Debug for NecklaceMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.map)
    }
}

/// Every necklace morphism `T → T'`, lexicographic in the vertex map.
pub fn enumerate_morphisms(t: &Necklace, t2: &Necklace, bound: usize) -> Result<Vec<NecklaceMorphism>> {
    if t.vertex_count() > bound || t2.vertex_count() > bound {
        return Err(Error::BoundExceeded(format!(
            "{t} -> {t2} exceeds the vertex bound {bound}"
        )));
    }
    let n = t.vertex_count();
    let last = t2.last_vertex();
    // bead_start[v]: first vertex of the source bead containing the edge ending at v.
    let mut bead_start = vec![0; n];
    for (a, b) in t.bead_ranges() {
        for v in a + 1..=b {
            bead_start[v] = a;
        }
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    fn rec(
        v: usize,
        n: usize,
        last: usize,
        bead_start: &[usize],
        t2: &Necklace,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == n {
            out.push(map.clone());
            return;
        }
        let lo = map[v - 1];
        let range = if v == n - 1 { last..=last } else { lo..=last };
        for x in range {
            if x < lo || !t2.same_bead(map[bead_start[v]], x) {
                continue;
            }
            map[v] = x;
            rec(v + 1, n, last, bead_start, t2, map, out);
        }
    }
    let mut maps = Vec::new();
    if n == 1 {
        if last == 0 {
            maps.push(vec![0]);
        }
    } else {
        rec(1, n, last, &bead_start, t2, &mut map, &mut maps);
    }
    for m in maps {
        out.push(NecklaceMorphism { source: t.clone(), target: t2.clone(), map: m });
    }
    Ok(out)
}

/// Every necklace with at most `max_vertices` vertices, ordered by vertex
/// count then bead list.
pub fn necklaces_up_to(max_vertices: usize) -> Vec<Necklace> {
    let mut out = Vec::new();
    for total in 0..max_vertices {
        for comp in compositions(total) {
            out.push(Necklace { beads: comp });
        }
    }
    out
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_structure() {
        let t = Necklace::new(vec![2, 3]).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.joints(), vec![0, 2, 5]);
        assert_eq!(t.non_joints(), vec![1, 3, 4]);
        assert_eq!(t.dimension(), 3);
        assert_eq!(t.interval(1, 4), Necklace::new(vec![1, 2]).unwrap());
        assert_eq!(t.interval(3, 3), Necklace::point());
        assert!(Necklace::new(vec![0]).is_err());
        assert_eq!(Necklace::point().vertex_count(), 1);
    }

    #[test]
    fn enumeration_counts() {
        let d1 = Necklace::simplex(1);
        let d2 = Necklace::simplex(2);
        let w = Necklace::new(vec![1, 1]).unwrap();
        assert_eq!(enumerate_morphisms(&d1, &d1, 12).unwrap().len(), 1);
        assert_eq!(enumerate_morphisms(&w, &d2, 12).unwrap().len(), 3);
        let p = Necklace::point();
        assert_eq!(enumerate_morphisms(&p, &p, 12).unwrap().len(), 1);
        assert_eq!(enumerate_morphisms(&p, &d1, 12).unwrap().len(), 0);
        assert!(enumerate_morphisms(&Necklace::simplex(20), &d1, 12).is_err());
    }

    /// Brute force over all vertex maps, validated by the constructor.
    #[test]
    fn enumeration_matches_brute_force() {
        let all = necklaces_up_to(5);
        for s in &all {
            for t in &all {
                let n = s.vertex_count();
                let m = t.vertex_count();
                let mut count = 0;
                let total = m.pow(n as u32);
                for code in 0..total {
                    let map: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                    if NecklaceMorphism::new(s.clone(), t.clone(), map).is_ok() {
                        count += 1;
                    }
                }
                let listed = enumerate_morphisms(s, t, 12).unwrap();
                assert_eq!(listed.len(), count, "{s} -> {t}");
                assert!(listed.windows(2).all(|w| w[0].map < w[1].map));
            }
        }
    }

    #[test]
    fn composition_and_wedge() {
        let w = Necklace::new(vec![1, 1]).unwrap();
        let d2 = Necklace::simplex(2);
        let f = NecklaceMorphism::new(w.clone(), d2.clone(), vec![0, 1, 2]).unwrap();
        let id = NecklaceMorphism::identity(&d2);
        assert_eq!(id.after(&f).unwrap(), f);
        assert!(f.after(&f).is_err());
        let g = f.wedge(&NecklaceMorphism::identity(&Necklace::simplex(1)));
        assert_eq!(g.vertex_map(), &[0, 1, 2, 3]);
        assert_eq!(g.target(), &Necklace::new(vec![2, 1]).unwrap());
    }
}
