use std::collections::HashSet;

use super::set::{SimplexRef, SimplicialSet};
use crate::error::{Error, Result};

fn vertex_label(vs: &[usize]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| v.to_string()).collect()
    } else {
        let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }
}

/// Δⁿ: nondegenerate k-simplices are the (k+1)-subsets of `0..=n`, named by
/// their vertex lists (`"012"`).
pub fn standard_simplex(n: usize) -> SimplicialSet {
    let mut s = SimplicialSet::new(format!("Delta^{n}"));
    let mut by_subset = std::collections::HashMap::new();
    for k in 0..=n {
        for subset in subsets(n + 1, k + 1) {
            let name = vertex_label(&subset);
            let id = if k == 0 {
                s.add_vertex(name).unwrap()
            } else {
                let faces = (0..=k)
                    .map(|i| {
                        let mut f = subset.clone();
                        f.remove(i);
                        SimplexRef::nondegenerate(by_subset[&f])
                    })
                    .collect();
                s.add_simplex(name, faces).unwrap()
            };
            by_subset.insert(subset, id);
        }
    }
    s.set_basepoint(0).unwrap();
    s
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// S/A: the simplices of `S` outside `A` plus one vertex for `A`.
///
/// An empty `A` adds a disjoint basepoint; a single vertex `A` returns a copy
/// of `S` based at that vertex.
pub fn quotient(s: &SimplicialSet, a: &[usize]) -> Result<SimplicialSet> {
    let in_a: HashSet<usize> = a.iter().copied().collect();
    for &id in a {
        if id >= s.len() {
            return Err(Error::UnknownId(format!("#{id}")));
        }
        for (i, f) in s.simplex(id).faces.iter().enumerate() {
            if !in_a.contains(&f.base) {
                return Err(Error::NotFaceClosed { simplex: s.name_of(id).to_string(), face: i });
            }
        }
    }
    let mut out = SimplicialSet::new(format!("{}/~", s.name()));
    let mut new_id = vec![usize::MAX; s.len()];
    if in_a.len() == 1 && s.dim(a[0]) == 0 {
        for (id, simplex) in s.simplices().iter().enumerate() {
            new_id[id] = copy_simplex(&mut out, simplex, &new_id, None)?;
        }
        out.set_basepoint(new_id[a[0]])?;
        return Ok(out);
    }
    let mut point_name = "*".to_string();
    while s.id(&point_name).is_ok() {
        point_name.push('*');
    }
    let point = out.add_vertex(point_name)?;
    out.set_basepoint(point)?;
    for (id, simplex) in s.simplices().iter().enumerate() {
        if in_a.contains(&id) {
            new_id[id] = point;
            continue;
        }
        new_id[id] = copy_simplex(&mut out, simplex, &new_id, Some((&in_a, point)))?;
    }
    Ok(out)
}

fn copy_simplex(
    out: &mut SimplicialSet,
    simplex: &super::set::Simplex,
    new_id: &[usize],
    collapse: Option<(&HashSet<usize>, usize)>,
) -> Result<usize> {
    if simplex.dim == 0 {
        return out.add_vertex(simplex.name.clone());
    }
    let faces = simplex
        .faces
        .iter()
        .map(|f| match collapse {
            Some((a, point)) if a.contains(&f.base) => {
                SimplexRef { word: (0..simplex.dim - 1).collect(), base: point }
            }
            _ => SimplexRef { word: f.word.clone(), base: new_id[f.base] },
        })
        .collect();
    out.add_simplex(simplex.name.clone(), faces)
}

/// One-vertex model Δⁿ/∂Δⁿ of the n-sphere (n ≥ 1).
pub fn sphere(n: usize) -> SimplicialSet {
    assert!(n >= 1, "sphere model needs n >= 1");
    let d = standard_simplex(n);
    let boundary = d.skeleton(n - 1);
    let mut s = quotient(&d, &boundary).unwrap();
    s.set_name(format!("S^{n}"));
    s
}

/// A finite monoid given by its multiplication table `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    identity: usize,
}

impl Monoid {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Monoid> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("multiplication table must be n×n with entries in 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::MissingIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Monoid { labels, table, identity })
    }

    /// ℤ/n with labels `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Monoid {
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Monoid::new(labels, table).unwrap()
    }

    /// S₃ as permutations of {0,1,2}, identity first.
    pub fn symmetric3() -> Monoid {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let labels = vec!["e", "t01", "t12", "t02", "c", "c2"].into_iter().map(String::from).collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Monoid::new(labels, table).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// Nerve of a monoid, truncated above dimension `max_dim`.
///
/// Nondegenerate n-simplices are tuples of non-identity elements, named
/// `(a,b,…)`; the single vertex is `*`.
pub fn nerve_monoid(m: &Monoid, max_dim: usize) -> SimplicialSet {
    let mut s = SimplicialSet::new(format!("N(M{})", m.len()));
    let point = s.add_vertex("*").unwrap();
    s.set_basepoint(point).unwrap();
    let elems: Vec<usize> = (0..m.len()).filter(|&x| x != m.identity()).collect();
    let mut ids = std::collections::HashMap::new();
    ids.insert(Vec::new(), point);
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for n in 1..=max_dim {
        let mut next = Vec::new();
        for t in &layer {
            for &g in &elems {
                let mut tuple = t.clone();
                tuple.push(g);
                let faces = (0..=n).map(|i| nerve_face(m, &tuple, i, &ids)).collect();
                let id = s.add_simplex(tuple_label(m, &tuple), faces).unwrap();
                ids.insert(tuple.clone(), id);
                next.push(tuple);
            }
        }
        layer = next;
    }
    s
}

fn tuple_label(m: &Monoid, t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().map(|&x| m.labels[x].as_str()).collect();
    format!("({})", parts.join(","))
}

fn nerve_face(
    m: &Monoid,
    t: &[usize],
    i: usize,
    ids: &std::collections::HashMap<Vec<usize>, usize>,
) -> SimplexRef {
    let n = t.len();
    let face: Vec<usize> = if i == 0 {
        t[1..].to_vec()
    } else if i == n {
        t[..n - 1].to_vec()
    } else {
        let mut f = t[..i - 1].to_vec();
        f.push(m.mul(t[i - 1], t[i]));
        f.extend_from_slice(&t[i + 1..]);
        f
    };
    // Identity entries are degeneracies: entry k = e means s_k.
    let word: Vec<usize> = face.iter().enumerate().filter(|(_, &x)| x == m.identity()).map(|(k, _)| k).collect();
    let base: Vec<usize> = face.into_iter().filter(|&x| x != m.identity()).collect();
    SimplexRef { word, base: ids[&base] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        assert_eq!(standard_simplex(0).counts(), vec![1]);
        assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3).counts(), vec![4, 6, 4, 1]);
        for n in 0..5 {
            standard_simplex(n).validate(n).unwrap();
        }
        let d2 = standard_simplex(2);
        let top = d2.id("012").unwrap();
        assert_eq!(d2.name_of(d2.face(top, 1).base), "02");
        assert_eq!(d2.first_vertex(top), d2.id("0").unwrap());
        assert_eq!(d2.last_vertex(top), d2.id("2").unwrap());
    }

    #[test]
    fn sphere_models() {
        let s2 = sphere(2);
        assert_eq!(s2.counts(), vec![1, 0, 1]);
        let c = s2.of_dim(2)[0];
        for i in 0..3 {
            assert_eq!(*s2.face(c, i), SimplexRef { word: vec![0], base: 0 });
        }
        s2.validate(2).unwrap();
        let s1 = sphere(1);
        assert_eq!(s1.counts(), vec![1, 1]);
        for n in 1..6 {
            sphere(n).validate(n).unwrap();
        }
    }

    #[test]
    fn quotient_edge_cases() {
        let d2 = standard_simplex(2);
        let plus = quotient(&d2, &[]).unwrap();
        assert_eq!(plus.counts(), vec![4, 3, 1]);
        plus.validate(2).unwrap();
        let same = quotient(&d2, &[0]).unwrap();
        assert_eq!(same.counts(), d2.counts());
        assert_eq!(same.basepoint(), Some(0));
        let top = d2.id("012").unwrap();
        assert!(matches!(quotient(&d2, &[top]), Err(Error::NotFaceClosed { .. })));
        // Collapsing an edge of Δ²: faces landing in it become s0(*).
        let e01 = d2.id("01").unwrap();
        let q = quotient(&d2, &[0, 1, e01]).unwrap();
        assert_eq!(q.counts(), vec![2, 2, 1]);
        q.validate(2).unwrap();
    }

    #[test]
    fn monoid_nerves() {
        let z2 = Monoid::cyclic(2);
        let n = nerve_monoid(&z2, 4);
        assert_eq!(n.counts(), vec![1, 1, 1, 1, 1]);
        n.validate(4).unwrap();
        let gg = n.id("(g,g)").unwrap();
        assert_eq!(*n.face(gg, 1), SimplexRef { word: vec![0], base: 0 });
        assert_eq!(n.name_of(n.face(gg, 0).base), "(g)");

        let trivial = Monoid::new(vec!["e".into()], vec![vec![0]]).unwrap();
        assert_eq!(nerve_monoid(&trivial, 3).counts(), vec![1]);

        let s3 = Monoid::symmetric3();
        let ns = nerve_monoid(&s3, 3);
        assert_eq!(ns.counts(), vec![1, 5, 25, 125]);
        ns.validate(3).unwrap();
        nerve_monoid(&Monoid::cyclic(3), 4).validate(4).unwrap();
    }

    #[test]
    fn monoid_errors() {
        let no_id = Monoid::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(no_id.unwrap_err(), Error::MissingIdentity);
        // Identity 0, but 1·(1·2) ≠ (1·1)·2.
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        let bad = Monoid::new(vec!["e".into(), "a".into(), "b".into()], table);
        assert!(matches!(bad, Err(Error::NotAssociative(..))));
    }
}
