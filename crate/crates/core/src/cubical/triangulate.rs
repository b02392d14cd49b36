use std::collections::HashMap;

use super::set::{CubeRef, CubicalSetFG};
use crate::error::Result;
use crate::necklace::BoxMorphism;
use crate::simplicial::{SimplexRef, SimplicialSet};

/// A simplex of the triangulation before canonicalization: a cell and a
/// weakly increasing chain of vertices of its cube.
type Chain = Vec<u32>;

/// The triangulation `|K|`: the colimit of the nerves of the cubes `𝟏ⁿ` over
/// the cells of `K`.
///
/// Every simplex has a unique representative (nondegenerate cell `c`, chain
/// from `0…0` to `1…1` in the cube of `c`): a chain lying in a proper face
/// is moved to that face and through the face's structural map. Such a
/// representative is nondegenerate exactly when the chain is strict.
pub fn triangulate(k: &CubicalSetFG) -> Result<SimplicialSet> {
    k.validate(k.max_dim())?;
    let mut out = SimplicialSet::new(format!("|{}|", k.name()));
    let mut ids: HashMap<(usize, Chain), usize> = HashMap::new();
    let max = k.max_dim();
    for m in 0..=max {
        for c in 0..k.len() {
            let n = k.dim(c);
            if m > n || (m == 0) != (n == 0) {
                continue;
            }
            for chain in spanning_chains(n, m) {
                let name = simplex_name(k, c, &chain, n);
                let id = if m == 0 {
                    out.add_vertex(name)?
                } else {
                    let faces = (0..=m)
                        .map(|i| {
                            let mut f = chain.clone();
                            f.remove(i);
                            let (base, fc) = canonical(k, c, &f);
                            to_ref(&ids, base, &fc)
                        })
                        .collect();
                    out.add_simplex(name, faces)?
                };
                ids.insert((c, chain), id);
            }
        }
    }
    Ok(out)
}

/// Strict chains `0…0 = v_0 < … < v_m = 1…1` in `𝟏ⁿ`, lexicographic.
fn spanning_chains(n: usize, m: usize) -> Vec<Chain> {
    let full = (1u32 << n) - 1;
    if n == 0 {
        return if m == 0 { vec![vec![0]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32];
    fn rec(cur: &mut Chain, m: usize, full: u32, out: &mut Vec<Chain>) {
        let last = *cur.last().unwrap();
        if cur.len() == m {
            if last != full {
                cur.push(full);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        // Proper supersets of `last` that are not yet full.
        let free = full & !last;
        let mut sub = free;
        let mut nexts = Vec::new();
        while sub != 0 {
            let v = last | sub;
            if v != full {
                nexts.push(v);
            }
            sub = (sub - 1) & free;
        }
        nexts.sort();
        for v in nexts {
            cur.push(v);
            rec(cur, m, full, out);
            cur.pop();
        }
    }
    rec(&mut cur, m, full, &mut out);
    out
}

/// Moves a chain in the cube of cell `c` to its canonical (cell, chain).
fn canonical(k: &CubicalSetFG, c: usize, chain: &[u32]) -> (usize, Chain) {
    let n = k.dim(c);
    let first = chain[0];
    let last = *chain.last().unwrap();
    // Coordinates constant along the chain span the smallest face.
    let fixed: Vec<usize> = (0..n).filter(|&i| (first >> i & 1) == (last >> i & 1)).collect();
    if fixed.is_empty() {
        return (c, chain.to_vec());
    }
    let free: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();
    let inclusion_table: Vec<u32> = (0..1u32 << free.len())
        .map(|s| {
            let mut v = first & fixed.iter().map(|&i| 1 << i).sum::<u32>();
            for (b, &i) in free.iter().enumerate() {
                v |= (s >> b & 1) << i;
            }
            v
        })
        .collect();
    let inclusion = BoxMorphism::from_table(free.len(), n, inclusion_table).unwrap();
    let r: CubeRef = k.pull(&k.nondegenerate(c), &inclusion);
    let restricted: Chain = chain
        .iter()
        .map(|&v| free.iter().enumerate().map(|(b, &i)| (v >> i & 1) << b).sum())
        .collect();
    (r.base, restricted.iter().map(|&v| r.map.apply(v)).collect())
}

fn to_ref(ids: &HashMap<(usize, Chain), usize>, base: usize, chain: &[u32]) -> SimplexRef {
    let word: Vec<usize> = (0..chain.len() - 1).filter(|&i| chain[i] == chain[i + 1]).collect();
    let mut strict = chain.to_vec();
    strict.dedup();
    SimplexRef { word, base: ids[&(base, strict)] }
}

fn simplex_name(k: &CubicalSetFG, c: usize, chain: &[u32], n: usize) -> String {
    if n == 0 {
        return k.cell(c).name.clone();
    }
    let parts: Vec<String> = chain.iter().map(|&v| BoxMorphism::vertex_string(v, n)).collect();
    format!("{}[{}]", k.cell(c).name, parts.join("<"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{cubical_circle, standard_cube};

    #[test]
    fn chain_counts() {
        assert_eq!(spanning_chains(3, 3).len(), 6);
        assert_eq!(spanning_chains(2, 1).len(), 1);
        assert_eq!(spanning_chains(2, 2).len(), 2);
        assert_eq!(spanning_chains(0, 0).len(), 1);
    }

    #[test]
    fn triangulated_cubes() {
        let t0 = triangulate(&standard_cube(0)).unwrap();
        assert_eq!(t0.counts(), vec![1]);
        let t1 = triangulate(&standard_cube(1)).unwrap();
        assert_eq!(t1.counts(), vec![2, 1]);
        let e = t1.of_dim(1)[0];
        assert_eq!(t1.name_of(t1.face(e, 0).base), "1");
        assert_eq!(t1.name_of(t1.face(e, 1).base), "0");
        let t2 = triangulate(&standard_cube(2)).unwrap();
        assert_eq!(t2.counts(), vec![4, 5, 2]);
        let t3 = triangulate(&standard_cube(3)).unwrap();
        assert_eq!(t3.counts()[3], 6);
        t3.validate(3).unwrap();
        let c = triangulate(&cubical_circle()).unwrap();
        assert_eq!(c.counts(), vec![1, 1]);
    }
}
