//! Finitely generated cubical sets with connections, normalized cubical
//! chains, and triangulation.

mod io;
mod set;
mod triangulate;

pub use io::{CellEntry, CubicalFaceEntry, CubicalSetFile, CUBICAL_FORMAT};
pub use set::{chains_cubical, Cell, CubeRef, CubicalSetFG};
pub use triangulate::triangulate;

use crate::necklace::{BoxGenerator, BoxMorphism};

/// Ternary pattern of a face of the standard cube: `'0'`, `'1'`, or `'*'`
/// for a free coordinate.
pub fn pattern_dim(p: &str) -> usize {
    p.chars().filter(|&c| c == '*').count()
}

/// The standard cube `□ⁿ_c`: its nondegenerate cells are the faces of the
/// n-cube, named by patterns over `{0, 1, *}`.
pub fn standard_cube(n: usize) -> CubicalSetFG {
    let mut k = CubicalSetFG::new(format!("cube^{n}"));
    let mut patterns: Vec<String> = vec![String::new()];
    for _ in 0..n {
        patterns = patterns
            .into_iter()
            .flat_map(|p| ['0', '1', '*'].map(|c| format!("{p}{c}")))
            .collect();
    }
    patterns.sort_by_key(|p| (pattern_dim(p), p.clone()));
    for p in &patterns {
        let d = pattern_dim(p);
        let stars: Vec<usize> = p.char_indices().filter(|&(_, c)| c == '*').map(|(i, _)| i).collect();
        let mut faces = Vec::with_capacity(2 * d);
        for &pos in &stars {
            for eps in ['0', '1'] {
                let mut q: Vec<char> = p.chars().collect();
                q[pos] = eps;
                let name: String = q.into_iter().collect();
                let id = k.id(&name).unwrap();
                faces.push(CubeRef { map: BoxMorphism::identity(d - 1), base: id });
            }
        }
        k.add_cell(p.clone(), d, faces).unwrap();
    }
    k
}

/// One vertex `v` and one edge `e` with both ends at `v`.
pub fn cubical_circle() -> CubicalSetFG {
    let mut k = CubicalSetFG::new("cubical-circle");
    let v = k.add_cell("v", 0, vec![]).unwrap();
    let r = CubeRef { map: BoxMorphism::identity(0), base: v };
    k.add_cell("e", 1, vec![r.clone(), r]).unwrap();
    k
}

/// One vertex and one 2-cell whose faces are all the degenerate edge on it:
/// a cubical 2-sphere.
pub fn cubical_sphere2() -> CubicalSetFG {
    let mut k = CubicalSetFG::new("cubical-sphere2");
    let v = k.add_cell("v", 0, vec![]).unwrap();
    let deg = CubeRef {
        map: BoxMorphism::generator(BoxGenerator::Codegeneracy { j: 1 }, 1).unwrap(),
        base: v,
    };
    k.add_cell("c", 2, vec![deg.clone(), deg.clone(), deg.clone(), deg]).unwrap();
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{homology, Ring};
    use crate::simplicial::normalized_chains;

    #[test]
    fn standard_cube_cells() {
        assert_eq!(standard_cube(0).counts(), vec![1]);
        assert_eq!(standard_cube(2).counts(), vec![4, 4, 1]);
        assert_eq!(standard_cube(3).counts(), vec![8, 12, 6, 1]);
        standard_cube(3).validate(3).unwrap();
    }

    #[test]
    fn interval_chains() {
        let c = chains_cubical(&standard_cube(1), Ring::Integers, 1).unwrap();
        assert_eq!(c.ranks(), vec![2, 1]);
        // ∂(*) = (−1)(∂¹ − ∂⁰) = v0 − v1.
        let d = c.boundary(1);
        assert_eq!(c.basis(0), &["0".to_string(), "1".to_string()]);
        assert_eq!((d.get(0, 0).clone(), d.get(1, 0).clone()), (1.into(), (-1).into()));
        assert_eq!(homology(&c).betti(), vec![1, 0]);
    }

    #[test]
    fn cube_homology_and_triangulation_agree() {
        for k in [standard_cube(0), standard_cube(1), standard_cube(2), standard_cube(3), cubical_circle(), cubical_sphere2()] {
            let n = k.max_dim();
            let hc = homology(&chains_cubical(&k, Ring::Integers, n).unwrap());
            let t = triangulate(&k).unwrap();
            let hs = homology(&normalized_chains(&t, Ring::Integers, n).unwrap());
            assert_eq!(hc, hs, "{}", k.name());
        }
        let h = homology(&chains_cubical(&cubical_sphere2(), Ring::Integers, 2).unwrap());
        assert_eq!(h.betti(), vec![1, 0, 1]);
    }

    #[test]
    fn connection_faces_pull_correctly() {
        // A nondegenerate 2-cell carrying the faces of the connection on an edge.
        let mut k = CubicalSetFG::new("triangle-like");
        let x = k.add_cell("x", 0, vec![]).unwrap();
        let y = k.add_cell("y", 0, vec![]).unwrap();
        let pt = |id| CubeRef { map: BoxMorphism::identity(0), base: id };
        let a = k.add_cell("a", 1, vec![pt(x), pt(y)]).unwrap();
        let edge = CubeRef { map: BoxMorphism::identity(1), base: a };
        let deg_y = CubeRef { map: BoxMorphism::generator(BoxGenerator::Codegeneracy { j: 1 }, 1).unwrap(), base: y };
        k.add_cell("c", 2, vec![edge.clone(), deg_y.clone(), edge, deg_y]).unwrap();
        k.validate(2).unwrap();
        let h = homology(&chains_cubical(&k, Ring::Integers, 2).unwrap());
        let t = triangulate(&k).unwrap();
        let hs = homology(&normalized_chains(&t, Ring::Integers, 2).unwrap());
        assert_eq!(h, hs);
    }
}
