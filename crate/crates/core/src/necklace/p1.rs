use super::factor::{classify, factorize, GeneratorKind};
use super::{BoxGenerator, BoxMorphism, NecklaceMorphism, MAX_BOX_DIM};
use crate::error::{Error, Result};

/// The box map of a single generator, read off from how the generator moves
/// joints and non-joints.
pub fn p1_of_generator(f: &NecklaceMorphism) -> Result<BoxMorphism> {
    let (s, t) = (f.source(), f.target());
    let n = s.dimension();
    let map = f.vertex_map();
    let kind = classify(f)
        .ok_or_else(|| Error::InvalidMorphism(format!("{f:?} is not a generator")))?;
    let g = match kind {
        GeneratorKind::Collapse => return Ok(BoxMorphism::identity(n)),
        GeneratorKind::Injective => {
            let targets = t.non_joints();
            let promoted = s.joints().into_iter().map(|v| map[v]).find(|w| !t.is_joint(*w));
            match promoted {
                // A joint became a non-joint: that coordinate is constantly 1.
                Some(w) => BoxGenerator::Coface { j: position(&targets, w) + 1, eps: 1 },
                None => {
                    let missed = *targets.iter().find(|w| !map.contains(w)).unwrap();
                    BoxGenerator::Coface { j: position(&targets, missed) + 1, eps: 0 }
                }
            }
        }
        GeneratorKind::Codegeneracy => {
            let i = map.windows(2).position(|w| w[0] == w[1]).unwrap();
            let sources = s.non_joints();
            if t.is_joint(map[i]) {
                let y = if s.is_joint(i) { i + 1 } else { i };
                BoxGenerator::Codegeneracy { j: position(&sources, y) + 1 }
            } else {
                BoxGenerator::Coconnection { j: position(&sources, i) + 1 }
            }
        }
    };
    BoxMorphism::generator(g, n)
}

fn position(list: &[usize], x: usize) -> usize {
    list.iter().position(|&y| y == x).unwrap()
}

/// `P₁(f)` assembled from the generator factorization of `f`.
pub fn p1_of_morphism(f: &NecklaceMorphism) -> Result<BoxMorphism> {
    check_size(f)?;
    let gens = factorize(f)?;
    let mut acc = BoxMorphism::identity(f.source().dimension());
    for g in gens.iter().rev() {
        acc = p1_of_generator(g)?.after(&acc);
    }
    Ok(acc)
}

/// `P₁(f)` straight from the definition: a vertex of the source cube is a
/// set of non-joints, completed by all joints, pushed forward along `f`,
/// and read back as a set of target non-joints.
pub fn p1_direct(f: &NecklaceMorphism) -> Result<BoxMorphism> {
    check_size(f)?;
    let (s, t) = (f.source(), f.target());
    let ys = s.non_joints();
    let target_pos: Vec<Option<usize>> = {
        let tn = t.non_joints();
        (0..t.vertex_count()).map(|v| tn.iter().position(|&w| w == v)).collect()
    };
    let map = f.vertex_map();
    let table = (0..1u32 << ys.len())
        .map(|bits| {
            let mut out = 0u32;
            for v in 0..s.vertex_count() {
                let included = match ys.iter().position(|&y| y == v) {
                    Some(k) => bits >> k & 1 == 1,
                    None => true,
                };
                if included {
                    if let Some(k) = target_pos[map[v]] {
                        out |= 1 << k;
                    }
                }
            }
            out
        })
        .collect();
    BoxMorphism::from_table(ys.len(), t.dimension(), table)
}

fn check_size(f: &NecklaceMorphism) -> Result<()> {
    if f.source().dimension() > MAX_BOX_DIM || f.target().dimension() > MAX_BOX_DIM {
        return Err(Error::BoundExceeded("cube dimension too large for a vertex table".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::{enumerate_morphisms, necklaces_up_to, Necklace};

    fn nk(b: &[usize]) -> Necklace {
        Necklace::new(b.to_vec()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let f = NecklaceMorphism::new(nk(&[1, 1]), nk(&[2]), vec![0, 1, 2]).unwrap();
        let p = p1_of_morphism(&f).unwrap();
        assert_eq!(p.as_generator(), Some(BoxGenerator::Coface { j: 1, eps: 1 }));
        assert_eq!(p.table(), &[1]);

        let e02 = NecklaceMorphism::new(nk(&[1]), nk(&[2]), vec![0, 2]).unwrap();
        let p = p1_of_morphism(&e02).unwrap();
        assert_eq!(p.as_generator(), Some(BoxGenerator::Coface { j: 1, eps: 0 }));
        assert_eq!(p.table(), &[0]);

        let s1 = NecklaceMorphism::new(nk(&[3]), nk(&[2]), vec![0, 1, 1, 2]).unwrap();
        let p = p1_of_morphism(&s1).unwrap();
        assert_eq!(p.as_generator(), Some(BoxGenerator::Coconnection { j: 1 }));
    }

    #[test]
    fn generator_route_matches_definition() {
        let all = necklaces_up_to(6);
        for s in &all {
            for t in &all {
                for f in enumerate_morphisms(s, t, 12).unwrap() {
                    assert_eq!(p1_of_morphism(&f).unwrap(), p1_direct(&f).unwrap(), "{f:?}");
                }
            }
        }
    }
}
