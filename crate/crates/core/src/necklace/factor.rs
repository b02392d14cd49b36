use super::{Necklace, NecklaceMorphism};
use crate::error::{Error, Result};

/// The three kinds of generating morphisms of the necklace category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Injective, adding exactly one non-joint vertex.
    Injective,
    /// A codegeneracy on one bead, identity on the others.
    Codegeneracy,
    /// Collapses one `Δ¹` bead, injective elsewhere.
    Collapse,
}

/// Which generator `f` is, if any.
pub fn classify(f: &NecklaceMorphism) -> Option<GeneratorKind> {
    let (s, t) = (f.source(), f.target());
    if f.is_injective() {
        return (t.dimension() == s.dimension() + 1).then_some(GeneratorKind::Injective);
    }
    if s.vertex_count() != t.vertex_count() + 1 {
        return None;
    }
    // Surjective and collapsing exactly one consecutive pair (i, i+1).
    let i = f.vertex_map().windows(2).position(|w| w[0] == w[1])?;
    let collapse: Vec<usize> = (0..s.vertex_count()).map(|v| if v <= i { v } else { v - 1 }).collect();
    if f.vertex_map() != collapse.as_slice() {
        return None;
    }
    let ranges = s.bead_ranges();
    let p = ranges.iter().position(|&(a, b)| a <= i && i < b).unwrap();
    let mut expected = s.beads().to_vec();
    if expected[p] == 1 {
        expected.remove(p);
        (t.beads() == expected.as_slice()).then_some(GeneratorKind::Collapse)
    } else {
        expected[p] -= 1;
        (t.beads() == expected.as_slice()).then_some(GeneratorKind::Codegeneracy)
    }
}

/// Writes `f` as a composite of generators; `f = out[0] ∘ out[1] ∘ …`.
/// The identity factors as the empty list.
///
/// Splits off the first bead, factors each side recursively, and finishes
/// with the inclusion of the split necklace into the target.
pub fn factorize(f: &NecklaceMorphism) -> Result<Vec<NecklaceMorphism>> {
    NecklaceMorphism::new(f.source().clone(), f.target().clone(), f.vertex_map().to_vec())?;
    let out = factor_any(f);
    debug_assert!(out.iter().all(|g| classify(g).is_some()));
    Ok(out)
}

fn factor_any(f: &NecklaceMorphism) -> Vec<NecklaceMorphism> {
    if f.is_identity() {
        return Vec::new();
    }
    let s = f.source();
    if s.bead_count() <= 1 {
        return factor_one_bead(f);
    }
    let t = f.target();
    let j0 = s.beads()[0];
    let a = f.vertex_map()[j0];
    let head_t = t.interval(0, a);
    let tail_t = t.interval(a, t.last_vertex());
    let split = head_t.wedge(&tail_t);
    let g = NecklaceMorphism {
        source: Necklace::simplex(j0),
        target: head_t.clone(),
        map: f.vertex_map()[..=j0].to_vec(),
    };
    let h = NecklaceMorphism {
        source: s.interval(j0, s.last_vertex()),
        target: tail_t.clone(),
        map: f.vertex_map()[j0..].iter().map(|&v| v - a).collect(),
    };
    let mut out = Vec::new();
    let incl = NecklaceMorphism { source: split, target: t.clone(), map: (0..t.vertex_count()).collect() };
    if !incl.is_identity() {
        out.extend(factor_injective(&incl));
    }
    let id_tail = NecklaceMorphism::identity(&tail_t);
    for gi in factor_any(&g) {
        out.push(gi.wedge(&id_tail));
    }
    let id_head = NecklaceMorphism::identity(&g.source);
    for hi in factor_any(&h) {
        out.push(id_head.wedge(&hi));
    }
    out
}

/// Δⁿ → T': a surjection onto the image followed by an injection.
fn factor_one_bead(f: &NecklaceMorphism) -> Vec<NecklaceMorphism> {
    let map = f.vertex_map();
    let mut image: Vec<usize> = map.to_vec();
    image.dedup();
    let r = image.len() - 1;
    let rho: Vec<usize> = map.iter().map(|v| image.iter().position(|x| x == v).unwrap()).collect();
    let mut out = Vec::new();
    if r > 0 {
        let iota = NecklaceMorphism {
            source: Necklace::simplex(r),
            target: f.target().clone(),
            map: image.clone(),
        };
        out.extend(factor_injective(&iota));
    }
    // ρ = ρ' ∘ σ, peeling the first collapsed pair each time.
    let mut rho = rho;
    let mut n = f.source().last_vertex();
    let mut tail = Vec::new();
    while n > r {
        let i = rho.windows(2).position(|w| w[0] == w[1]).unwrap();
        let sigma: Vec<usize> = (0..=n).map(|v| if v <= i { v } else { v - 1 }).collect();
        tail.push(NecklaceMorphism { source: Necklace::simplex(n), target: Necklace::simplex(n - 1), map: sigma });
        rho.remove(i + 1);
        n -= 1;
    }
    out.extend(tail.into_iter().rev());
    out
}

/// Injective morphisms factor into injective generators, adding one
/// non-joint vertex at a time.
fn factor_injective(t: &NecklaceMorphism) -> Vec<NecklaceMorphism> {
    let (r, r2) = (t.source(), t.target());
    if r2.dimension() == r.dimension() {
        debug_assert!(t.is_identity());
        return Vec::new();
    }
    if r2.dimension() == r.dimension() + 1 {
        return vec![t.clone()];
    }
    let image: Vec<usize> = t.vertex_map().to_vec();
    let image_joints: Vec<usize> = r.joints().iter().map(|&j| image[j]).collect();
    let target_joints = r2.joints();
    let (vertices, joints) = if image_joints == target_joints {
        let v = (0..r2.vertex_count()).find(|x| !image.contains(x)).unwrap();
        let mut vs = image.clone();
        vs.push(v);
        vs.sort();
        (vs, target_joints)
    } else {
        let u = *image_joints.iter().find(|j| !target_joints.contains(j)).unwrap();
        let js: Vec<usize> = image_joints.into_iter().filter(|&j| j != u).collect();
        (image.clone(), js)
    };
    let mid = Necklace::from_subset(&vertices, &joints);
    let j = NecklaceMorphism {
        source: r.clone(),
        target: mid.clone(),
        map: image.iter().map(|x| vertices.iter().position(|v| v == x).unwrap()).collect(),
    };
    let i = NecklaceMorphism { source: mid, target: r2.clone(), map: vertices };
    let mut out = factor_injective(&i);
    out.push(j);
    out
}

/// Check that a factorization composes back to `f`.
pub fn composes_to(list: &[NecklaceMorphism], f: &NecklaceMorphism) -> Result<()> {
    if list.is_empty() {
        return if f.is_identity() {
            Ok(())
        } else {
            Err(Error::InvalidMorphism("empty factorization of a non-identity".into()))
        };
    }
    match NecklaceMorphism::compose_all(list) {
        Some(c) if &c == f => Ok(()),
        _ => Err(Error::InvalidMorphism(format!("factorization of {f:?} does not compose back"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::{enumerate_morphisms, necklaces_up_to};

    fn nk(b: &[usize]) -> Necklace {
        Necklace::new(b.to_vec()).unwrap()
    }

    #[test]
    fn small_generator_examples() {
        let s1 = NecklaceMorphism::new(nk(&[3]), nk(&[2]), vec![0, 1, 1, 2]).unwrap();
        let f = factorize(&s1).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(classify(&f[0]), Some(GeneratorKind::Codegeneracy));

        let incl = NecklaceMorphism::new(nk(&[1, 1]), nk(&[2]), vec![0, 1, 2]).unwrap();
        let f = factorize(&incl).unwrap();
        assert_eq!(f, vec![incl.clone()]);
        assert_eq!(classify(&incl), Some(GeneratorKind::Injective));

        let id = NecklaceMorphism::identity(&nk(&[2, 3]));
        assert!(factorize(&id).unwrap().is_empty());

        let collapse = NecklaceMorphism::new(nk(&[2, 1]), nk(&[2]), vec![0, 1, 2, 2]).unwrap();
        assert_eq!(classify(&collapse), Some(GeneratorKind::Collapse));
        let to_point = NecklaceMorphism::new(nk(&[1]), Necklace::point(), vec![0, 0]).unwrap();
        assert_eq!(classify(&to_point), Some(GeneratorKind::Collapse));
    }

    #[test]
    fn roundtrip_exhaustive_small() {
        let all = necklaces_up_to(6);
        let mut checked = 0;
        for s in &all {
            for t in &all {
                for f in enumerate_morphisms(s, t, 12).unwrap() {
                    let gens = factorize(&f).unwrap();
                    for g in &gens {
                        assert!(classify(g).is_some(), "{g:?} from {f:?}");
                    }
                    composes_to(&gens, &f).unwrap();
                    checked += 1;
                }
            }
        }
        assert!(checked > 1000, "{checked}");
    }
}
