//! Seeded random simplicial sets for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use super::set::{SimplexRef, SimplicialSet};
use super::subsets;

/// Every simplex reference of dimension `n` in `s`.
fn refs_of_dim(s: &SimplicialSet, n: usize) -> Vec<SimplexRef> {
    let mut out = Vec::new();
    for k in 0..=n.min(s.max_dim()) {
        let words = if n == 0 { vec![Vec::new()] } else { subsets(n, n - k) };
        for &base in s.of_dim(k) {
            for w in &words {
                out.push(SimplexRef { word: w.clone(), base });
            }
        }
    }
    out
}

/// Random valid simplicial set with `vertices` vertices and, for each entry
/// of `counts`, up to that many nondegenerate simplices of dimension 1, 2, ….
///
/// Faces are chosen by randomized backtracking over all references of the
/// right dimension subject to the simplicial identities; a simplex is skipped
/// when no consistent choice is found within the search budget.
pub fn random_simplicial_set<R: Rng>(rng: &mut R, vertices: usize, counts: &[usize]) -> SimplicialSet {
    let mut s = SimplicialSet::new("random");
    for v in 0..vertices.max(1) {
        s.add_vertex(format!("v{v}")).unwrap();
    }
    s.set_basepoint(0).unwrap();
    for (k, &count) in counts.iter().enumerate() {
        let n = k + 1;
        let candidates = refs_of_dim(&s, n - 1);
        for c in 0..count {
            let mut budget = 2000usize;
            let mut faces = Vec::with_capacity(n + 1);
            if choose_faces(&s, &candidates, n, &mut faces, rng, &mut budget) {
                s.add_simplex(format!("x{n}_{c}"), faces).unwrap();
            }
        }
    }
    s
}

fn choose_faces<R: Rng>(
    s: &SimplicialSet,
    candidates: &[SimplexRef],
    n: usize,
    faces: &mut Vec<SimplexRef>,
    rng: &mut R,
    budget: &mut usize,
) -> bool {
    let j = faces.len();
    if j == n + 1 {
        return true;
    }
    let mut order: Vec<&SimplexRef> = candidates.iter().collect();
    order.shuffle(rng);
    for cand in order {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        // d_i d_j = d_{j−1} d_i for every i < j already chosen.
        let ok = n < 2 || (0..j).all(|i| s.face_of(cand, i) == s.face_of(&faces[i], j - 1));
        if ok {
            faces.push(cand.clone());
            if choose_faces(s, candidates, n, faces, rng, budget) {
                return true;
            }
            faces.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_sets_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let v = rng.gen_range(1..=3);
            let s = random_simplicial_set(&mut rng, v, &[3, 2, 1]);
            s.validate(s.max_dim()).unwrap();
        }
    }
}
