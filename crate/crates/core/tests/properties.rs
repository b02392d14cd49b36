//! Seeded property tests of the algebraic invariants. Random inputs are
//! built from a proptest-chosen seed so every case replays exactly.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cobarlab::cobar::{cobar, theorem71_iso};
use cobarlab::linalg::{homology, Ring};
use cobarlab::necklace::{
    classify, composes_to, enumerate_morphisms, factorize, necklaces_up_to, p1_direct, p1_of_morphism,
};
use cobarlab::rigidify::{compose, mapping_complex, word_degree, word_differential, CobarWord};
use cobarlab::simplicial::random::random_simplicial_set;
use cobarlab::simplicial::{aw_coalgebra, normalized_chains, SimplicialSet};
use cobarlab::tensor::{Element, Word};
use cobarlab::verify::free_loop_ranks;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() }
}

fn random_set(seed: u64, vertices: usize) -> SimplicialSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = [rng.gen_range(1..=3), rng.gen_range(0..=3), rng.gen_range(0..=2)];
    random_simplicial_set(&mut rng, vertices, &counts)
}

/// One vertex and no nondegenerate edges, so the loop space is connected and
/// every word complex is finite in each degree.
fn simply_connected_set(seed: u64) -> SimplicialSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = [0, rng.gen_range(1..=2), rng.gen_range(0..=2)];
    random_simplicial_set(&mut rng, 1, &counts)
}

fn random_path(rng: &mut ChaCha8Rng, s: &SimplicialSet, from: usize) -> CobarWord {
    let mut at = from;
    let mut simplices = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let steps: Vec<usize> =
            (1..=s.max_dim()).flat_map(|d| s.of_dim(d).iter().copied()).filter(|&x| s.first_vertex(x) == at).collect();
        let Some(&x) = steps.choose(rng) else { break };
        simplices.push(x);
        at = s.last_vertex(x);
    }
    CobarWord::new(s, simplices, from, at).unwrap()
}

fn leibniz_rhs(du: Element, u: &Word, dv: Element, v: &Word, u_degree: usize) -> Element {
    let mut rhs = du.mul(&Element::word(v.clone()));
    rhs.add_scaled(&Element::word(u.clone()).mul(&dv), if u_degree.is_multiple_of(2) { 1 } else { -1 });
    rhs
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn chains_form_a_dg_coalgebra(seed in any::<u64>(), vertices in 1usize..=3) {
        let s = random_set(seed, vertices);
        let c = aw_coalgebra(&s, s.max_dim()).unwrap();
        prop_assert!(normalized_chains(&s, Ring::Integers, s.max_dim()).is_ok());
        prop_assert_eq!(c.check_d_squared(), Ok(()));
        prop_assert_eq!(c.check_coassociative(), Ok(()));
        prop_assert_eq!(c.check_counit(), Ok(()));
        prop_assert_eq!(c.check_coproduct_chain_map(), Ok(()));
    }

    #[test]
    fn euler_characteristic_is_preserved(seed in any::<u64>(), vertices in 1usize..=3) {
        let s = random_set(seed, vertices);
        let top = s.max_dim();
        let chains = normalized_chains(&s, Ring::Integers, top).unwrap();
        let alternating = |xs: &[usize]| xs.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
        let cells: Vec<usize> = (0..=top).map(|n| s.of_dim(n).len()).collect();
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2)] {
            let h = homology(&normalized_chains(&s, ring, top).unwrap());
            prop_assert_eq!(alternating(&h.betti()), alternating(&cells));
        }
        prop_assert_eq!(chains.ranks(), cells);
    }

    #[test]
    fn cobar_differential_is_a_square_zero_derivation(seed in any::<u64>()) {
        let s = random_set(seed, 1);
        let c = aw_coalgebra(&s, s.max_dim()).unwrap();
        let a = cobar(&c, s.max_dim(), Some(3)).unwrap();
        prop_assert_eq!(a.check_d_squared(), Ok(()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let n = a.generator_count();
        prop_assume!(n > 0);
        let u: Word = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..n)).collect();
        let v: Word = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..n)).collect();
        let uv: Word = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(a.d_word(&uv), leibniz_rhs(a.d_word(&u), &u, a.d_word(&v), &v, a.word_degree(&u)));
    }

    #[test]
    fn composition_is_associative_and_unital(seed in any::<u64>(), vertices in 1usize..=3) {
        let s = random_set(seed, vertices);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
        let start = *s.of_dim(0).choose(&mut rng).unwrap();
        let w = random_path(&mut rng, &s, start);
        let v = random_path(&mut rng, &s, w.target);
        let u = random_path(&mut rng, &s, v.target);
        prop_assert_eq!(compose(&compose(&u, &v).unwrap(), &w).unwrap(), compose(&u, &compose(&v, &w).unwrap()).unwrap());
        prop_assert_eq!(compose(&w, &CobarWord::unit(w.source)).unwrap(), w.clone());
        prop_assert_eq!(compose(&CobarWord::unit(w.target), &w).unwrap(), w.clone());
        prop_assert!(compose(&w, &u).is_err() || w.source == u.target);
    }

    #[test]
    fn rigidified_differential_is_a_derivation(seed in any::<u64>(), vertices in 1usize..=3) {
        let s = random_set(seed, vertices);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1e);
        let start = *s.of_dim(0).choose(&mut rng).unwrap();
        let p = random_path(&mut rng, &s, start);
        let q = random_path(&mut rng, &s, p.target);
        let pq = compose(&q, &p).unwrap();
        let rhs = leibniz_rhs(
            word_differential(&s, &p.simplices), &p.simplices,
            word_differential(&s, &q.simplices), &q.simplices,
            word_degree(&s, &p.simplices),
        );
        prop_assert_eq!(word_differential(&s, &pq.simplices), rhs);
    }

    #[test]
    fn factorizations_compose_back(source in 0usize..30, target in 0usize..30, pick in any::<prop::sample::Index>()) {
        let corpus = necklaces_up_to(6);
        let (s, t) = (&corpus[source % corpus.len()], &corpus[target % corpus.len()]);
        let fs = enumerate_morphisms(s, t, 8).unwrap();
        prop_assume!(!fs.is_empty());
        let f = pick.get(&fs);
        let gens = factorize(f).unwrap();
        prop_assert!(gens.iter().all(|g| classify(g).is_some()));
        prop_assert!(composes_to(&gens, f).is_ok());
        prop_assert_eq!(p1_of_morphism(f).unwrap(), p1_direct(f).unwrap());
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rigidification_and_cobar_have_equal_loop_homology(seed in any::<u64>()) {
        let s = simply_connected_set(seed);
        let x = s.vertices()[0];
        let top = 3;
        let rigid = mapping_complex(&s, x, x, top, None).unwrap();
        let (rigid_h, _) = rigid.homology(Ring::Integers).unwrap();
        let c = aw_coalgebra(&s, top + 2).unwrap();
        let a = cobar(&c, top, None).unwrap();
        let (complex, _) = a.homology_complex(Ring::Integers).unwrap();
        prop_assert_eq!(rigid_h.truncated(top), homology(&complex).truncated(top));
        prop_assert!(theorem71_iso(&s, top, None).unwrap().passed());
    }

    #[test]
    fn free_loop_models_agree(seed in any::<u64>()) {
        let s = simply_connected_set(seed);
        let (co, hoch) = free_loop_ranks(&s, 2).unwrap();
        prop_assert_eq!(co, hoch);
    }
}
