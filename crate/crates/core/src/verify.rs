//! Seeded verification suites. Each suite runs a list of named checks and
//! records, per check, how many instances were examined and the first
//! counterexample found.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cobar::{cobar, h0_presentation, theorem71_iso};
use crate::cubical::{chains_cubical, cubical_circle, cubical_sphere2, standard_cube, triangulate, CubicalSetFG};
use crate::dgnerve::{adjunction_check, DGCategory};
use crate::error::{Error, Result};
use crate::hochschild::{cohochschild, hochschild};
use crate::linalg::{homology, Ring};
use crate::necklace::{
    classify, composes_to, enumerate_morphisms, factorize, necklaces_up_to, p1_direct, p1_of_morphism, BoxGenerator,
    BoxMorphism, GeneratorKind, Necklace, NecklaceMorphism,
};
use crate::rigidify::{check_simplex_against_cube, compose, word_degree, word_differential, CobarWord};
use crate::simplicial::random::random_simplicial_set;
use crate::simplicial::{aw_coalgebra, nerve_monoid, normalized_chains, sphere, Monoid, SimplicialSet};
use crate::tensor::{Element, Word};

/// The dg-category fixtures shipped with the crate, as `(file name, JSON)`.
pub const DG_CATEGORY_FIXTURES: [(&str, &str); 5] = [
    ("dg-field-f2.json", include_str!("../../../data/dg-field-f2.json")),
    ("dg-exterior-f2.json", include_str!("../../../data/dg-exterior-f2.json")),
    ("dg-arrow-f2.json", include_str!("../../../data/dg-arrow-f2.json")),
    ("dg-exterior-f3.json", include_str!("../../../data/dg-exterior-f3.json")),
    ("dg-chain-f3.json", include_str!("../../../data/dg-chain-f3.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Necklace,
    Cubical,
    Adjunction,
    Iso,
    Hochschild,
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Necklace, Suite::Cubical, Suite::Adjunction, Suite::Iso, Suite::Hochschild, Suite::Structure];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Necklace => "necklace",
            Suite::Cubical => "cubical",
            Suite::Adjunction => "adjunction",
            Suite::Iso => "iso",
            Suite::Hochschild => "hochschild",
            Suite::Structure => "structure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub instances: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Accumulates instances of one check, keeping the first failure.
struct Tally {
    name: String,
    instances: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.to_string(), instances: 0, failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn record_result(&mut self, r: std::result::Result<(), String>) {
        self.instances += 1;
        if let Err(e) = r {
            self.failure.get_or_insert(e);
        }
    }

    /// Fails the check unless at least `min` instances were seen.
    fn finish_with_minimum(mut self, min: usize) -> CheckOutcome {
        if self.instances < min && self.failure.is_none() {
            self.failure = Some(format!("only {} instances, wanted {min}", self.instances));
        }
        self.finish()
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome { name: self.name, instances: self.instances, passed: self.failure.is_none(), counterexample: self.failure }
    }
}

/// Runs one suite. Errors are reserved for setup failures (a fixture that
/// fails to load); failed checks are reported in the returned report.
pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        Suite::Necklace => necklace_suite(&mut rng)?,
        Suite::Cubical => cubical_suite(&mut rng)?,
        Suite::Adjunction => adjunction_suite()?,
        Suite::Iso => iso_suite()?,
        Suite::Hochschild => hochschild_suite(&mut rng)?,
        Suite::Structure => structure_suite(&mut rng, 200)?,
    };
    Ok(SuiteReport { suite, seed, checks })
}

fn necklace_suite(rng: &mut ChaCha8Rng) -> Result<Vec<CheckOutcome>> {
    let small = necklaces_up_to(5);
    let large = necklaces_up_to(8);

    let mut roundtrip = Tally::new("factorization round-trip");
    let check_factorization = |f: &NecklaceMorphism, t: &mut Tally| -> Result<()> {
        let gens = factorize(f)?;
        let unclassified = gens.iter().find(|g| classify(g).is_none());
        let r = match unclassified {
            Some(g) => Err(format!("{g:?} in the factorization of {f:?} is not a generator")),
            None => composes_to(&gens, f).map_err(|e| e.to_string()),
        };
        t.record_result(r);
        Ok(())
    };
    for s in &small {
        for t in &small {
            for f in enumerate_morphisms(s, t, 8)? {
                check_factorization(&f, &mut roundtrip)?;
            }
        }
    }
    for _ in 0..200 {
        let (s, t) = (large.choose(rng).unwrap(), large.choose(rng).unwrap());
        let fs = enumerate_morphisms(s, t, 8)?;
        if let Some(f) = fs.choose(rng) {
            check_factorization(f, &mut roundtrip)?;
        }
    }

    let mut functorial = Tally::new("P1 functoriality");
    let mut routes = Tally::new("P1 via generators equals P1 by definition");
    let mid = necklaces_up_to(7);
    let mut attempts = 0;
    while functorial.instances < 300 && attempts < 20_000 {
        attempts += 1;
        let (a, b, c) = (mid.choose(rng).unwrap(), mid.choose(rng).unwrap(), mid.choose(rng).unwrap());
        let fs = enumerate_morphisms(a, b, 8)?;
        let gs = enumerate_morphisms(b, c, 8)?;
        let (Some(f), Some(g)) = (fs.choose(rng), gs.choose(rng)) else { continue };
        let gf = g.after(f)?;
        let lhs = p1_direct(&gf)?;
        let rhs = p1_direct(g)?.after(&p1_direct(f)?);
        functorial.record(lhs == rhs, || format!("P1({g:?} ∘ {f:?}) ≠ P1 composite"));
        routes.record(p1_of_morphism(&gf)? == lhs, || format!("{gf:?}"));
    }

    let mut kinds = Tally::new("generator classification");
    for s in &necklaces_up_to(6) {
        for t in &necklaces_up_to(6) {
            for f in enumerate_morphisms(s, t, 8)? {
                let Some(kind) = classify(&f) else { continue };
                let p = p1_direct(&f)?;
                let ok = match (kind, p.as_generator()) {
                    (GeneratorKind::Injective, Some(BoxGenerator::Coface { .. })) => true,
                    (GeneratorKind::Codegeneracy, Some(BoxGenerator::Codegeneracy { .. }))
                    | (GeneratorKind::Codegeneracy, Some(BoxGenerator::Coconnection { .. })) => true,
                    (GeneratorKind::Collapse, _) => p.is_identity(),
                    _ => false,
                };
                kinds.record(ok, || format!("{f:?} classified {kind:?} but P1 is {p:?}"));
            }
        }
    }

    let mut collision = Tally::new("distinct codegeneracies collide under P1");
    let pads = [Necklace::point(), Necklace::simplex(1), Necklace::new(vec![2, 1])?];
    for m in 1..=2 {
        for n in 1..=2 {
            for w in &pads {
                for w2 in &pads {
                    let (f, g) = last_first_codegeneracies(w, m, n, w2)?;
                    let (pf, pg) = (p1_direct(&f)?, p1_direct(&g)?);
                    collision.record(f != g && pf == pg, || format!("{f:?} and {g:?}: {pf:?} vs {pg:?}"));
                }
            }
        }
    }

    Ok(vec![
        roundtrip.finish_with_minimum(100),
        functorial.finish_with_minimum(100),
        routes.finish_with_minimum(100),
        kinds.finish_with_minimum(1),
        collision.finish_with_minimum(1),
    ])
}

/// `W ∨ Δ^{m+1} ∨ Δⁿ ∨ W′ → W ∨ Δᵐ ∨ Δⁿ ∨ W′` collapsing the last edge of the
/// `Δ^{m+1}` bead, and `W ∨ Δᵐ ∨ Δ^{n+1} ∨ W′ → W ∨ Δᵐ ∨ Δⁿ ∨ W′` collapsing
/// the first edge of the `Δ^{n+1}` bead.
fn last_first_codegeneracies(
    w: &Necklace,
    m: usize,
    n: usize,
    w2: &Necklace,
) -> Result<(NecklaceMorphism, NecklaceMorphism)> {
    let id = NecklaceMorphism::identity;
    let last: Vec<usize> = (0..=m).chain([m]).collect();
    let first: Vec<usize> = [0].into_iter().chain(0..=n).collect();
    let s_last = NecklaceMorphism::new(Necklace::simplex(m + 1), Necklace::simplex(m), last)?;
    let s_first = NecklaceMorphism::new(Necklace::simplex(n + 1), Necklace::simplex(n), first)?;
    let f = id(w).wedge(&s_last).wedge(&id(&Necklace::simplex(n))).wedge(&id(w2));
    let g = id(w).wedge(&id(&Necklace::simplex(m))).wedge(&s_first).wedge(&id(w2));
    Ok((f, g))
}

/// Homology of a cubical set and of its triangulation agree, with torsion.
pub fn triangulation_agrees(k: &CubicalSetFG) -> Result<std::result::Result<(), String>> {
    let top = k.max_dim();
    let cubical = homology(&chains_cubical(k, Ring::Integers, top + 1)?).truncated(top);
    let simplicial = homology(&normalized_chains(&triangulate(k)?, Ring::Integers, top + 1)?).truncated(top);
    Ok(if cubical == simplicial {
        Ok(())
    } else {
        Err(format!("{}: cubical {cubical:?} vs triangulated {simplicial:?}", k.name()))
    })
}

fn random_box_morphism(rng: &mut ChaCha8Rng, source_dim: usize, steps: usize) -> BoxMorphism {
    let mut f = BoxMorphism::identity(source_dim);
    for _ in 0..steps {
        let n = f.target_dim();
        let g = match rng.gen_range(0..3) {
            0 => BoxGenerator::Coface { j: rng.gen_range(1..=n + 1), eps: rng.gen_range(0..=1) },
            1 => BoxGenerator::Codegeneracy { j: rng.gen_range(1..=n.max(1)) },
            _ => BoxGenerator::Coconnection { j: rng.gen_range(1..=n.max(1)) },
        };
        if let Ok(step) = BoxMorphism::generator(g, n) {
            if step.target_dim() <= 4 {
                f = step.after(&f);
            }
        }
    }
    f
}

fn cubical_suite(rng: &mut ChaCha8Rng) -> Result<Vec<CheckOutcome>> {
    let mut tri = Tally::new("triangulation preserves homology");
    let corpus: Vec<CubicalSetFG> =
        (0..=3).map(standard_cube).chain([cubical_circle(), cubical_sphere2()]).collect();
    for k in &corpus {
        tri.record_result(triangulation_agrees(k)?);
    }

    let mut count = Tally::new("triangulated cube simplex counts");
    let mut factorial = 1;
    for n in 0..=3 {
        factorial *= n.max(1);
        let s = triangulate(&standard_cube(n))?;
        let found = s.of_dim(n).len();
        count.record(found == factorial, || format!("triangulated cube {n} has {found} top simplices, expected {factorial}"));
    }

    let mut rigid = Tally::new("rigidified simplex matches cube");
    for n in 1..=4 {
        rigid.record_result(check_simplex_against_cube(n).map_err(|e| format!("n = {n}: {e}")));
    }

    let mut category = Tally::new("box category laws");
    let mut pulls = Tally::new("cube pullback is functorial");
    let cube = standard_cube(3);
    for _ in 0..200 {
        let d = rng.gen_range(0..=3);
        let steps: [usize; 3] = [rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)];
        let h = random_box_morphism(rng, d, steps[0]);
        let g = random_box_morphism(rng, h.target_dim(), steps[1]);
        let f = random_box_morphism(rng, g.target_dim(), steps[2]);
        let assoc = f.after(&g).after(&h) == f.after(&g.after(&h));
        let unit = BoxMorphism::identity(f.target_dim()).after(&f) == f
            && f.after(&BoxMorphism::identity(f.source_dim())) == f;
        category.record(assoc && unit, || format!("{f:?}, {g:?}, {h:?}"));
        if f.target_dim() <= 3 {
            let cell = cube.of_dim(f.target_dim())[0];
            let r = cube.nondegenerate(cell);
            let stepwise = cube.pull(&cube.pull(&r, &f), &g);
            let direct = cube.pull(&r, &f.after(&g));
            pulls.record(stepwise == direct, || format!("pull along {f:?} then {g:?}"));
        }
    }

    Ok(vec![
        tri.finish(),
        count.finish(),
        rigid.finish(),
        category.finish_with_minimum(200),
        pulls.finish_with_minimum(50),
    ])
}

fn adjunction_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (name, text) in DG_CATEGORY_FIXTURES {
        let c = DGCategory::from_json(text)?;
        let report = adjunction_check(&c, 3)?;
        let mut t = Tally::new(&format!("adjunction bijection and naturality ({name})"));
        t.instances = report.dimensions.iter().map(|d| d.functors).sum::<usize>() + report.naturality_squares;
        if !report.passed() {
            t.failure = Some(report.violations.first().cloned().unwrap_or_else(|| "check failed".into()));
        }
        out.push(t.finish());
    }
    Ok(out)
}

/// The nerve of the cyclic group of the given order through dimension `dim`.
pub fn cyclic_nerve(order: usize, dim: usize) -> SimplicialSet {
    let mut s = nerve_monoid(&Monoid::cyclic(order), dim);
    s.set_name(format!("BZ/{order}"));
    s
}

/// The one-vertex fixtures for the rigidification/cobar comparison, with the
/// word-length cutoff each needs (`None` for simply connected inputs).
pub fn iso_fixtures() -> Vec<(SimplicialSet, Option<usize>)> {
    vec![
        (sphere(2), None),
        (sphere(3), None),
        (cyclic_nerve(2, 4), Some(8)),
        (cyclic_nerve(3, 3), Some(4)),
    ]
}

fn iso_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (s, cutoff) in iso_fixtures() {
        let report = theorem71_iso(&s, 6, cutoff)?;
        let mut t = Tally::new(&format!("rigidification is the cobar construction ({})", s.name()));
        t.instances = report.mapping_words;
        if !report.passed() {
            t.failure = Some(report.violations.first().cloned().unwrap_or_else(|| "check failed".into()));
        }
        out.push(t.finish());
    }
    let mut probe = Tally::new("group algebra dimension");
    for (order, bound) in [(2, 3), (3, 4)] {
        let p = h0_presentation(&cyclic_nerve(order, 2))?.probe_dimension(bound)?;
        probe.record(p.dimension() == Some(order), || format!("cyclic group of order {order}: probe {p:?}"));
    }
    out.push(probe.finish());
    Ok(out)
}

/// Loop-space ranks of coHochschild and Hochschild chains in degrees
/// `0..=max_degree` for a simply connected one-vertex set.
pub fn free_loop_ranks(s: &SimplicialSet, max_degree: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let c = aw_coalgebra(s, max_degree + 2)?;
    let co = cohochschild(&c, Ring::Rationals, max_degree, None)?;
    let h = hochschild(&cobar(&c, max_degree + 1, None)?, Ring::Rationals, max_degree, None)?;
    Ok((co.homology().betti(), h.homology().betti()))
}

fn hochschild_suite(rng: &mut ChaCha8Rng) -> Result<Vec<CheckOutcome>> {
    let mut ranks = Tally::new("coHochschild and Hochschild ranks agree");
    for n in [2, 3] {
        let (co, h) = free_loop_ranks(&sphere(n), 4)?;
        ranks.record(co == h, || format!("S^{n}: {co:?} vs {h:?}"));
    }
    let mut complexes = Tally::new("truncated complexes square to zero");
    for _ in 0..20 {
        let counts = [rng.gen_range(1..=2), rng.gen_range(0..=2), rng.gen_range(0..=1)];
        let s = random_simplicial_set(rng, 1, &counts);
        let c = aw_coalgebra(&s, s.max_dim())?;
        let built = cohochschild(&c, Ring::Integers, 2, Some(2))
            .and_then(|_| cobar(&c, 3, Some(2)))
            .and_then(|a| hochschild(&a, Ring::Integers, 2, Some(2)));
        complexes.record(built.is_ok(), || format!("{}: {}", describe(&s), built.unwrap_err()));
    }
    Ok(vec![ranks.finish(), complexes.finish_with_minimum(20)])
}

fn describe(s: &SimplicialSet) -> String {
    serde_json::to_string(&crate::simplicial::SimplicialSetFile::from_set(s)).unwrap_or_default()
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..letters)).collect()
}

/// A random walk of simplices of positive dimension starting at `from`.
fn random_path(rng: &mut ChaCha8Rng, s: &SimplicialSet, from: usize, max_len: usize) -> Result<CobarWord> {
    let mut at = from;
    let mut simplices = Vec::new();
    for _ in 0..rng.gen_range(0..=max_len) {
        let steps: Vec<usize> =
            (1..=s.max_dim()).flat_map(|d| s.of_dim(d).iter().copied()).filter(|&x| s.first_vertex(x) == at).collect();
        let Some(&x) = steps.choose(rng) else { break };
        simplices.push(x);
        at = s.last_vertex(x);
    }
    CobarWord::new(s, simplices, from, at)
}

/// Structural identities on random small simplicial sets: chains, the
/// Alexander–Whitney coalgebra, the cobar construction and rigidification.
pub fn structure_suite(rng: &mut ChaCha8Rng, instances: usize) -> Result<Vec<CheckOutcome>> {
    let mut d2 = Tally::new("chain boundary squares to zero");
    let mut coassoc = Tally::new("coproduct is coassociative");
    let mut counit = Tally::new("counit laws");
    let mut cochain = Tally::new("coproduct is a chain map");
    let mut cobar_d2 = Tally::new("cobar differential squares to zero");
    let mut leibniz = Tally::new("cobar differential is a derivation");
    let mut assoc = Tally::new("composition is associative and unital");
    let mut rigid_leibniz = Tally::new("rigidified differential is a derivation");
    for _ in 0..instances {
        let vertices = rng.gen_range(1..=2);
        let counts = [rng.gen_range(1..=3), rng.gen_range(0..=3), rng.gen_range(0..=2)];
        let s = random_simplicial_set(rng, vertices, &counts);
        let top = s.max_dim();
        let c = aw_coalgebra(&s, top)?;
        let chains = normalized_chains(&s, Ring::Integers, top).map(|_| ()).map_err(|e| e.to_string());
        d2.record_result(chains.and(c.check_d_squared()).map_err(|e| format!("{e}: {}", describe(&s))));
        coassoc.record_result(c.check_coassociative());
        counit.record_result(c.check_counit());
        cochain.record_result(c.check_coproduct_chain_map());

        let one_vertex = if vertices == 1 { s.clone() } else { random_simplicial_set(rng, 1, &counts) };
        {
            let c = aw_coalgebra(&one_vertex, one_vertex.max_dim())?;
            let a = cobar(&c, one_vertex.max_dim(), Some(3))?;
            cobar_d2.record_result(a.check_d_squared());
            if a.generator_count() > 0 {
                let u = random_word(rng, a.generator_count(), 3);
                let v = random_word(rng, a.generator_count(), 3);
                let uv: Word = u.iter().chain(&v).copied().collect();
                let sign = if a.word_degree(&u) % 2 == 0 { 1 } else { -1 };
                let mut rhs = a.d_word(&u).mul(&Element::word(v.clone()));
                rhs.add_scaled(&Element::word(u.clone()).mul(&a.d_word(&v)), sign);
                leibniz.record(a.d_word(&uv) == rhs, || format!("u = {u:?}, v = {v:?}: {}", describe(&one_vertex)));
            }
        }

        let x = rng.gen_range(0..s.of_dim(0).len());
        let w = random_path(rng, &s, s.of_dim(0)[x], 3)?;
        let v = random_path(rng, &s, w.target, 3)?;
        let u = random_path(rng, &s, v.target, 3)?;
        let left = compose(&compose(&u, &v)?, &w)?;
        let right = compose(&u, &compose(&v, &w)?)?;
        let unital = compose(&w, &CobarWord::unit(w.source))? == w && compose(&CobarWord::unit(w.target), &w)? == w;
        assoc.record(left == right && unital, || format!("{u:?}, {v:?}, {w:?}"));

        let (p, q) = (&w.simplices, &v.simplices);
        let pq: Word = p.iter().chain(q).copied().collect();
        let sign = if word_degree(&s, p).is_multiple_of(2) { 1 } else { -1 };
        let mut rhs = word_differential(&s, p).mul(&Element::word(q.clone()));
        rhs.add_scaled(&Element::word(p.clone()).mul(&word_differential(&s, q)), sign);
        rigid_leibniz.record(word_differential(&s, &pq) == rhs, || format!("{p:?} · {q:?}: {}", describe(&s)));
    }
    let min = instances;
    Ok(vec![
        d2.finish_with_minimum(min),
        coassoc.finish_with_minimum(min),
        counit.finish_with_minimum(min),
        cochain.finish_with_minimum(min),
        cobar_d2.finish_with_minimum(min),
        leibniz.finish_with_minimum(min),
        assoc.finish_with_minimum(min),
        rigid_leibniz.finish_with_minimum(min),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Necklace, Suite::Cubical, Suite::Hochschild] {
            let r = run_suite(s, 1).unwrap();
            assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn structure_suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let checks = structure_suite(&mut rng, 60).unwrap();
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }
}
