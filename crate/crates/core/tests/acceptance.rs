//! Acceptance criteria, one PASS/FAIL line each. A criterion fails if its
//! check fails, errors, or overruns its wall-clock budget.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cobarlab::cobar::{cobar, h0_presentation, theorem71_iso};
use cobarlab::cubical::{cubical_circle, standard_cube, triangulate};
use cobarlab::dgnerve::{adjunction_check, DGCategory};
use cobarlab::linalg::{homology, Ring};
use cobarlab::rigidify::check_simplex_against_cube;
use cobarlab::simplicial::{aw_coalgebra, sphere};
use cobarlab::verify::{
    cyclic_nerve, free_loop_ranks, iso_fixtures, run_suite, structure_suite, triangulation_agrees, Suite,
    DG_CATEGORY_FIXTURES,
};

const SEED: u64 = 42;

type Verdict = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn iso_on_fixtures() -> Verdict {
    for (s, cutoff) in iso_fixtures() {
        let r = theorem71_iso(&s, 6, cutoff).map_err(err)?;
        ensure(r.passed(), || {
            format!(
                "{}: inverse {} algebra {} chain {}; first violation {:?}",
                s.name(),
                r.inverse_ok,
                r.algebra_ok,
                r.chain_ok,
                r.violations.first()
            )
        })?;
    }
    Ok(())
}

fn sphere2_loop_homology() -> Verdict {
    let c = aw_coalgebra(&sphere(2), 10).map_err(err)?;
    let omega = cobar(&c, 8, None).map_err(err)?;
    let (complex, _) = omega.homology_complex(Ring::Integers).map_err(err)?;
    let h = homology(&complex).truncated(8);
    ensure(h.betti() == vec![1; 9], || format!("betti {:?}", h.betti()))?;
    ensure(h.degrees.iter().all(|d| d.torsion.is_empty()), || "torsion present".into())
}

fn sphere3_loop_homology() -> Verdict {
    let c = aw_coalgebra(&sphere(3), 9).map_err(err)?;
    let omega = cobar(&c, 7, None).map_err(err)?;
    let algebra = omega.homology_algebra(Ring::Integers).map_err(err)?;
    let betti = algebra.homology.betti();
    ensure(betti == vec![1, 0, 1, 0, 1, 0, 1, 0], || format!("betti {betti:?}"))?;
    let square = algebra.products.iter().find(|p| p.left == (2, 0) && p.right == (2, 0));
    ensure(
        square.is_some_and(|p| p.degree == 4 && p.coordinates.iter().any(|c| c != "0")),
        || format!("square of the degree-2 class: {square:?}"),
    )
}

fn fundamental_group_algebras() -> Verdict {
    let z2 = h0_presentation(&cyclic_nerve(2, 4)).map_err(err)?;
    ensure(z2.generators.len() == 1 && z2.relations.len() == 1, || format!("Z/2 presentation {z2:?}"))?;
    let rel = &z2.relations[0];
    ensure(rel.lhs == vec![0, 0] && rel.rhs.is_empty(), || format!("Z/2 relation {rel:?}"))?;
    for (order, bound) in [(2, 3), (3, 4)] {
        let probe = h0_presentation(&cyclic_nerve(order, 3)).map_err(err)?.probe_dimension(bound).map_err(err)?;
        ensure(probe.dimension() == Some(order), || format!("Z/{order} probe {probe:?}"))?;
    }
    let circle = h0_presentation(&sphere(1)).map_err(err)?;
    ensure(circle.generators.len() == 1 && circle.relations.is_empty(), || format!("circle presentation {circle:?}"))
}

fn adjunction() -> Verdict {
    for name in ["dg-exterior-f2.json", "dg-arrow-f2.json"] {
        let (_, text) = DG_CATEGORY_FIXTURES.iter().find(|(n, _)| *n == name).ok_or("missing fixture")?;
        let c = DGCategory::from_json(text).map_err(err)?;
        ensure(c.prime() == 2, || format!("{name} is not over F_2"))?;
        let r = adjunction_check(&c, 3).map_err(err)?;
        ensure(r.passed(), || format!("{name}: {:?}", r.violations.first()))?;
        ensure(r.dimensions.len() == 4, || format!("{name}: checked {} dimensions", r.dimensions.len()))?;
    }
    Ok(())
}

fn triangulation() -> Verdict {
    let mut corpus: Vec<_> = (0..=3).map(standard_cube).collect();
    corpus.push(cubical_circle());
    for k in &corpus {
        triangulation_agrees(k).map_err(err)?.map_err(|e| format!("{}: {e}", k.name()))?;
    }
    let t = triangulate(&standard_cube(3)).map_err(err)?;
    let top = t.of_dim(3).len();
    ensure(top == 6, || format!("triangulated 3-cube has {top} nondegenerate 3-simplices"))
}

fn necklaces() -> Verdict {
    let report = run_suite(Suite::Necklace, SEED).map_err(err)?;
    for c in &report.checks {
        ensure(c.passed, || format!("{}: {:?}", c.name, c.counterexample))?;
    }
    for (name, minimum) in [("factorization round-trip", 100), ("P1 functoriality", 100)] {
        let c = report.check(name).ok_or_else(|| format!("no check named {name}"))?;
        ensure(c.instances >= minimum, || format!("{name}: only {} instances", c.instances))?;
    }
    Ok(())
}

fn structure() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for c in structure_suite(&mut rng, 200).map_err(err)? {
        ensure(c.passed && c.instances >= 200, || format!("{} ({} instances): {:?}", c.name, c.instances, c.counterexample))?;
    }
    Ok(())
}

fn rigidification_cubes() -> Verdict {
    for n in 1..=3 {
        check_simplex_against_cube(n).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok(())
}

fn free_loop_model() -> Verdict {
    let (co, hoch) = free_loop_ranks(&sphere(2), 3).map_err(err)?;
    ensure(co == hoch && co.len() == 4, || format!("coHochschild {co:?} vs Hochschild {hoch:?}"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Verdict); 10] = [
        ("loop-space isomorphism on the fixture corpus", 60, iso_on_fixtures),
        ("loop homology of the 2-sphere model", 5, sphere2_loop_homology),
        ("loop homology and products of the 3-sphere model", 5, sphere3_loop_homology),
        ("fundamental group algebras of cyclic nerves", 10, fundamental_group_algebras),
        ("dg-nerve adjunction over F_2", 120, adjunction),
        ("triangulation preserves cubical homology", 10, triangulation),
        ("necklace factorization and P1", 30, necklaces),
        ("structural property suite", 60, structure),
        ("rigidified simplices are cubes", 5, rigidification_cubes),
        ("free-loop ranks agree", 30, free_loop_model),
    ];
    let mut failures = 0;
    for (k, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let verdict = verdict.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(budget), || format!("over budget of {budget} s"))
        });
        let secs = elapsed.as_secs_f64();
        match verdict {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2} s, budget {budget} s)", k + 1),
            Err(e) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s, budget {budget} s): {e}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
