use super::*;
use crate::error::Error;

fn fixture(name: &str) -> DGCategory {
    let text = match name {
        "exterior-f2" => include_str!("../../../../data/dg-exterior-f2.json"),
        "arrow-f2" => include_str!("../../../../data/dg-arrow-f2.json"),
        "field-f2" => include_str!("../../../../data/dg-field-f2.json"),
        "exterior-f3" => include_str!("../../../../data/dg-exterior-f3.json"),
        "chain-f3" => include_str!("../../../../data/dg-chain-f3.json"),
        _ => unreachable!(),
    };
    DGCategory::from_json(text).unwrap()
}

#[test]
fn low_dimensional_counts() {
    let c = fixture("field-f2");
    assert_eq!(dg_nerve_simplices(&c, 0).unwrap().len(), 1);
    assert_eq!(dg_nerve_simplices(&c, 1).unwrap().len(), 2);
    let a = fixture("arrow-f2");
    // Degree-0 cycles between each ordered pair: 2 + 2 (endomorphisms) + 2 (f) + 1.
    assert_eq!(dg_nerve_simplices(&a, 0).unwrap().len(), 2);
    assert_eq!(dg_nerve_simplices(&a, 1).unwrap().len(), 2 + 2 + 2 + 1);
}

#[test]
fn adjunction_on_fixtures() {
    for name in ["field-f2", "exterior-f2", "arrow-f2", "exterior-f3", "chain-f3"] {
        let c = fixture(name);
        let r = adjunction_check(&c, 3).unwrap();
        assert!(r.passed(), "{name}: {r:?}");
        assert!(r.naturality_squares > 0);
    }
}

#[test]
fn unsigned_theta_fails_over_f3() {
    // Without the (−1)^{k(k+1)/2} normalization some θ(F) leave the nerve.
    let c = fixture("chain-f3");
    let nerve: std::collections::HashSet<_> = dg_nerve_simplices(&c, 3).unwrap().into_iter().collect();
    let fs = dg_functors(&c, 3).unwrap();
    assert!(fs.iter().any(|f| !nerve.contains(f)));
    assert!(fs.iter().all(|f| nerve.contains(&theta(&c, f))));
}

#[test]
fn nerve_is_a_simplicial_set() {
    for name in ["exterior-f2", "arrow-f2", "chain-f3"] {
        let s = nerve_simplicial_set(&fixture(name), 3).unwrap();
        s.validate(3).unwrap();
    }
}

#[test]
fn malformed_categories() {
    let bad_leibniz = r#"{"prime": 3, "objects": ["X"], "morphisms": [
        {"name": "1", "source": "X", "target": "X", "degree": 0, "identity": true},
        {"name": "a", "source": "X", "target": "X", "degree": 0},
        {"name": "b", "source": "X", "target": "X", "degree": 1, "differential": {"a": 1}}],
        "compositions": [{"outer": "b", "inner": "b", "result": {}},
                         {"outer": "a", "inner": "a", "result": {"a": 1}},
                         {"outer": "a", "inner": "b", "result": {}},
                         {"outer": "b", "inner": "a", "result": {}}]}"#;
    assert!(matches!(DGCategory::from_json(bad_leibniz), Err(Error::DgCategory(_))));
    let no_identity = r#"{"prime": 2, "objects": ["X"], "morphisms": []}"#;
    assert!(matches!(DGCategory::from_json(no_identity), Err(Error::DgCategory(_))));
    assert!(matches!(DGCategory::from_json("{"), Err(Error::Parse(_))));
}
