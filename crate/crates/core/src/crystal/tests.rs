use super::*;
use crate::cartan::{datum_for, Family};
use crate::context::Context;

fn w(v: &[i64]) -> ClassicalWeight {
    ClassicalWeight(v.to_vec())
}

fn line(d: &AffineCartanDatum, v: &[i64]) -> ClPath {
    ClPath::straight(d, &w(v)).unwrap()
}

fn pair(a: &ClPath, b: &ClPath) -> CrystalElement {
    CrystalElement::new(vec![a.clone(), b.clone()]).unwrap()
}

#[test]
fn a1_fundamental_crystal() {
    let d = datum_for(Family::A, 2).unwrap();
    let g = CrystalGraph::generate(&d, &LevelZeroDominantWeight::fundamental(&d, 1).unwrap()).unwrap();
    assert_eq!(g.len(), 2);
    let plus = g.index_of_path(&line(&d, &[-1, 1])).unwrap();
    let minus = g.index_of_path(&line(&d, &[1, -1])).unwrap();
    assert_eq!(g.source(), plus);
    assert_eq!(g.weyl_s(1, plus).unwrap(), minus);
    assert_eq!(g.weyl_s(0, plus).unwrap(), minus);
    assert!(g.check_simple().passed);
    assert!(g.is_extremal(plus).unwrap() && g.is_extremal(minus).unwrap());
    let json = g.to_json();
    assert_eq!(json["elements"][0], "[(-1,1)@1/1]");
    assert_eq!(json["source"], 0);
    assert_eq!(json["edges"]["1"], serde_json::json!([[0, 1]]));
    assert_eq!(json["edges"]["0"], serde_json::json!([[1, 0]]));
}

#[test]
fn a2_fundamental_crystal_is_straight() {
    let d = datum_for(Family::A, 3).unwrap();
    let g = CrystalGraph::generate(&d, &LevelZeroDominantWeight::fundamental(&d, 1).unwrap()).unwrap();
    assert_eq!(g.len(), 3);
    assert!(g.elements().iter().all(|e| e.factors()[0].is_straight()));
}

#[test]
fn a1_double_contains_bent_path() {
    let d = datum_for(Family::A, 2).unwrap();
    let lambda = LevelZeroDominantWeight::new(&d, vec![2]).unwrap();
    let g = CrystalGraph::generate(&d, &lambda).unwrap();
    assert_eq!(g.len(), 4);
    let bent = g.keys.iter().position(|k| k == "[(-2,2)@1/2, (2,-2)@1/2]").expect("bent path");
    assert!(!g.is_extremal(bent).unwrap());
    assert!(g.check_simple().passed);
}

#[test]
fn tensor_routing_examples() {
    let d = datum_for(Family::A, 2).unwrap();
    let plus = line(&d, &[-1, 1]);
    let minus = line(&d, &[1, -1]);
    assert_eq!(tensor_raise(&d, &pair(&plus, &minus), 1).unwrap(), None);
    assert_eq!(tensor_raise(&d, &pair(&plus, &plus), 0).unwrap(), Some(pair(&plus, &minus)));
    assert_eq!(tensor_lower(&d, &pair(&plus, &plus), 1).unwrap(), Some(pair(&minus, &plus)));
    assert_eq!(tensor_epsilon(&pair(&minus, &minus), 1).unwrap(), 2);
}

#[test]
fn graph_routing_matches_path_routing() {
    let ctx = Context::new(datum_for(Family::A, 3).unwrap());
    let t = ctx.sequence_crystal(&[1, 2, 1]).unwrap();
    assert!(t.check_simple().passed);
    for b in 0..t.len() {
        for j in ctx.datum().indices() {
            let via_paths = tensor_raise(ctx.datum(), t.element(b), j).unwrap();
            assert_eq!(via_paths.map(|e| t.index_of(&e).unwrap()), t.raise(b, j));
            let via_paths = tensor_lower(ctx.datum(), t.element(b), j).unwrap();
            assert_eq!(via_paths.map(|e| t.index_of(&e).unwrap()), t.lower(b, j));
            assert_eq!(tensor_epsilon(t.element(b), j).unwrap(), t.epsilon(b, j));
        }
    }
}

#[test]
fn psi_and_concatenation_in_a1() {
    let ctx = Context::new(datum_for(Family::A, 2).unwrap());
    let d = ctx.datum().clone();
    let plus = line(&d, &[-1, 1]);
    let minus = line(&d, &[1, -1]);
    for a in [&plus, &minus] {
        for b in [&plus, &minus] {
            ctx.concat_check(1, a, b).unwrap();
        }
    }
    let cat = ctx.concat_check(1, &plus, &minus).unwrap();
    assert_eq!(cat.serialize(), "[(-2,2)@1/2, (2,-2)@1/2]");
    assert_eq!(ctx.concat_check(1, &plus, &plus).unwrap(), line(&d, &[-2, 2]));
}

#[test]
fn r_matrix_properties() {
    let ctx = Context::new(datum_for(Family::A, 3).unwrap());
    let (w1, w2) = (ctx.fundamental_weight(1).unwrap(), ctx.fundamental_weight(2).unwrap());
    let r = ctx.r_matrix(&w1, &w2).unwrap();
    let back = ctx.r_matrix(&w2, &w1).unwrap();
    assert_eq!(r.len(), 9);
    for b in 0..9 {
        assert_eq!(back.apply(r.apply(b)), b);
    }
    assert!(ctx.r_matrix(&w1, &w1).unwrap().is_identity());
    let left = ctx.tensor_crystal(&[w1.clone(), w2.clone()]).unwrap();
    let right = ctx.tensor_crystal(&[w2.clone(), w1.clone()]).unwrap();
    for b in 0..9 {
        assert_eq!(left.weight(b), right.weight(r.apply(b)));
    }
}

#[test]
fn anchored_isomorphism_rejects_mismatches() {
    let ctx = Context::new(datum_for(Family::A, 3).unwrap());
    let g1 = ctx.fundamental_crystal(1).unwrap();
    let t = ctx.sequence_crystal(&[1, 1]).unwrap();
    assert!(matches!(anchored_isomorphism(&g1, &t, 0, 0), Err(Error::NotIsomorphic(_))));
    let id = anchored_isomorphism(&g1, &g1, g1.source(), g1.source()).unwrap();
    assert!(id.is_identity());
    // same size, wrong anchor
    let g2 = ctx.fundamental_crystal(2).unwrap();
    let other = (0..g1.len()).find(|&b| b != g1.source()).unwrap();
    assert!(anchored_isomorphism(&g1, &g1, g1.source(), other).is_err());
    assert!(anchored_isomorphism(&g1, &g2, g1.source(), g2.source()).is_err());
}

#[test]
fn deleted_element_fails_simplicity() {
    let ctx = Context::new(datum_for(Family::A, 3).unwrap());
    let g = ctx.fundamental_crystal(1).unwrap();
    assert!(g.check_simple().passed);
    for victim in 0..g.len() {
        let report = g.without_element(victim).check_simple();
        assert!(!report.passed);
        assert!(report.failure.is_some());
    }
}

#[test]
fn element_cap_is_enforced() {
    let d = datum_for(Family::A, 3).unwrap();
    let lambda = LevelZeroDominantWeight::new(&d, vec![2, 1]).unwrap();
    match CrystalGraph::generate_capped(&d, &lambda, 5) {
        Err(Error::CapExceeded { cap: 5, .. }) => {}
        other => panic!("expected a cap error, got {other:?}"),
    }
    let ctx = Context::with_cap(d, 8);
    assert!(matches!(ctx.sequence_crystal(&[1, 2]), Err(Error::CapExceeded { .. })));
}

#[test]
fn zero_weight_is_rejected() {
    let d = datum_for(Family::A, 3).unwrap();
    let lambda = LevelZeroDominantWeight::new(&d, vec![0, 0]).unwrap();
    assert!(CrystalGraph::generate(&d, &lambda).is_err());
}

#[test]
fn weyl_word_acts_on_weights() {
    let ctx = Context::new(datum_for(Family::A, 3).unwrap());
    let lambda = LevelZeroDominantWeight::new(ctx.datum(), vec![1, 1]).unwrap();
    let g = ctx.path_crystal(&lambda).unwrap();
    let words: [&[usize]; 4] = [&[1, 2], &[0, 1, 2, 0], &[2, 1, 2], &[1, 2, 1]];
    for b in 0..g.len() {
        for word in words {
            let c = g.weyl_w(word, b).unwrap();
            assert_eq!(g.weight(c), &ctx.datum().reflect_word(word, g.weight(b)));
        }
        // braid relation: S_1 S_2 S_1 = S_2 S_1 S_2
        assert_eq!(g.weyl_w(&[1, 2, 1], b).unwrap(), g.weyl_w(&[2, 1, 2], b).unwrap());
        for j in ctx.datum().indices() {
            assert_eq!(g.weyl_s(j, g.weyl_s(j, b).unwrap()).unwrap(), b);
        }
    }
}
