use std::sync::OnceLock;

use lscrystal_core::crystal::{tensor_lower, tensor_raise};
use lscrystal_core::onedsum::Partition;
use lscrystal_core::{datum_for, ClassicalWeight, Context, Family, LevelZeroDominantWeight};
use proptest::prelude::*;

fn a3() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::new(datum_for(Family::A, 4).unwrap()))
}

fn c2() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::new(datum_for(Family::C, 2).unwrap()))
}

fn seq_strategy(top: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=top, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_operators_on_paths(seq in seq_strategy(3), pick in any::<prop::sample::Index>(), j in 0usize..4) {
        let ctx = a3();
        let lambda = LevelZeroDominantWeight::from_sequence(ctx.datum(), &seq).unwrap();
        let g = ctx.path_crystal(&lambda).unwrap();
        let b = pick.index(g.len());
        let p = g.path(b);
        prop_assert_eq!(p.epsilon(j).unwrap() as i64 - p.phi(j).unwrap() as i64, -p.weight().pairing(j));
        if let Some(up) = p.raise(ctx.datum(), j).unwrap() {
            prop_assert_eq!(up.lower(ctx.datum(), j).unwrap(), Some(p.clone()));
            let alpha = ctx.datum().simple_root(j);
            let shifted: Vec<i64> = p.weight().pairings().iter().zip(alpha.pairings()).map(|(a, b)| a + b).collect();
            prop_assert_eq!(up.weight(), ClassicalWeight(shifted));
        }
        if let Some(down) = p.lower(ctx.datum(), j).unwrap() {
            prop_assert_eq!(down.raise(ctx.datum(), j).unwrap(), Some(p.clone()));
        }
    }

    #[test]
    fn graph_agrees_with_direct_tensor_rule(seq in seq_strategy(3), pick in any::<prop::sample::Index>(), j in 0usize..4) {
        let ctx = a3();
        let g = ctx.sequence_crystal(&seq).unwrap();
        let b = pick.index(g.len());
        let elem = g.element(b);
        let up = tensor_raise(ctx.datum(), elem, j).unwrap();
        prop_assert_eq!(up.as_ref(), g.raise(b, j).map(|c| g.element(c)));
        let down = tensor_lower(ctx.datum(), elem, j).unwrap();
        prop_assert_eq!(down.as_ref(), g.lower(b, j).map(|c| g.element(c)));
    }

    #[test]
    fn weyl_action_moves_weights(seq in seq_strategy(2), pick in any::<prop::sample::Index>(), word in prop::collection::vec(0usize..3, 0..6)) {
        let ctx = c2();
        let lambda = LevelZeroDominantWeight::from_sequence(ctx.datum(), &seq).unwrap();
        let g = ctx.path_crystal(&lambda).unwrap();
        let b = pick.index(g.len());
        let c = g.weyl_w(&word, b).unwrap();
        prop_assert_eq!(g.weight(c), &ctx.datum().reflect_word(&word, g.weight(b)));
        prop_assert_eq!(g.norm_squared(c).unwrap(), g.norm_squared(b).unwrap());
    }

    #[test]
    fn psi_preserves_weights_and_edges(seq in seq_strategy(3), pick in any::<prop::sample::Index>(), j in 0usize..4) {
        let ctx = a3();
        let lambda = LevelZeroDominantWeight::from_sequence(ctx.datum(), &seq).unwrap();
        let g = ctx.path_crystal(&lambda).unwrap();
        let t = ctx.sequence_crystal(&seq).unwrap();
        let psi = ctx.psi_sequence(&seq).unwrap();
        let b = pick.index(g.len());
        prop_assert_eq!(g.weight(b), t.weight(psi.apply(b)));
        prop_assert_eq!(g.raise(b, j).map(|c| psi.apply(c)), t.raise(psi.apply(b), j));
        prop_assert_eq!(psi.invert(psi.apply(b)), b);
    }

    #[test]
    fn conjugation_is_an_involution(parts in prop::collection::vec(1u32..6, 0..6)) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }
}
