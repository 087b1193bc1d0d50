//! Types C and D: sizes of the fundamental crystals, classical
//! decompositions, and the degree identity on short sequences.

use std::collections::BTreeSet;

use lscrystal_core::energy::verify_main;
use lscrystal_core::onedsum::{normalized_one_dim_sum, path_degree_sum, restricted_highest};
use lscrystal_core::{datum_for, ClassicalWeight, Context, Family, LevelZeroDominantWeight};

fn ctx(family: Family, rank: usize) -> Context {
    Context::new(datum_for(family, rank).unwrap())
}

// dimensions of the level-zero fundamental modules
#[test]
fn fundamental_sizes() {
    let cases: [(Family, usize, &[usize]); 4] = [
        (Family::C, 2, &[4, 5]),
        (Family::C, 3, &[6, 14, 14]),
        (Family::D, 4, &[8, 29, 8, 8]),
        (Family::D, 5, &[10, 46, 130, 16, 16]),
    ];
    for (family, rank, sizes) in cases {
        let c = ctx(family, rank);
        for (k, &size) in sizes.iter().enumerate() {
            let g = c.fundamental_crystal(k + 1).unwrap();
            assert_eq!(g.len(), size, "{} ϖ_{}", c.datum().label(), k + 1);
            g.validate().unwrap();
            assert!(g.check_simple().passed);
        }
    }
}

fn highest_weights(c: &Context, i: usize) -> BTreeSet<ClassicalWeight> {
    let g = c.fundamental_crystal(i).unwrap();
    restricted_highest(&g).into_iter().map(|b| g.weight(b).clone()).collect()
}

#[test]
fn classical_decompositions() {
    let d4 = ctx(Family::D, 4);
    let fund2 = d4.datum().fundamental_cl(2).unwrap();
    let zero = ClassicalWeight::zero(5);
    assert_eq!(highest_weights(&d4, 2), BTreeSet::from([fund2, zero]));
    let c3 = ctx(Family::C, 3);
    for i in 1..=3 {
        let w = c3.datum().fundamental_cl(i).unwrap();
        assert_eq!(highest_weights(&c3, i), BTreeSet::from([w]));
    }
}

#[test]
fn degree_identity_short_sequences() {
    for (family, rank) in [(Family::C, 2), (Family::C, 3), (Family::D, 4)] {
        let c = ctx(family, rank);
        let top = c.datum().size() - 1;
        let mut seqs: Vec<Vec<usize>> = (1..=top).map(|i| vec![i]).collect();
        for a in 1..=top {
            for b in 1..=top {
                seqs.push(vec![a, b]);
            }
        }
        for seq in seqs {
            let lambda = LevelZeroDominantWeight::from_sequence(c.datum(), &seq).unwrap();
            if c.path_crystal(&lambda).unwrap().len() > 1500 {
                continue;
            }
            let report = verify_main(&c, &seq).unwrap();
            for check in &report.checks {
                assert!(check.passed(), "{} {seq:?}: {} {:?}", report.datum, check.name, check.examples);
            }
            let g = c.path_crystal(&lambda).unwrap();
            for b in restricted_highest(&g) {
                let mu = g.weight(b);
                assert_eq!(
                    path_degree_sum(&c, &lambda, mu).unwrap(),
                    normalized_one_dim_sum(&c, &seq, mu).unwrap(),
                    "{} {seq:?} μ = {mu}",
                    report.datum
                );
            }
        }
    }
}
