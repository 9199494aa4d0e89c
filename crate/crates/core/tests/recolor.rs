use std::collections::BTreeMap;

use starforest::random::{random_covering, random_covering_with, RandomCoveringParams};
use starforest::recolor::{descend, make_all_supported_up_to, supported_reps};

#[test]
fn random_coverings_descend() {
    let mut ops: BTreeMap<&'static str, usize> = BTreeMap::new();
    for n in 3..=9 {
        for seed in 0..30 {
            let c = random_covering(n, seed).unwrap();
            let (out, trace) = make_all_supported_up_to(&c, n - 1).unwrap_or_else(|e| panic!("n = {n}, seed = {seed}: {e}"));
            assert_eq!(supported_reps(&out).len(), n * (n - 2));
            for e in &trace {
                *ops.entry(e.op()).or_default() += 1;
            }
            let cert = descend(&c).unwrap_or_else(|e| panic!("n = {n}, seed = {seed}: {e}"));
            assert_eq!(cert.levels.len(), n - 1);
            cert.replay(&c).unwrap();
        }
    }
    println!("{ops:?}");
    for op in ["case1-step1", "case1-step2", "case2-step1", "add-side", "erase-singleton"] {
        assert!(ops.get(op).copied().unwrap_or(0) > 0, "{op} never fired: {ops:?}");
    }
}

#[test]
fn surplus_forests_descend() {
    for seed in 0..10 {
        let c = random_covering_with(7, seed, RandomCoveringParams { extra_forests: 2, moves: 300 }).unwrap();
        let cert = descend(&c).unwrap();
        assert_eq!(cert.levels.len(), 6);
        cert.replay(&c).unwrap();
    }
}
