mod common;

use fplift_core::domain::PrimeField;
use fplift_core::poly::{vanishing_relations, BoundProfile};
use fplift_core::rectify::{rectify, LedgerValue};
use fplift_core::tower::{Tower, TowerElem};
use fplift_core::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rectify_is_sound_anchored_and_degree_bounded(
        p in prop::sample::select(vec![101u64, 257, 1009, 4099, 10007]),
        a in prop::collection::btree_set(0u64..10007, 1..=3),
        k in 2u32..=3,
    ) {
        let a: Vec<u64> = a.into_iter().map(|v| v % p).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        match rectify(&a, p, k, false) {
            Ok(res) => {
                prop_assert!(res.verified, "{:?}", res.report.discrepancy);
                for (b, &ai) in res.points.iter().zip(&a) {
                    prop_assert_eq!(res.tower.apply_anchor(b).unwrap(), ai);
                }
                prop_assert!(res.degree_within_bound());
                // Ledger honesty and σ-invariance on the recorded chain.
                let fp = PrimeField::new(p).unwrap();
                for (i, level) in res.chain.levels.iter().enumerate() {
                    for f in &level.relations {
                        prop_assert_eq!(f.evaluate(&fp, &a), 0);
                        if let (LedgerValue::Exact(u), LedgerValue::Exact(v)) = (&res.chain.ledger.u[i], &res.chain.ledger.v[i]) {
                            prop_assert!(f.is_bounded_by(u, v.try_into().unwrap()), "{} at level {}", f, i);
                        }
                    }
                }
                // The tower survives its text form (re-checked, so only the
                // certificate may differ).
                let back = Tower::deserialize(p, &res.tower.serialize()).unwrap();
                prop_assert_eq!(back.serialize(), res.tower.serialize());
                prop_assert_eq!(back.degree(), res.tower.degree());
            }
            Err(Error::BoundExceeded { .. }) => {}
            Err(e) => prop_assert!(false, "{a:?}/{p}, k = {k}: {e}"),
        }
    }
}

#[test]
fn relation_free_sets_lift_to_integers() {
    let mut r = common::rng(11);
    let mut seen = 0;
    while seen < 10 {
        let p = common::random_prime(&mut r, 10_000, 1_000_000);
        let n = 1 + seen % 2;
        let a = common::distinct_residues(&mut r, n, p);
        if !vanishing_relations(&a, p, BoundProfile::square(2)).unwrap().is_empty() {
            continue;
        }
        seen += 1;
        let res = rectify(&a, p, 2, false).unwrap();
        assert!(res.tower.is_empty());
        assert!(res.verified);
        let ints: Vec<TowerElem> = a.iter().map(|&v| TowerElem::from_int(v)).collect();
        assert_eq!(res.points, ints);
    }
}
