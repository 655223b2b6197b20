mod common;

use fplift_core::demos::{count_incidences, lattice_side, normalize_line, sharpness_lattice, transfer_report, PointLineConfig, TransferMode};
use fplift_core::domain::{Integers, PrimeField};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lattice_has_r4_incidences(n in 8u64..=4000) {
        let cfg = sharpness_lattice(n).unwrap();
        let r = lattice_side(n);
        prop_assert!(8 * r * r * r <= n && n < 8 * (r + 1) * (r + 1) * (r + 1));
        prop_assert_eq!(cfg.points.len() as u64, 2 * r * r * r);
        prop_assert_eq!(cfg.lines.len() as u64, r * r * r);
        prop_assert_eq!(count_incidences(&cfg, &Integers), r.pow(4));
    }
}

#[test]
fn lattice_needs_n_at_least_8() {
    assert!(sharpness_lattice(7).is_err());
}

/// Small point-line configurations over F_p: incidence counts agree with the
/// lifted configuration on every run where rectification succeeds.
#[test]
fn incidence_transfer() {
    let mut r = common::rng(23);
    let p = 10007;
    let fp = PrimeField::new(p).unwrap();
    let (mut ok, mut aborted) = (0, 0);
    for _ in 0..12 {
        let npts = r.gen_range(1..=2);
        let points: Vec<(u64, u64)> = (0..npts).map(|_| (r.gen_range(0..p), r.gen_range(0..p))).collect();
        let mut lines = Vec::new();
        for _ in 0..r.gen_range(1..=2) {
            // Through a chosen point half the time.
            let b = r.gen_range(0..p);
            let c = if r.gen_bool(0.5) {
                let (x, y) = points[r.gen_range(0..points.len())];
                (2 * p - (y + b * x % p) % p) % p
            } else {
                r.gen_range(0..p)
            };
            lines.push(normalize_line((1, b, c), p).unwrap());
        }
        lines.sort();
        lines.dedup();
        let cfg = PointLineConfig { points, lines };
        let expected = count_incidences(&cfg, &fp);
        match transfer_report(&[], p, &TransferMode::Incidence(cfg), false) {
            Ok(rep) => {
                assert!(rep.all_equal(), "{:?}", fplift_core::demos::quantity_lines(&rep));
                assert_eq!(rep.quantities.last().unwrap().over_fp, expected);
                ok += 1;
            }
            Err(fplift_core::Error::BoundExceeded { .. }) => aborted += 1,
            Err(e) => panic!("{e}"),
        }
    }
    assert!(ok >= 6, "{ok} transfers, {aborted} bound aborts");
}
