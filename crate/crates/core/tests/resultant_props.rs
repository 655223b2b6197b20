mod common;

use fplift_core::domain::{IntPolyRing, Integers, PrimeField, Rationals, Ring};
use fplift_core::poly::IntPoly;
use fplift_core::resultant::{aggregate, first_nonzero_principal, gcd_many, gcd_subresultant, resultant, subresultants};
use fplift_core::upoly::DomainPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn dense(lo: usize, hi: usize, c: i64) -> impl Strategy<Value = Vec<i64>> {
    (lo..=hi).prop_flat_map(move |d| prop::collection::vec(-c..=c, d + 1)).prop_filter("non-zero leading coefficient", |v| *v.last().unwrap() != 0)
}

fn q(c: &[i64]) -> DomainPoly<BigRational> {
    DomainPoly::from_coeffs(&Rationals, c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
}

fn z(c: &[i64]) -> DomainPoly<BigInt> {
    DomainPoly::from_coeffs(&Integers, c.iter().map(|&v| v.into()).collect())
}

fn bivariate() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2), -4i64..=4), 1..6).prop_map(|t| IntPoly::from_terms(2, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_vanishes_iff_common_factor(
        p in prop::sample::select(vec![3u64, 5, 31, 101]),
        f in prop::collection::vec(0u64..101, 2..=6),
        g in prop::collection::vec(0u64..101, 2..=6),
        h in prop::collection::vec(0u64..101, 1..=3),
    ) {
        let fp = PrimeField::new(p).unwrap();
        let h = DomainPoly::from_coeffs(&fp, h.iter().map(|v| v % p).collect());
        let f = DomainPoly::from_coeffs(&fp, f.iter().map(|v| v % p).collect()).mul(&fp, &h);
        let g = DomainPoly::from_coeffs(&fp, g.iter().map(|v| v % p).collect());
        prop_assume!(!f.is_zero() && !g.is_zero() && f.deg_usize() <= 5 && g.deg_usize() <= 5);
        let res_zero = resultant(&fp, &f, &g) == 0;
        let gcd_nonconst = f.gcd_euclid(&fp, &g).deg_usize() > 0;
        prop_assert_eq!(res_zero, gcd_nonconst);
        if fp.elements().any(|x| f.eval(&fp, &x) == 0 && g.eval(&fp, &x) == 0) {
            prop_assert!(res_zero);
        }
    }

    #[test]
    fn subresultant_gcd_matches_euclid(f in dense(0, 6, 20), g in dense(0, 6, 20), h in dense(0, 2, 5)) {
        let (f, g) = (q(&f).mul(&Rationals, &q(&h)), q(&g).mul(&Rationals, &q(&h)));
        prop_assume!(f.deg_usize() <= 8 && g.deg_usize() <= 8);
        let euclid = f.gcd_euclid(&Rationals, &g).monic(&Rationals);
        prop_assert_eq!(gcd_subresultant(&Rationals, &f, &g).unwrap().monic(&Rationals), euclid.clone());
        // The first non-vanishing principal subresultant sits at deg gcd and
        // S_delta is a scalar multiple of the gcd.
        let seq = subresultants(&Rationals, &f, &g).unwrap();
        let delta = first_nonzero_principal(&Rationals, &seq).unwrap();
        prop_assert_eq!(delta, euclid.deg_usize());
        prop_assert_eq!(seq.entries[delta].monic(&Rationals), euclid);
    }

    #[test]
    fn aggregated_gcd_over_generic_specialisation(fs in prop::collection::vec(dense(1, 3, 6), 2..=4), h in dense(0, 2, 4)) {
        // gcd(f_1, ..., f_m) = gcd_x(F1, F2) over Q(y); at a generic y the
        // specialised gcd agrees, and it is always a multiple.
        let fs: Vec<DomainPoly<BigRational>> = fs.iter().map(|f| q(f).mul(&Rationals, &q(&h))).collect();
        let common = gcd_many(&Rationals, &fs).unwrap().monic(&Rationals);
        let mut hit = false;
        for seed in 1..=6i64 {
            let mut f2 = fs[1].clone();
            for (j, f) in fs.iter().enumerate().skip(2) {
                let y = BigRational::from_integer((seed * 7 + j as i64 * 13).into());
                f2 = f2.add(&Rationals, &f.scale(&Rationals, &y));
            }
            let g = fs[0].gcd_euclid(&Rationals, &f2).monic(&Rationals);
            prop_assert!(g.rem(&Rationals, &common).unwrap().is_zero());
            hit |= g == common;
        }
        prop_assert!(hit);
    }

    #[test]
    fn pseudo_division_of_products(g in dense(1, 4, 9), h in dense(0, 4, 9)) {
        let (g, h) = (z(&g), z(&h));
        let f = g.mul(&Integers, &h);
        let (_, rem, _) = f.pseudo_div_rem(&Integers, &g).unwrap();
        prop_assert!(rem.is_zero());
        let (qq, rq) = q_of(&f).div_rem(&Rationals, &q_of(&g)).unwrap();
        prop_assert!(rq.is_zero());
        prop_assert_eq!(qq, q_of(&h));
    }

    #[test]
    fn specialisation_commutes_with_subresultants(f in bivariate(), g in bivariate(), a in 0u64..13) {
        let fp = PrimeField::new(13).unwrap();
        let (uf, ug) = (f.to_univariate(0), g.to_univariate(0));
        prop_assume!(!uf.is_zero() && !ug.is_zero());
        let point = [0, a];
        let (sf, sg) = (f.specialize_univariate(&fp, 0, &point), g.specialize_univariate(&fp, 0, &point));
        prop_assume!(sf.degree() == uf.degree() && sg.degree() == ug.degree());
        let over_z = subresultants(&IntPolyRing::new(2), &uf, &ug).unwrap();
        let over_fp = subresultants(&fp, &sf, &sg).unwrap();
        let mapped: Vec<Vec<u64>> = over_z.coeffs.iter().map(|row| row.iter().map(|c| c.evaluate(&fp, &point)).collect()).collect();
        prop_assert_eq!(mapped, over_fp.coeffs);
    }
}

fn q_of(f: &DomainPoly<BigInt>) -> DomainPoly<BigRational> {
    f.map(&Rationals, |c| BigRational::from_integer(c.clone()))
}

#[test]
fn aggregate_layout() {
    let x = |i| IntPoly::var(1, i);
    let fs = vec![x(0), &x(0) * &x(0), IntPoly::constant(1, 3), IntPoly::one(1)];
    let (f1, f2) = aggregate(&fs).unwrap();
    assert_eq!(f1.nvars(), 3);
    assert_eq!(f2.num_terms(), 3);
    let ring = IntPolyRing::new(3);
    assert!(!ring.is_zero(&f2));
}
