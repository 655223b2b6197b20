//! Exhaustive enumeration of bounded polynomials, one per `±` pair.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{BoundProfile, IntPoly, Monomial};
use crate::domain::{PrimeField, Ring};
use crate::Result;

/// All monomials in `nvars` variables of total degree `<= t`, in descending
/// graded-lex order (the constant monomial comes last).
pub fn monomials_upto(nvars: usize, t: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == e.len() {
            out.push(Monomial(e.clone()));
            return;
        }
        for v in 0..=left {
            e[i] = v;
            rec(i + 1, left - v, e, out);
        }
        e[i] = 0;
    }
    rec(0, t, &mut e, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Odometer over coefficient vectors `c` (indexed by [`monomials_upto`]) with
/// `sum |c_i| <= k` whose first non-zero entry is positive.
///
/// Each position cycles `0, 1, -1, 2, -2, ...` within the budget left by the
/// prefix; while the prefix is all zero only positive values are allowed,
/// which picks the sign. The order is deterministic.
#[derive(Clone, Debug)]
pub struct BoundedEnumerator {
    nvars: usize,
    monomials: Vec<Monomial>,
    coeffs: Vec<i64>,
    k: i64,
    done: bool,
}

impl BoundedEnumerator {
    pub fn new(nvars: usize, b: BoundProfile) -> Self {
        let monomials = monomials_upto(nvars, b.t);
        let coeffs = vec![0; monomials.len()];
        BoundedEnumerator { nvars, monomials, coeffs, k: b.k as i64, done: false }
    }

    fn step(&mut self) -> bool {
        let mut j = self.coeffs.len();
        while j > 0 {
            j -= 1;
            let used: i64 = self.coeffs[..j].iter().map(|c| c.abs()).sum();
            let budget = self.k - used;
            let prefix_zero = used == 0;
            let cur = self.coeffs[j];
            let next = if prefix_zero {
                cur + 1
            } else if cur > 0 {
                -cur
            } else {
                -cur + 1
            };
            if next.abs() <= budget {
                self.coeffs[j] = next;
                return true;
            }
            self.coeffs[j] = 0;
        }
        false
    }

    fn current(&self) -> IntPoly {
        IntPoly::from_terms(
            self.nvars,
            self.monomials
                .iter()
                .zip(&self.coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.0.clone(), BigInt::from(c))),
        )
    }
}

impl Iterator for BoundedEnumerator {
    type Item = IntPoly;

    fn next(&mut self) -> Option<IntPoly> {
        if self.done {
            return None;
        }
        if self.step() {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// Every non-zero `(k, t)`-bounded polynomial in `nvars` variables, up to sign.
pub fn enumerate_bounded(nvars: usize, b: BoundProfile) -> BoundedEnumerator {
    BoundedEnumerator::new(nvars, b)
}

/// Splits the enumeration into the relations that vanish at `a` over `F_p`
/// (`L1`) and those that do not (`L2`).
pub fn split_relations(a: &[u64], p: u64, b: BoundProfile) -> Result<(Vec<IntPoly>, Vec<IntPoly>)> {
    let field = PrimeField::new(p)?;
    let point: Vec<u64> = a.iter().map(|&v| v % p).collect();
    let (mut l1, mut l2) = (Vec::new(), Vec::new());
    for f in enumerate_bounded(a.len(), b) {
        if field.is_zero(&f.evaluate(&field, &point)) {
            l1.push(f);
        } else {
            l2.push(f);
        }
    }
    Ok((l1, l2))
}

/// Only the vanishing part `L1` of [`split_relations`], without storing the
/// (much larger) rest.
pub fn vanishing_relations(a: &[u64], p: u64, b: BoundProfile) -> Result<Vec<IntPoly>> {
    let field = PrimeField::new(p)?;
    let point: Vec<u64> = a.iter().map(|&v| v % p).collect();
    Ok(enumerate_bounded(a.len(), b).filter(|f| field.is_zero(&f.evaluate(&field, &point))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::x;
    use alloc::collections::BTreeSet;

    fn listing(n: usize, k: u64, t: u32) -> Vec<IntPoly> {
        enumerate_bounded(n, BoundProfile::new(k, t)).collect()
    }

    #[test]
    fn tiny_listings() {
        let one = IntPoly::one(1);
        let x1 = x(1, 1);
        let got: BTreeSet<_> = listing(1, 1, 1).into_iter().collect();
        assert_eq!(got, [one.clone(), x1.clone()].into_iter().collect());

        let got: BTreeSet<_> = listing(1, 2, 1).into_iter().collect();
        let two = IntPoly::constant(1, 2);
        let want: BTreeSet<_> =
            [one.clone(), two.clone(), x1.clone(), &two * &x1, &x1 + &one, &x1 - &one].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn zero_variables_give_constants() {
        let got = listing(0, 3, 2);
        assert_eq!(got, (1..=3).map(|c| IntPoly::constant(0, c)).collect::<Vec<_>>());
    }

    #[test]
    fn counts_match_formula() {
        // Sign classes of vectors in Z^M with L1 norm in 1..=k:
        // (sum_{j>=1} C(M,j) C(k,j) 2^j) / 2.
        fn binom(n: u64, r: u64) -> u64 {
            (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for (n, k, t) in [(1, 3, 2), (2, 2, 2), (2, 3, 3), (3, 2, 1)] {
            let m = monomials_upto(n, t).len() as u64;
            let want: u64 = (1..=k).map(|j| binom(m, j) * binom(k, j) * (1 << j)).sum::<u64>() / 2;
            let got = listing(n as usize, k, t as u32);
            assert_eq!(got.len() as u64, want, "n={n} k={k} t={t}");
            let set: BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len());
        }
    }

    #[test]
    fn split_examples() {
        let (l1, _) = split_relations(&[1, 5], 13, BoundProfile::square(2)).unwrap();
        assert!(l1.contains(&(&x(2, 1) - &IntPoly::one(2))));
        assert!(l1.contains(&(&x(2, 2).pow(2) + &IntPoly::one(2))));

        let (l1, _) = split_relations(&[0], 7, BoundProfile::square(2)).unwrap();
        assert!(l1.contains(&x(1, 1)));

        // 3*7 + 1 = 22 vanishes mod 11, so {3, 7} carries a quadratic relation.
        let (l1, l2) = split_relations(&[3, 7], 11, BoundProfile::square(2)).unwrap();
        assert_eq!(l1, vec![&(&x(2, 1) * &x(2, 2)) + &IntPoly::one(2)]);
        assert_eq!(l1.len() + l2.len(), listing(2, 2, 2).len());

        assert!(split_relations(&[1], 12, BoundProfile::square(2)).is_err());
    }
}
