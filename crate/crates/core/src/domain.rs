//! Coefficient domains.
//!
//! A [`Ring`] is a value-level adapter: the modulus of a prime field or the
//! defining polynomials of a tower live in the adapter, elements are plain
//! data. Every algorithm that is generic over coefficients (determinants,
//! Sylvester matrices, subresultants, evaluation) takes the adapter by
//! reference.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{add_mod, big_mod, ensure_prime, inv_mod, mul_mod, pow_mod, sub_mod};
use crate::poly::IntPoly;
use crate::upoly::DomainPoly;
use crate::{Error, Result};

/// Exact commutative ring with decidable zero test.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the unique ring map `Z -> R`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `a / b` when `b` divides `a`; `None` when it does not (or `b = 0`).
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A ring in which every non-zero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

/// `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        self.div(a, b)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// `F_p` for a word-size prime `p`; elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        big_mod(n, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
    fn pow(&self, a: &u64, exp: u64) -> u64 {
        pow_mod(*a, exp, self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            inv_mod(*a, self.p)
        }
    }
}

/// `F_{p^d}` as `F_p[t] / (m(t))` for the lexicographically first monic
/// irreducible `m` of degree `d`. Elements are dense coefficient vectors of
/// length `d`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl GaloisField {
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if degree == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        if degree == 1 {
            return Ok(GaloisField { base, modulus: vec![0, 1] });
        }
        let count = (p as u128).pow(degree as u32);
        for code in 0..count {
            let mut m = Vec::with_capacity(degree + 1);
            let mut c = code;
            for _ in 0..degree {
                m.push((c % p as u128) as u64);
                c /= p as u128;
            }
            m.push(1);
            let poly = DomainPoly::from_coeffs(&base, m.clone());
            if poly.is_irreducible_mod_p(&base) {
                return Ok(GaloisField { base, modulus: m });
            }
        }
        Err(Error::Internal("no irreducible polynomial found".into()))
    }

    pub fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.characteristic().pow(self.degree() as u32)
    }

    /// Defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Image of a base-field element.
    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = a % self.characteristic();
        v
    }

    /// All field elements, in the order of their base-`p` codes.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let p = self.characteristic();
        let d = self.degree();
        (0..self.order()).map(move |mut code| {
            let mut v = Vec::with_capacity(d);
            for _ in 0..d {
                v.push(code % p);
                code /= p;
            }
            v
        })
    }
}

impl Ring for GaloisField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        self.embed(self.base.from_int(n))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let p = self.characteristic();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(*x, *y, p), p);
            }
        }
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, m) in self.modulus[..d].iter().enumerate() {
                let idx = top - d + k;
                prod[idx] = sub_mod(prod[idx], mul_mod(c, *m, p), p);
            }
        }
        prod.truncate(d);
        prod
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|x| *x == 0)
    }
    fn div_exact(&self, a: &Vec<u64>, b: &Vec<u64>) -> Option<Vec<u64>> {
        self.div(a, b)
    }
}

impl Field for GaloisField {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }
}

/// `Z[x_1, ..., x_n]` with sparse [`IntPoly`] elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntPolyRing {
    pub nvars: usize,
}

impl IntPolyRing {
    pub fn new(nvars: usize) -> Self {
        IntPolyRing { nvars }
    }
}

impl Ring for IntPolyRing {
    type Elem = IntPoly;

    fn zero(&self) -> IntPoly {
        IntPoly::zero(self.nvars)
    }
    fn one(&self) -> IntPoly {
        IntPoly::constant(self.nvars, BigInt::one())
    }
    fn from_int(&self, n: &BigInt) -> IntPoly {
        IntPoly::constant(self.nvars, n.clone())
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }
    fn neg(&self, a: &IntPoly) -> IntPoly {
        -a
    }
    fn sub(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a - b
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a * b
    }
    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
        a.div_exact(b)
    }
}

/// Univariate polynomials `F[x]` over a field adapter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F> {
    pub base: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(base: F) -> Self {
        PolyRing { base }
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = DomainPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        DomainPoly::zero()
    }
    fn one(&self) -> Self::Elem {
        DomainPoly::constant(&self.base, self.base.one())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        DomainPoly::constant(&self.base, self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(&self.base, b).ok()?;
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.mul(&5, &5), 12);
        assert_eq!(f.add(&12, &1), 0);
        assert_eq!(f.inv(&5), Some(8));
        assert_eq!(f.from_i64(-1), 12);
        assert!(PrimeField::new(12).is_err());
    }

    #[test]
    fn galois_field_axioms() {
        for (p, d) in [(2u64, 3usize), (3, 2), (5, 3)] {
            let gf = GaloisField::new(p, d).unwrap();
            let elems: Vec<_> = gf.elements().collect();
            assert_eq!(elems.len() as u64, p.pow(d as u32));
            for a in elems.iter().filter(|a| !gf.is_zero(a)) {
                let inv = gf.inv(a).unwrap();
                assert_eq!(gf.mul(a, &inv), gf.one());
            }
            // Frobenius has order d on a generator of the extension.
            let t = {
                let mut v = gf.zero();
                v[1] = 1;
                v
            };
            assert_eq!(gf.pow(&t, gf.order()), t);
            assert_ne!(gf.pow(&t, p), t);
        }
    }
}
