//! Dense univariate polynomials over a [`Ring`] adapter.

use alloc::vec;
use alloc::vec::Vec;

use crate::domain::{Field, PrimeField, Ring};
use crate::poly::Degree;
use crate::{Error, Result};

/// `c_0 + c_1 x + ... + c_d x^d` with `c_d != 0`; the zero polynomial has no
/// coefficients and degree [`Degree::NegInf`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> DomainPoly<E> {
    pub fn zero() -> Self {
        DomainPoly { coeffs: Vec::new() }
    }

    /// Builds from coefficients (lowest degree first), dropping leading zeros.
    pub fn from_coeffs<R: Ring<Elem = E>>(r: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| r.is_zero(c)) {
            coeffs.pop();
        }
        DomainPoly { coeffs }
    }

    pub fn constant<R: Ring<Elem = E>>(r: &R, c: E) -> Self {
        Self::from_coeffs(r, vec![c])
    }

    /// The polynomial `x`.
    pub fn x<R: Ring<Elem = E>>(r: &R) -> Self {
        DomainPoly { coeffs: vec![r.zero(), r.one()] }
    }

    /// `c x^d`.
    pub fn monomial<R: Ring<Elem = E>>(r: &R, c: E, d: usize) -> Self {
        let mut coeffs = vec![r.zero(); d];
        coeffs.push(c);
        Self::from_coeffs(r, coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    /// Degree as an index; zero for the zero polynomial.
    pub fn deg_usize(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, `zero` beyond the degree.
    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(r, coeffs)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        DomainPoly { coeffs: self.coeffs.iter().map(|c| r.neg(c)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        self.add(r, &other.neg(r))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::from_coeffs(r, out)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, c: &E) -> Self {
        Self::from_coeffs(r, self.coeffs.iter().map(|a| r.mul(a, c)).collect())
    }

    pub fn pow<R: Ring<Elem = E>>(&self, r: &R, mut e: u32) -> Self {
        let mut acc = Self::constant(r, r.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(r, &base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, x: &E) -> E {
        let mut acc = r.zero();
        for c in self.coeffs.iter().rev() {
            acc = r.add(&r.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(&r.from_i64(i as i64), c))
            .collect();
        Self::from_coeffs(r, coeffs)
    }

    /// `f(x + c)`.
    pub fn shift<R: Ring<Elem = E>>(&self, r: &R, c: &E) -> Self {
        let lin = Self::from_coeffs(r, vec![c.clone(), r.one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(r, &lin).add(r, &Self::constant(r, a.clone()));
        }
        acc
    }

    /// Applies a coefficient map into another domain.
    pub fn map<S: Ring>(&self, s: &S, f: impl Fn(&E) -> S::Elem) -> DomainPoly<S::Elem> {
        DomainPoly::from_coeffs(s, self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-division: `lc(g)^e f = q g + r` with `deg r < deg g`,
    /// `e = max(deg f - deg g + 1, 0)`.
    pub fn pseudo_div_rem<R: Ring<Elem = E>>(&self, r: &R, g: &Self) -> Result<(Self, Self, u32)> {
        let lc = g.lc().ok_or(Error::ZeroPolynomial("pseudo-division by zero"))?.clone();
        let dg = g.deg_usize();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let mut e = 0;
        while !rem.is_zero() && rem.deg_usize() >= dg {
            let shift = rem.deg_usize() - dg;
            let t = Self::monomial(r, rem.lc().unwrap().clone(), shift);
            quot = quot.scale(r, &lc).add(r, &t);
            rem = rem.scale(r, &lc).sub(r, &t.mul(r, g));
            e += 1;
        }
        let full = if self.is_zero() || self.deg_usize() < dg {
            0
        } else {
            (self.deg_usize() - dg + 1) as u32
        };
        let pad = r.pow(&lc, (full - e) as u64);
        Ok((quot.scale(r, &pad), rem.scale(r, &pad), full))
    }

    /// Exact quotient over an integral domain, `None` if `g` does not divide.
    pub fn div_exact_ring<R: Ring<Elem = E>>(&self, r: &R, g: &Self) -> Option<Self> {
        let lc = g.lc()?;
        let dg = g.deg_usize();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            if rem.deg_usize() < dg {
                return None;
            }
            let c = r.div_exact(rem.lc().unwrap(), lc)?;
            let t = Self::monomial(r, c, rem.deg_usize() - dg);
            rem = rem.sub(r, &t.mul(r, g));
            quot = quot.add(r, &t);
        }
        Some(quot)
    }
}

impl<E: Clone> DomainPoly<E> {
    /// Euclidean division over a field.
    pub fn div_rem<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Result<(Self, Self)> {
        let lc_inv = f
            .inv(g.lc().ok_or(Error::ZeroPolynomial("division by zero polynomial"))?)
            .ok_or(Error::DivisionByZero)?;
        let dg = g.deg_usize();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); (self.deg_usize() + 1).saturating_sub(dg)];
        while !rem.is_zero() && rem.deg_usize() >= dg {
            let shift = rem.deg_usize() - dg;
            let c = f.mul(rem.lc().unwrap(), &lc_inv);
            let mut coeffs = rem.coeffs;
            for (i, gc) in g.coeffs.iter().enumerate() {
                coeffs[shift + i] = f.sub(&coeffs[shift + i], &f.mul(&c, gc));
            }
            rem = Self::from_coeffs(f, coeffs);
            quot[shift] = c;
        }
        Ok((Self::from_coeffs(f, quot), rem))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Result<Self> {
        Ok(self.div_rem(f, g)?.1)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => {
                let inv = f.inv(lc).expect("leading coefficient is non-zero");
                self.scale(f, &inv)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd_euclid<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("divisor is non-zero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> (Self, Self, Self) {
        let one = Self::constant(f, f.one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(f, &r1).expect("divisor is non-zero");
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(f, &q.mul(f, &s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(f, &q.mul(f, &t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(lc).unwrap();
                (r0.scale(f, &inv), s0.scale(f, &inv), t0.scale(f, &inv))
            }
        }
    }

    /// `self^e mod m` over a field.
    pub fn pow_mod<F: Field<Elem = E>>(&self, f: &F, mut e: u128, m: &Self) -> Self {
        let mut acc = Self::constant(f, f.one()).rem(f, m).unwrap();
        let mut base = self.rem(f, m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base).rem(f, m).unwrap();
            }
        }
        acc
    }
}

impl<E: Clone> DomainPoly<E> {
    /// Yun's square-free decomposition over a field of characteristic zero:
    /// monic square-free `a_i` with `self = lc * prod a_i^i`.
    pub fn squarefree<F: Field<Elem = E>>(&self, f: &F) -> Vec<(Self, u32)> {
        if self.deg_usize() == 0 {
            return Vec::new();
        }
        let this = self.monic(f);
        let d0 = this.derivative(f);
        let a0 = this.gcd_euclid(f, &d0);
        let mut b = this.div_rem(f, &a0).expect("gcd is non-zero").0;
        let c = d0.div_rem(f, &a0).expect("gcd is non-zero").0;
        let mut d = c.sub(f, &b.derivative(f));
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg_usize() > 0 {
            let a = b.gcd_euclid(f, &d);
            b = b.div_rem(f, &a).expect("gcd is non-zero").0;
            let c = d.div_rem(f, &a).expect("gcd is non-zero").0;
            d = c.sub(f, &b.derivative(f));
            if a.deg_usize() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }
}

impl DomainPoly<u64> {
    /// Rabin's irreducibility test over `F_p`.
    pub fn is_irreducible_mod_p(&self, f: &PrimeField) -> bool {
        let d = match self.degree() {
            Degree::Finite(d) if d >= 1 => d as usize,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let m = self.monic(f);
        let p = f.modulus() as u128;
        let x = DomainPoly::x(f);
        // x^(p^j) mod m for j = 1..=d, by repeated p-th powering.
        let mut frob = vec![x.clone()];
        for _ in 0..d {
            let next = frob.last().unwrap().pow_mod(f, p, &m);
            frob.push(next);
        }
        if frob[d] != x.rem(f, &m).unwrap() {
            return false;
        }
        let mut n = d;
        let mut prime_divisors = Vec::new();
        let mut q = 2;
        while q * q <= n {
            if n % q == 0 {
                prime_divisors.push(q);
                while n % q == 0 {
                    n /= q;
                }
            }
            q += 1;
        }
        if n > 1 {
            prime_divisors.push(n);
        }
        prime_divisors.into_iter().all(|q| {
            let h = frob[d / q].sub(f, &x);
            h.gcd_euclid(f, &m).degree() == Degree::Finite(0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Integers, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn zp(c: &[i64]) -> DomainPoly<BigInt> {
        DomainPoly::from_coeffs(&Integers, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn qp(c: &[i64]) -> DomainPoly<BigRational> {
        DomainPoly::from_coeffs(&Rationals, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn degrees_and_trimming() {
        assert_eq!(zp(&[1, 2, 0, 0]).degree(), Degree::Finite(1));
        assert_eq!(zp(&[0, 0]).degree(), Degree::NegInf);
        assert!(zp(&[]).is_zero());
    }

    #[test]
    fn euclid_gcd() {
        // (x-1)(x-2) and (x-1)(x-3)
        let g = qp(&[2, -3, 1]).gcd_euclid(&Rationals, &qp(&[3, -4, 1]));
        assert_eq!(g, qp(&[-1, 1]));
        let f = PrimeField::new(13).unwrap();
        let a = DomainPoly::from_coeffs(&f, vec![1, 0, 1]);
        // x^2 + x = x (x + 1) shares no root with x^2 + 1 = (x - 5)(x - 8).
        let b = DomainPoly::from_coeffs(&f, vec![0, 1, 1]);
        assert_eq!(a.gcd_euclid(&f, &b), DomainPoly::from_coeffs(&f, vec![1]));
        let c = DomainPoly::from_coeffs(&f, vec![0, 8, 1]);
        assert_eq!(a.gcd_euclid(&f, &c), DomainPoly::from_coeffs(&f, vec![8, 1]));
    }

    #[test]
    fn pseudo_division_identity() {
        let f = zp(&[3, 0, 2, 5]);
        let g = zp(&[1, 2]);
        let (q, r, e) = f.pseudo_div_rem(&Integers, &g).unwrap();
        let lhs = f.scale(&Integers, &BigInt::from(2).pow(e));
        assert_eq!(lhs, q.mul(&Integers, &g).add(&Integers, &r));
        assert!(r.deg_usize() < 1 || r.is_zero());
    }

    #[test]
    fn xgcd_bezout() {
        let a = qp(&[1, 0, 1]);
        let b = qp(&[-2, 0, 0, 1]);
        let (g, s, t) = a.xgcd(&Rationals, &b);
        assert_eq!(g, qp(&[1]));
        assert_eq!(s.mul(&Rationals, &a).add(&Rationals, &t.mul(&Rationals, &b)), g);
    }

    #[test]
    fn shift_and_eval() {
        let f = zp(&[1, 0, 1]);
        let g = f.shift(&Integers, &BigInt::from(2));
        assert_eq!(g, zp(&[5, 4, 1]));
        assert_eq!(f.eval(&Integers, &BigInt::from(3)), BigInt::from(10));
    }

    #[test]
    fn rabin_test() {
        let f = PrimeField::new(2).unwrap();
        assert!(DomainPoly::from_coeffs(&f, vec![1, 1, 0, 1]).is_irreducible_mod_p(&f));
        assert!(!DomainPoly::from_coeffs(&f, vec![1, 0, 1]).is_irreducible_mod_p(&f));
        let f = PrimeField::new(13).unwrap();
        assert!(!DomainPoly::from_coeffs(&f, vec![1, 0, 1]).is_irreducible_mod_p(&f));
        let f = PrimeField::new(11).unwrap();
        assert!(DomainPoly::from_coeffs(&f, vec![1, 0, 1]).is_irreducible_mod_p(&f));
    }
}
