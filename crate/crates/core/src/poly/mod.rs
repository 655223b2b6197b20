//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], which orders graded
//! lexicographically (`x1 > x2 > ... `, higher total degree first when
//! iterating in reverse). Zero coefficients are never stored, so structural
//! equality is polynomial equality.

mod enumerate;

pub use enumerate::{enumerate_bounded, monomials_upto, split_relations, vanishing_relations, BoundedEnumerator};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::domain::{IntPolyRing, Ring};
use crate::upoly::DomainPoly;

/// Total degree, with `deg(0) = -inf` as a separate marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `true` for finite degrees `>= 1`.
    pub fn is_positive(self) -> bool {
        matches!(self, Degree::Finite(d) if d >= 1)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(k, t)`: L1-norm cap and total-degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundProfile {
    pub k: u64,
    pub t: u32,
}

impl BoundProfile {
    pub fn new(k: u64, t: u32) -> Self {
        assert!(k >= 1 && t >= 1, "bound profile needs k, t >= 1");
        BoundProfile { k, t }
    }

    /// The `k = t` profile.
    pub fn square(k: u32) -> Self {
        Self::new(k as u64, k)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, Monomial::one(nvars), c.into())
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::term(nvars, Monomial::var(nvars, i), BigInt::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: BigInt) -> Self {
        assert_eq!(m.0.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        IntPoly { nvars, terms }
    }

    /// Sums duplicate exponent vectors and drops zeros.
    pub fn from_terms<I, C>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = IntPoly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn l1_norm(&self) -> BigUint {
        self.terms.values().map(|c| c.magnitude().clone()).sum()
    }

    pub fn linf_norm(&self) -> BigUint {
        self.terms.values().map(|c| c.magnitude().clone()).max().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().map(|m| Degree::Finite(m.degree())).max().unwrap_or(Degree::NegInf)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms.keys().map(|m| Degree::Finite(m.0[var])).max().unwrap_or(Degree::NegInf)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn is_bounded(&self, b: &BoundProfile) -> bool {
        self.is_bounded_by(&BigUint::from(b.k), b.t as u64)
    }

    /// Boundedness against arbitrary caps; zero is bounded by everything.
    pub fn is_bounded_by(&self, k: &BigUint, t: u64) -> bool {
        match self.total_degree() {
            Degree::NegInf => true,
            Degree::Finite(d) => d as u64 <= t && &self.l1_norm() <= k,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Content (gcd of coefficients), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Flips the sign so the graded-lex leading coefficient is positive.
    pub fn canonical_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.sign() == Sign::Minus => -self,
            _ => self.clone(),
        }
    }

    /// The coefficient `c_power` of `f = sum_l c_l x_var^l`, as a polynomial
    /// in the same variable set (with `x_var` absent).
    pub fn coefficient_poly(&self, var: usize, power: u32) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == power {
                let mut e = m.0.clone();
                e[var] = 0;
                out.terms.insert(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Views `self` as a univariate polynomial in `x_var` over `Z[others]`.
    pub fn to_univariate(&self, var: usize) -> DomainPoly<IntPoly> {
        let ring = IntPolyRing::new(self.nvars);
        let d = match self.degree_in(var) {
            Degree::NegInf => return DomainPoly::zero(),
            Degree::Finite(d) => d,
        };
        let coeffs = (0..=d).map(|l| self.coefficient_poly(var, l)).collect();
        DomainPoly::from_coeffs(&ring, coeffs)
    }

    /// Inverse of [`to_univariate`](Self::to_univariate).
    pub fn from_univariate(nvars: usize, var: usize, u: &DomainPoly<IntPoly>) -> Self {
        let mut out = Self::zero(nvars);
        for (l, c) in u.coeffs().iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.0.clone();
                e[var] += l as u32;
                out.add_term(Monomial(e), v.clone());
            }
        }
        out
    }

    /// Drops the terms of degree `> d` in `x_var`.
    pub fn truncate_in(&self, var: usize, d: Degree) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| Degree::Finite(m.0[var]) <= d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        IntPoly { nvars: self.nvars, terms }
    }

    /// Appends fresh variables (with exponent zero) up to `nvars`.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "cannot shrink with extend_vars");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nvars, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        IntPoly { nvars, terms }
    }

    /// Groups terms by their exponents in the trailing variables
    /// `x_{keep+1}, ...`, returning `(tail exponents, coefficient)` pairs in
    /// ascending order of the tail; coefficients live in `keep` variables.
    pub fn split_tail(&self, keep: usize) -> Vec<(Vec<u32>, IntPoly)> {
        assert!(keep <= self.nvars);
        let mut groups: BTreeMap<Monomial, IntPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let tail = Monomial(m.0[keep..].to_vec());
            let head = Monomial(m.0[..keep].to_vec());
            groups.entry(tail).or_insert_with(|| IntPoly::zero(keep)).terms.insert(head, c.clone());
        }
        groups.into_iter().map(|(t, p)| (t.0, p)).collect()
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation length");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; self.nvars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        IntPoly { nvars: self.nvars, terms }
    }

    /// Exact evaluation at `point` in the domain `r`.
    ///
    /// # Panics
    /// If `point.len() != nvars`.
    pub fn evaluate<R: Ring>(&self, r: &R, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let mut powers: Vec<Vec<R::Elem>> = point.iter().map(|a| vec![r.one(), a.clone()]).collect();
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = r.from_int(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = r.mul(pw.last().unwrap(), &point[i]);
                    pw.push(next);
                }
                t = r.mul(&t, &pw[e as usize]);
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Substitutes values for every variable except `x_var`, giving a
    /// univariate polynomial in `x_var` over `r` (the entry `point[var]` is
    /// ignored).
    pub fn specialize_univariate<R: Ring>(&self, r: &R, var: usize, point: &[R::Elem]) -> DomainPoly<R::Elem> {
        assert_eq!(point.len(), self.nvars, "specialization point has wrong length");
        let u = self.to_univariate(var);
        let coeffs = u.coeffs().iter().map(|c| c.evaluate(r, point)).collect();
        DomainPoly::from_coeffs(r, coeffs)
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide.
    pub fn div_exact(&self, g: &IntPoly) -> Option<IntPoly> {
        let (lm, lc) = g.leading()?;
        if self.nvars != g.nvars {
            return None;
        }
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = IntPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&lm);
            for (gm, gc) in &g.terms {
                rem.add_term(gm.mul(&qm), -(gc * &q));
            }
            quot.add_term(qm, q);
        }
        Some(quot)
    }

    /// Maximum absolute coefficient bit length; handy for progress reports.
    pub fn max_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", crate::text::format_poly(self, &crate::text::VarStyle::X))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(self, &crate::text::VarStyle::X))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total: by variable count, then term lists from the top.
impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = IntPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $f(self, rhs: IntPoly) -> IntPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Convenience for tests and examples: `x(n, i)` is the 1-based variable `x_i`.
pub fn x(nvars: usize, i: usize) -> IntPoly {
    IntPoly::var(nvars, i - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Integers, PrimeField};

    fn c(n: i64) -> IntPoly {
        IntPoly::constant(4, n)
    }

    #[test]
    fn norms() {
        assert_eq!(IntPoly::zero(2).l1_norm(), BigUint::zero());
        let f = &(&x(4, 1) * &x(4, 2)) - &x(4, 3);
        assert_eq!(f.l1_norm(), BigUint::from(2u32));
        let g = &(&(&c(3) * &x(4, 1).pow(2)) - &(&c(2) * &x(4, 1))) + &c(1);
        assert_eq!(g.l1_norm(), BigUint::from(6u32));
        assert_eq!(g.linf_norm(), BigUint::from(3u32));
        assert_eq!(g.total_degree(), Degree::Finite(2));
        assert_eq!(IntPoly::zero(1).total_degree(), Degree::NegInf);
    }

    #[test]
    fn boundedness() {
        let lin = &(&(&x(4, 1) + &x(4, 2)) - &x(4, 3)) - &x(4, 4);
        assert!(lin.is_bounded(&BoundProfile::new(4, 1)));
        let quad = &(&x(4, 1) * &x(4, 2)) - &(&x(4, 3) * &x(4, 4));
        assert!(!quad.is_bounded(&BoundProfile::new(2, 1)));
        assert!(IntPoly::zero(3).is_bounded(&BoundProfile::new(1, 1)));
    }

    #[test]
    fn coefficient_extraction() {
        let f = &(&(&x(2, 1).pow(2) * &x(2, 2)) + &x(2, 2)) + &IntPoly::one(2);
        assert_eq!(f.coefficient_poly(0, 2), x(2, 2));
        assert_eq!(f.coefficient_poly(0, 0), &x(2, 2) + &IntPoly::one(2));
        assert!(IntPoly::zero(2).coefficient_poly(1, 3).is_zero());
        let u = f.to_univariate(0);
        assert_eq!(IntPoly::from_univariate(2, 0, &u), f);
    }

    #[test]
    fn evaluation_examples() {
        let f11 = PrimeField::new(11).unwrap();
        let f = &(&x(2, 1) * &x(2, 2)) - &IntPoly::constant(2, 10);
        assert_eq!(f.evaluate(&f11, &[3, 7]), 0);
        let f13 = PrimeField::new(13).unwrap();
        let g = &x(2, 2).pow(2) + &IntPoly::one(2);
        assert_eq!(g.evaluate(&f13, &[1, 5]), 0);
        assert_eq!(x(1, 1).evaluate(&Integers, &[BigInt::from(42)]), BigInt::from(42));
    }

    #[test]
    fn exact_division() {
        let a = &x(3, 1) + &x(3, 2);
        let b = &(&x(3, 1) * &x(3, 3)) - &IntPoly::constant(3, 2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &IntPoly::one(3)).div_exact(&a), None);
    }

    #[test]
    fn tail_split() {
        // x1 + y1*x1^2 + 3*y1 - y2
        let f = IntPoly::from_terms(3, [(vec![1, 0, 0], 1), (vec![2, 1, 0], 1), (vec![0, 1, 0], 3), (vec![0, 0, 1], -1)]);
        let parts = f.split_tail(1);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (vec![0, 0], x(1, 1)));
        assert_eq!(parts[1], (vec![0, 1], IntPoly::constant(1, -1)));
        assert_eq!(parts[2], (vec![1, 0], &x(1, 1).pow(2) + &IntPoly::constant(1, 3)));
    }
}
