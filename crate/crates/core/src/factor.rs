//! Factorization of univariate polynomials over `Q` and `F_p`.
//!
//! Over `Q`: Yun's square-free decomposition, then for each square-free part
//! a Zassenhaus search: factor modulo a small good prime (distinct-degree,
//! then equal-degree splitting with deterministic trial polynomials),
//! Hensel-lift past twice a Mignotte-type bound and recombine subsets.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{big_mod, is_prime};
use crate::domain::{Integers, PrimeField, Rationals};
use crate::upoly::DomainPoly;
use crate::{Error, Result};

type QPoly = DomainPoly<BigRational>;
type ZPoly = DomainPoly<BigInt>;
type FpPoly = DomainPoly<u64>;

/// Yun's algorithm over `Q`: monic square-free `a_i` with `f = lc * prod a_i^i`.
pub fn squarefree_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    f.squarefree(&Rationals)
}

/// Scales to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_part(f: &QPoly) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let mut out: Vec<BigInt> = if content.is_zero() { ints } else { ints.iter().map(|c| c / &content).collect() };
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -&*c);
    }
    DomainPoly::from_coeffs(&Integers, out)
}

fn to_q(f: &ZPoly) -> QPoly {
    f.map(&Rationals, |c| BigRational::from_integer(c.clone()))
}

fn to_fp(f: &ZPoly, field: &PrimeField) -> FpPoly {
    f.map(field, |c| big_mod(c, field.modulus()))
}

fn from_fp(f: &FpPoly) -> ZPoly {
    f.map(&Integers, |&c| BigInt::from(c))
}

fn reduce_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    f.map(&Integers, |c| c.mod_floor(m))
}

fn symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    f.map(&Integers, |c| {
        let r = c.mod_floor(m);
        if r > half {
            r - m
        } else {
            r
        }
    })
}

fn pow_mod_big(a: &FpPoly, f: &PrimeField, e: &BigUint, m: &FpPoly) -> FpPoly {
    let mut acc = DomainPoly::constant(f, 1).rem(f, m).unwrap();
    for i in (0..e.bits()).rev() {
        acc = acc.mul(f, &acc).rem(f, m).unwrap();
        if e.bit(i) {
            acc = acc.mul(f, a).rem(f, m).unwrap();
        }
    }
    acc
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FpPoly, field: &PrimeField) -> Vec<(FpPoly, u32)> {
    let p = field.modulus() as u128;
    let x = DomainPoly::x(field);
    let mut rest = f.monic(field);
    let mut h = x.rem(field, &rest).unwrap();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg_usize() >= 2 * d {
        h = h.pow_mod(field, p, &rest);
        let g = h.sub(field, &x).gcd_euclid(field, &rest);
        if g.deg_usize() > 0 {
            rest = rest.div_rem(field, &g).unwrap().0;
            h = h.rem(field, &rest).unwrap();
            out.push((g, d as u32));
        }
        d += 1;
    }
    if rest.deg_usize() > 0 {
        let d = rest.deg_usize() as u32;
        out.push((rest, d));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d` (odd `p`).
/// Trial polynomials run through `F_p[x]` in base-`p` counter order, so the
/// result is deterministic.
pub fn equal_degree(g: &FpPoly, d: u32, field: &PrimeField) -> Vec<FpPoly> {
    let n = g.deg_usize();
    if n as u32 <= d {
        return vec![g.monic(field)];
    }
    let p = field.modulus();
    let e = (BigUint::from(p).pow(d) - 1u32) / 2u32;
    let mut counter = p;
    loop {
        let mut digits = Vec::new();
        let mut c = counter;
        while c > 0 && digits.len() < n {
            digits.push(c % p);
            c /= p;
        }
        counter += 1;
        let a = DomainPoly::from_coeffs(field, digits);
        if a.deg_usize() == 0 {
            continue;
        }
        let b = pow_mod_big(&a, field, &e, g).sub(field, &DomainPoly::constant(field, 1));
        let h = b.gcd_euclid(field, g);
        if h.deg_usize() > 0 && h.deg_usize() < n {
            let other = g.div_rem(field, &h).unwrap().0;
            let mut out = equal_degree(&h, d, field);
            out.extend(equal_degree(&other, d, field));
            return out;
        }
    }
}

/// Monic irreducible factors of a square-free polynomial over `F_p`, `p` odd.
pub fn factor_squarefree_mod_p(f: &FpPoly, field: &PrimeField) -> Vec<FpPoly> {
    let mut out: Vec<FpPoly> = distinct_degree(f, field)
        .into_iter()
        .flat_map(|(g, d)| equal_degree(&g, d, field))
        .collect();
    out.sort();
    out
}

/// Lifts `F ≡ g0 h0 (mod l)` (all monic, `g0`, `h0` coprime) to a
/// factorization modulo `l^k`.
fn hensel_pair(big_f: &ZPoly, g0: &FpPoly, h0: &FpPoly, field: &PrimeField, k: u32) -> (ZPoly, ZPoly) {
    let z = &Integers;
    let l = BigInt::from(field.modulus());
    let (one, s, t) = g0.xgcd(field, h0);
    debug_assert_eq!(one.deg_usize(), 0, "Hensel factors must be coprime");
    let (mut g, mut h) = (from_fp(g0), from_fp(h0));
    let mut modulus = l.clone();
    for _ in 1..k {
        let e = big_f.sub(z, &g.mul(z, &h));
        let e = e.map(z, |c| c / &modulus);
        let e = to_fp(&e, field);
        let (q, dg) = t.mul(field, &e).div_rem(field, g0).unwrap();
        let dh = s.mul(field, &e).add(field, &q.mul(field, h0));
        g = g.add(z, &from_fp(&dg).scale(z, &modulus));
        h = h.add(z, &from_fp(&dh).scale(z, &modulus));
        modulus *= &l;
        g = reduce_mod(&g, &modulus);
        h = reduce_mod(&h, &modulus);
    }
    (g, h)
}

fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.deg_usize();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let lc = f.lc().map(|c| c.abs()).unwrap_or_default();
    (BigInt::one() << n) * BigInt::from(n + 1) * max * lc
}

fn choose_prime(f: &ZPoly) -> (PrimeField, Vec<FpPoly>) {
    let lc = f.lc().unwrap().clone();
    let mut best: Option<(PrimeField, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 5 || best.is_none() {
        if is_prime(p) && !big_mod(&lc, p).is_zero() {
            let field = PrimeField::new(p).unwrap();
            let fp = to_fp(f, &field);
            if fp.gcd_euclid(&field, &fp.derivative(&field)).deg_usize() == 0 {
                let facs = factor_squarefree_mod_p(&fp.monic(&field), &field);
                tried += 1;
                if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
                    best = Some((field, facs));
                }
            }
        }
        p += 2;
    }
    best.unwrap()
}

/// Irreducible factors over `Z` of a primitive square-free polynomial of
/// positive degree, each primitive with positive leading coefficient.
pub fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let z = &Integers;
    if f.deg_usize() <= 1 {
        return vec![f.clone()];
    }
    let (field, modp) = choose_prime(f);
    if modp.len() == 1 {
        return vec![f.clone()];
    }
    let l = BigInt::from(field.modulus());
    let bound = coefficient_bound(f) * 2 + 1;
    let mut k = 1u32;
    let mut modulus = l.clone();
    while modulus <= bound {
        modulus *= &l;
        k += 1;
    }

    // Lift f/lc (monic mod l^k) one factor at a time.
    let lc = f.lc().unwrap().clone();
    let lc_inv = lc.modinv(&modulus).expect("leading coefficient is a unit mod l");
    let mut target = reduce_mod(&f.scale(z, &lc_inv), &modulus);
    let mut lifted = Vec::with_capacity(modp.len());
    for i in 0..modp.len() - 1 {
        let rest = modp[i + 1..].iter().fold(DomainPoly::constant(&field, 1), |acc, g| acc.mul(&field, g));
        let (g, h) = hensel_pair(&target, &modp[i], &rest, &field, k);
        lifted.push(g);
        target = h;
    }
    lifted.push(target);

    // Recombination by subsets of increasing size.
    let mut remaining = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lcr = remaining.lc().unwrap().clone();
            let cand = idx.iter().fold(DomainPoly::constant(z, lcr), |acc, &i| reduce_mod(&acc.mul(z, &lifted[i]), &modulus));
            let cand = primitive_part(&to_q(&symmetric(&cand, &modulus)));
            if let Some(q) = remaining.div_exact_ring(z, &cand) {
                out.push(cand);
                remaining = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            // next combination
            let mut j = s;
            loop {
                if j == 0 {
                    s += 1;
                    continue 'outer;
                }
                j -= 1;
                if idx[j] < r - s + j {
                    idx[j] += 1;
                    for t in j + 1..s {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    out.push(remaining);
    out
}

/// Complete factorization over `Q`: monic irreducible factors with
/// multiplicities, sorted by degree and then coefficients.
pub fn factor_q(f: &QPoly) -> Result<Vec<(QPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("factorization of zero"));
    }
    let mut out = Vec::new();
    for (a, mult) in squarefree_q(f) {
        for g in factor_squarefree_z(&primitive_part(&a)) {
            out.push((to_q(&g).monic(&Rationals), mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg_usize().cmp(&b.deg_usize()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Rational roots, from the linear factors.
pub fn rational_roots(f: &QPoly) -> Result<Vec<BigRational>> {
    Ok(factor_q(f)?
        .into_iter()
        .filter(|(g, _)| g.deg_usize() == 1)
        .map(|(g, _)| -g.coeffs()[0].clone())
        .collect())
}
