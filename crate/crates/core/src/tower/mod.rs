//! Number-field towers `Q(g1)(g2)...` with an anchor homomorphism into `F_p`.
//!
//! Level `j` adjoins a root `g_{j+1}` of a monic polynomial that is
//! irreducible over the field generated by the levels below it. Each level
//! also carries an anchor `g_{j+1} ↦ a (mod p)`; the anchor map is a ring
//! homomorphism on the `p`-integral elements as long as every defining
//! polynomial's image vanishes at its anchor.
//!
//! Elements are sparse maps from exponent vectors to rationals, kept in
//! normal form (exponent of `g_{j+1}` below the degree of level `j`).
//! Exponent vectors have trailing zeros trimmed, so an element of a
//! sub-tower is literally the same value in every extension of it.

mod factor;

pub use factor::{factor_univariate, norm};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{ensure_prime, mul_mod, pow_mod, rational_mod};
use crate::domain::{Field, PrimeField, Ring};
use crate::poly::Monomial;
use crate::text::{format_rational_terms, parse_rational_terms, VarStyle};
use crate::upoly::DomainPoly;
use crate::{Error, Result};

/// An element of a tower in normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TowerElem {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

impl TowerElem {
    pub fn zero() -> Self {
        TowerElem::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        TowerElem { terms }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Highest level index whose generator occurs, `None` for rationals.
    pub fn top_level(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.len()).max().filter(|&l| l > 0).map(|l| l - 1)
    }

    /// `(exponents, coefficient)` pairs; exponent vectors are trimmed.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &TowerElem) -> TowerElem {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> TowerElem {
        TowerElem { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &TowerElem) -> TowerElem {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> TowerElem {
        if q.is_zero() {
            return TowerElem::zero();
        }
        TowerElem { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect() }
    }

    /// Splits by the exponent of the generator of `level`: coefficient `i`
    /// multiplies `g_{level+1}^i`.
    pub fn split_level(&self, level: usize) -> Vec<TowerElem> {
        let mut out: Vec<TowerElem> = Vec::new();
        for (e, c) in &self.terms {
            let i = e.get(level).copied().unwrap_or(0) as usize;
            if out.len() <= i {
                out.resize(i + 1, TowerElem::zero());
            }
            let mut rest = e.clone();
            if level < rest.len() {
                rest[level] = 0;
            }
            out[i].add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`split_level`](Self::split_level) (no reduction).
    pub fn join_level(parts: &[TowerElem], level: usize) -> TowerElem {
        let mut out = TowerElem::zero();
        for (i, part) in parts.iter().enumerate() {
            for (e, c) in &part.terms {
                let mut e = e.clone();
                if e.len() <= level {
                    e.resize(level + 1, 0);
                }
                e[level] += i as u32;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Text over `nlevels` generators `g1, g2, ...`.
    pub fn to_text(&self, nlevels: usize) -> String {
        let mut rows: Vec<(Monomial, &BigRational)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.clone();
                v.resize(nlevels.max(e.len()), 0);
                (Monomial(v), c)
            })
            .collect();
        rows.sort_by(|a, b| b.0.cmp(&a.0));
        format_rational_terms(rows.iter().map(|(m, c)| (m.exps(), *c)), &VarStyle::G)
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.top_level().map_or(0, |l| l + 1);
        write!(f, "TowerElem({})", self.to_text(n))
    }
}

/// How a level's defining polynomial was certified irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A single factor in a complete factorization over `Q` (Zassenhaus).
    RationalFactorization,
    /// A factor read off from the norm of `f(x - s*g)`, `g` the generator
    /// below, with the square-free shift `s`.
    NormShift(i64),
    /// Supplied from outside (e.g. a parsed document) and re-checked by
    /// factoring.
    Checked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    /// Coefficients (low to high) of the monic defining polynomial, in the
    /// levels below.
    pub defining: Vec<TowerElem>,
    pub anchor: u64,
    pub certificate: Certificate,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.defining.len() - 1
    }
}

/// Immutable tower; extension returns a new value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    p: u64,
    levels: Vec<Level>,
}

impl Tower {
    /// `Q` with anchor prime `p`.
    pub fn new(p: u64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(Tower { p, levels: Vec::new() })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `[K : Q]`, the product of the defining degrees.
    pub fn degree(&self) -> u64 {
        self.levels.iter().map(|l| l.degree() as u64).product()
    }

    /// The generator of `level` (0-based).
    pub fn generator(&self, level: usize) -> TowerElem {
        assert!(level < self.levels.len(), "no such level");
        let mut e = vec![0; level + 1];
        e[level] = 1;
        let mut out = TowerElem::zero();
        out.add_term(e, BigRational::one());
        out
    }

    /// The sub-tower made of the first `n` levels.
    pub fn prefix(&self, n: usize) -> Tower {
        Tower { p: self.p, levels: self.levels[..n].to_vec() }
    }

    /// The field adapter for this tower.
    pub fn field(&self) -> TowerField<'_> {
        TowerField { tower: self }
    }

    /// Defining polynomial of `level` as a univariate polynomial.
    pub fn defining_poly(&self, level: usize) -> DomainPoly<TowerElem> {
        DomainPoly::from_coeffs(&self.field(), self.levels[level].defining.clone())
    }

    /// Normal form modulo the triangular set of defining polynomials, from
    /// the top level down.
    pub fn reduce(&self, e: &TowerElem) -> TowerElem {
        let mut terms = e.terms.clone();
        for (j, level) in self.levels.iter().enumerate().rev() {
            let d = level.degree() as u32;
            loop {
                let Some(key) = terms.keys().find(|k| k.get(j).copied().unwrap_or(0) >= d).cloned() else {
                    break;
                };
                let c = terms.remove(&key).unwrap();
                let mut base = key;
                base[j] -= d;
                // g^d = -(c_0 + c_1 g + ... + c_{d-1} g^{d-1})
                for (i, coeff) in level.defining[..d as usize].iter().enumerate() {
                    for (ce, cv) in &coeff.terms {
                        let mut ex = add_exps(&base, ce);
                        if ex.len() <= j {
                            ex.resize(j + 1, 0);
                        }
                        ex[j] += i as u32;
                        let ex = trim(ex);
                        let v = -(&c * cv);
                        let slot = terms.entry(ex.clone()).or_insert_with(BigRational::zero);
                        *slot += v;
                        if slot.is_zero() {
                            terms.remove(&ex);
                        }
                    }
                }
            }
        }
        TowerElem { terms }
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let mut raw = TowerElem::zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                raw.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        self.reduce(&raw)
    }

    /// Field inverse: extended Euclid against the defining polynomial of the
    /// element's top generator, recursing into the levels below.
    pub fn invert(&self, e: &TowerElem) -> Result<TowerElem> {
        if e.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(top) = e.top_level() else {
            return Ok(TowerElem::from_rational(e.as_rational().unwrap().recip()));
        };
        let f = self.field();
        let u = DomainPoly::from_coeffs(&f, e.split_level(top));
        let m = self.defining_poly(top);
        let (g, s, _) = u.xgcd(&f, &m);
        if g.deg_usize() != 0 {
            return Err(Error::Internal(alloc::format!("defining polynomial of level {} is reducible", top + 1)));
        }
        Ok(self.reduce(&TowerElem::join_level(s.coeffs(), top)))
    }

    /// Image in `F_p` under the anchor map.
    pub fn apply_anchor(&self, e: &TowerElem) -> Result<u64> {
        let p = self.p;
        let mut acc = 0u64;
        for (ex, c) in &e.terms {
            let mut t = rational_mod(c, p)?;
            for (j, &k) in ex.iter().enumerate() {
                t = mul_mod(t, pow_mod(self.levels[j].anchor, k as u64, p), p);
            }
            acc = (acc + t) % p;
        }
        Ok(acc)
    }

    /// Image of a polynomial over the tower in `F_p[x]`.
    pub fn anchor_poly(&self, f: &DomainPoly<TowerElem>) -> Result<DomainPoly<u64>> {
        let field = PrimeField::new(self.p)?;
        let coeffs = f.coeffs().iter().map(|c| self.apply_anchor(c)).collect::<Result<Vec<_>>>()?;
        Ok(DomainPoly::from_coeffs(&field, coeffs))
    }

    /// Adjoins a root of the monic irreducible `g` with anchor `a`. The
    /// caller vouches for irreducibility through `certificate`; monicity,
    /// degree and anchor consistency are checked here.
    pub fn extend(&self, g: &DomainPoly<TowerElem>, a: u64, certificate: Certificate) -> Result<Tower> {
        if g.deg_usize() < 2 {
            return Err(Error::InvalidInput("defining polynomials must have degree at least 2".into()));
        }
        if g.lc() != Some(&TowerElem::one()) {
            return Err(Error::InvalidInput("defining polynomial is not monic".into()));
        }
        let level = self.levels.len();
        if g.coeffs().iter().any(|c| c.top_level().is_some_and(|t| t >= level)) {
            return Err(Error::InvalidInput("defining polynomial uses its own or a higher generator".into()));
        }
        let field = PrimeField::new(self.p)?;
        let a = a % self.p;
        let image = self.anchor_poly(g)?;
        if field.eval_poly(&image, a) != 0 {
            return Err(Error::NoCompatibleFactor(alloc::format!("defining polynomial does not vanish at anchor {a} mod {}", self.p)));
        }
        let mut levels = self.levels.clone();
        levels.push(Level { defining: g.coeffs().to_vec(), anchor: a, certificate });
        Ok(Tower { p: self.p, levels })
    }

    /// Parses an element written over `g1, ..., g_len` and reduces it.
    pub fn parse_elem(&self, src: &str) -> Result<TowerElem> {
        let terms = parse_rational_terms(src, self.len(), &VarStyle::G)?;
        let mut out = TowerElem::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        Ok(self.reduce(&out))
    }

    pub fn elem_text(&self, e: &TowerElem) -> String {
        e.to_text(self.len())
    }

    /// `(generator name, defining polynomial text, anchor)` per level; the
    /// defining polynomial of level `j` is written over `g1, ..., g_{j+1}`.
    pub fn serialize(&self) -> Vec<(String, String, u64)> {
        self.levels
            .iter()
            .enumerate()
            .map(|(j, l)| {
                let full = TowerElem::join_level(&l.defining, j);
                (alloc::format!("g{}", j + 1), full.to_text(j + 1), l.anchor)
            })
            .collect()
    }

    /// Rebuilds a tower from [`serialize`](Self::serialize) output,
    /// re-checking monicity, anchors and irreducibility.
    pub fn deserialize(p: u64, levels: &[(String, String, u64)]) -> Result<Tower> {
        let mut t = Tower::new(p)?;
        for (j, (name, text, anchor)) in levels.iter().enumerate() {
            if *name != alloc::format!("g{}", j + 1) {
                return Err(Error::Parse { input: name.clone(), reason: alloc::format!("expected generator g{}", j + 1) });
            }
            let terms = parse_rational_terms(text, j + 1, &VarStyle::G)?;
            let mut full = TowerElem::zero();
            for (e, c) in terms {
                full.add_term(e, c);
            }
            let g = DomainPoly::from_coeffs(&t.field(), full.split_level(j));
            let factors = factor_univariate(&t, &g)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(Error::InvalidInput(alloc::format!("defining polynomial of g{} is reducible", j + 1)));
            }
            t = t.extend(&g, *anchor, Certificate::Checked)?;
        }
        Ok(t)
    }
}

impl PrimeField {
    /// Horner evaluation of an `F_p` polynomial.
    pub fn eval_poly(&self, f: &DomainPoly<u64>, a: u64) -> u64 {
        f.eval(self, &(a % self.modulus()))
    }
}

/// Field adapter over a tower; elements of any sub-tower are accepted.
#[derive(Clone, Copy, Debug)]
pub struct TowerField<'a> {
    tower: &'a Tower,
}

impl<'a> TowerField<'a> {
    pub fn tower(&self) -> &'a Tower {
        self.tower
    }
}

impl PartialEq for TowerField<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.tower, other.tower) || self.tower == other.tower
    }
}

impl Ring for TowerField<'_> {
    type Elem = TowerElem;

    fn zero(&self) -> TowerElem {
        TowerElem::zero()
    }
    fn one(&self) -> TowerElem {
        TowerElem::one()
    }
    fn from_int(&self, n: &BigInt) -> TowerElem {
        TowerElem::from_int(n.clone())
    }
    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a.add(b)
    }
    fn neg(&self, a: &TowerElem) -> TowerElem {
        a.neg()
    }
    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a.sub(b)
    }
    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        if let Some(q) = a.as_rational() {
            return b.scale(&q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(&q);
        }
        self.tower.mul(a, b)
    }
    fn is_zero(&self, a: &TowerElem) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &TowerElem, b: &TowerElem) -> Option<TowerElem> {
        self.div(a, b)
    }
}

impl Field for TowerField<'_> {
    fn inv(&self, a: &TowerElem) -> Option<TowerElem> {
        self.tower.invert(a).ok()
    }
}

/// Extends `tower` by a root of `g` whose anchor image is `a`.
///
/// `g` is factored over the tower; among the monic irreducible factors whose
/// anchor image vanishes at `a` the least degree wins, ties broken by the
/// coefficient order. A linear factor `x - c` adds no level and returns `c`.
pub fn select_compatible_root(tower: &Tower, g: &DomainPoly<TowerElem>, a: u64) -> Result<(Tower, TowerElem)> {
    let p = tower.prime();
    let a = a % p;
    if g.deg_usize() == 0 {
        return Err(Error::InvalidInput("select_compatible_root needs a polynomial of positive degree".into()));
    }
    let field = PrimeField::new(p)?;
    let image = tower.anchor_poly(g)?;
    if image.deg_usize() != g.deg_usize() {
        return Err(Error::NoCompatibleFactor(alloc::format!("leading coefficient of {} vanishes mod {p}", poly_text(tower, g))));
    }
    if field.eval_poly(&image, a) != 0 {
        return Err(Error::NoCompatibleFactor(alloc::format!("{} does not vanish at {a} mod {p}", poly_text(tower, g))));
    }
    let factors = factor::factor_with_certificates(tower, g)?;
    let mut best: Option<(DomainPoly<TowerElem>, Certificate)> = None;
    for (h, _, cert) in factors {
        let Ok(img) = tower.anchor_poly(&h) else { continue };
        if field.eval_poly(&img, a) != 0 {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => (h.deg_usize(), &h) < (b.deg_usize(), b),
        };
        if better {
            best = Some((h, cert));
        }
    }
    let Some((h, cert)) = best else {
        return Err(Error::NoCompatibleFactor(alloc::format!(
            "no irreducible factor of {} vanishes at {a} mod {p}",
            poly_text(tower, g)
        )));
    };
    if h.deg_usize() == 1 {
        let root = h.coeffs()[0].neg();
        let img = tower.apply_anchor(&root)?;
        if img != a {
            return Err(Error::Internal(alloc::format!("linear root maps to {img}, expected {a}")));
        }
        return Ok((tower.clone(), root));
    }
    let ext = tower.extend(&h, a, cert)?;
    let r = ext.generator(ext.len() - 1);
    Ok((ext, r))
}

/// Text of a univariate polynomial over the tower in the variable `x`,
/// coefficients in parentheses.
pub fn poly_text(tower: &Tower, f: &DomainPoly<TowerElem>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let ct = tower.elem_text(c);
        parts.push(match i {
            0 => alloc::format!("({ct})"),
            1 => alloc::format!("({ct})*x"),
            _ => alloc::format!("({ct})*x^{i}"),
        });
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qpoly(t: &Tower, c: &[i64]) -> DomainPoly<TowerElem> {
        DomainPoly::from_coeffs(&t.field(), c.iter().map(|&v| TowerElem::from_int(v)).collect())
    }

    /// `Q(i)` with `i ↦ 5` in `F_13`.
    pub(crate) fn gaussian() -> Tower {
        let t = Tower::new(13).unwrap();
        let g = qpoly(&t, &[1, 0, 1]);
        t.extend(&g, 5, Certificate::RationalFactorization).unwrap()
    }

    #[test]
    fn reduction() {
        let t = gaussian();
        let i = t.generator(0);
        assert_eq!(t.mul(&i, &i), TowerElem::from_int(-1));
        let i3 = t.mul(&t.mul(&i, &i), &i);
        assert!(t.reduce(&i3.add(&i)).is_zero());
        let e = Tower::new(7).unwrap();
        assert_eq!(e.reduce(&TowerElem::from_rational(q(3, 4))), TowerElem::from_rational(q(3, 4)));
    }

    #[test]
    fn inversion() {
        let t = Tower::new(11).unwrap();
        assert_eq!(t.invert(&TowerElem::from_int(2)).unwrap(), TowerElem::from_rational(q(1, 2)));
        let g = gaussian();
        let i = g.generator(0);
        let one_plus_i = TowerElem::one().add(&i);
        let want = TowerElem::one().sub(&i).scale(&q(1, 2));
        assert_eq!(g.invert(&one_plus_i).unwrap(), want);
        let s = Tower::new(7).unwrap();
        let s = s.extend(&qpoly(&s, &[-2, 0, 1]), 3, Certificate::RationalFactorization).unwrap();
        let b = s.generator(0);
        assert_eq!(s.invert(&b).unwrap(), b.scale(&q(1, 2)));
        assert!(s.invert(&TowerElem::zero()).is_err());
    }

    #[test]
    fn anchors() {
        let g = gaussian();
        let one_plus_i = TowerElem::one().add(&g.generator(0));
        assert_eq!(g.apply_anchor(&one_plus_i).unwrap(), 6);
        let t = Tower::new(11).unwrap();
        assert_eq!(t.apply_anchor(&TowerElem::from_rational(q(1, 2))).unwrap(), 6);
        assert_eq!(t.apply_anchor(&TowerElem::zero()).unwrap(), 0);
        assert!(matches!(t.apply_anchor(&TowerElem::from_rational(q(1, 11))), Err(Error::NotLocal { .. })));
    }

    #[test]
    fn degrees() {
        assert_eq!(Tower::new(5).unwrap().degree(), 1);
        let g = gaussian();
        assert_eq!(g.degree(), 2);
        // b^3 - 5 over Q(i); 7^3 = 343 ≡ 5 (mod 13). (b^3 - i would not do:
        // it has the root -i.)
        let cubic = qpoly(&g, &[-5, 0, 0, 1]);
        assert_eq!(factor_univariate(&g, &cubic).unwrap().len(), 1);
        let h = g.extend(&cubic, 7, Certificate::NormShift(0)).unwrap();
        assert_eq!(h.degree(), 6);
        assert!(g.extend(&cubic, 6, Certificate::NormShift(0)).is_err());
    }

    #[test]
    fn compatible_roots() {
        let t = Tower::new(13).unwrap();
        let (ext, r) = select_compatible_root(&t, &qpoly(&t, &[1, 0, 1]), 5).unwrap();
        assert_eq!(ext.degree(), 2);
        assert_eq!(ext.apply_anchor(&r).unwrap(), 5);
        assert_eq!(ext.serialize(), vec![("g1".into(), "g1^2 + 1".into(), 5)]);

        let t = Tower::new(11).unwrap();
        let (ext, r) = select_compatible_root(&t, &qpoly(&t, &[2, -3, 1]), 2).unwrap();
        assert_eq!(ext.degree(), 1);
        assert_eq!(r, TowerElem::from_int(2));

        let g = gaussian();
        let c = TowerElem::from_int(3).add(&g.generator(0));
        let lin = DomainPoly::from_coeffs(&g.field(), vec![c.neg(), TowerElem::one()]);
        let (ext, r) = select_compatible_root(&g, &lin, 8).unwrap();
        assert_eq!(ext.len(), 1);
        assert_eq!(r, c);
        assert!(select_compatible_root(&g, &lin, 9).is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let g = gaussian();
        let i = g.generator(0);
        let reducible = DomainPoly::from_coeffs(&g.field(), vec![i.neg(), TowerElem::zero(), TowerElem::zero(), TowerElem::one()]);
        let mut ser = g.extend(&reducible, 7, Certificate::Checked).unwrap().serialize();
        assert_eq!(ser[1].1, "g2^3 - g1");
        assert!(Tower::deserialize(13, &ser).is_err());
        ser[1].1 = "g2^3 - 5".into();
        let back = Tower::deserialize(13, &ser).unwrap();
        let h = back.clone();
        assert_eq!(back.serialize(), ser);
        let e = h.parse_elem("1/2*g1*g2^2 - 3").unwrap();
        assert_eq!(h.parse_elem(&h.elem_text(&e)).unwrap(), e);
    }
}
